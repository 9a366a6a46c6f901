//! Permutation statistics, permutation codes and Mahonian bijections.
//!
//! - [`stats`]: descents, `maj`, `inv`, `Z`, cyclic intervals, t/s-vectors.
//! - [`codes`]: the Lehmer code `I` and the cyclic major code `M`.
//! - [`foata`]: Foata's second fundamental transformation and the partial maps.
//! - [`han`]: Han's bijection `H`, computed both recursively and as `I^-1 o M`.
//! - [`oracle`]: exhaustive enumeration and verification.

pub mod codes;
pub mod error;
pub mod foata;
pub mod han;
pub mod oracle;
pub mod perm;
pub mod stats;

pub use error::{Error, Result};
pub use perm::{
    complement, parse_code, parse_permutation, parse_spec, parse_word, Code, GappedPermutation,
    Letter, MultisetSpec, Permutation, Word,
};
