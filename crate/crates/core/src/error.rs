use thiserror::Error;

/// Errors raised while constructing or parsing permutations, words and codes.
///
/// Every `position` is 1-based.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty input")]
    Empty,

    #[error("invalid token {token:?} at position {position}")]
    InvalidToken { token: String, position: usize },

    #[error(
        "undelimited input of length {len} is ambiguous; separate values with spaces or commas"
    )]
    AmbiguousCompact { len: usize },

    #[error("duplicate value {value} at position {position}")]
    Duplicate { value: u32, position: usize },

    #[error("value {value} at position {position} is outside 1..={max}")]
    OutOfRange {
        value: u32,
        position: usize,
        max: usize,
    },

    #[error("letter {letter} occurs {found} times, expected {expected}")]
    MultiplicityMismatch {
        letter: u32,
        found: usize,
        expected: usize,
    },

    #[error("code entry {value} at position {position} exceeds the bound {bound}")]
    CodeOutOfBound {
        value: u32,
        position: usize,
        bound: usize,
    },

    #[error("value {value} at position {position} equals the excluded value")]
    GapMismatch { value: u32, position: usize },

    #[error("excluded value {gap} is outside 1..={n}")]
    GapOutOfRange { gap: u32, n: usize },

    #[error("index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("{what} of size {requested} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u128,
        cap: u128,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
