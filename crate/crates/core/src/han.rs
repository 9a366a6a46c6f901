//! Han's bijection `H` on permutations.
//!
//! Two independent routes are provided: [`han_h_via_codes`] composes the
//! cyclic major code with the inverse Lehmer code, and [`han_h`] runs the
//! recursion through the cyclic shift `C^x` and the standardization `C_x`.
//! The first is the fast path; the second is kept as a cross-check.

use serde::Serialize;

use crate::codes::{cyclic_major_decode, cyclic_major_encode, lehmer_decode, lehmer_encode};
use crate::error::{Error, Result};
use crate::perm::{Code, GappedPermutation, Letter, Permutation};

/// `C^x`: `tau_i = sigma_i - x (mod n)`, landing in `S_{n-1}`.
pub fn c_upper(sigma: &GappedPermutation) -> Permutation {
    let n = sigma.n() as Letter;
    let x = sigma.gap();
    Permutation::from_vec_unchecked(
        sigma
            .iter()
            .map(|&v| if v < x { v + n - x } else { v - x })
            .collect(),
    )
}

/// `C_x`: the standardization, `nu_i = sigma_i` below `x` and `sigma_i - 1`
/// above it.
pub fn c_lower(sigma: &GappedPermutation) -> Permutation {
    let x = sigma.gap();
    Permutation::from_vec_unchecked(
        sigma
            .iter()
            .map(|&v| if v < x { v } else { v - 1 })
            .collect(),
    )
}

fn check_gap(x: Letter, tau: &Permutation) -> Result<Letter> {
    let n = tau.len() + 1;
    if x == 0 || x as usize > n {
        return Err(Error::GapOutOfRange { gap: x, n });
    }
    Ok(n as Letter)
}

/// Inverse of [`c_upper`] for gap `x`.
pub fn c_upper_inv(x: Letter, tau: &Permutation) -> Result<GappedPermutation> {
    let n = check_gap(x, tau)?;
    Ok(GappedPermutation::from_parts_unchecked(
        tau.iter()
            .map(|&t| if t + x > n { t + x - n } else { t + x })
            .collect(),
        x,
    ))
}

/// Inverse of [`c_lower`] for gap `x`.
pub fn c_lower_inv(x: Letter, nu: &Permutation) -> Result<GappedPermutation> {
    check_gap(x, nu)?;
    Ok(GappedPermutation::from_parts_unchecked(
        nu.iter().map(|&v| if v < x { v } else { v + 1 }).collect(),
        x,
    ))
}

/// Splits `sigma = sigma' sigma_n` into the gapped prefix and `sigma_n`.
fn split_last(sigma: &Permutation) -> (GappedPermutation, Letter) {
    let (&last, prefix) = sigma.split_last().expect("nonempty permutation");
    (
        GappedPermutation::from_parts_unchecked(prefix.to_vec(), last),
        last,
    )
}

/// `H(sigma) = C_{sigma_n}^{-1}(H(C^{sigma_n}(sigma'))) sigma_n`, with `H` of
/// the empty permutation empty.
pub fn han_h(sigma: &Permutation) -> Permutation {
    if sigma.is_empty() {
        return Permutation::empty();
    }
    let (prefix, last) = split_last(sigma);
    let inner = han_h(&c_upper(&prefix));
    c_lower_inv(last, &inner)
        .expect("sigma_n lies in [n]")
        .push_gap()
}

/// `H = I^{-1} o M`.
pub fn han_h_via_codes(sigma: &Permutation) -> Permutation {
    lehmer_decode(&cyclic_major_encode(sigma))
}

/// `H^{-1} = M^{-1} o I`.
pub fn han_h_inverse(sigma: &Permutation) -> Permutation {
    cyclic_major_decode(&lehmer_encode(sigma))
}

/// `C(sigma) = C^{sigma_n}(sigma_1 ... sigma_{n-1})`.
pub fn reduce(sigma: &Permutation) -> Permutation {
    c_upper(&split_last(sigma).0)
}

/// One row of the iteration `sigma, C(sigma), C^2(sigma), ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRow {
    /// Iteration index `j`.
    pub j: usize,
    /// `C^j(sigma)`, of length `n - j`.
    pub reduced: Permutation,
    /// Last value of `reduced`.
    pub last: Letter,
    /// `s_{n-j}(sigma) = (n - j) - last`.
    pub s_entry: u32,
    /// `H(C^j(sigma))`, built bottom-up.
    pub image: Permutation,
}

/// The full iteration for one permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub input: Permutation,
    pub rows: Vec<TraceRow>,
}

impl Trace {
    /// The cyclic major code read off the `s_entry` column.
    pub fn cyclic_major_code(&self) -> Code {
        Code::new(self.rows.iter().rev().map(|r| r.s_entry).collect())
            .expect("trace entries lie in E_n")
    }

    /// `L(C^{n-1}(sigma)), ..., L(C^0(sigma))`.
    pub fn l_sequence_bottom_up(&self) -> Vec<Letter> {
        self.rows.iter().rev().map(|r| r.last).collect()
    }

    /// `H(sigma)`, from the top row.
    pub fn image(&self) -> Permutation {
        self.rows
            .first()
            .map_or_else(Permutation::empty, |r| r.image.clone())
    }
}

/// Rows `j = 0, ..., n - 1` of the iteration, each with its last value,
/// the derived `s`-entry, and the matching step of the `H` construction.
pub fn c_iteration_trace(sigma: &Permutation) -> Trace {
    let n = sigma.len();
    let mut reduced = Vec::with_capacity(n);
    let mut cur = sigma.clone();
    while !cur.is_empty() {
        let next = reduce(&cur);
        reduced.push(cur);
        cur = next;
    }
    let mut images = vec![Permutation::empty(); n];
    let mut below = Permutation::empty();
    for (j, r) in reduced.iter().enumerate().rev() {
        let last = r.last_value().expect("nonempty");
        below = c_lower_inv(last, &below).expect("last in range").push_gap();
        images[j] = below.clone();
    }
    let rows = reduced
        .into_iter()
        .zip(images)
        .enumerate()
        .map(|(j, (reduced, image))| {
            let last = reduced.last_value().expect("nonempty");
            TraceRow {
                j,
                s_entry: (n - j) as u32 - last,
                last,
                reduced,
                image,
            }
        })
        .collect();
    Trace {
        input: sigma.clone(),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;

    fn p(s: &str) -> Permutation {
        parse_permutation(s).unwrap()
    }

    fn g(v: &[u32], x: u32) -> GappedPermutation {
        GappedPermutation::new(v.to_vec(), x).unwrap()
    }

    #[test]
    fn shift_and_standardize() {
        assert_eq!(c_upper(&g(&[3, 9, 2, 6, 4, 8, 5, 1], 7)), p("52486173"));
        assert_eq!(c_lower(&g(&[4, 9, 6, 1, 8, 2, 5, 3], 7)), p("48617253"));
        assert_eq!(c_upper(&g(&[3, 4, 2], 1)), p("231"));
        assert_eq!(c_lower(&g(&[3, 4, 2], 1)), p("231"));
        assert_eq!(c_upper(&g(&[2, 3, 1], 4)), p("231"));
        assert_eq!(c_lower(&g(&[2, 3, 1], 4)), p("231"));
    }

    #[test]
    fn inverses() {
        assert_eq!(
            c_lower_inv(7, &p("48617253")).unwrap().as_slice(),
            &[4, 9, 6, 1, 8, 2, 5, 3]
        );
        let one = c_lower_inv(2, &p("1")).unwrap();
        assert_eq!(one.as_slice(), &[1]);
        assert_eq!(one.push_gap(), p("12"));
        assert_eq!(
            c_upper_inv(4, &p("12")),
            Err(Error::GapOutOfRange { gap: 4, n: 3 })
        );
        assert!(c_lower_inv(0, &p("12")).is_err());
    }

    #[test]
    fn han_examples() {
        let s = p("392648517");
        assert_eq!(han_h(&s), p("496182537"));
        assert_eq!(han_h_via_codes(&s), p("496182537"));
        assert_eq!(han_h_inverse(&p("496182537")), s);
        assert_eq!(han_h(&Permutation::identity(7)), Permutation::identity(7));
        assert_eq!(
            han_h_inverse(&Permutation::identity(7)),
            Permutation::identity(7)
        );
        assert_eq!(han_h(&p("312")), p("132"));
        assert_eq!(han_h(&p("1")), p("1"));
        assert_eq!(han_h(&Permutation::empty()), Permutation::empty());
    }

    #[test]
    fn table_one_trace() {
        let t = c_iteration_trace(&p("392648517"));
        let reduced: Vec<String> = t.rows.iter().map(|r| r.reduced.to_string()).collect();
        assert_eq!(
            reduced,
            [
                "392648517",
                "52486173",
                "2715364",
                "534162",
                "31254",
                "4231",
                "312",
                "12",
                "1"
            ]
        );
        assert_eq!(t.l_sequence_bottom_up(), vec![1, 2, 2, 1, 4, 2, 4, 3, 7]);
        assert_eq!(
            t.cyclic_major_code().as_slice(),
            &[0, 0, 1, 3, 1, 4, 3, 5, 2]
        );
        let images: Vec<String> = t.rows.iter().map(|r| r.image.to_string()).collect();
        assert_eq!(
            images,
            [
                "496182537",
                "48617253",
                "3751624",
                "364152",
                "25314",
                "2431",
                "132",
                "12",
                "1"
            ]
        );
        assert_eq!(t.image(), p("496182537"));
    }

    #[test]
    fn identity_trace() {
        let t = c_iteration_trace(&Permutation::identity(5));
        for r in &t.rows {
            assert_eq!(r.reduced, Permutation::identity(5 - r.j));
            assert_eq!(r.s_entry, 0);
        }
    }
}
