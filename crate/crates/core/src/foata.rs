//! Foata's second fundamental transformation and the partial Foata maps.

use crate::error::{Error, Result};
use crate::perm::{Letter, Permutation, Word};

/// The `x`-factorization `w = v_1 b_1 ... v_p b_p`.
///
/// When the last letter of `w` is `<= x`, every `b_i <= x` and every letter
/// of every `v_i` is `> x`; otherwise the roles are swapped. Letters equal
/// to `x` always fall on the `<= x` side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XFactorization {
    pub x: Letter,
    pub blocks: Vec<(Vec<Letter>, Letter)>,
}

impl XFactorization {
    /// Concatenation `v_1 b_1 ... v_p b_p`.
    pub fn word(&self) -> Vec<Letter> {
        self.blocks
            .iter()
            .flat_map(|(v, b)| v.iter().copied().chain(std::iter::once(*b)))
            .collect()
    }

    /// Concatenation `b_1 v_1 ... b_p v_p`.
    pub fn swapped(&self) -> Vec<Letter> {
        self.blocks
            .iter()
            .flat_map(|(v, b)| std::iter::once(*b).chain(v.iter().copied()))
            .collect()
    }
}

pub fn x_factorize(w: &[Letter], x: Letter) -> XFactorization {
    let mut blocks = Vec::new();
    if let Some(&last) = w.last() {
        let low = last <= x;
        let mut v = Vec::new();
        for &l in w {
            if (l <= x) == low {
                blocks.push((std::mem::take(&mut v), l));
            } else {
                v.push(l);
            }
        }
        debug_assert!(v.is_empty());
    }
    XFactorization { x, blocks }
}

/// `gamma_x(w) = b_1 v_1 ... b_p v_p`; `gamma_x` of the empty word is empty.
pub fn gamma(x: Letter, w: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(w.len());
    gamma_into(x, w, &mut out);
    out
}

fn gamma_into(x: Letter, w: &[Letter], out: &mut Vec<Letter>) {
    let Some(&last) = w.last() else { return };
    let low = last <= x;
    let mut start = 0;
    for (i, &l) in w.iter().enumerate() {
        if (l <= x) == low {
            out.push(l);
            out.extend_from_slice(&w[start..i]);
            start = i + 1;
        }
    }
}

/// `Phi(w)`, computed as a left-to-right fold: after step `i` the buffer
/// holds `Phi(w_1 ... w_i)`.
pub fn foata_phi(w: &[Letter]) -> Vec<Letter> {
    let mut acc: Vec<Letter> = Vec::with_capacity(w.len());
    let mut scratch = Vec::with_capacity(w.len());
    for &a in w {
        scratch.clear();
        gamma_into(a, &acc, &mut scratch);
        std::mem::swap(&mut acc, &mut scratch);
        acc.push(a);
    }
    acc
}

/// `Phi(w) = gamma_{w_n}(Phi(w')) w_n`, following the recursion literally.
pub fn foata_phi_recursive(w: &[Letter]) -> Vec<Letter> {
    match w.split_last() {
        None => Vec::new(),
        Some((&a, [])) => vec![a],
        Some((&a, rest)) => {
            let mut out = gamma(a, &foata_phi_recursive(rest));
            out.push(a);
            out
        }
    }
}

/// [`foata_phi`] on a word; the spec is unchanged.
pub fn foata_word(w: &Word) -> Word {
    Word::from_parts_unchecked(foata_phi(w), w.spec().clone())
}

/// [`foata_phi`] on a permutation.
pub fn foata_perm(sigma: &Permutation) -> Permutation {
    Permutation::from_vec_unchecked(foata_phi(sigma))
}

/// `phi_k(sigma) = gamma_{sigma_k}(sigma_1 ... sigma_{k-1}) sigma_k ... sigma_n`,
/// with `phi_1` the identity. `k` is 1-based.
pub fn partial_foata(k: usize, sigma: &Permutation) -> Result<Permutation> {
    let n = sigma.len();
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    let mut out = gamma(sigma[k - 1], &sigma[..k - 1]);
    out.extend_from_slice(&sigma[k - 1..]);
    Ok(Permutation::from_vec_unchecked(out))
}

/// Applies `phi_1`, then `phi_2`, ..., then `phi_n`.
pub fn compose_partial_foata(sigma: &Permutation) -> Permutation {
    (1..=sigma.len()).fold(sigma.clone(), |acc, k| {
        partial_foata(k, &acc).expect("k ranges over 1..=n")
    })
}

/// True iff every prefix `{sigma_1, ..., sigma_i}` is a run of consecutive
/// integers.
pub fn is_strong_fixed_point(sigma: &Permutation) -> bool {
    let Some(&first) = sigma.first() else {
        return true;
    };
    let (mut lo, mut hi) = (first, first);
    for (i, &v) in sigma.iter().enumerate() {
        lo = lo.min(v);
        hi = hi.max(v);
        if (hi - lo) as usize != i {
            return false;
        }
    }
    true
}

/// True iff `phi_k(sigma) = sigma` for every `k`.
pub fn is_fixed_by_all_partial_maps(sigma: &Permutation) -> bool {
    (1..=sigma.len()).all(|k| partial_foata(k, sigma).expect("k in range") == *sigma)
}
