//! The inversion (Lehmer) code `I` and the cyclic major code `M`, both
//! bijections `S_n -> E_n`, and the entrywise transform between them.

use crate::perm::{Code, Letter, Permutation};
use crate::stats::{s_vector, t_vector};

/// `I(sigma)`: entry `i` counts earlier values greater than `sigma_i`.
pub fn lehmer_encode(sigma: &Permutation) -> Code {
    t_vector(sigma)
        .to_code()
        .expect("t-vector of a permutation lies in E_n")
}

/// Inverse of [`lehmer_encode`].
pub fn lehmer_decode(code: &Code) -> Permutation {
    let n = code.len();
    let mut remaining: Vec<Letter> = (1..=n as Letter).collect();
    let mut out = vec![0; n];
    // Right to left: the unplaced values are exactly those at earlier
    // positions plus sigma_i itself, and t_i of them exceed sigma_i.
    for i in (0..n).rev() {
        let idx = remaining.len() - 1 - code[i] as usize;
        out[i] = remaining.remove(idx);
    }
    Permutation::from_vec_unchecked(out)
}

/// `M(sigma)`: entry `i` counts earlier values in `]]sigma_i, sigma_{i+1}]]`.
pub fn cyclic_major_encode(sigma: &Permutation) -> Code {
    s_vector(sigma)
        .to_code()
        .expect("s-vector of a permutation lies in E_n")
}

/// Inverse of [`cyclic_major_encode`], by the deletion procedure.
///
/// `sigma_n = n - s_n`. Then for `k = n - 1, ..., 1`, walk the values
/// `sigma_{k+1}, sigma_{k+1} - 1, ..., 1, n, n - 1, ..., sigma_{k+1} + 1`,
/// skip those already placed, and take the `(s_k + 1)`-th survivor.
pub fn cyclic_major_decode(code: &Code) -> Permutation {
    let n = code.len();
    if n == 0 {
        return Permutation::empty();
    }
    let mut out = vec![0 as Letter; n];
    let mut placed = vec![false; n + 1];
    out[n - 1] = (n - code[n - 1] as usize) as Letter;
    placed[out[n - 1] as usize] = true;
    for k in (0..n - 1).rev() {
        let next = out[k + 1] as usize;
        let wanted = code[k] as usize;
        let survivor = (0..n)
            .map(|step| (next + n - 1 - step) % n + 1)
            .filter(|&v| !placed[v])
            .nth(wanted)
            .expect("E_n entry selects an existing survivor");
        out[k] = survivor as Letter;
        placed[survivor] = true;
    }
    Permutation::from_vec_unchecked(out)
}

/// Maps `I(sigma)` to `M(sigma)`: `s_n = t_n` and
/// `s_i = t_i - t_{i+1} (mod i)` for `i < n`.
pub fn t_to_s(t: &Code) -> Code {
    let n = t.len();
    let mut s = vec![0u32; n];
    if n == 0 {
        return Code::zeros(0);
    }
    s[n - 1] = t[n - 1];
    for i in 1..n {
        // 1-based index i, stored at i - 1.
        let (ti, tn) = (t[i - 1], t[i]);
        s[i - 1] = if ti >= tn {
            ti - tn
        } else {
            ti + i as u32 - tn
        };
    }
    Code::from_vec_unchecked(s)
}

/// Inverse of [`t_to_s`]: `t_n = s_n`, then
/// `t_i = (s_i + t_{i+1}) mod i` from right to left.
pub fn s_to_t(s: &Code) -> Code {
    let n = s.len();
    let mut t = vec![0u32; n];
    if n == 0 {
        return Code::zeros(0);
    }
    t[n - 1] = s[n - 1];
    for i in (1..n).rev() {
        t[i - 1] = (s[i - 1] + t[i]) % i as u32;
    }
    Code::from_vec_unchecked(t)
}

/// `b_i = i - 1 - a_i`.
pub fn code_complement(a: &Code) -> Code {
    Code::from_vec_unchecked(a.iter().enumerate().map(|(i, &ai)| i as u32 - ai).collect())
}
