//! Word statistics: descents, `maj`, `inv`, `Z`, cyclic intervals and the
//! t- and s-vectors.
//!
//! Every function takes a letter slice so it applies to both [`Word`] and
//! [`Permutation`](crate::Permutation) through deref. Positions are 1-based.
//!
//! [`Word`]: crate::Word

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::perm::{Code, Letter};

/// Right end of a cyclic interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Upper {
    Letter(Letter),
    Infinity,
}

/// The cyclic interval `]]lo, hi]]` over the alphabet `[k]`.
///
/// For `lo <= hi` it is `{z : lo < z <= hi}`; for `lo > hi` it wraps around
/// to `{z : z > lo or z <= hi}`; with an infinite upper end it is
/// `{z : z > lo}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicInterval {
    pub lo: Letter,
    pub hi: Upper,
    pub k: usize,
}

impl CyclicInterval {
    pub fn new(lo: Letter, hi: Upper, k: usize) -> Self {
        CyclicInterval { lo, hi, k }
    }

    pub fn contains(&self, z: Letter) -> bool {
        if z == 0 || z as usize > self.k {
            return false;
        }
        match self.hi {
            Upper::Infinity => z > self.lo,
            Upper::Letter(hi) if self.lo <= hi => self.lo < z && z <= hi,
            Upper::Letter(hi) => z > self.lo || z <= hi,
        }
    }

    /// All members in increasing order.
    pub fn members(&self) -> Vec<Letter> {
        (1..=self.k as Letter)
            .filter(|&z| self.contains(z))
            .collect()
    }
}

/// Shorthand for [`CyclicInterval::contains`].
pub fn cyclic_contains(iv: &CyclicInterval, z: Letter) -> bool {
    iv.contains(z)
}

/// Scalar statistics selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Maj,
    Inv,
    Des,
    Z,
}

impl Statistic {
    pub fn eval(self, w: &[Letter]) -> usize {
        match self {
            Statistic::Maj => maj(w),
            Statistic::Inv => inv(w),
            Statistic::Des => des(w),
            Statistic::Z => z_statistic(w),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Maj => "maj",
            Statistic::Inv => "inv",
            Statistic::Des => "des",
            Statistic::Z => "z",
        }
    }
}

impl std::str::FromStr for Statistic {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "maj" => Ok(Statistic::Maj),
            "inv" => Ok(Statistic::Inv),
            "des" => Ok(Statistic::Des),
            "z" | "Z" => Ok(Statistic::Z),
            other => Err(format!("unknown statistic {other:?}")),
        }
    }
}

/// A t- or s-vector. Entry `i` never exceeds `i - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StatVector(Vec<u32>);

impl StatVector {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    /// Re-validates the `E_n` bound and reinterprets as a code.
    pub fn to_code(&self) -> Result<Code> {
        Code::new(self.0.clone())
    }
}

impl std::ops::Deref for StatVector {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

/// 1-based positions `i` with `w_i > w_{i+1}`.
pub fn descent_set(w: &[Letter]) -> Vec<usize> {
    w.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] > p[1])
        .map(|(i, _)| i + 1)
        .collect()
}

pub fn des(w: &[Letter]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

/// Major index: the sum of descent positions.
pub fn maj(w: &[Letter]) -> usize {
    w.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] > p[1])
        .map(|(i, _)| i + 1)
        .sum()
}

/// Number of pairs `i < j` with `w_i > w_j`.
pub fn inv(w: &[Letter]) -> usize {
    let mut count = 0;
    for (i, &a) in w.iter().enumerate() {
        count += w[i + 1..].iter().filter(|&&b| a > b).count();
    }
    count
}

/// Sum over letter pairs `a < b` of the major index of the subword made of
/// the `a`s and `b`s.
pub fn z_statistic(w: &[Letter]) -> usize {
    let k = w.iter().copied().max().unwrap_or(0);
    let mut sub = Vec::with_capacity(w.len());
    let mut total = 0;
    for a in 1..=k {
        for b in a + 1..=k {
            sub.clear();
            sub.extend(w.iter().copied().filter(|&l| l == a || l == b));
            total += maj(&sub);
        }
    }
    total
}

fn alphabet(w: &[Letter]) -> usize {
    w.iter().copied().max().unwrap_or(0) as usize
}

/// `t_i`: earlier letters in `]]w_i, inf]]`, i.e. strictly greater.
pub fn t_vector(w: &[Letter]) -> StatVector {
    let k = alphabet(w);
    StatVector(
        (0..w.len())
            .map(|i| {
                let iv = CyclicInterval::new(w[i], Upper::Infinity, k);
                w[..i].iter().filter(|&&z| iv.contains(z)).count() as u32
            })
            .collect(),
    )
}

/// `s_i`: earlier letters in `]]w_i, w_{i+1}]]`, with `w_{n+1} = inf`.
pub fn s_vector(w: &[Letter]) -> StatVector {
    let k = alphabet(w);
    StatVector(
        (0..w.len())
            .map(|i| {
                let hi = w.get(i + 1).map_or(Upper::Infinity, |&y| Upper::Letter(y));
                let iv = CyclicInterval::new(w[i], hi, k);
                w[..i].iter().filter(|&&z| iv.contains(z)).count() as u32
            })
            .collect(),
    )
}

/// Prefix-count variants in `O(n log k)`, bit-identical to the scans above.
pub mod fast {
    use super::{alphabet, StatVector};
    use crate::perm::Letter;

    struct Fenwick(Vec<u32>);

    impl Fenwick {
        fn new(n: usize) -> Self {
            Fenwick(vec![0; n + 1])
        }

        fn add(&mut self, mut i: usize) {
            while i < self.0.len() {
                self.0[i] += 1;
                i += i & i.wrapping_neg();
            }
        }

        /// Number of inserted letters `<= i`.
        fn prefix(&self, mut i: usize) -> u32 {
            let mut s = 0;
            while i > 0 {
                s += self.0[i];
                i &= i - 1;
            }
            s
        }
    }

    pub fn t_vector(w: &[Letter]) -> StatVector {
        let mut fw = Fenwick::new(alphabet(w));
        let mut out = Vec::with_capacity(w.len());
        for (i, &x) in w.iter().enumerate() {
            out.push(i as u32 - fw.prefix(x as usize));
            fw.add(x as usize);
        }
        StatVector(out)
    }

    pub fn s_vector(w: &[Letter]) -> StatVector {
        let mut fw = Fenwick::new(alphabet(w));
        let mut out = Vec::with_capacity(w.len());
        for (i, &x) in w.iter().enumerate() {
            let seen = i as u32;
            let at_x = fw.prefix(x as usize);
            let s = match w.get(i + 1) {
                None => seen - at_x,
                Some(&y) if x <= y => fw.prefix(y as usize) - at_x,
                Some(&y) => seen - (at_x - fw.prefix(y as usize)),
            };
            out.push(s);
            fw.add(x as usize);
        }
        StatVector(out)
    }

    pub fn inv(w: &[Letter]) -> usize {
        t_vector(w).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const W1: [u32; 9] = [2, 1, 1, 3, 2, 4, 3, 1, 4];
    const W2: [u32; 9] = [3, 1, 2, 4, 3, 2, 1, 4, 3];
    const P: [u32; 8] = [3, 8, 5, 1, 6, 4, 2, 7];

    #[test]
    fn statistics_of_the_running_word() {
        assert_eq!(descent_set(&W1), vec![1, 4, 6, 7]);
        assert_eq!(des(&W1), 4);
        assert_eq!(maj(&W1), 18);
        assert_eq!(inv(&W1), 9);
        assert_eq!(z_statistic(&W1), 16);
    }

    #[test]
    fn trivial_shapes() {
        let id: Vec<u32> = (1..=6).collect();
        let rev: Vec<u32> = (1..=6).rev().collect();
        assert!(descent_set(&id).is_empty());
        assert_eq!(descent_set(&rev), vec![1, 2, 3, 4, 5]);
        assert_eq!(
            (maj(&id), des(&id), inv(&id), z_statistic(&id)),
            (0, 0, 0, 0)
        );
        assert_eq!(inv(&rev), 15);
        assert_eq!(maj(&P), 16);
        assert_eq!(inv(&W2), 13);
        assert_eq!(maj(&[1]), 0);
    }

    #[test]
    fn cyclic_membership() {
        let wrap = CyclicInterval::new(8, Upper::Letter(5), 8);
        assert!(wrap.contains(3));
        assert!(!wrap.contains(6));
        assert!(!wrap.contains(8));
        for x in 1..=6 {
            assert!(CyclicInterval::new(x, Upper::Letter(x), 6)
                .members()
                .is_empty());
        }
        assert_eq!(
            CyclicInterval::new(3, Upper::Infinity, 4).members(),
            vec![4]
        );
        assert_eq!(
            CyclicInterval::new(4, Upper::Letter(2), 5).members(),
            vec![1, 2, 5]
        );
    }

    #[test]
    fn vectors_of_examples() {
        assert_eq!(t_vector(&W2).as_slice(), &[0, 1, 1, 0, 1, 3, 5, 0, 2]);
        assert_eq!(s_vector(&W2).as_slice(), &[0, 0, 1, 3, 3, 4, 5, 6, 2]);
        assert_eq!(t_vector(&P).as_slice(), &[0, 0, 1, 3, 1, 3, 5, 1]);
        assert_eq!(s_vector(&P).as_slice(), &[0, 1, 1, 2, 3, 4, 4, 1]);
        let id: Vec<u32> = (1..=7).collect();
        assert!(t_vector(&id).iter().all(|&a| a == 0));
        assert!(s_vector(&id).iter().all(|&a| a == 0));
    }

    #[test]
    fn word_s_sum() {
        assert_eq!(descent_set(&W2), vec![1, 4, 5, 6, 8]);
        assert_eq!(s_vector(&W2).sum(), 24);
        assert_eq!(maj(&W2), 24);
    }

    fn word_strategy() -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(1u32..=5, 1..12)
    }

    proptest! {
        #[test]
        fn vectors_lie_in_e_n(w in word_strategy()) {
            prop_assert!(t_vector(&w).to_code().is_ok());
            prop_assert!(s_vector(&w).to_code().is_ok());
        }

        #[test]
        fn t_sums_to_inv(w in word_strategy()) {
            prop_assert_eq!(t_vector(&w).sum(), inv(&w));
        }

        #[test]
        fn s_sums_to_maj_on_words(w in word_strategy()) {
            prop_assert_eq!(s_vector(&w).sum(), maj(&w));
        }

        #[test]
        fn fenwick_matches_scan(w in word_strategy()) {
            prop_assert_eq!(fast::t_vector(&w), t_vector(&w));
            prop_assert_eq!(fast::s_vector(&w), s_vector(&w));
            prop_assert_eq!(fast::inv(&w), inv(&w));
        }
    }
}
