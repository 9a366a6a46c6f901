//! Value types shared by every other module: permutations, words over a
//! multiset, codes in `E_n`, and permutations with one value removed.
//!
//! All types validate on construction and are immutable afterwards.
//! Positions reported in errors are 1-based.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter of a word or a value of a permutation. Always `>= 1`.
pub type Letter = u32;

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "PermutationRepr", try_from = "PermutationRepr")]
pub struct Permutation(Vec<Letter>);

#[derive(Serialize, Deserialize)]
struct PermutationRepr {
    n: usize,
    values: Vec<Letter>,
}

impl From<Permutation> for PermutationRepr {
    fn from(p: Permutation) -> Self {
        PermutationRepr {
            n: p.len(),
            values: p.0,
        }
    }
}

impl TryFrom<PermutationRepr> for Permutation {
    type Error = Error;

    fn try_from(r: PermutationRepr) -> Result<Self> {
        if r.n != r.values.len() {
            return Err(Error::LengthMismatch {
                expected: r.n,
                found: r.values.len(),
            });
        }
        if r.n == 0 {
            return Ok(Permutation::empty());
        }
        Permutation::new(r.values)
    }
}

impl Permutation {
    /// Validates that `values` is a rearrangement of `1..=n`.
    pub fn new(values: Vec<Letter>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        check_rearrangement(&values, values.len(), None)?;
        Ok(Permutation(values))
    }

    /// The empty permutation, only used as a recursion base.
    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as Letter).collect())
    }

    pub fn reversal(n: usize) -> Self {
        Permutation((1..=n as Letter).rev().collect())
    }

    pub(crate) fn from_vec_unchecked(values: Vec<Letter>) -> Self {
        debug_assert!(check_rearrangement(&values, values.len(), None).is_ok());
        Permutation(values)
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Letter> {
        self.0
    }

    /// Last value, `None` for the empty permutation.
    pub fn last_value(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Space-separated rendering, valid for every `n`.
    pub fn to_spaced_string(&self) -> String {
        join(&self.0, " ")
    }

    /// Undelimited digit rendering, available only when `n <= 9`.
    pub fn to_compact_string(&self) -> Option<String> {
        (self.len() <= 9).then(|| self.0.iter().map(|v| v.to_string()).collect())
    }
}

impl Deref for Permutation {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl AsRef<[Letter]> for Permutation {
    fn as_ref(&self) -> &[Letter] {
        &self.0
    }
}

impl fmt::Display for Permutation {
    /// Compact digits for `n <= 9`, space-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_compact_string() {
            Some(s) => f.write_str(&s),
            None => f.write_str(&self.to_spaced_string()),
        }
    }
}

/// Letter multiplicities `m_1, ..., m_k` of a rearrangement class `R(X)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultisetSpec {
    multiplicities: Vec<usize>,
}

impl MultisetSpec {
    /// Zero multiplicities are allowed; the alphabet size is `m.len()`.
    pub fn new(multiplicities: Vec<usize>) -> Self {
        MultisetSpec { multiplicities }
    }

    /// The spec of `S_n`: every letter once.
    pub fn permutations(n: usize) -> Self {
        MultisetSpec::new(vec![1; n])
    }

    /// Infers the spec from letter counts, with `k` the largest letter.
    pub fn infer(letters: &[Letter]) -> Self {
        let k = letters.iter().copied().max().unwrap_or(0) as usize;
        let mut m = vec![0; k];
        for &l in letters {
            if l >= 1 {
                m[l as usize - 1] += 1;
            }
        }
        MultisetSpec::new(m)
    }

    /// Alphabet size.
    pub fn k(&self) -> usize {
        self.multiplicities.len()
    }

    /// Word length.
    pub fn n(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Drops trailing letters with multiplicity zero.
    pub fn trimmed(&self) -> Self {
        let mut m = self.multiplicities.clone();
        while m.last() == Some(&0) {
            m.pop();
        }
        MultisetSpec::new(m)
    }

    /// True when every multiplicity is exactly one.
    pub fn is_permutation_class(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 1)
    }

    /// `n! / (m_1! ... m_k!)`, or `None` on overflow.
    pub fn class_size(&self) -> Option<u128> {
        // Product of binomials keeps intermediates small.
        let mut total: u128 = 1;
        let mut placed: u128 = 0;
        for &m in &self.multiplicities {
            for j in 1..=m as u128 {
                placed += 1;
                total = total.checked_mul(placed)? / j;
            }
        }
        Some(total)
    }

    /// The lexicographically least word of the class.
    pub fn least_word(&self) -> Vec<Letter> {
        self.multiplicities
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| std::iter::repeat_n(i as Letter + 1, m))
            .collect()
    }
}

impl fmt::Display for MultisetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("R(")?;
        for (i, m) in self.multiplicities.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}^{}", i + 1, m)?;
        }
        f.write_str(")")
    }
}

/// A word in a rearrangement class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
    spec: MultisetSpec,
}

impl Word {
    /// Checks the letters against an explicit spec.
    pub fn new(letters: Vec<Letter>, spec: MultisetSpec) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Empty);
        }
        let k = spec.k();
        let mut counts = vec![0usize; k];
        for (i, &l) in letters.iter().enumerate() {
            if l == 0 || l as usize > k {
                return Err(Error::OutOfRange {
                    value: l,
                    position: i + 1,
                    max: k,
                });
            }
            counts[l as usize - 1] += 1;
        }
        for (i, (&found, &expected)) in counts.iter().zip(spec.multiplicities()).enumerate() {
            if found != expected {
                return Err(Error::MultiplicityMismatch {
                    letter: i as Letter + 1,
                    found,
                    expected,
                });
            }
        }
        Ok(Word { letters, spec })
    }

    /// Builds a word whose spec is inferred from the letters.
    pub fn from_letters(letters: Vec<Letter>) -> Result<Self> {
        if let Some(i) = letters.iter().position(|&l| l == 0) {
            return Err(Error::OutOfRange {
                value: 0,
                position: i + 1,
                max: letters.iter().copied().max().unwrap_or(0) as usize,
            });
        }
        let spec = MultisetSpec::infer(&letters);
        Word::new(letters, spec)
    }

    pub(crate) fn from_parts_unchecked(letters: Vec<Letter>, spec: MultisetSpec) -> Self {
        Word { letters, spec }
    }

    pub fn spec(&self) -> &MultisetSpec {
        &self.spec
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    /// Converts to a permutation when every letter of `[n]` occurs once.
    pub fn to_permutation(&self) -> Option<Permutation> {
        self.spec
            .is_permutation_class()
            .then(|| Permutation::from_vec_unchecked(self.letters.clone()))
    }
}

impl From<Permutation> for Word {
    fn from(p: Permutation) -> Self {
        let spec = MultisetSpec::permutations(p.len());
        Word { letters: p.0, spec }
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.letters
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_letters(&self.letters))
    }
}

/// An element of `E_n`: `0 <= a_i <= i - 1` for every 1-based `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Code(Vec<u32>);

impl Code {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if let Some((i, &a)) = entries.iter().enumerate().find(|&(i, &a)| a as usize > i) {
            return Err(Error::CodeOutOfBound {
                value: a,
                position: i + 1,
                bound: i,
            });
        }
        Ok(Code(entries))
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(entries.iter().enumerate().all(|(i, &a)| a as usize <= i));
        Code(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Code(vec![0; n])
    }

    /// `(0, 1, ..., n - 1)`, the largest element of `E_n`.
    pub fn maximal(n: usize) -> Self {
        Code((0..n as u32).collect())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }
}

impl TryFrom<Vec<u32>> for Code {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Code::new(v)
    }
}

impl From<Code> for Vec<u32> {
    fn from(c: Code) -> Self {
        c.0
    }
}

impl Deref for Code {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Code {
    /// Comma-separated entries.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0, ","))
    }
}

/// A permutation of `[n] \ {gap}`, of length `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GappedPermutation {
    values: Vec<Letter>,
    gap: Letter,
}

impl GappedPermutation {
    pub fn new(values: Vec<Letter>, gap: Letter) -> Result<Self> {
        let n = values.len() + 1;
        if gap == 0 || gap as usize > n {
            return Err(Error::GapOutOfRange { gap, n });
        }
        check_rearrangement(&values, n, Some(gap))?;
        Ok(GappedPermutation { values, gap })
    }

    pub(crate) fn from_parts_unchecked(values: Vec<Letter>, gap: Letter) -> Self {
        debug_assert!(check_rearrangement(&values, values.len() + 1, Some(gap)).is_ok());
        GappedPermutation { values, gap }
    }

    pub fn gap(&self) -> Letter {
        self.gap
    }

    /// Ambient size: the values come from `[n]`.
    pub fn n(&self) -> usize {
        self.values.len() + 1
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<Letter> {
        self.values
    }

    /// Appends the missing value, yielding a permutation of `[n]`.
    pub fn push_gap(self) -> Permutation {
        let mut v = self.values;
        v.push(self.gap);
        Permutation::from_vec_unchecked(v)
    }
}

impl Deref for GappedPermutation {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.values
    }
}

/// `tau_i = n + 1 - sigma_i`.
pub fn complement(sigma: &Permutation) -> Permutation {
    let n1 = sigma.len() as Letter + 1;
    Permutation(sigma.iter().map(|&v| n1 - v).collect())
}

/// Checks that `values` hits every element of `[n]` except `gap` exactly once.
fn check_rearrangement(values: &[Letter], n: usize, gap: Option<Letter>) -> Result<()> {
    let expected_len = n - usize::from(gap.is_some());
    let mut seen = vec![false; n + 1];
    for (i, &v) in values.iter().enumerate() {
        if v == 0 || v as usize > n {
            return Err(Error::OutOfRange {
                value: v,
                position: i + 1,
                max: n,
            });
        }
        if Some(v) == gap {
            return Err(Error::GapMismatch {
                value: v,
                position: i + 1,
            });
        }
        if std::mem::replace(&mut seen[v as usize], true) {
            return Err(Error::Duplicate {
                value: v,
                position: i + 1,
            });
        }
    }
    if values.len() != expected_len {
        return Err(Error::LengthMismatch {
            expected: expected_len,
            found: values.len(),
        });
    }
    Ok(())
}

fn join(values: &[u32], sep: &str) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Compact digits when every letter is a single digit, spaces otherwise.
pub fn render_letters(letters: &[Letter]) -> String {
    if letters.iter().all(|&l| l <= 9) {
        letters.iter().map(|l| l.to_string()).collect()
    } else {
        join(letters, " ")
    }
}

/// Splits `text` into integer tokens.
///
/// Spaces and commas delimit. An undelimited string of digits is read one
/// digit per value. Returns the values together with whether the compact
/// form was used.
pub fn tokenize(text: &str) -> Result<(Vec<u32>, bool)> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Empty);
    }
    let delimited = text.contains(|c: char| c == ',' || c.is_whitespace());
    if !delimited {
        let values = text
            .chars()
            .enumerate()
            .map(|(i, c)| {
                c.to_digit(10).ok_or_else(|| Error::InvalidToken {
                    token: c.to_string(),
                    position: i + 1,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok((values, true));
    }
    let values = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .enumerate()
        .map(|(i, t)| {
            t.parse::<u32>().map_err(|_| Error::InvalidToken {
                token: t.to_string(),
                position: i + 1,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(Error::Empty);
    }
    Ok((values, false))
}

/// Parses `"392648517"`, `"3 9 2 6"` or `"3,9,2,6"`.
///
/// The undelimited form is accepted only for `n <= 9`.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let (values, compact) = tokenize(text)?;
    if compact && values.len() > 9 {
        return Err(Error::AmbiguousCompact { len: values.len() });
    }
    Permutation::new(values)
}

/// Parses a word; the spec is inferred when `spec` is `None`.
pub fn parse_word(text: &str, spec: Option<&MultisetSpec>) -> Result<Word> {
    let (letters, _) = tokenize(text)?;
    match spec {
        Some(spec) => Word::new(letters, spec.clone()),
        None => Word::from_letters(letters),
    }
}

/// Parses a code in `E_n`, with the same token rules as permutations.
pub fn parse_code(text: &str) -> Result<Code> {
    let (entries, _) = tokenize(text)?;
    Code::new(entries)
}

/// Parses a comma- or space-separated list of multiplicities.
pub fn parse_spec(text: &str) -> Result<MultisetSpec> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Empty);
    }
    let m = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .enumerate()
        .map(|(i, t)| {
            t.parse::<usize>().map_err(|_| Error::InvalidToken {
                token: t.to_string(),
                position: i + 1,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MultisetSpec::new(m))
}
