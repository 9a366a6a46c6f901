//! Exhaustive enumeration and verification.
//!
//! Populations are enumerated in lexicographic order and addressed by their
//! index in that order, so any counterexample can be regenerated from its
//! index alone. Work is split into disjoint index ranges; with the
//! `parallel` feature the ranges run on the rayon pool, otherwise (or with
//! [`Execution::Sequential`]) they run in order on the calling thread. Both
//! paths produce identical reports.

use std::collections::HashMap;
use std::fmt;
use std::ops::{ControlFlow, Range};

use serde::Serialize;

use crate::codes::{
    code_complement, cyclic_major_decode, cyclic_major_encode, lehmer_decode, lehmer_encode,
    s_to_t, t_to_s,
};
use crate::error::{Error, Result};
use crate::foata::{
    compose_partial_foata, foata_phi, foata_phi_recursive, is_fixed_by_all_partial_maps,
    is_strong_fixed_point,
};
use crate::han::{c_iteration_trace, han_h, han_h_inverse, han_h_via_codes};
use crate::perm::{
    complement, parse_permutation, render_letters, Code, Letter, MultisetSpec, Permutation,
};
use crate::stats::{self, inv, maj, t_vector, z_statistic, Statistic};

/// Indices per work unit.
const CHUNK: usize = 2048;

/// Enumeration limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest `n` for which `S_n` may be enumerated.
    pub max_n: usize,
    /// Largest rearrangement class that may be enumerated.
    pub max_class: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_n: 9,
            max_class: 100_000,
        }
    }
}

impl Caps {
    /// Default caps, with `max_n` overridden by `MAHONIA_MAX_N` when set.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(n) = std::env::var("MAHONIA_MAX_N")
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            caps.max_n = n;
        }
        caps
    }
}

/// How index ranges are scheduled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    #[default]
    Parallel,
}

/// A rearrangement class `R(X)`, or `S_n` when every multiplicity is one,
/// in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Population {
    spec: MultisetSpec,
    size: usize,
    symmetric: bool,
}

impl Population {
    pub fn symmetric(n: usize, caps: &Caps) -> Result<Self> {
        if n > caps.max_n {
            return Err(Error::CapExceeded {
                what: "S_n",
                requested: n as u128,
                cap: caps.max_n as u128,
            });
        }
        let spec = MultisetSpec::permutations(n);
        let size = spec.class_size().expect("n! fits for capped n") as usize;
        Ok(Population {
            spec,
            size,
            symmetric: true,
        })
    }

    pub fn class(spec: MultisetSpec, caps: &Caps) -> Result<Self> {
        let size = spec.class_size().unwrap_or(u128::MAX);
        if size > caps.max_class {
            return Err(Error::CapExceeded {
                what: "rearrangement class",
                requested: size,
                cap: caps.max_class,
            });
        }
        if spec.n() == 0 {
            return Err(Error::Empty);
        }
        Ok(Population {
            spec,
            size: size as usize,
            symmetric: false,
        })
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn spec(&self) -> &MultisetSpec {
        &self.spec
    }

    pub fn label(&self) -> String {
        if self.symmetric {
            format!("S_{}", self.spec.n())
        } else {
            self.spec.to_string()
        }
    }

    /// The element at lexicographic `index`.
    pub fn get(&self, index: usize) -> Option<Vec<Letter>> {
        (index < self.size).then(|| unrank(&self.spec, index as u128))
    }

    /// All elements in lexicographic order.
    pub fn iter(&self) -> LexIter {
        LexIter {
            current: (self.size > 0).then(|| self.spec.least_word()),
        }
    }

    /// Visits `range` in order, stopping early on `Break`.
    fn scan<T>(
        &self,
        range: Range<usize>,
        mut f: impl FnMut(usize, &[Letter]) -> ControlFlow<T>,
    ) -> Option<T> {
        if range.is_empty() {
            return None;
        }
        let mut cur = unrank(&self.spec, range.start as u128);
        for idx in range {
            if let ControlFlow::Break(t) = f(idx, &cur) {
                return Some(t);
            }
            if !next_lex(&mut cur) {
                break;
            }
        }
        None
    }
}

/// Lexicographic successor iterator over the rearrangements of a word.
pub struct LexIter {
    current: Option<Vec<Letter>>,
}

impl Iterator for LexIter {
    type Item = Vec<Letter>;

    fn next(&mut self) -> Option<Vec<Letter>> {
        let out = self.current.take()?;
        let mut succ = out.clone();
        if next_lex(&mut succ) {
            self.current = Some(succ);
        }
        Some(out)
    }
}

/// Steps to the next rearrangement in lexicographic order; false at the last.
fn next_lex(a: &mut [Letter]) -> bool {
    let Some(i) = a.windows(2).rposition(|p| p[0] < p[1]) else {
        return false;
    };
    let j = a.iter().rposition(|&x| x > a[i]).expect("a[i+1] > a[i]");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

fn arrangements(counts: &[usize]) -> u128 {
    MultisetSpec::new(counts.to_vec())
        .class_size()
        .expect("capped classes fit in u128")
}

/// The rearrangement of rank `index` in lexicographic order.
fn unrank(spec: &MultisetSpec, mut index: u128) -> Vec<Letter> {
    let mut counts = spec.multiplicities().to_vec();
    let mut out = Vec::with_capacity(spec.n());
    for _ in 0..spec.n() {
        for a in 0..counts.len() {
            if counts[a] == 0 {
                continue;
            }
            counts[a] -= 1;
            let below = arrangements(&counts);
            if index < below {
                out.push(a as Letter + 1);
                break;
            }
            index -= below;
            counts[a] += 1;
        }
    }
    out
}

/// `S_n` in lexicographic order.
pub fn enumerate_sn(n: usize, caps: &Caps) -> Result<impl Iterator<Item = Permutation>> {
    let pop = Population::symmetric(n, caps)?;
    Ok(pop.iter().map(Permutation::from_vec_unchecked))
}

/// The words of `R(X)` in lexicographic order.
pub fn enumerate_rearrangements(
    spec: &MultisetSpec,
    caps: &Caps,
) -> Result<impl Iterator<Item = crate::perm::Word>> {
    let pop = Population::class(spec.clone(), caps)?;
    let spec = spec.clone();
    Ok(pop
        .iter()
        .map(move |w| crate::perm::Word::from_parts_unchecked(w, spec.clone())))
}

/// Every element of `E_n`, in lexicographic order.
pub fn enumerate_codes(n: usize) -> impl Iterator<Item = Code> {
    let mut cur = Some(vec![0u32; n]);
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut next = out.clone();
        // Odometer: position i (0-based) runs over 0..=i.
        if let Some(i) = (0..n).rev().find(|&i| (next[i] as usize) < i) {
            next[i] += 1;
            next[i + 1..].iter_mut().for_each(|a| *a = 0);
            cur = Some(next);
        }
        Some(Code::new(out).expect("odometer stays in E_n"))
    })
}

/// Every multiplicity vector with `k <= max_k` letters, each used at least
/// once, and total length `<= max_n`.
pub fn specs_up_to(max_n: usize, max_k: usize) -> Vec<MultisetSpec> {
    fn rec(left: usize, k_left: usize, cur: &mut Vec<usize>, out: &mut Vec<MultisetSpec>) {
        if !cur.is_empty() {
            out.push(MultisetSpec::new(cur.clone()));
        }
        if k_left == 0 {
            return;
        }
        for m in 1..=left {
            cur.push(m);
            rec(left - m, k_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_n, max_k, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| (a.n(), a.multiplicities()).cmp(&(b.n(), b.multiplicities())));
    out
}

/// Coefficients of `prod_{i=1}^{n} (1 + q + ... + q^{i-1})`.
///
/// Deliberately shares nothing with the statistic code.
pub fn q_factorial(n: usize) -> Vec<u64> {
    let mut poly = vec![1u64];
    for i in 1..=n {
        let mut next = vec![0u64; poly.len() + i - 1];
        for (d, &c) in poly.iter().enumerate() {
            for e in 0..i {
                next[d + e] += c;
            }
        }
        poly = next;
    }
    poly
}

/// Value counts of one statistic over a population.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributionTable {
    pub stat_name: String,
    pub population_label: String,
    /// `coefficients[v]` counts the elements with statistic value `v`.
    pub coefficients: Vec<u64>,
    pub population: u64,
}

/// The first failing element of a check, or a description of a failed
/// global property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Lexicographic index in the population, when the failure is pointwise.
    pub index: Option<usize>,
    pub input: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub population: String,
    pub size: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} on {} ({} elements)",
            if self.passed { "PASS" } else { "FAIL" },
            self.check,
            self.population,
            self.size
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  counterexample")?;
            if let Some(i) = c.index {
                write!(f, " #{i}")?;
            }
            if let Some(input) = &c.input {
                write!(f, " {input}")?;
            }
            write!(f, ": {}", c.detail)?;
        }
        Ok(())
    }
}

/// Named groups of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Stats,
    Codes,
    Han,
    Foata,
    Fixed,
    Mahonian,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Stats,
        Suite::Codes,
        Suite::Han,
        Suite::Foata,
        Suite::Fixed,
        Suite::Mahonian,
    ];
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "all" => Suite::All,
            "stats" => Suite::Stats,
            "codes" => Suite::Codes,
            "han" => Suite::Han,
            "foata" => Suite::Foata,
            "fixed" => Suite::Fixed,
            "mahonian" => Suite::Mahonian,
            other => return Err(format!("unknown suite {other:?}")),
        })
    }
}

type Check<'a> = dyn Fn(&[Letter]) -> Option<String> + Sync + 'a;

/// Runs checks over populations under fixed caps and scheduling.
#[derive(Clone, Copy, Debug, Default)]
pub struct Verifier {
    pub caps: Caps,
    pub execution: Execution,
}

impl Verifier {
    pub fn new(caps: Caps, execution: Execution) -> Self {
        Verifier { caps, execution }
    }

    pub fn sequential(caps: Caps) -> Self {
        Verifier::new(caps, Execution::Sequential)
    }

    fn ranges(len: usize) -> Vec<Range<usize>> {
        (0..len)
            .step_by(CHUNK)
            .map(|s| s..(s + CHUNK).min(len))
            .collect()
    }

    /// Applies `f` to every chunk; the output keeps chunk order.
    fn map_chunks<R, F>(&self, len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(Range<usize>) -> R + Sync + Send,
    {
        let ranges = Self::ranges(len);
        #[cfg(feature = "parallel")]
        if self.execution == Execution::Parallel {
            use rayon::prelude::*;
            return ranges.into_par_iter().map(f).collect();
        }
        ranges.into_iter().map(f).collect()
    }

    /// The lexicographically first element failing `check`.
    fn first_failure(&self, pop: &Population, check: &Check<'_>) -> Option<Counterexample> {
        self.map_chunks(pop.len(), |range| {
            pop.scan(range, |idx, w| match check(w) {
                Some(detail) => ControlFlow::Break(Counterexample {
                    index: Some(idx),
                    input: Some(render_letters(w)),
                    detail,
                }),
                None => ControlFlow::Continue(()),
            })
        })
        .into_iter()
        .flatten()
        .next()
    }

    fn report(
        &self,
        check: &str,
        pop: &Population,
        counterexample: Option<Counterexample>,
    ) -> VerificationReport {
        VerificationReport {
            check: check.to_string(),
            population: pop.label(),
            size: pop.len(),
            passed: counterexample.is_none(),
            counterexample,
        }
    }

    /// Runs a pointwise check over every element of `pop`.
    pub fn check_all(&self, name: &str, pop: &Population, check: &Check<'_>) -> VerificationReport {
        let cx = self.first_failure(pop, check);
        self.report(name, pop, cx)
    }

    fn check_sn(
        &self,
        name: &str,
        n: usize,
        check: impl Fn(&Permutation) -> Option<String> + Sync,
    ) -> Result<VerificationReport> {
        let pop = Population::symmetric(n, &self.caps)?;
        Ok(self.check_all(name, &pop, &|w| {
            check(&Permutation::from_vec_unchecked(w.to_vec()))
        }))
    }

    /// Checks that `f` is injective on `pop`, reporting the first collision.
    pub fn check_injective(
        &self,
        name: &str,
        pop: &Population,
        f: impl Fn(&[Letter]) -> Vec<Letter> + Sync,
    ) -> VerificationReport {
        let images: Vec<Vec<Letter>> = self
            .map_chunks(pop.len(), |range| {
                let mut out = Vec::with_capacity(range.len());
                pop.scan::<()>(range, |_, w| {
                    out.push(f(w));
                    ControlFlow::Continue(())
                });
                out
            })
            .into_iter()
            .flatten()
            .collect();
        let mut seen: HashMap<&[Letter], usize> = HashMap::with_capacity(images.len());
        let mut cx = None;
        for (idx, img) in images.iter().enumerate() {
            if let Some(&prev) = seen.get(img.as_slice()) {
                cx = Some(Counterexample {
                    index: Some(idx),
                    input: pop.get(idx).map(|w| render_letters(&w)),
                    detail: format!("image {} already produced by #{prev}", render_letters(img)),
                });
                break;
            }
            seen.insert(img, idx);
        }
        self.report(name, pop, cx)
    }

    /// Counts of `stat` over `pop`.
    pub fn distribution(&self, stat: Statistic, pop: &Population) -> DistributionTable {
        self.tally(stat.name(), pop, |w| stat.eval(w))
    }

    fn tally(
        &self,
        name: &str,
        pop: &Population,
        f: impl Fn(&[Letter]) -> usize + Sync,
    ) -> DistributionTable {
        let partial = self.map_chunks(pop.len(), |range| {
            let mut counts: Vec<u64> = Vec::new();
            pop.scan::<()>(range, |_, w| {
                let v = f(w);
                if counts.len() <= v {
                    counts.resize(v + 1, 0);
                }
                counts[v] += 1;
                ControlFlow::Continue(())
            });
            counts
        });
        let mut coefficients: Vec<u64> = Vec::new();
        for counts in partial {
            if coefficients.len() < counts.len() {
                coefficients.resize(counts.len(), 0);
            }
            for (c, v) in coefficients.iter_mut().zip(counts) {
                *c += v;
            }
        }
        DistributionTable {
            stat_name: name.to_string(),
            population_label: pop.label(),
            population: coefficients.iter().sum(),
            coefficients,
        }
    }

    /// `H = I^{-1} o M` on all of `S_n`.
    pub fn verify_h_equals_im(&self, n: usize) -> Result<VerificationReport> {
        self.check_sn("han: H = I^-1 o M", n, |s| {
            let (rec, codes) = (han_h(s), han_h_via_codes(s));
            (rec != codes).then(|| format!("recursion gives {rec}, codes give {codes}"))
        })
    }

    /// `maj`, `inv` and `Z` share one distribution on the class, and
    /// `maj(w) = inv(Phi(w))` pointwise.
    pub fn verify_mahonian(&self, spec: &MultisetSpec) -> Result<VerificationReport> {
        let pop = Population::class(spec.clone(), &self.caps)?;
        let name = "mahonian: maj ~ inv ~ Z, maj = inv o Phi";
        let pointwise = self.first_failure(&pop, &|w| {
            let phi = foata_phi(w);
            (maj(w) != inv(&phi)).then(|| {
                format!(
                    "maj = {}, inv(Phi) = {} with Phi = {}",
                    maj(w),
                    inv(&phi),
                    render_letters(&phi)
                )
            })
        });
        if pointwise.is_some() {
            return Ok(self.report(name, &pop, pointwise));
        }
        let tables: Vec<_> = [Statistic::Maj, Statistic::Inv, Statistic::Z]
            .into_iter()
            .map(|s| self.distribution(s, &pop))
            .collect();
        let cx = tables[1..]
            .iter()
            .find(|t| t.coefficients != tables[0].coefficients)
            .map(|t| Counterexample {
                index: None,
                input: None,
                detail: format!(
                    "maj table {:?} differs from {} table {:?}",
                    tables[0].coefficients, t.stat_name, t.coefficients
                ),
            });
        Ok(self.report(name, &pop, cx))
    }

    /// For every `sigma` in `S_n`: `H(sigma) = sigma` iff every prefix is
    /// consecutive iff every `t_i` is `0` or `i - 1`; and H-fixed points are
    /// Phi-fixed.
    pub fn verify_fixed_point_theorem(&self, n: usize) -> Result<VerificationReport> {
        self.check_sn("fixed: H-fixed <=> strong <=> t_i in {0, i-1}", n, |s| {
            let h_fixed = han_h_via_codes(s) == *s;
            let strong = is_strong_fixed_point(s);
            let extreme = t_vector(s)
                .iter()
                .enumerate()
                .all(|(i, &t)| t == 0 || t as usize == i);
            if h_fixed != strong || strong != extreme {
                return Some(format!(
                    "H-fixed {h_fixed}, strong {strong}, extreme code {extreme}"
                ));
            }
            (h_fixed && foata_phi(s) != s.as_slice()).then(|| "H-fixed but not Phi-fixed".into())
        })
    }

    /// `H(c sigma) = c H(sigma)`, `M(c sigma) = c M(sigma)`,
    /// `I(c sigma) = c I(sigma)`.
    pub fn verify_complement_commutation(&self, n: usize) -> Result<VerificationReport> {
        self.check_sn("han: H, M, I commute with complementation", n, |s| {
            let c = complement(s);
            if han_h_via_codes(&c) != complement(&han_h_via_codes(s)) {
                return Some("H(c sigma) != c H(sigma)".into());
            }
            if cyclic_major_encode(&c) != code_complement(&cyclic_major_encode(s)) {
                return Some("M(c sigma) != c M(sigma)".into());
            }
            (lehmer_encode(&c) != code_complement(&lehmer_encode(s)))
                .then(|| "I(c sigma) != c I(sigma)".into())
        })
    }

    /// Reports for one suite at one size `n`.
    pub fn suite_at(&self, suite: Suite, n: usize) -> Result<Vec<VerificationReport>> {
        let sn = Population::symmetric(n, &self.caps)?;
        let perm = |w: &[Letter]| Permutation::from_vec_unchecked(w.to_vec());
        let mut out = Vec::new();
        match suite {
            Suite::All => {
                for s in Suite::ALL {
                    out.extend(self.suite_at(s, n)?);
                }
            }
            Suite::Stats => {
                out.push(
                    self.check_all("stats: sum t = inv, sum s = maj", &sn, &|w| {
                        let (t, s) = (stats::t_vector(w), stats::s_vector(w));
                        if t.sum() != inv(w) {
                            return Some(format!("sum t = {}, inv = {}", t.sum(), inv(w)));
                        }
                        (s.sum() != maj(w))
                            .then(|| format!("sum s = {}, maj = {}", s.sum(), maj(w)))
                    }),
                );
                out.push(self.check_all("stats: Z = inv on permutations", &sn, &|w| {
                    (z_statistic(w) != inv(w))
                        .then(|| format!("Z = {}, inv = {}", z_statistic(w), inv(w)))
                }));
                out.push(self.check_all(
                    "stats: t_i >= t_{i+1} iff sigma_i < sigma_{i+1}",
                    &sn,
                    &|w| {
                        let t = stats::t_vector(w);
                        (0..w.len().saturating_sub(1))
                            .find(|&i| (t[i] >= t[i + 1]) != (w[i] < w[i + 1]))
                            .map(|i| format!("fails at i = {}", i + 1))
                    },
                ));
                out.push(
                    self.check_all("stats: prefix-count vectors match scans", &sn, &|w| {
                        (stats::fast::t_vector(w) != stats::t_vector(w)
                            || stats::fast::s_vector(w) != stats::s_vector(w))
                        .then(|| "fast and scan vectors differ".into())
                    }),
                );
                out.push(self.check_all(
                    "permcore: complement involution, parse o render = id",
                    &sn,
                    &|w| {
                        let s = perm(w);
                        if complement(&complement(&s)) != s {
                            return Some("c c sigma != sigma".into());
                        }
                        let spaced = parse_permutation(&s.to_spaced_string()).ok();
                        let compact = s.to_compact_string().map(|t| parse_permutation(&t).ok());
                        (spaced.as_ref() != Some(&s)
                            || compact.is_some_and(|c| c.as_ref() != Some(&s)))
                        .then(|| "render does not parse back".into())
                    },
                ));
            }
            Suite::Codes => {
                out.push(
                    self.check_all("codes: I^-1 o I = id, M^-1 o M = id", &sn, &|w| {
                        let s = perm(w);
                        if lehmer_decode(&lehmer_encode(&s)) != s {
                            return Some(format!("I = {}", lehmer_encode(&s)));
                        }
                        (cyclic_major_decode(&cyclic_major_encode(&s)) != s)
                            .then(|| format!("M = {}", cyclic_major_encode(&s)))
                    }),
                );
                out.push(self.check_injective("codes: I is injective", &sn, |w| {
                    lehmer_encode(&perm(w)).into_vec()
                }));
                out.push(self.check_injective("codes: M is injective", &sn, |w| {
                    cyclic_major_encode(&perm(w)).into_vec()
                }));
                out.push(
                    self.check_all("codes: t_to_s o I = M, s_to_t o M = I", &sn, &|w| {
                        let s = perm(w);
                        let (i, m) = (lehmer_encode(&s), cyclic_major_encode(&s));
                        if t_to_s(&i) != m {
                            return Some(format!("t_to_s({i}) = {} but M = {m}", t_to_s(&i)));
                        }
                        (s_to_t(&m) != i)
                            .then(|| format!("s_to_t({m}) = {} but I = {i}", s_to_t(&m)))
                    }),
                );
                out.push(
                    self.check_all("codes: sum I = inv, sum M = maj", &sn, &|w| {
                        let s = perm(w);
                        (lehmer_encode(&s).sum() != inv(w)
                            || cyclic_major_encode(&s).sum() != maj(w))
                        .then(|| "code sums disagree with statistics".into())
                    }),
                );
                let codes: Vec<Code> = enumerate_codes(n).collect();
                let cx = codes
                    .iter()
                    .enumerate()
                    .find(|(_, a)| {
                        t_to_s(&s_to_t(a)) != **a || code_complement(&code_complement(a)) != **a
                    })
                    .map(|(i, a)| Counterexample {
                        index: Some(i),
                        input: Some(a.to_string()),
                        detail: "round trip or complement involution fails".into(),
                    });
                out.push(VerificationReport {
                    check: "codes: t_to_s o s_to_t = id, c c = id on E_n".into(),
                    population: format!("E_{n}"),
                    size: codes.len(),
                    passed: cx.is_none(),
                    counterexample: cx,
                });
            }
            Suite::Han => {
                out.push(self.verify_h_equals_im(n)?);
                out.push(
                    self.check_all("han: maj = inv o H, last value kept", &sn, &|w| {
                        let h = han_h_via_codes(&perm(w));
                        if maj(w) != inv(&h) {
                            return Some(format!("H = {h}, maj = {}, inv = {}", maj(w), inv(&h)));
                        }
                        (h.last() != w.last()).then(|| format!("H = {h} moves the last value"))
                    }),
                );
                out.push(self.check_injective("han: H is injective", &sn, |w| {
                    han_h_via_codes(&perm(w)).into_vec()
                }));
                out.push(
                    self.check_all("han: H^-1 is a two-sided inverse", &sn, &|w| {
                        let s = perm(w);
                        (han_h_inverse(&han_h_via_codes(&s)) != s
                            || han_h_via_codes(&han_h_inverse(&s)) != s)
                            .then(|| format!("H^-1 = {}", han_h_inverse(&s)))
                    }),
                );
                out.push(
                    self.check_all("han: s_i = i - L(C^{n-i}(sigma))", &sn, &|w| {
                        let s = perm(w);
                        let trace = c_iteration_trace(&s);
                        if trace.cyclic_major_code() != cyclic_major_encode(&s) {
                            return Some(format!("trace gives M = {}", trace.cyclic_major_code()));
                        }
                        (trace.image() != han_h(&s)).then(|| "trace image differs from H".into())
                    }),
                );
                out.push(self.verify_complement_commutation(n)?);
            }
            Suite::Foata => {
                out.push(self.check_all("foata: maj = inv o Phi on S_n", &sn, &|w| {
                    let phi = foata_phi(w);
                    (maj(w) != inv(&phi)).then(|| format!("Phi = {}", render_letters(&phi)))
                }));
                out.push(
                    self.check_all("foata: fold agrees with recursion", &sn, &|w| {
                        (foata_phi(w) != foata_phi_recursive(w)).then(|| "fold != recursion".into())
                    }),
                );
                out.push(self.check_injective("foata: Phi is injective on S_n", &sn, foata_phi));
                out.push(
                    self.check_all("foata: phi_n o ... o phi_1 = Phi", &sn, &|w| {
                        let s = perm(w);
                        (compose_partial_foata(&s).as_slice() != foata_phi(w))
                            .then(|| format!("composition gives {}", compose_partial_foata(&s)))
                    }),
                );
                out.push(self.check_all(
                    "foata: strong fixed point <=> fixed by every phi_k",
                    &sn,
                    &|w| {
                        let s = perm(w);
                        (is_strong_fixed_point(&s) != is_fixed_by_all_partial_maps(&s))
                            .then(|| "prefix criterion disagrees with partial maps".into())
                    },
                ));
                for spec in specs_up_to(n, 4).into_iter().filter(|s| s.n() == n) {
                    let pop = Population::class(spec, &self.caps)?;
                    out.push(self.check_all(
                        "foata: maj = inv o Phi, last letter and content kept",
                        &pop,
                        &|w| {
                            let phi = foata_phi(w);
                            if maj(w) != inv(&phi) {
                                return Some(format!("Phi = {}", render_letters(&phi)));
                            }
                            let mut a = w.to_vec();
                            let mut b = phi.clone();
                            a.sort_unstable();
                            b.sort_unstable();
                            (phi.last() != w.last() || a != b).then(|| {
                                format!(
                                    "Phi = {} is not a rearrangement keeping the last letter",
                                    render_letters(&phi)
                                )
                            })
                        },
                    ));
                    out.push(self.check_injective(
                        "foata: Phi is injective on R(X)",
                        &pop,
                        foata_phi,
                    ));
                }
            }
            Suite::Fixed => {
                out.push(self.verify_fixed_point_theorem(n)?);
                let fixed: Vec<Permutation> = self
                    .map_chunks(sn.len(), |range| {
                        let mut v = Vec::new();
                        sn.scan::<()>(range, |_, w| {
                            let s = perm(w);
                            if han_h_via_codes(&s) == s {
                                v.push(s);
                            }
                            ControlFlow::Continue(())
                        });
                        v
                    })
                    .into_iter()
                    .flatten()
                    .collect();
                let expected = 1usize << (n - 1);
                let constructed = fixed_points_of_h(n);
                let cx = if fixed.len() != expected {
                    Some(format!("{} fixed points, expected {expected}", fixed.len()))
                } else if constructed != fixed {
                    Some("constructed fixed points differ from enumerated ones".into())
                } else {
                    None
                };
                out.push(VerificationReport {
                    check: "fixed: H has 2^(n-1) fixed points, all constructed from codes".into(),
                    population: sn.label(),
                    size: sn.len(),
                    passed: cx.is_none(),
                    counterexample: cx.map(|detail| Counterexample {
                        index: None,
                        input: None,
                        detail,
                    }),
                });
                let witness = self
                    .map_chunks(sn.len(), |range| {
                        sn.scan(range, |idx, w| {
                            let s = perm(w);
                            if foata_phi(w) == w && han_h_via_codes(&s) != s {
                                ControlFlow::Break((idx, s))
                            } else {
                                ControlFlow::Continue(())
                            }
                        })
                    })
                    .into_iter()
                    .flatten()
                    .next();
                out.push(VerificationReport {
                    check: format!(
                        "fixed: Phi-fixed but not H-fixed witness {}",
                        witness
                            .as_ref()
                            .map_or_else(|| "absent".to_string(), |(i, s)| format!("#{i} {s}"))
                    ),
                    population: sn.label(),
                    size: sn.len(),
                    // Needs n >= 4 for such a permutation to exist.
                    passed: n < 4 || witness.is_some(),
                    counterexample: (n >= 4 && witness.is_none()).then(|| Counterexample {
                        index: None,
                        input: None,
                        detail: "every Phi-fixed permutation is H-fixed".into(),
                    }),
                });
            }
            Suite::Mahonian => {
                let q = q_factorial(n);
                let cx = [Statistic::Maj, Statistic::Inv, Statistic::Z]
                    .into_iter()
                    .map(|s| self.distribution(s, &sn))
                    .find(|t| t.coefficients != q)
                    .map(|t| Counterexample {
                        index: None,
                        input: None,
                        detail: format!(
                            "{} table {:?} differs from [n]_q! {:?}",
                            t.stat_name, t.coefficients, q
                        ),
                    });
                out.push(VerificationReport {
                    check: "mahonian: maj, inv, Z distribute as [n]_q!".into(),
                    population: sn.label(),
                    size: sn.len(),
                    passed: cx.is_none(),
                    counterexample: cx,
                });
                for spec in specs_up_to(n, 4).into_iter().filter(|s| s.n() == n) {
                    out.push(self.verify_mahonian(&spec)?);
                }
            }
        }
        Ok(out)
    }

    /// Runs `suite` for every `n` in `1..=max_n`.
    pub fn run_suite(&self, suite: Suite, max_n: usize) -> Result<Vec<VerificationReport>> {
        if max_n > self.caps.max_n {
            return Err(Error::CapExceeded {
                what: "S_n",
                requested: max_n as u128,
                cap: self.caps.max_n as u128,
            });
        }
        let mut out = Vec::new();
        for n in 1..=max_n {
            out.extend(self.suite_at(suite, n)?);
        }
        Ok(out)
    }
}

/// All fixed points of `H` in `S_n`, in lexicographic order, built by
/// decoding every code with `t_i` in `{0, i - 1}`.
pub fn fixed_points_of_h(n: usize) -> Vec<Permutation> {
    if n == 0 {
        return vec![Permutation::empty()];
    }
    let mut out: Vec<Permutation> = (0..1u64 << (n - 1))
        .map(|mask| {
            let code = (0..n)
                .map(|i| {
                    if i > 0 && mask >> (i - 1) & 1 == 1 {
                        i as u32
                    } else {
                        0
                    }
                })
                .collect();
            lehmer_decode(&Code::new(code).expect("extreme codes lie in E_n"))
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_s3() {
        let got: Vec<String> = enumerate_sn(3, &Caps::default())
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(got, ["123", "132", "213", "231", "312", "321"]);
    }

    #[test]
    fn lex_order_multiset() {
        let spec = MultisetSpec::new(vec![2, 1]);
        let got: Vec<String> = enumerate_rearrangements(&spec, &Caps::default())
            .unwrap()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(got, ["112", "121", "211"]);
    }

    #[test]
    fn class_sizes() {
        let spec = MultisetSpec::new(vec![3, 2, 2, 2]);
        let pop = Population::class(spec.clone(), &Caps::default()).unwrap();
        assert_eq!(pop.len(), 7560);
        assert_eq!(pop.iter().count(), 7560);
        assert_eq!(
            Population::symmetric(7, &Caps::default())
                .unwrap()
                .iter()
                .count(),
            5040
        );
    }

    #[test]
    fn unrank_matches_iteration() {
        let spec = MultisetSpec::new(vec![2, 1, 2]);
        let pop = Population::class(spec, &Caps::default()).unwrap();
        for (i, w) in pop.iter().enumerate() {
            assert_eq!(pop.get(i).unwrap(), w);
        }
        assert_eq!(pop.get(pop.len()), None);
        let s5 = Population::symmetric(5, &Caps::default()).unwrap();
        for (i, w) in s5.iter().enumerate() {
            assert_eq!(s5.get(i).unwrap(), w);
        }
    }

    #[test]
    fn caps_enforced() {
        let caps = Caps {
            max_n: 4,
            max_class: 10,
        };
        assert!(matches!(
            Population::symmetric(5, &caps),
            Err(Error::CapExceeded { .. })
        ));
        assert!(Population::class(MultisetSpec::new(vec![2, 2]), &caps).is_ok());
        assert!(Population::class(MultisetSpec::new(vec![3, 2]), &caps).is_ok());
        assert!(Population::class(MultisetSpec::new(vec![3, 3]), &caps).is_err());
        assert!(Verifier::sequential(caps).run_suite(Suite::Han, 5).is_err());
    }

    #[test]
    fn codes_enumeration() {
        assert_eq!(enumerate_codes(5).count(), 120);
        assert_eq!(enumerate_codes(1).count(), 1);
        let mut all: Vec<Code> = enumerate_codes(4).collect();
        let len = all.len();
        all.dedup();
        assert_eq!(all.len(), len);
    }

    #[test]
    fn q_factorial_small() {
        assert_eq!(q_factorial(1), vec![1]);
        assert_eq!(q_factorial(3), vec![1, 2, 2, 1]);
        assert_eq!(q_factorial(4), vec![1, 3, 5, 6, 5, 3, 1]);
        assert_eq!(q_factorial(6).iter().sum::<u64>(), 720);
    }

    #[test]
    fn small_distributions() {
        let v = Verifier::default();
        let s3 = Population::symmetric(3, &v.caps).unwrap();
        assert_eq!(
            v.distribution(Statistic::Maj, &s3).coefficients,
            vec![1, 2, 2, 1]
        );
        assert_eq!(
            v.distribution(Statistic::Inv, &s3).coefficients,
            vec![1, 2, 2, 1]
        );
        let s1 = Population::symmetric(1, &v.caps).unwrap();
        assert_eq!(v.distribution(Statistic::Z, &s1).coefficients, vec![1]);
        let r = Population::class(MultisetSpec::new(vec![1, 1]), &v.caps).unwrap();
        for s in [Statistic::Maj, Statistic::Inv, Statistic::Z] {
            assert_eq!(v.distribution(s, &r).coefficients, vec![1, 1]);
        }
    }

    #[test]
    fn fixed_points_small() {
        assert_eq!(fixed_points_of_h(1), vec![Permutation::identity(1)]);
        assert_eq!(
            fixed_points_of_h(2),
            vec![Permutation::identity(2), Permutation::reversal(2)]
        );
        let f8 = fixed_points_of_h(8);
        assert_eq!(f8.len(), 128);
        assert!(f8.contains(&parse_permutation("45367281").unwrap()));
    }

    #[test]
    fn specs_enumeration() {
        let specs = specs_up_to(3, 4);
        let shown: Vec<Vec<usize>> = specs.iter().map(|s| s.multiplicities().to_vec()).collect();
        assert_eq!(
            shown,
            vec![
                vec![1],
                vec![1, 1],
                vec![2],
                vec![1, 1, 1],
                vec![1, 2],
                vec![2, 1],
                vec![3]
            ]
        );
    }

    #[test]
    fn failing_check_reports_least_index() {
        let v = Verifier::default();
        let s4 = Population::symmetric(4, &v.caps).unwrap();
        let r = v.check_all("demo", &s4, &|w| {
            (w[0] == 3).then(|| "starts with 3".into())
        });
        assert!(!r.passed);
        let cx = r.counterexample.unwrap();
        assert_eq!(cx.index, Some(12));
        assert_eq!(cx.input.as_deref(), Some("3124"));
    }
}
