//! Rendering of command results as text, JSON or CSV.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::json;

use mahonia_core::han::Trace;
use mahonia_core::oracle::{DistributionTable, Suite, VerificationReport};
use mahonia_core::perm::render_letters;
use mahonia_core::Permutation;

use crate::Format;

pub struct Out {
    w: Box<dyn Write>,
}

impl Out {
    pub fn stdout() -> Self {
        Out {
            w: Box::new(io::stdout().lock()),
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        // A closed pipe is not worth a panic.
        let _ = writeln!(self.w, "{}", s.as_ref());
    }

    fn json(&mut self, v: &impl Serialize) {
        let s = serde_json::to_string(v).expect("plain data serializes");
        self.line(s);
    }

    pub fn scalar(&mut self, name: &str, value: usize, format: Format) {
        match format {
            Format::Json => self.json(&json!({ "stat": name, "value": value })),
            _ => self.line(value.to_string()),
        }
    }

    /// Comma-separated in text mode, a bare array in JSON.
    pub fn vector(&mut self, _name: &str, values: &[u32], format: Format) {
        match format {
            Format::Json => self.json(&values),
            _ => self.line(
                values
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
        }
    }

    /// A permutation or word: compact or spaced text, `{"n", "values"}` JSON.
    pub fn letters(&mut self, letters: &[u32], format: Format) {
        match format {
            Format::Json => self.json(&json!({ "n": letters.len(), "values": letters })),
            _ => self.line(render_letters(letters)),
        }
    }

    pub fn predicate(&mut self, name: &str, sigma: &Permutation, value: bool, format: Format) {
        match format {
            Format::Json => {
                self.json(&json!({ "input": sigma, "predicate": name, "value": value }))
            }
            _ => self.line(value.to_string()),
        }
    }

    pub fn permutation_list(&mut self, perms: &[Permutation], format: Format) {
        match format {
            Format::Json => self.json(&perms),
            _ => {
                for p in perms {
                    self.line(p.to_string());
                }
            }
        }
    }

    pub fn trace(&mut self, trace: &Trace, format: Format) {
        let code = trace.cyclic_major_code();
        let l_seq = trace.l_sequence_bottom_up();
        if format == Format::Json {
            self.json(&json!({
                "input": trace.input,
                "rows": trace.rows,
                "l_sequence": l_seq,
                "cyclic_major_code": code,
                "image": trace.image(),
            }));
            return;
        }
        let steps: Vec<String> = trace
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let below = trace
                    .rows
                    .get(i + 1)
                    .map_or_else(|| "∅".to_string(), |b| b.image.to_string());
                format!("C_{}^-1({}).{} = {}", r.last, below, r.last, r.image)
            })
            .collect();
        let width = trace
            .rows
            .iter()
            .map(|r| r.reduced.to_string().len())
            .max()
            .unwrap_or(0)
            .max("C^j(sigma)".len());
        self.line(format!("sigma = {}", trace.input));
        self.line(format!(
            "{:>2}  {:<width$}  {:>2}  {:>7}  H(C^j(sigma))",
            "j", "C^j(sigma)", "L", "s_(n-j)"
        ));
        for (r, step) in trace.rows.iter().zip(steps) {
            self.line(format!(
                "{:>2}  {:<width$}  {:>2}  {:>7}  {}",
                r.j,
                r.reduced.to_string(),
                r.last,
                r.s_entry,
                step
            ));
        }
        let paren = |v: &[u32]| {
            format!(
                "({})",
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        };
        self.line(format!("L sequence (bottom-up): {}", paren(&l_seq)));
        self.line(format!("M(sigma) = {}", paren(&code)));
        self.line(format!("H(sigma) = {}", trace.image()));
    }

    /// Prints reports; returns true when every check passed.
    pub fn verification(
        &mut self,
        runs: &[(Suite, Vec<VerificationReport>)],
        n: usize,
        verbose: bool,
        format: Format,
    ) -> bool {
        let ok = runs.iter().all(|(_, rs)| rs.iter().all(|r| r.passed));
        if format == Format::Json {
            let suites: Vec<_> = runs
                .iter()
                .map(|(suite, rs)| {
                    json!({
                        "suite": suite,
                        "max_n": n,
                        "passed": rs.iter().all(|r| r.passed),
                        "reports": rs,
                    })
                })
                .collect();
            self.json(&json!({ "passed": ok, "suites": suites }));
            return ok;
        }
        for (suite, reports) in runs {
            for r in reports.iter().filter(|r| verbose || !r.passed) {
                self.line(r.to_string());
            }
            let passed = reports.iter().filter(|r| r.passed).count();
            let elements: usize = reports.iter().map(|r| r.size).sum();
            self.line(format!(
                "suite {}: {}/{} checks passed, n = 1..={}, {} elements checked",
                format!("{suite:?}").to_lowercase(),
                passed,
                reports.len(),
                n,
                elements
            ));
        }
        self.line(if ok { "OK" } else { "FAILED" });
        ok
    }

    pub fn table(&mut self, t: &DistributionTable, format: Format) {
        match format {
            Format::Json => self.json(t),
            Format::Csv => {
                self.line("value,count");
                for (v, c) in t.coefficients.iter().enumerate() {
                    self.line(format!("{v},{c}"));
                }
            }
            Format::Text => {
                self.line(format!(
                    "{} over {} ({} elements)",
                    t.stat_name, t.population_label, t.population
                ));
                for (v, c) in t.coefficients.iter().enumerate() {
                    self.line(format!("{v:>4}  {c}"));
                }
            }
        }
    }
}
