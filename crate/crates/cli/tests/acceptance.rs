//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p mahonia-cli --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use mahonia_core::codes::{cyclic_major_encode, lehmer_encode, t_to_s};
use mahonia_core::foata::{foata_phi, is_strong_fixed_point};
use mahonia_core::han::{c_iteration_trace, han_h, han_h_via_codes};
use mahonia_core::oracle::{
    enumerate_sn, q_factorial, specs_up_to, Caps, Population, Suite, VerificationReport, Verifier,
};
use mahonia_core::stats::{des, descent_set, inv, maj, s_vector, t_vector, z_statistic, Statistic};
use mahonia_core::{parse_permutation, parse_word, Permutation};

/// Golden examples must each finish within this bound.
const GOLDEN_BUDGET: Duration = Duration::from_millis(1);
/// All exhaustive suites together must finish within this bound.
const EXHAUSTIVE_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<(), String>;
type Criterion<F> = (&'static str, &'static str, F);
type Exhaustive = fn(&Verifier) -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    ensure(got == want, || {
        format!("{what}: got {got:?}, want {want:?}")
    })
}

/// Runs `f` a few times and checks the fastest run against the golden budget.
fn timed_golden(f: impl Fn() -> Outcome) -> Outcome {
    let mut best = Duration::MAX;
    for _ in 0..5 {
        let start = Instant::now();
        f()?;
        best = best.min(start.elapsed());
    }
    ensure(best < GOLDEN_BUDGET, || {
        format!("took {best:?}, budget {GOLDEN_BUDGET:?}")
    })
}

fn all_passed(reports: &[VerificationReport]) -> Outcome {
    match reports.iter().find(|r| !r.passed) {
        None => Ok(()),
        Some(r) => Err(r.to_string()),
    }
}

fn ac1() -> Outcome {
    timed_golden(|| {
        let w = parse_word("211324314", None).map_err(|e| e.to_string())?;
        eq("Des", descent_set(&w), vec![1, 4, 6, 7])?;
        eq("des", des(&w), 4)?;
        eq("maj", maj(&w), 18)?;
        eq("inv", inv(&w), 9)?;
        eq("Z", z_statistic(&w), 16)
    })
}

fn ac2() -> Outcome {
    timed_golden(|| {
        let w = parse_word("312432143", None).map_err(|e| e.to_string())?;
        eq(
            "t",
            t_vector(&w).into_vec(),
            vec![0, 1, 1, 0, 1, 3, 5, 0, 2],
        )?;
        eq(
            "s",
            s_vector(&w).into_vec(),
            vec![0, 0, 1, 3, 3, 4, 5, 6, 2],
        )
    })
}

fn ac3() -> Outcome {
    timed_golden(|| {
        let p = parse_permutation("38516427").map_err(|e| e.to_string())?;
        let (i, m) = (lehmer_encode(&p), cyclic_major_encode(&p));
        eq("I", i.as_slice(), &[0, 0, 1, 3, 1, 3, 5, 1])?;
        eq("M", m.as_slice(), &[0, 1, 1, 2, 3, 4, 4, 1])?;
        eq("t_to_s(I)", t_to_s(&i), m)
    })
}

fn ac4() -> Outcome {
    timed_golden(|| {
        let s = parse_permutation("392648517").map_err(|e| e.to_string())?;
        let h = parse_permutation("496182537").map_err(|e| e.to_string())?;
        eq("H via codes", han_h_via_codes(&s), h.clone())?;
        eq("H recursive", han_h(&s), h.clone())?;
        let m = cyclic_major_encode(&s);
        eq("M", m.as_slice(), &[0, 0, 1, 3, 1, 4, 3, 5, 2])?;
        eq("I(H)", lehmer_encode(&h), m.clone())?;
        let trace = c_iteration_trace(&s);
        let reduced: Vec<String> = trace.rows[1..]
            .iter()
            .map(|r| r.reduced.to_string())
            .collect();
        eq(
            "reduced column",
            reduced,
            [
                "52486173", "2715364", "534162", "31254", "4231", "312", "12", "1",
            ]
            .map(String::from)
            .to_vec(),
        )?;
        eq(
            "L sequence",
            trace.l_sequence_bottom_up(),
            vec![1, 2, 2, 1, 4, 2, 4, 3, 7],
        )?;
        eq("trace M", trace.cyclic_major_code(), m)
    })
}

fn ac5() -> Outcome {
    timed_golden(|| {
        let p = |s: &str| parse_permutation(s).map_err(|e| e.to_string());
        ensure(is_strong_fixed_point(&p("45367281")?), || {
            "45367281 should be a strong fixed point".into()
        })?;
        ensure(!is_strong_fixed_point(&p("34125678")?), || {
            "34125678 should not be a strong fixed point".into()
        })?;
        let s = p("14235")?;
        eq("Phi(14235)", foata_phi(&s), s.as_slice().to_vec())?;
        ensure(han_h(&s) != s, || {
            "H(14235) should differ from 14235".into()
        })
    })
}

fn ac6(v: &Verifier) -> Outcome {
    // n = 8 covers the cheap checks; every check also runs for n <= 7.
    all_passed(&v.run_suite(Suite::Han, 8).map_err(|e| e.to_string())?)?;
    all_passed(&v.run_suite(Suite::Codes, 8).map_err(|e| e.to_string())?)
}

fn ac7(v: &Verifier) -> Outcome {
    all_passed(&v.run_suite(Suite::Fixed, 8).map_err(|e| e.to_string())?)?;
    for n in 1..=8 {
        let mut h_fixed = BTreeSet::new();
        let mut strong = BTreeSet::new();
        let mut extreme = BTreeSet::new();
        for s in enumerate_sn(n, &v.caps).map_err(|e| e.to_string())? {
            if han_h_via_codes(&s) == s {
                ensure(foata_phi(&s) == s.as_slice(), || {
                    format!("{s} not Phi-fixed")
                })?;
                h_fixed.insert(s.clone());
            }
            if is_strong_fixed_point(&s) {
                strong.insert(s.clone());
            }
            if t_vector(&s)
                .iter()
                .enumerate()
                .all(|(i, &t)| t == 0 || t as usize == i)
            {
                extreme.insert(s);
            }
        }
        ensure(h_fixed == strong && strong == extreme, || {
            format!("n = {n}: the three fixed-point sets differ")
        })?;
        eq(
            &format!("n = {n}: fixed-point count"),
            h_fixed.len(),
            1 << (n - 1),
        )?;
    }
    Ok(())
}

fn ac8(v: &Verifier) -> Outcome {
    // Includes every R(X) with n <= 8, k <= 4 and phi_n o ... o phi_1 = Phi.
    all_passed(&v.run_suite(Suite::Foata, 8).map_err(|e| e.to_string())?)
}

fn ac9(v: &Verifier) -> Outcome {
    all_passed(&v.run_suite(Suite::Mahonian, 7).map_err(|e| e.to_string())?)?;
    for n in 1..=7 {
        let pop = Population::symmetric(n, &v.caps).map_err(|e| e.to_string())?;
        let q = q_factorial(n);
        for stat in [Statistic::Maj, Statistic::Inv, Statistic::Z] {
            eq(
                &format!("{} over S_{n}", stat.name()),
                v.distribution(stat, &pop).coefficients,
                q.clone(),
            )?;
        }
    }
    for spec in specs_up_to(8, 4) {
        let pop = Population::class(spec.clone(), &v.caps).map_err(|e| e.to_string())?;
        let maj_t = v.distribution(Statistic::Maj, &pop).coefficients;
        for stat in [Statistic::Inv, Statistic::Z] {
            eq(
                &format!("{} vs maj over {spec}", stat.name()),
                v.distribution(stat, &pop).coefficients,
                maj_t.clone(),
            )?;
        }
    }
    Ok(())
}

fn run_cli(args: &[&str]) -> (String, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_mahonia"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8"),
        out.status.code(),
    )
}

fn ac10() -> Outcome {
    for (args, want) in [
        (&["stat", "--stat", "maj", "211324314"][..], "18\n"),
        (&["map", "--han", "392648517"][..], "496182537\n"),
        (
            &["code", "--encode", "cmaj", "38516427"][..],
            "0,1,1,2,3,4,4,1\n",
        ),
    ] {
        let (stdout, code) = run_cli(args);
        eq(&args.join(" "), (stdout.as_str(), code), (want, Some(0)))?;
    }
    let (_, code) = run_cli(&["verify", "--suite", "all", "--n", "7"]);
    eq("verify --suite all --n 7 exit code", code, Some(0))
}

#[test]
fn acceptance() {
    let v = Verifier::new(Caps::default(), Default::default());
    let mut lines = Vec::new();
    let mut failed = 0;
    let mut record = |id: &str, title: &str, elapsed: Duration, r: Outcome| {
        let status = if r.is_ok() { "PASS" } else { "FAIL" };
        let mut line = format!("[{status}] {id} {title} ({elapsed:.2?})");
        if let Err(e) = r {
            failed += 1;
            line.push_str(&format!("\n       {e}"));
        }
        println!("{line}");
        lines.push(line);
    };

    let golden: [Criterion<fn() -> Outcome>; 5] = [
        ("AC1", "statistics of 211324314", ac1),
        ("AC2", "t- and s-vectors of 312432143", ac2),
        ("AC3", "codes of 38516427 and t_to_s", ac3),
        ("AC4", "H(392648517) and its trace", ac4),
        ("AC5", "strong and Phi fixed-point examples", ac5),
    ];
    for (id, title, f) in golden {
        let start = Instant::now();
        let r = f();
        record(id, title, start.elapsed(), r);
    }

    let exhaustive: [Criterion<Exhaustive>; 4] = [
        (
            "AC6",
            "H = I^-1 o M, codes, traces, complements (n <= 8)",
            ac6,
        ),
        ("AC7", "fixed points of H (n <= 8)", ac7),
        ("AC8", "Foata on S_n and R(X) (n <= 8, k <= 4)", ac8),
        ("AC9", "Mahonian distributions and [n]_q!", ac9),
    ];
    let total = Instant::now();
    for (id, title, f) in exhaustive {
        let start = Instant::now();
        let r = f(&v);
        record(id, title, start.elapsed(), r);
    }
    let spent = total.elapsed();
    record(
        "AC6-9",
        "exhaustive runtime budget",
        spent,
        ensure(spent < EXHAUSTIVE_BUDGET, || {
            format!("took {spent:?}, budget {EXHAUSTIVE_BUDGET:?}")
        }),
    );

    let start = Instant::now();
    let r = ac10();
    record(
        "AC10",
        "CLI golden outputs and verify exit code",
        start.elapsed(),
        r,
    );

    assert_eq!(failed, 0, "failed criteria:\n{}", lines.join("\n"));
}

#[test]
fn identity_is_fixed_everywhere() {
    for n in 1..=8 {
        let id = Permutation::identity(n);
        assert_eq!(han_h(&id), id);
        assert_eq!(foata_phi(&id), id.as_slice());
    }
}
