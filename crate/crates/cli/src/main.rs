//! `mahonia`: statistics, codes, bijections, traces and exhaustive checks on
//! permutations and words.

mod output;

use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use mahonia_core::codes::{cyclic_major_decode, cyclic_major_encode, lehmer_decode, lehmer_encode};
use mahonia_core::foata::{foata_phi, is_strong_fixed_point, partial_foata};
use mahonia_core::han::{c_iteration_trace, han_h_inverse, han_h_via_codes};
use mahonia_core::oracle::{fixed_points_of_h, Caps, Execution, Population, Suite, Verifier};
use mahonia_core::perm::tokenize;
use mahonia_core::stats::{self, Statistic};
use mahonia_core::{parse_code, parse_permutation, parse_spec, parse_word, Permutation, Word};

use output::Out;

#[derive(Parser, Debug)]
#[command(
    name = "mahonia",
    version,
    about = "Mahonian statistics, permutation codes and bijections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a statistic on a word or permutation.
    Stat(StatArgs),
    /// Encode a permutation to a code, or decode a code.
    Code(CodeArgs),
    /// Apply a bijection.
    Map(MapArgs),
    /// Show the C-iteration and the construction of H step by step.
    Trace(TraceArgs),
    /// Fixed-point predicates.
    Fixed(FixedArgs),
    /// Run exhaustive verification suites.
    Verify(VerifyArgs),
    /// Distribution table of a statistic.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StatName {
    Maj,
    Inv,
    Des,
    Z,
    Tvec,
    Svec,
    Descents,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CodeKind {
    Lehmer,
    Cmaj,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteName {
    All,
    Stats,
    Codes,
    Han,
    Foata,
    Fixed,
    Mahonian,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableStat {
    Maj,
    Inv,
    Z,
    Des,
}

#[derive(Args, Debug)]
struct StatArgs {
    #[arg(long, value_enum)]
    stat: StatName,
    /// Letter multiplicities m1,m2,... to validate the word against.
    #[arg(long)]
    spec: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(required = true, num_args = 1..)]
    input: Vec<String>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("dir").required(true).args(["encode", "decode"])))]
struct CodeArgs {
    #[arg(long, value_enum)]
    encode: Option<CodeKind>,
    #[arg(long, value_enum)]
    decode: Option<CodeKind>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(required = true, num_args = 1..)]
    input: Vec<String>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("map").required(true)
    .args(["foata", "partial_foata", "han", "han_inverse"])))]
struct MapArgs {
    /// Foata's second fundamental transformation (words or permutations).
    #[arg(long)]
    foata: bool,
    /// The k-th partial Foata map (permutations).
    #[arg(long, value_name = "K")]
    partial_foata: Option<usize>,
    /// Han's bijection.
    #[arg(long)]
    han: bool,
    /// Inverse of Han's bijection.
    #[arg(long)]
    han_inverse: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(required = true, num_args = 1..)]
    input: Vec<String>,
}

#[derive(Args, Debug)]
struct TraceArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(required = true, num_args = 1..)]
    input: Vec<String>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("pred").required(true).args(["strong", "han", "list"])))]
struct FixedArgs {
    /// Every prefix is a set of consecutive integers.
    #[arg(long)]
    strong: bool,
    /// H(sigma) = sigma.
    #[arg(long)]
    han: bool,
    /// List every fixed point of H in S_n.
    #[arg(long, requires = "n")]
    list: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    input: Vec<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteName,
    /// Checks run for every size 1..=N.
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
    /// Print every check, not only failures and summaries.
    #[arg(long, short)]
    verbose: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("population").required(true).args(["n", "spec"]).multiple(true)))]
struct TableArgs {
    #[arg(long, value_enum)]
    stat: TableStat,
    #[arg(long)]
    n: Option<usize>,
    /// Letter multiplicities m1,m2,...; tabulates over R(X) instead of S_n.
    #[arg(long)]
    spec: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Outcome of a failed command.
#[derive(Debug)]
enum Failure {
    /// Bad input; exit code 1.
    Input(String),
    /// A verification check failed; exit code 2. The report is already printed.
    Verification,
}

impl From<mahonia_core::Error> for Failure {
    fn from(e: mahonia_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut out = Out::stdout();
    let result = match cli.command {
        Command::Stat(a) => stat(&mut out, a),
        Command::Code(a) => code(&mut out, a),
        Command::Map(a) => map(&mut out, a),
        Command::Trace(a) => trace(&mut out, a),
        Command::Fixed(a) => fixed(&mut out, a),
        Command::Verify(a) => verify(&mut out, a),
        Command::Table(a) => table(&mut out, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(2),
    }
}

fn joined(input: &[String]) -> String {
    input.join(" ")
}

fn reject_csv(format: Format, cmd: &str) -> CmdResult {
    if format == Format::Csv {
        return Err(Failure::Input(format!(
            "`{cmd}` supports text and json output only"
        )));
    }
    Ok(())
}

/// Parses a permutation, rejecting words with repeated letters.
fn permutation_arg(cmd: &str, input: &[String]) -> Result<Permutation, Failure> {
    let text = joined(input);
    let (values, _) = tokenize(&text)?;
    let mut seen = std::collections::HashSet::new();
    if let Some(pos) = values.iter().position(|v| !seen.insert(*v)) {
        return Err(Failure::Input(format!(
            "`{cmd}` needs a permutation, but letter {} repeats at position {}",
            values[pos],
            pos + 1
        )));
    }
    Ok(parse_permutation(&text)?)
}

fn stat(out: &mut Out, a: StatArgs) -> CmdResult {
    reject_csv(a.format, "stat")?;
    let spec = a.spec.as_deref().map(parse_spec).transpose()?;
    let word: Word = parse_word(&joined(&a.input), spec.as_ref())?;
    let scalar = |s: Statistic| s.eval(&word);
    match a.stat {
        StatName::Maj => out.scalar("maj", scalar(Statistic::Maj), a.format),
        StatName::Inv => out.scalar("inv", scalar(Statistic::Inv), a.format),
        StatName::Des => out.scalar("des", scalar(Statistic::Des), a.format),
        StatName::Z => out.scalar("z", scalar(Statistic::Z), a.format),
        StatName::Tvec => out.vector("tvec", stats::t_vector(&word).as_slice(), a.format),
        StatName::Svec => out.vector("svec", stats::s_vector(&word).as_slice(), a.format),
        StatName::Descents => {
            let d: Vec<u32> = stats::descent_set(&word)
                .iter()
                .map(|&i| i as u32)
                .collect();
            out.vector("descents", &d, a.format)
        }
    }
    Ok(())
}

fn code(out: &mut Out, a: CodeArgs) -> CmdResult {
    reject_csv(a.format, "code")?;
    match (a.encode, a.decode) {
        (Some(kind), None) => {
            let sigma = permutation_arg("code", &a.input)?;
            let c = match kind {
                CodeKind::Lehmer => lehmer_encode(&sigma),
                CodeKind::Cmaj => cyclic_major_encode(&sigma),
            };
            out.vector("code", c.as_slice(), a.format);
        }
        (None, Some(kind)) => {
            let c = parse_code(&joined(&a.input))?;
            let sigma = match kind {
                CodeKind::Lehmer => lehmer_decode(&c),
                CodeKind::Cmaj => cyclic_major_decode(&c),
            };
            out.letters(&sigma, a.format);
        }
        _ => unreachable!("clap enforces exactly one direction"),
    }
    Ok(())
}

fn map(out: &mut Out, a: MapArgs) -> CmdResult {
    reject_csv(a.format, "map")?;
    if a.foata {
        let w = parse_word(&joined(&a.input), None)?;
        out.letters(&foata_phi(&w), a.format);
        return Ok(());
    }
    let sigma = permutation_arg("map", &a.input)?;
    let image = if let Some(k) = a.partial_foata {
        partial_foata(k, &sigma)?
    } else if a.han {
        han_h_via_codes(&sigma)
    } else {
        han_h_inverse(&sigma)
    };
    out.letters(&image, a.format);
    Ok(())
}

fn trace(out: &mut Out, a: TraceArgs) -> CmdResult {
    reject_csv(a.format, "trace")?;
    let sigma = permutation_arg("trace", &a.input)?;
    out.trace(&c_iteration_trace(&sigma), a.format);
    Ok(())
}

fn fixed(out: &mut Out, a: FixedArgs) -> CmdResult {
    reject_csv(a.format, "fixed")?;
    if a.list {
        let n = a.n.expect("clap requires --n");
        let caps = Caps::from_env();
        if n > caps.max_n {
            return Err(mahonia_core::Error::CapExceeded {
                what: "S_n",
                requested: n as u128,
                cap: caps.max_n as u128,
            }
            .into());
        }
        if n == 0 {
            return Err(Failure::Input("--n must be at least 1".into()));
        }
        out.permutation_list(&fixed_points_of_h(n), a.format);
        return Ok(());
    }
    if a.input.is_empty() {
        return Err(Failure::Input("missing permutation".into()));
    }
    let sigma = permutation_arg("fixed", &a.input)?;
    let (name, value) = if a.strong {
        ("strong", is_strong_fixed_point(&sigma))
    } else {
        ("han", han_h_via_codes(&sigma) == sigma)
    };
    out.predicate(name, &sigma, value, a.format);
    Ok(())
}

fn verify(out: &mut Out, a: VerifyArgs) -> CmdResult {
    reject_csv(a.format, "verify")?;
    if a.n == 0 {
        return Err(Failure::Input("--n must be at least 1".into()));
    }
    let exec = if a.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let verifier = Verifier::new(Caps::from_env(), exec);
    let suites: Vec<Suite> = match a.suite {
        SuiteName::All => Suite::ALL.to_vec(),
        SuiteName::Stats => vec![Suite::Stats],
        SuiteName::Codes => vec![Suite::Codes],
        SuiteName::Han => vec![Suite::Han],
        SuiteName::Foata => vec![Suite::Foata],
        SuiteName::Fixed => vec![Suite::Fixed],
        SuiteName::Mahonian => vec![Suite::Mahonian],
    };
    let mut runs = Vec::new();
    for suite in suites {
        runs.push((suite, verifier.run_suite(suite, a.n)?));
    }
    let ok = out.verification(&runs, a.n, a.verbose, a.format);
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn table(out: &mut Out, a: TableArgs) -> CmdResult {
    let caps = Caps::from_env();
    let pop = match (&a.spec, a.n) {
        (Some(text), n) => {
            let spec = parse_spec(text)?;
            if let Some(n) = n.filter(|&n| n != spec.n()) {
                return Err(Failure::Input(format!(
                    "--n {n} disagrees with --spec of length {}",
                    spec.n()
                )));
            }
            Population::class(spec, &caps)?
        }
        (None, Some(n)) if n >= 1 => Population::symmetric(n, &caps)?,
        (None, _) => return Err(Failure::Input("--n must be at least 1".into())),
    };
    let stat = match a.stat {
        TableStat::Maj => Statistic::Maj,
        TableStat::Inv => Statistic::Inv,
        TableStat::Z => Statistic::Z,
        TableStat::Des => Statistic::Des,
    };
    let t = Verifier::new(caps, Execution::Parallel).distribution(stat, &pop);
    out.table(&t, a.format);
    Ok(())
}
