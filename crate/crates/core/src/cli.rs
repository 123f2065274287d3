//! The `lineal-lab` command line. Each command returns its exit code and
//! output instead of printing, so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 parse or I/O error, 2 type error, 3 fuel
//! exhausted, 4 degenerate measurement, 5 oracle mismatch, 64 usage.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::BufRead;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::lambda_s::{typecheck, MeasureError, RunError, TypingContext};
use crate::odot::odot_typecheck;
use crate::oracle::{term_to_amplitudes, Circuit};
use crate::rewrite::{normalize, EngineConfig, Outcome, DEFAULT_FUEL};
use crate::scalar::EPSILON;
use crate::term::{parse_program, pretty, Dialect, Program, Term};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_TYPE: i32 = 2;
pub const EXIT_FUEL: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> Self {
        CliOutput { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        CliOutput { code, stdout: String::new(), stderr }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DialectArg {
    Lineal,
    #[value(name = "lambda-s")]
    LambdaS,
    Odot,
}

impl From<DialectArg> for Dialect {
    fn from(d: DialectArg) -> Self {
        match d {
            DialectArg::Lineal => Dialect::Lineal,
            DialectArg::LambdaS => Dialect::LambdaS,
            DialectArg::Odot => Dialect::Odot,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

/// Options shared by every command.
#[derive(Clone, Debug, clap::Args)]
pub struct Flags {
    /// Calculus to use; defaults from the file extension (.lineal, .lams, .sup).
    #[arg(long, global = true, value_enum)]
    pub dialect: Option<DialectArg>,
    /// Maximum number of reduction steps.
    #[arg(long, global = true, env = "LINEAL_LAB_FUEL", default_value_t = DEFAULT_FUEL)]
    pub fuel: usize,
    /// Closed-normal guard on factorization.
    #[arg(long, global = true, value_enum, default_value_t = Switch::On)]
    pub restriction: Switch,
    /// Seed for every random choice.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of runs for `sample`.
    #[arg(long, global = true, default_value_t = 1000)]
    pub shots: usize,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            dialect: None,
            fuel: DEFAULT_FUEL,
            restriction: Switch::On,
            seed: None,
            shots: 1000,
            json: false,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "lineal-lab", version, about = "Run and check quantum lambda-calculus programs")]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the parsed term in canonical form.
    Parse { file: PathBuf },
    /// Print the type of a Lambda-S or sup-calculus program.
    Check { file: PathBuf },
    /// Print the normal form.
    Reduce { file: PathBuf },
    /// Print each reduction step as a JSON line.
    Trace { file: PathBuf },
    /// Run a program with measurements many times and tabulate outcomes.
    Sample { file: PathBuf },
    /// Compare the state a program denotes with a circuit on |0…0>.
    CompareOracle {
        file: PathBuf,
        /// Gates such as "H(0); CNOT(0,1)"; defaults to the file's `oracle:` header.
        #[arg(long)]
        circuit: Option<String>,
    },
    /// Read terms from standard input, one per line.
    Repl,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_cli<I, T>(args: I, stdin: &mut dyn BufRead) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CliOutput::ok(text)
            } else {
                CliOutput::fail(code, text)
            };
        }
    };
    let f = &cli.flags;
    match &cli.command {
        Command::Parse { file } => cmd_parse(file, f),
        Command::Check { file } => cmd_check(file, f),
        Command::Reduce { file } => cmd_reduce(file, f),
        Command::Trace { file } => cmd_trace(file, f),
        Command::Sample { file } => cmd_sample(file, f),
        Command::CompareOracle { file, circuit } => cmd_compare_oracle(file, circuit.as_deref(), f),
        Command::Repl => cmd_repl(stdin, f),
    }
}

fn dialect_for(path: &Path, flags: &Flags) -> Result<Dialect, CliOutput> {
    if let Some(d) = flags.dialect {
        return Ok(d.into());
    }
    path.extension()
        .and_then(|e| e.to_str())
        .and_then(Dialect::from_extension)
        .ok_or_else(|| {
            CliOutput::fail(
                EXIT_USAGE,
                format!("{}: unknown extension, pass --dialect", path.display()),
            )
        })
}

fn load(path: &Path, flags: &Flags) -> Result<Program, CliOutput> {
    let dialect = dialect_for(path, flags)?;
    let src = std::fs::read_to_string(path)
        .map_err(|e| CliOutput::fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    parse_program(&src, dialect)
        .map_err(|e| CliOutput::fail(EXIT_PARSE, format!("{}:{e}", path.display())))
}

fn engine(flags: &Flags, dialect: Dialect) -> EngineConfig {
    EngineConfig::for_dialect(dialect)
        .with_fuel(flags.fuel)
        .with_restriction(flags.restriction == Switch::On)
}

/// Type of a program, or the type-error exit. Lineal is untyped.
fn type_of(p: &Program) -> Result<Option<String>, CliOutput> {
    let ctx = TypingContext::new();
    let res = match p.dialect {
        Dialect::Lineal => return Ok(None),
        Dialect::LambdaS => typecheck(&ctx, &p.term),
        Dialect::Odot => odot_typecheck(&ctx, &p.term),
    };
    res.map(|t| Some(t.to_string())).map_err(|e| CliOutput::fail(EXIT_TYPE, format!("type error: {e}")))
}

macro_rules! try_out {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(out) => return out,
        }
    };
}

pub fn cmd_parse(path: &Path, flags: &Flags) -> CliOutput {
    let p = try_out!(load(path, flags));
    CliOutput::ok(format!("{}\n", pretty(&p.term, p.dialect)))
}

pub fn cmd_check(path: &Path, flags: &Flags) -> CliOutput {
    let p = try_out!(load(path, flags));
    match try_out!(type_of(&p)) {
        Some(t) => CliOutput::ok(format!("{t}\n")),
        None => CliOutput::ok("untyped (lineal)\n".into()),
    }
}

fn run_error(e: RunError) -> CliOutput {
    match e {
        RunError::FuelExhausted { fuel } => {
            CliOutput::fail(EXIT_FUEL, format!("FuelExhausted: no normal form within {fuel} steps"))
        }
        RunError::Measurement(MeasureError::Degenerate) => {
            CliOutput::fail(EXIT_DEGENERATE, "degenerate measurement: the null vector was measured")
        }
        RunError::Measurement(e) => CliOutput::fail(EXIT_DEGENERATE, format!("measurement: {e}")),
    }
}

/// One sampled run of a program.
fn run_once(p: &Program, cfg: &EngineConfig, seed: u64) -> Result<Term, RunError> {
    match p.dialect {
        Dialect::Odot => crate::odot::run_with(&p.term, seed, cfg),
        _ => crate::lambda_s::run_with(&p.term, seed, cfg),
    }
}

pub fn cmd_reduce(path: &Path, flags: &Flags) -> CliOutput {
    let p = try_out!(load(path, flags));
    try_out!(type_of(&p));
    let cfg = engine(flags, p.dialect);
    if let Some(seed) = flags.seed.filter(|_| p.dialect != Dialect::Lineal) {
        return match run_once(&p, &cfg, seed) {
            Ok(t) => CliOutput::ok(format!("{}\n", pretty(&t, p.dialect))),
            Err(e) => run_error(e),
        };
    }
    let trace = normalize(&p.term, &cfg);
    match trace.outcome {
        Outcome::Normal => CliOutput::ok(format!("{}\n", pretty(trace.result(), p.dialect))),
        Outcome::FuelExhausted => CliOutput::fail(
            EXIT_FUEL,
            format!("FuelExhausted: no normal form within {} steps", trace.fuel_used),
        ),
    }
}

pub fn cmd_trace(path: &Path, flags: &Flags) -> CliOutput {
    let p = try_out!(load(path, flags));
    try_out!(type_of(&p));
    let trace = normalize(&p.term, &engine(flags, p.dialect));
    let mut out = CliOutput::ok(trace.to_json_lines());
    if trace.outcome == Outcome::FuelExhausted {
        out.code = EXIT_FUEL;
        out.stderr = format!("FuelExhausted: no normal form within {} steps\n", trace.fuel_used);
    }
    out
}

#[derive(Serialize)]
struct SampleRow {
    term: String,
    count: usize,
    p: f64,
}

#[derive(Serialize)]
struct SampleReport {
    shots: usize,
    seed: u64,
    outcomes: Vec<SampleRow>,
}

/// Outcome counts of `shots` independent runs, shot `k` seeded from
/// stream `k` of `seed`.
pub fn sample_counts(
    p: &Program,
    cfg: &EngineConfig,
    seed: u64,
    shots: usize,
) -> Result<BTreeMap<String, usize>, RunError> {
    let results: Vec<Result<String, RunError>> = (0..shots as u64)
        .into_par_iter()
        .map(|k| {
            run_once(p, cfg, crate::rng::shot_seed(seed, k)).map(|t| pretty(&t, p.dialect))
        })
        .collect();
    let mut counts = BTreeMap::new();
    for r in results {
        *counts.entry(r?).or_insert(0) += 1;
    }
    Ok(counts)
}

pub fn cmd_sample(path: &Path, flags: &Flags) -> CliOutput {
    let p = try_out!(load(path, flags));
    try_out!(type_of(&p));
    if flags.shots == 0 {
        return CliOutput::fail(EXIT_USAGE, "--shots must be positive");
    }
    let seed = flags.seed.unwrap_or(0);
    let counts = match sample_counts(&p, &engine(flags, p.dialect), seed, flags.shots) {
        Ok(c) => c,
        Err(e) => return run_error(e),
    };
    let rows: Vec<SampleRow> = counts
        .into_iter()
        .map(|(term, count)| SampleRow { p: count as f64 / flags.shots as f64, term, count })
        .collect();
    if flags.json {
        let report = SampleReport { shots: flags.shots, seed, outcomes: rows };
        return CliOutput::ok(format!("{}\n", serde_json::to_string(&report).expect("serializes")));
    }
    let width = rows.iter().map(|r| r.term.len()).max().unwrap_or(0).max("outcome".len());
    let mut out = format!("{:<width$}  {:>8}  {:>8}\n", "outcome", "count", "freq");
    for r in &rows {
        let _ = writeln!(out, "{:<width$}  {:>8}  {:>8.4}", r.term, r.count, r.p);
    }
    let _ = writeln!(out, "shots {}  seed {seed}", flags.shots);
    CliOutput::ok(out)
}

pub fn cmd_compare_oracle(path: &Path, circuit: Option<&str>, flags: &Flags) -> CliOutput {
    let p = try_out!(load(path, flags));
    try_out!(type_of(&p));
    let Some(gates) = circuit.or(p.header("oracle")) else {
        return CliOutput::fail(EXIT_USAGE, "no circuit: pass --circuit or add an `oracle:` header");
    };
    let circuit = match Circuit::parse(gates, None) {
        Ok(c) => c,
        Err(e) => return CliOutput::fail(EXIT_USAGE, e.to_string()),
    };
    let trace = normalize(&p.term, &engine(flags, p.dialect));
    if trace.outcome == Outcome::FuelExhausted {
        return CliOutput::fail(EXIT_FUEL, format!("FuelExhausted: no normal form within {} steps", trace.fuel_used));
    }
    let state = match trace.result() {
        Term::App(f, v) if matches!(**f, Term::Meas(_)) => &**v,
        other => other,
    };
    let (_, amps) = match term_to_amplitudes(state, Some(circuit.n)) {
        Ok(a) => a,
        Err(e) => return CliOutput::fail(EXIT_PARSE, format!("unreadable normal form: {e}")),
    };
    let want = match circuit.run_from_zero() {
        Ok(s) => s,
        Err(e) => return CliOutput::fail(EXIT_USAGE, e.to_string()),
    };
    let dev = want.max_deviation(&amps);
    let verdict = if dev < EPSILON { "match" } else { "mismatch" };
    let text = if flags.json {
        format!(
            "{}\n",
            serde_json::json!({"circuit": circuit.to_string(), "max_deviation": dev, "verdict": verdict})
        )
    } else {
        format!("circuit: {circuit}\nmax deviation: {dev:.3e}\n{verdict}\n")
    };
    CliOutput { code: if dev < EPSILON { EXIT_OK } else { EXIT_MISMATCH }, stdout: text, stderr: String::new() }
}

/// Commands: a term reduces it, `:type t` checks it, `:dialect d` switches
/// dialect, `:quit` leaves.
pub fn cmd_repl(input: &mut dyn BufRead, flags: &Flags) -> CliOutput {
    let mut dialect: Dialect = flags.dialect.map_or(Dialect::Lineal, Into::into);
    let mut out = String::new();
    let mut line = String::new();
    loop {
        line.clear();
        match input.read_line(&mut line) {
            Ok(0) => break,
            Ok(_) => {}
            Err(e) => return CliOutput::fail(EXIT_PARSE, e.to_string()),
        }
        let cmd = line.trim();
        if cmd.is_empty() || cmd.starts_with("--") {
            continue;
        }
        if cmd == ":quit" || cmd == ":q" {
            break;
        }
        if let Some(d) = cmd.strip_prefix(":dialect") {
            match d.trim().parse::<Dialect>() {
                Ok(d) => {
                    dialect = d;
                    let _ = writeln!(out, "dialect {d}");
                }
                Err(e) => {
                    let _ = writeln!(out, "error: {e}");
                }
            }
            continue;
        }
        let (typing, src) = match cmd.strip_prefix(":type") {
            Some(rest) => (true, rest),
            None => (false, cmd),
        };
        let p = match parse_program(src, dialect) {
            Ok(p) => p,
            Err(e) => {
                let _ = writeln!(out, "parse error: {e}");
                continue;
            }
        };
        if typing {
            match type_of(&p) {
                Ok(Some(t)) => out.push_str(&t),
                Ok(None) => out.push_str("untyped (lineal)"),
                Err(e) => out.push_str(e.stderr.trim_end()),
            }
            out.push('\n');
            continue;
        }
        let trace = normalize(&p.term, &engine(flags, dialect));
        match trace.outcome {
            Outcome::Normal => {
                let _ = writeln!(out, "{}", pretty(trace.result(), dialect));
            }
            Outcome::FuelExhausted => {
                let _ = writeln!(out, "FuelExhausted: no normal form within {} steps", trace.fuel_used);
            }
        }
    }
    CliOutput::ok(out)
}
