//! Command-line front end shared by the `dyckcluster` binary.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::bijection::{phi, verify_bijection, VerifyMode};
use crate::coloring::{enumerate_collections, for_each_collection, ColoredCollection, Framework, Limits, Sampler};
use crate::compat::{enumerate_compatible_pairs, pair_word};
use crate::error::Error;
use crate::laurent::{
    cluster_recurrence, coefficient_recurrence, expansion_classical, expansion_with_coefficients, Direction, Formula,
};
use crate::paths::{northwest_corners, Family, FamilyContext};
use crate::quantum::{quantum_expansion, verify_quantum_recurrence, wq_allpairs, wq_closed};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

/// Collections checked exhaustively by the weight check before it switches to sampling.
const WEIGHT_EXHAUSTIVE: u128 = 50_000;
const WEIGHT_SAMPLES: usize = 10_000;

#[derive(Parser, Debug)]
#[command(name = "dyckcluster", version, about = "Rank-2 cluster variables through maximal Dyck paths")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the path D_n or C_n with its endpoint and northwest corners.
    Path {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "D", value_parser = parse_family)]
        family: Family,
    },
    /// Print a Laurent expansion.
    Expand {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Mode::Classical)]
        mode: Mode,
        #[arg(long, default_value = "forward", value_parser = parse_direction)]
        direction: Direction,
    },
    /// List collections on D_n or compatible pairs on C_n in canonical order.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = What::Collections)]
        what: What,
        #[arg(long, value_enum, default_value_t = FrameworkArg::Simplified)]
        framework: FrameworkArg,
        /// Stop after this many records.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Run cross-checks and report pass/fail per check.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Check::All)]
        check: Check,
    },
}

#[derive(Args, Debug)]
pub struct Common {
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest enumeration allowed (collections and subsets alike).
    #[arg(long, env = "DYCKCLUSTER_MAX_OBJECTS", value_parser = clap::value_parser!(u64).range(1..))]
    pub max_objects: Option<u64>,
}

impl Common {
    fn limits(&self) -> Limits {
        self.max_objects.map_or_else(Limits::default, |m| Limits::uniform(m as u128))
    }

    fn context(&self) -> Result<FamilyContext, Error> {
        FamilyContext::new(self.r, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Sum over brown collections.
    Classical,
    /// Sum over compatible pairs.
    Llz,
    /// Exchange recurrence.
    Oracle,
    /// Principal coefficients.
    Coeff,
    /// Quantum torus expansion with q-weights.
    Quantum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Collections,
    Pairs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FrameworkArg {
    Ls,
    Simplified,
}

impl From<FrameworkArg> for Framework {
    fn from(f: FrameworkArg) -> Self {
        match f {
            FrameworkArg::Ls => Framework::LeeSchiffler,
            FrameworkArg::Simplified => Framework::Simplified,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Bijection,
    Recurrence,
    Quantum,
    Weights,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_direction(s: &str) -> Result<Direction, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// One named verification outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, pass: bool, details: impl Into<String>) -> Self {
        CheckResult { name: name.into(), pass, details: details.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Exit status for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::GuardExceeded { .. } => EXIT_GUARD,
        Error::InvalidParameter(_) | Error::Parse(_) | Error::UnknownLetter(_) | Error::IndexOutOfRange { .. } => {
            EXIT_USAGE
        }
        _ => EXIT_FAILED,
    }
}

/// Parse `args` (program name first), run the command and return the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let common = match &cli.command {
        Command::Path { common, .. }
        | Command::Expand { common, .. }
        | Command::Enumerate { common, .. }
        | Command::Verify { common, .. } => common,
    };
    let (text, code) = match execute(&cli.command) {
        Ok(done) => done,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &common.out {
        Some(path) => fs::write(path, &text).map_err(|e| e.to_string()),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_FAILED;
    }
    code
}

/// Rendered output and exit status of a parsed command.
pub fn execute(command: &Command) -> Result<(String, i32), Error> {
    match command {
        Command::Path { common, family } => cmd_path(common, *family).map(|s| (s, EXIT_OK)),
        Command::Expand { common, mode, direction } => cmd_expand(common, *mode, *direction).map(|s| (s, EXIT_OK)),
        Command::Enumerate { common, what, framework, limit } => {
            cmd_enumerate(common, *what, (*framework).into(), *limit).map(|s| (s, EXIT_OK))
        }
        Command::Verify { common, check } => {
            let report = cmd_verify(common, *check)?;
            let text = match common.format {
                Format::Json => format!("{}\n", serde_json::to_string(&report).expect("reports serialize")),
                Format::Text => {
                    let mut s = String::new();
                    for c in &report.checks {
                        s += &format!("{} {}: {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.details);
                    }
                    s
                }
            };
            Ok((text, if report.pass() { EXIT_OK } else { EXIT_FAILED }))
        }
    }
}

fn cmd_path(common: &Common, family: Family) -> Result<String, Error> {
    let ctx = common.context()?;
    let word = ctx.path(family);
    let (a, b) = word.endpoint();
    let corners: Vec<(i64, i64)> = northwest_corners(&word).iter().map(|v| v.coords()).collect();
    Ok(match common.format {
        Format::Json => format!(
            "{}\n",
            json!({"r": common.r, "n": common.n, "family": family.to_string(), "word": word.to_string(), "endpoint": [a, b], "corners": corners})
        ),
        Format::Text => {
            let list: Vec<String> = corners.iter().map(|(x, y)| format!("({x},{y})")).collect();
            format!("{word}\nendpoint ({a},{b})\ncorners {}\n", list.join(" "))
        }
    })
}

fn cmd_expand(common: &Common, mode: Mode, direction: Direction) -> Result<String, Error> {
    let ctx = common.context()?;
    let limits = common.limits();
    if mode == Mode::Quantum {
        let z = quantum_expansion(&ctx, direction, &limits)?;
        return Ok(match common.format {
            Format::Json => format!("{}\n", z.to_json()),
            Format::Text => format!("{z}\n"),
        });
    }
    let poly = match mode {
        Mode::Classical => expansion_classical(&ctx, Formula::Subpaths, direction, &limits)?,
        Mode::Llz => expansion_classical(&ctx, Formula::Pairs, direction, &limits)?,
        Mode::Oracle => cluster_recurrence(common.r, direction.index(common.n))?,
        Mode::Coeff => expansion_with_coefficients(&ctx, direction, &limits)?,
        Mode::Quantum => unreachable!(),
    };
    Ok(match common.format {
        Format::Json => format!("{}\n", poly.to_json()),
        Format::Text => format!("{}\n", poly.to_text()),
    })
}

fn cmd_enumerate(common: &Common, what: What, framework: Framework, limit: Option<usize>) -> Result<String, Error> {
    let ctx = common.context()?;
    let limits = common.limits();
    let cap = limit.unwrap_or(usize::MAX);
    let mut out = String::new();
    let mut emitted = 0usize;
    let total = match what {
        What::Collections => {
            let stream = enumerate_collections(&ctx, framework, &limits)?;
            let total = stream.total();
            for beta in stream.take(cap) {
                out += &match common.format {
                    Format::Json => format!("{}\n", json!({"index": emitted, "collection": beta.to_json()})),
                    Format::Text => format!("{beta}\n"),
                };
                emitted += 1;
            }
            total
        }
        What::Pairs => {
            let mut total = 0usize;
            for pair in enumerate_compatible_pairs(&ctx.path(Family::C), ctx.r(), &limits)? {
                if emitted < cap {
                    out += &match common.format {
                        Format::Json => format!("{}\n", json!({"index": emitted, "pair": pair.to_json()})),
                        Format::Text => format!("{pair} {}\n", pair_word(&pair)),
                    };
                    emitted += 1;
                }
                total += 1;
            }
            total
        }
    };
    let truncated = emitted < total;
    out += &match common.format {
        Format::Json => format!("{}\n", json!({"total": total, "emitted": emitted, "truncated": truncated})),
        Format::Text if truncated => format!("truncated: {emitted} of {total}\ntotal {total}\n"),
        Format::Text => format!("total {total}\n"),
    };
    Ok(out)
}

/// Run the selected checks for one `(r, n)`.
pub fn cmd_verify(common: &Common, check: Check) -> Result<Report, Error> {
    let ctx = common.context()?;
    let limits = common.limits();
    let mut checks = Vec::new();
    let wants = |c: Check| check == Check::All || check == c;
    if wants(Check::Bijection) {
        checks.push(check_bijection(&ctx, &limits)?);
    }
    if wants(Check::Recurrence) {
        checks.extend(check_recurrence(&ctx, &limits)?);
    }
    if wants(Check::Quantum) {
        checks.extend(check_quantum(&ctx, &limits)?);
    }
    if wants(Check::Weights) {
        checks.extend(check_weights(&ctx, &limits)?);
    }
    Ok(Report { checks })
}

fn check_bijection(ctx: &FamilyContext, limits: &Limits) -> Result<CheckResult, Error> {
    let len = ctx.path(Family::C).len();
    let brute = len < 127 && (1u128 << len) <= limits.max_subsets;
    let mode = if brute { VerifyMode::Bruteforce } else { VerifyMode::CountsOnly };
    let rep = verify_bijection(ctx, mode, limits)?;
    let mut details = format!(
        "mode={} collections={} pairs={} injective={} surjective={} weights={}",
        serde_json::to_value(rep.mode).expect("mode serializes").as_str().unwrap_or_default(),
        rep.count_collections,
        rep.count_pairs,
        rep.injective,
        rep.surjective,
        rep.weight_preserving
    );
    if let Some(first) = rep.mismatches.first() {
        details += &format!("; first mismatch: {first}");
    }
    Ok(CheckResult::new("bijection", rep.pass(), details))
}

fn directions() -> [(Direction, &'static str); 2] {
    [(Direction::Forward, "forward"), (Direction::Backward, "backward")]
}

fn check_recurrence(ctx: &FamilyContext, limits: &Limits) -> Result<Vec<CheckResult>, Error> {
    let mut out = Vec::new();
    for (dir, label) in directions() {
        let m = dir.index(ctx.n());
        let oracle = cluster_recurrence(ctx.r(), m)?;
        let subpaths = expansion_classical(ctx, Formula::Subpaths, dir, limits)?;
        let pairs = expansion_classical(ctx, Formula::Pairs, dir, limits)?;
        out.push(CheckResult::new(
            format!("recurrence.{label}"),
            subpaths == oracle && pairs == oracle,
            format!("X_{m}: {} terms, subpaths={} pairs={}", oracle.len(), subpaths == oracle, pairs == oracle),
        ));
        let with_y = expansion_with_coefficients(ctx, dir, limits)?;
        let expected = coefficient_recurrence(ctx.r(), m)?.0;
        out.push(CheckResult::new(
            format!("coefficients.{label}"),
            with_y == expected,
            format!("principal-coefficient X_{m}: {} terms", expected.len()),
        ));
    }
    Ok(out)
}

fn check_quantum(ctx: &FamilyContext, limits: &Limits) -> Result<Vec<CheckResult>, Error> {
    let mut out = Vec::new();
    for (dir, label) in directions() {
        let k = dir.index(ctx.n());
        let holds = verify_quantum_recurrence(ctx.r(), ctx.n(), dir, limits)?;
        out.push(CheckResult::new(
            format!("quantum.{label}"),
            holds,
            format!("Z_{}*Z_{} = q^-{}*Z_{k}^{} + 1", k + 1, k - 1, ctx.r(), ctx.r()),
        ));
        let z = quantum_expansion(ctx, dir, limits)?;
        let classical = expansion_classical(ctx, Formula::Subpaths, dir, limits)?;
        out.push(CheckResult::new(
            format!("quantum.{label}.q=1"),
            z.specialize_q()? == classical,
            format!("Z_{k} at q=1 against X_{k}"),
        ));
    }
    Ok(out)
}

fn check_weights(ctx: &FamilyContext, limits: &Limits) -> Result<Vec<CheckResult>, Error> {
    let empty = ColoredCollection::empty(Framework::Simplified);
    let base = (ctx.c(ctx.n() - 1) + ctx.c(ctx.n() - 2)) as i64 - 1;
    let empty_word = wq_allpairs(&pair_word(&phi(ctx, &empty)?), ctx.r());
    let mut out = vec![CheckResult::new(
        "weights.empty",
        empty_word == base,
        format!("w_q of the empty collection = {empty_word}, expected {base}"),
    )];

    let mut checked = 0usize;
    let mut failures = 0usize;
    let mut first = None;
    let mut test = |beta: &ColoredCollection| -> Result<(), Error> {
        let closed = wq_closed(ctx, beta)?;
        let literal = wq_allpairs(&pair_word(&phi(ctx, beta)?), ctx.r());
        checked += 1;
        if closed != literal {
            failures += 1;
            first.get_or_insert_with(|| format!("{beta}: closed {closed}, all-pairs {literal}"));
        }
        Ok(())
    };
    let sampler = Sampler::new(ctx, Framework::Simplified)?;
    let exhaustive = sampler.total() <= WEIGHT_EXHAUSTIVE;
    if exhaustive {
        let mut members_list = Vec::new();
        for_each_collection(ctx, Framework::Simplified, limits, |m| members_list.push(m.to_vec()))?;
        for members in members_list {
            test(&ColoredCollection::new(ctx, Framework::Simplified, members))?;
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..WEIGHT_SAMPLES {
            test(&sampler.sample(&mut rng)?)?;
        }
    }
    let scope = if exhaustive { "all" } else { "sampled" };
    let mut details = format!("{scope} {checked} collections, {failures} disagreements");
    if let Some(f) = first {
        details += &format!("; first: {f}");
    }
    out.push(CheckResult::new("weights.closed_form", failures == 0, details));
    Ok(out)
}
