//! Library half of the `lrc` command. Every subcommand is a plain function
//! returning a serializable value, so tests can drive them without a process.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use lrc_core::bounds::{self, BoundsReport, LocalityParams};
use lrc_core::code::CodeFile;
use lrc_core::constructions::{
    self, code_633, fano_code, LocalityClaim, SquareSpec, Theorem2Spec, Verdict, VerifyPlan,
    DEFAULT_SAMPLED_TRIALS,
};
use lrc_core::locality::{
    self, locality_profile, CertificateFile, RepairSimConfig, RepairSimSummary,
};
use lrc_core::{DistanceReport, LinearCode, LocalityClass, RepairMetrics};

pub const ANALYZE_SCHEMA: &str = "lrc-analyze/v1";
pub const BOUNDS_SCHEMA: &str = "lrc-bounds/v1";
pub const FIG5_SCHEMA: &str = "lrc-fig5/v1";
pub const REPAIR_SIM_SCHEMA: &str = "lrc-repair-sim/v1";
pub const FIXED_CODE_SCHEMA: &str = "lrc-fixed-code/v1";

// ---------------------------------------------------------------------------
// Command line
// ---------------------------------------------------------------------------

#[derive(Debug, Parser)]
#[command(name = "lrc", version, about = "Locally repairable codes with multiple disjoint repair sets")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for parallel verification (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Output file. For `construct` this receives the code file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format. Tables default to csv, reports to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and write it as a code file.
    Construct(ConstructArgs),
    /// Distance, locality, optimality and repair metrics of a code file.
    Analyze(AnalyzeArgs),
    /// Length and distance bounds for given parameters.
    Bounds(BoundsArgs),
    /// (k, d) curves of the square code against both bounds, delta = 3.
    Fig5(Fig5Args),
    /// Random erasure-and-repair episodes.
    RepairSim(RepairSimArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Fano,
    C633,
    Theorem2,
    Square,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyArg {
    Exhaustive,
    Sampled,
    Auto,
    None,
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    #[arg(short = 'k', long)]
    pub k: Option<usize>,
    #[arg(short = 'r', long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, value_enum, default_value_t = VerifyArg::Auto)]
    pub verify: VerifyArg,
    /// Samples for `--verify sampled`.
    #[arg(long, default_value_t = DEFAULT_SAMPLED_TRIALS)]
    pub trials: u64,
    #[arg(long, default_value_t = 5)]
    pub max_retries: usize,
    /// Extra global parity columns appended to a theorem2 code.
    #[arg(long, default_value_t = 0)]
    pub extra_parity: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    pub file: PathBuf,
    #[arg(short = 'r', long)]
    pub r: usize,
    #[arg(long)]
    pub delta: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    /// Dimension, or an inclusive range `lo:hi` with `--sweep`.
    #[arg(short = 'k', long)]
    pub k: Span,
    #[arg(short = 'r', long)]
    pub r: Span,
    #[arg(long)]
    pub delta: Span,
    /// Distance. Defaults to delta in a sweep.
    #[arg(short = 'd', long)]
    pub d: Option<u64>,
    /// Length at which the distance bounds are evaluated. Defaults to the
    /// smallest length allowed by the disjoint-repair-set bound.
    #[arg(short = 'n', long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub sweep: bool,
}

#[derive(Debug, Clone, Args)]
pub struct Fig5Args {
    #[arg(short = 'r', long, default_value_t = 5)]
    pub r: u64,
    /// Must be (r+1)^2 when given.
    #[arg(short = 'n', long)]
    pub n: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct RepairSimArgs {
    pub file: PathBuf,
    #[arg(short = 'r', long)]
    pub r: usize,
    #[arg(long)]
    pub delta: usize,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    /// Draw patterns of up to delta erasures, one more than guaranteed.
    #[arg(long)]
    pub over_tolerance: bool,
}

/// Inclusive integer range written `a` or `a:b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    pub fn single(&self) -> Option<u64> {
        (self.lo == self.hi).then_some(self.lo)
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = match s.split_once(':') {
            Some((a, b)) => (num(a)?, num(b)?),
            None => (num(s)?, num(s)?),
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(Span { lo, hi })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}:{}", self.lo, self.hi)
        }
    }
}

// ---------------------------------------------------------------------------
// Errors and exit codes
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input. Exit code 1.
    Usage(String),
    /// A construction, certificate or repair check failed. Exit code 2.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Failed(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failed(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<lrc_core::Error> for CliError {
    fn from(e: lrc_core::Error) -> Self {
        use lrc_core::Error::*;
        match e {
            ConstructionFailed { .. } | NotLocal { .. } | CertificateMismatch(_) => {
                CliError::Failed(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedCodeReport {
    pub schema: String,
    pub kind: String,
    pub code: CodeFile,
}

/// A built code and the JSON report describing it.
#[derive(Debug, Clone)]
pub struct Constructed {
    pub code: LinearCode,
    pub report_json: String,
}

pub fn construct(args: &ConstructArgs, seed: u64) -> CliResult<Constructed> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| CliError::Usage(format!("{name} is required for this kind")))
    };
    let plan = match args.verify {
        VerifyArg::Exhaustive => VerifyPlan::Exhaustive,
        VerifyArg::Sampled => VerifyPlan::Sampled { trials: args.trials },
        VerifyArg::Auto => VerifyPlan::Auto,
        VerifyArg::None => VerifyPlan::Skip,
    };
    let q = || args.q.ok_or_else(|| CliError::Usage("--q is required for this kind".into()));
    let report = match args.kind {
        Kind::Fano | Kind::C633 => {
            let (name, code) = match args.kind {
                Kind::Fano => ("fano", fano_code()),
                _ => ("c633", code_633()),
            };
            let report = FixedCodeReport {
                schema: FIXED_CODE_SCHEMA.into(),
                kind: name.into(),
                code: code.to_file(),
            };
            return Ok(Constructed {
                report_json: serde_json::to_string_pretty(&report).expect("report serializes"),
                code,
            });
        }
        Kind::Theorem2 => {
            let mut spec = Theorem2Spec::new(
                need(args.k, "-k")?,
                need(args.r, "-r")?,
                need(args.delta, "--delta")?,
                q()?,
            );
            spec.seed = seed;
            spec.verify = plan;
            spec.max_retries = args.max_retries;
            spec.extra_parity = args.extra_parity;
            check_r(spec.r)?;
            constructions::construct_theorem2(spec)?
        }
        Kind::Square => {
            if args.delta.is_some_and(|d| d != 3) {
                return usage("square codes have delta = 3");
            }
            let mut spec = SquareSpec::new(need(args.r, "-r")?, need(args.k, "-k")?, q()?);
            spec.seed = seed;
            spec.verify = plan;
            spec.max_retries = args.max_retries;
            check_r(spec.r)?;
            constructions::construct_square(spec)?
        }
    };
    Ok(Constructed {
        code: report.code.clone(),
        report_json: report.to_json(),
    })
}

fn check_r(r: usize) -> CliResult<()> {
    if r < 2 {
        return usage(format!("r must be at least 2, got {r}"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub r: usize,
    pub delta: usize,
    /// Exact minimum distance, absent when out of budget.
    pub d: Option<usize>,
    pub d_words: Option<usize>,
    pub d_rank: Option<usize>,
    pub class: String,
    /// 1-based information set, for information locality.
    pub info_set: Option<Vec<usize>>,
    /// One entry per coordinate, `null` where no certificate exists.
    pub certificates: Vec<Option<CertificateFile>>,
    pub mu: u64,
    pub bound_min_n: Option<u64>,
    pub optimal: bool,
    pub verdict: Verdict,
    pub sampled: Option<DistanceReport>,
    pub metrics: Option<RepairMetrics>,
}

pub fn analyze(code: &LinearCode, r: usize, delta: usize) -> CliResult<AnalyzeReport> {
    LocalityParams::new(code.k() as u64, r as u64, delta as u64)?;
    let profile = locality_profile(code, r, delta)?;
    let claim = match profile.class {
        LocalityClass::AllSymbol => LocalityClaim::AllSymbol,
        _ => LocalityClaim::Information,
    };
    let opt = constructions::verify_optimality(code, code.k(), r, delta, claim)?;
    let info_set = match &profile.class {
        LocalityClass::Information { info_set } => Some(info_set.iter().map(|i| i + 1).collect()),
        _ => None,
    };
    let metrics = match profile.class {
        LocalityClass::None => None,
        _ => Some(locality::repair_metrics(code, &profile)?),
    };
    Ok(AnalyzeReport {
        schema: ANALYZE_SCHEMA.into(),
        n: code.n(),
        k: code.k(),
        q: code.field().modulus(),
        r,
        delta,
        d: opt.d_rank.or(opt.d_words),
        d_words: opt.d_words,
        d_rank: opt.d_rank,
        class: profile.class.name().into(),
        info_set,
        certificates: profile
            .certificates
            .iter()
            .map(|c| c.as_ref().map(|c| c.to_file()))
            .collect(),
        mu: opt.mu,
        bound_min_n: opt.bound_min_n,
        optimal: opt.verdict == Verdict::Optimal,
        verdict: opt.verdict,
        sampled: opt.sampled,
        metrics,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateRow {
    pub coordinate: usize,
    pub certified: bool,
    /// Repair sets separated by `|`, elements by spaces, 1-based.
    pub sets: String,
}

fn coordinate_rows(report: &AnalyzeReport) -> Vec<CoordinateRow> {
    report
        .certificates
        .iter()
        .enumerate()
        .map(|(i, c)| CoordinateRow {
            coordinate: i + 1,
            certified: c.is_some(),
            sets: c
                .as_ref()
                .map(|c| {
                    c.sets
                        .iter()
                        .map(|s| s.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
                        .collect::<Vec<_>>()
                        .join("|")
                })
                .unwrap_or_default(),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub k: u64,
    pub d: u64,
    pub r: u64,
    pub delta: u64,
    pub n: u64,
    pub mu: u64,
    pub prakash_penalty: u64,
    /// `n >= d + k - 1 + mu` for disjoint repair sets.
    pub bound2_min_n: u64,
    /// `n >= d + k - 1 + (ceil(k/r) - 1)(delta - 1)`.
    pub bound1_min_n: u64,
    pub d_bound2: i64,
    pub d_bound1: i64,
    pub gap: i64,
    pub lemma3: bool,
}

pub fn bounds_row(k: u64, d: u64, r: u64, delta: u64, n: Option<u64>) -> CliResult<BoundsRow> {
    if d == 0 {
        return usage("d must be positive");
    }
    let rep = BoundsReport::new(k, r, delta)?;
    let n = n.unwrap_or_else(|| rep.bound_c_min_n(d));
    Ok(BoundsRow {
        k,
        d,
        r,
        delta,
        n,
        mu: rep.mu,
        prakash_penalty: rep.prakash_penalty,
        bound2_min_n: rep.bound_c_min_n(d),
        bound1_min_n: rep.bound_prakash_min_n(d),
        d_bound2: rep.d_upper_c(n),
        d_bound1: rep.d_upper_prakash(n),
        gap: rep.gap(n),
        lemma3: bounds::lemma3_check(k, r, delta)?,
    })
}

pub fn bounds_rows(args: &BoundsArgs) -> CliResult<Vec<BoundsRow>> {
    if !args.sweep {
        let (Some(k), Some(r), Some(delta)) = (args.k.single(), args.r.single(), args.delta.single())
        else {
            return usage("ranges need --sweep");
        };
        let Some(d) = args.d else {
            return usage("-d is required without --sweep");
        };
        return Ok(vec![bounds_row(k, d, r, delta, args.n)?]);
    }
    let mut rows = Vec::new();
    for r in args.r.lo.max(2)..=args.r.hi {
        for k in args.k.lo.max(r + 1)..=args.k.hi {
            for delta in args.delta.lo.max(2)..=args.delta.hi {
                rows.push(bounds_row(k, args.d.unwrap_or(delta), r, delta, args.n)?);
            }
        }
    }
    if rows.is_empty() {
        return usage("sweep is empty");
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// fig5
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub k: u64,
    pub d_square: i64,
    pub d_bound1: i64,
    pub d_bound2: i64,
}

pub fn fig5_points(r: u64, n: Option<u64>) -> CliResult<Vec<CurvePoint>> {
    if r < 2 {
        return usage(format!("r must be at least 2, got {r}"));
    }
    let side = r + 1;
    let full = side * side;
    if n.is_some_and(|n| n != full) {
        return usage(format!("the square code with r = {r} has n = {full}"));
    }
    let mut points = Vec::new();
    for k in r + 1..=r * r {
        let rep = BoundsReport::new(k, r, 3)?;
        let mu_k = bounds::mu_k_square(k, r)?;
        let p = CurvePoint {
            k,
            d_square: full as i64 - k as i64 + 1 - mu_k as i64,
            d_bound1: rep.d_upper_prakash(full),
            d_bound2: rep.d_upper_c(full),
        };
        if !(p.d_bound1 <= p.d_square && p.d_square <= p.d_bound2) {
            return Err(CliError::Failed(format!("curve ordering violated at {p:?}")));
        }
        points.push(p);
    }
    Ok(points)
}

// ---------------------------------------------------------------------------
// repair-sim
// ---------------------------------------------------------------------------

pub fn repair_sim(
    code: &LinearCode,
    r: usize,
    delta: usize,
    trials: u64,
    seed: u64,
    over_tolerance: bool,
) -> CliResult<RepairSimSummary> {
    let profile = locality_profile(code, r, delta)?;
    let config = RepairSimConfig {
        trials,
        seed,
        max_erasures: over_tolerance.then_some(delta),
    };
    Ok(locality::simulate_repairs(code, &profile, config)?)
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

/// CSV with a leading `# schema: ...` comment line.
pub fn to_csv<T: Serialize>(schema: &str, rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("row serializes");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv");
    format!("# schema: {schema}\n{body}")
}

/// Parses CSV written by [`to_csv`], checking the schema line.
pub fn from_csv<T: for<'de> Deserialize<'de>>(schema: &str, text: &str) -> CliResult<Vec<T>> {
    let first = text.lines().next().unwrap_or_default();
    if first != format!("# schema: {schema}") {
        return usage(format!("expected schema {schema}, found {first:?}"));
    }
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

#[derive(Serialize)]
struct Tagged<'a, T: Serialize> {
    schema: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

#[derive(Serialize)]
struct Rows<'a, T: Serialize> {
    schema: &'a str,
    rows: &'a [T],
}

fn read_code(path: &PathBuf) -> CliResult<LinearCode> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(LinearCode::from_json(&text)?)
}

/// Runs a parsed command line and returns the text meant for stdout.
///
/// `construct` writes its code file to `--out`. Other commands write their
/// output to `--out` when it is given and return an empty string.
pub fn run(cli: &Cli) -> CliResult<String> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return usage("--jobs must be positive");
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let format = cli.format;
    let text = match &cli.command {
        Command::Construct(args) => {
            if format == Some(Format::Csv) {
                return usage("construct writes json only");
            }
            let built = construct(args, cli.seed)?;
            if let Some(path) = &cli.out {
                std::fs::write(path, built.code.to_json() + "\n")?;
            }
            return match &args.report {
                Some(path) => {
                    std::fs::write(path, built.report_json + "\n")?;
                    Ok(String::new())
                }
                None => Ok(built.report_json + "\n"),
            };
        }
        Command::Analyze(args) => {
            let report = analyze(&read_code(&args.file)?, args.r, args.delta)?;
            match format.unwrap_or(Format::Json) {
                Format::Json => to_json(&report),
                Format::Csv => to_csv(ANALYZE_SCHEMA, &coordinate_rows(&report)),
            }
        }
        Command::Bounds(args) => {
            let rows = bounds_rows(args)?;
            match format.unwrap_or(Format::Csv) {
                Format::Csv => to_csv(BOUNDS_SCHEMA, &rows),
                Format::Json => to_json(&Rows { schema: BOUNDS_SCHEMA, rows: &rows }),
            }
        }
        Command::Fig5(args) => {
            let points = fig5_points(args.r, args.n)?;
            match format.unwrap_or(Format::Csv) {
                Format::Csv => to_csv(FIG5_SCHEMA, &points),
                Format::Json => to_json(&Rows { schema: FIG5_SCHEMA, rows: &points }),
            }
        }
        Command::RepairSim(args) => {
            let code = read_code(&args.file)?;
            let summary = repair_sim(&code, args.r, args.delta, args.trials, cli.seed, args.over_tolerance)?;
            let text = match format.unwrap_or(Format::Json) {
                Format::Json => to_json(&Tagged { schema: REPAIR_SIM_SCHEMA, body: &summary }),
                Format::Csv => to_csv(REPAIR_SIM_SCHEMA, &[&summary]),
            };
            if !args.over_tolerance && summary.successes != summary.trials {
                return Err(CliError::Failed(format!("repairs within tolerance failed\n{text}")));
            }
            text
        }
    };
    let text = if text.ends_with('\n') { text } else { text + "\n" };
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
