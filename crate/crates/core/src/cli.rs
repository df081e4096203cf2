//! Command-line front end. Exit codes: 0 success, 1 mathematical violation,
//! 2 usage or parse error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::construct::{self, ConstructionCertificate, Recipe};
use crate::error::{Error, Result};
use crate::formulas;
use crate::gf::FieldSpec;
use crate::io::{self, PartitionJson, SpreadJson, SubspaceJson};
use crate::partition::SubspacePartition;
use crate::search::{self, Budget, Certificate, SearchKind, SearchOptions, SearchProblem, SearchResult};
use crate::spreadlab::{is_blocking_set, Maximality, PartialSpread, DEFAULT_BLOCKING_LIMIT};
use crate::suite::{self, Outcome, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "subpart", version, about = "Subspace partitions and partial spreads of V(n, q)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate σ, ρ and τ over parameter ranges.
    Formulas(FormulasArgs),
    /// Validate a partition file and run every identity check on it.
    Verify {
        file: PathBuf,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build an explicit partition or spread.
    Construct(ConstructArgs),
    /// Operations on partial spread files.
    Spread {
        #[command(subcommand)]
        op: SpreadOp,
    },
    /// Exact branch-and-bound searches.
    Search(SearchArgs),
    /// Run the acceptance battery.
    Suite(SuiteArgs),
}

/// An inclusive range `a..b`, or a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Range {
    pub lo: u32,
    pub hi: u32,
}

fn parse_range(s: &str) -> std::result::Result<Range, String> {
    let num = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("bad number {x:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(Range { lo, hi })
}

#[derive(Args, Debug)]
pub struct FormulasArgs {
    #[arg(long)]
    pub q: u64,
    /// Ambient dimension or inclusive range `a..b`.
    #[arg(long, value_parser = parse_range)]
    pub n: Range,
    /// Distinguished dimension or inclusive range `a..b`.
    #[arg(long, value_parser = parse_range)]
    pub t: Range,
    #[arg(long)]
    pub json: bool,
}

/// Field selection: `--q`, or `--p` with `--e`, optionally with `--modulus`.
#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    #[arg(long, conflicts_with_all = ["p", "e"])]
    pub q: Option<u64>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, requires = "p")]
    pub e: Option<u32>,
    /// Comma-separated monic modulus coefficients, constant term first.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

impl FieldArgs {
    pub fn field(&self) -> Result<FieldSpec> {
        let (p, e) = match (self.q, self.p) {
            (Some(q), _) => {
                let (p, e) = crate::gf::prime_power(q).ok_or_else(|| Error::Malformed(format!("{q} is not a prime power")))?;
                (p, e)
            }
            (None, Some(p)) => (p, self.e.unwrap_or(1)),
            (None, None) => return Err(Error::Malformed("give --q, or --p with optional --e".into())),
        };
        FieldSpec::new(p, e, self.modulus.as_deref())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    #[value(name = "pi-m")]
    PiMin,
    #[value(name = "pi-M")]
    PiMax,
    Spread,
    Beutelspacher,
    #[value(name = "maximal-embed")]
    MaximalEmbed,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    pub kind: ConstructKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[command(flatten)]
    pub field: FieldArgs,
    /// Write the JSON here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum SpreadOp {
    /// Check dimensions and pairwise disjointness.
    Validate { file: PathBuf },
    /// Count and list the uncovered points.
    Holes { file: PathBuf },
    /// Exit 0 with `"maximal": true`, or report an extending t-space.
    Maximal { file: PathBuf },
    /// Greedy completion in canonical order.
    Complete {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partition induced on a subspace B given as `{"n":…,"basis":…}`.
    Induce {
        file: PathBuf,
        /// File holding the subspace JSON.
        #[arg(long)]
        block: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Blocking-set check of the union and search for an n-dim subspace inside it.
    Block {
        file: PathBuf,
        /// Dimension of the subspace sought; defaults to N − t + 1.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BLOCKING_LIMIT)]
        limit: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchTarget {
    Sigma,
    Rho,
    Tau,
    MaxSpread,
    FindMaximal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    pub target_kind: SearchTarget,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub t: usize,
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 100_000_000)]
    pub budget_nodes: u64,
    #[arg(long)]
    pub budget_secs: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, value_enum, default_value_t = Toggle::On)]
    pub symmetry: Toggle,
    /// Spread size for `find-maximal`.
    #[arg(long)]
    pub target: Option<u64>,
    /// Where to write the certificate JSON.
    #[arg(long)]
    pub certificate_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// Skip stretch items.
    #[arg(long)]
    pub quick: bool,
    /// Node budget for stretch searches.
    #[arg(long, default_value_t = 100_000_000)]
    pub budget_nodes: u64,
    #[arg(long, default_value_t = SuiteOptions::default().seed)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

/// Parses `args` (program name first) and runs the command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_malformed() {
                EXIT_USAGE
            } else {
                EXIT_VIOLATION
            }
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Formulas(a) => cmd_formulas(&a, out),
        Command::Verify { file, json } => cmd_verify(&file, json, out),
        Command::Construct(a) => cmd_construct(&a, out),
        Command::Spread { op } => cmd_spread(op, out),
        Command::Search(a) => cmd_search(&a, out),
        Command::Suite(a) => cmd_suite(&a, out),
    }
}

#[derive(Serialize)]
struct FormulaRow {
    n: u32,
    t: u32,
    q: u64,
    sigma: String,
    rho: String,
    /// τ_q(n+t−1, t).
    tau: String,
    status: String,
}

fn cmd_formulas(a: &FormulasArgs, out: &mut dyn Write) -> Result<i32> {
    if crate::gf::prime_power(a.q).is_none() {
        return Err(Error::Malformed(format!("{} is not a prime power", a.q)));
    }
    let mut rows = Vec::new();
    for n in a.n.lo..=a.n.hi {
        for t in a.t.lo.max(1)..=a.t.hi.min(n) {
            let s = formulas::sigma(n, t, a.q)?;
            let r = formulas::rho(n, t, a.q)?;
            let tau = formulas::tau(n + t - 1, t, a.q)?;
            let undefined: Vec<String> = [("sigma", &s), ("rho", &r), ("tau", &tau)]
                .iter()
                .filter(|(_, v)| v.value().is_none())
                .map(|(name, v)| format!("{name}:{}", v.status_word()))
                .collect();
            let status = if undefined.is_empty() { "defined".to_string() } else { undefined.join(",") };
            rows.push(FormulaRow { n, t, q: a.q, sigma: s.to_string(), rho: r.to_string(), tau: tau.to_string(), status });
        }
    }
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
    } else {
        writeln!(out, "{:>3} {:>3} {:>5} {:>14} {:>14} {:>14}  status", "n", "t", "q", "sigma", "rho", "tau(n+t-1)")?;
        for r in &rows {
            writeln!(out, "{:>3} {:>3} {:>5} {:>14} {:>14} {:>14}  {}", r.n, r.t, r.q, r.sigma, r.rho, r.tau, r.status)?;
        }
    }
    Ok(EXIT_OK)
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n"))?,
        None => writeln!(out, "{text}")?,
    }
    Ok(())
}

fn cmd_verify(file: &Path, json: bool, out: &mut dyn Write) -> Result<i32> {
    let parsed: PartitionJson = serde_json::from_str(&read(file)?)?;
    let (space, parts) = parsed.parse()?;
    let partition = match SubspacePartition::validate(space, parts) {
        Ok(p) => p,
        Err(e) => {
            writeln!(out, "FAIL partition: {e}")?;
            return Ok(EXIT_VIOLATION);
        }
    };
    let report = partition.check_all();
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    } else {
        writeln!(out, "partition of V({}, {}) with {} parts, type {:?}", partition.n(), partition.space().q(), partition.len(), partition.dimension_profile())?;
        let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{} size identity at {} hyperplanes ({} failures)",
            mark(report.size_identity_failures.is_empty()),
            report.hyperplanes,
            report.size_identity_failures.len()
        )?;
        for pk in &report.packing {
            for c in &pk.checks {
                writeln!(out, "{} d={} d'={} {}: {} = {}", mark(c.holds), pk.d, pk.d2, c.name, c.lhs, c.rhs)?;
            }
        }
        writeln!(out, "{} |Π| ≡ 1 mod q^{}", mark(report.congruence_holds), partition.min_dim())?;
        for c in &report.conjecture {
            writeln!(out, "{:?} level {}: {} ≥ {}", c.verdict, c.j, c.lhs, c.bound)?;
        }
    }
    Ok(if report.all_hold() { EXIT_OK } else { EXIT_VIOLATION })
}

fn need(v: Option<usize>, flag: &str) -> Result<usize> {
    v.ok_or_else(|| Error::Malformed(format!("missing --{flag}")))
}

fn trace_text(cert: &ConstructionCertificate) -> String {
    cert.trace.iter().map(|s| format!("# {s}")).collect::<Vec<_>>().join("\n")
}

fn cmd_construct(a: &ConstructArgs, out: &mut dyn Write) -> Result<i32> {
    let field = a.field.field()?;
    let recipe = match a.kind {
        ConstructKind::MaximalEmbed => {
            let s = construct::embedded_spread_maximal(a.n, need(a.t, "t")?, &field)?;
            emit(out, a.out.as_deref(), &io::spread_to_string(&s))?;
            return Ok(EXIT_OK);
        }
        ConstructKind::PiMin => Recipe::PiMin { n: a.n, t: need(a.t, "t")? },
        ConstructKind::PiMax => Recipe::PiMax { n: a.n, t: need(a.t, "t")? },
        ConstructKind::Beutelspacher => Recipe::Beutelspacher { n: a.n, d: need(a.d, "d")? },
        ConstructKind::Spread => {
            let t = need(a.t, "t")?;
            if t == 0 || !a.n.is_multiple_of(t) {
                return Err(Error::OutOfRange(format!("a {t}-spread of V({}) needs t | n", a.n)));
            }
            Recipe::Spread { k: a.n / t, t }
        }
    };
    let cert = construct::run(recipe, &field)?;
    eprintln!("{}", trace_text(&cert));
    emit(out, a.out.as_deref(), &io::partition_to_string(&cert.partition))?;
    Ok(EXIT_OK)
}

fn load_spread(file: &Path) -> Result<(SpreadJson, std::result::Result<PartialSpread, Error>)> {
    let parsed: SpreadJson = serde_json::from_str(&read(file)?)?;
    let (space, parts) = parsed.parse()?;
    let spread = PartialSpread::new(space, parsed.t, parts);
    Ok((parsed, spread))
}

/// A valid spread, or the exit code for an invalid one.
fn valid_spread(file: &Path, out: &mut dyn Write) -> Result<std::result::Result<PartialSpread, i32>> {
    let (_, spread) = load_spread(file)?;
    match spread {
        Ok(s) => Ok(Ok(s)),
        Err(e) if e.is_malformed() => Err(e),
        Err(e) => {
            writeln!(out, "{}", json!({ "valid": false, "error": e.to_string() }))?;
            Ok(Err(EXIT_VIOLATION))
        }
    }
}

fn cmd_spread(op: SpreadOp, out: &mut dyn Write) -> Result<i32> {
    let file = match &op {
        SpreadOp::Validate { file }
        | SpreadOp::Holes { file }
        | SpreadOp::Maximal { file }
        | SpreadOp::Complete { file, .. }
        | SpreadOp::Induce { file, .. }
        | SpreadOp::Block { file, .. } => file.clone(),
    };
    let s = match valid_spread(&file, out)? {
        Ok(s) => s,
        Err(code) => return Ok(code),
    };
    match op {
        SpreadOp::Validate { .. } => {
            writeln!(out, "{}", json!({ "valid": true, "n": s.space().n(), "t": s.t(), "size": s.len() }))?;
        }
        SpreadOp::Holes { .. } => {
            let holes = s.holes();
            let expected = s.space().num_points() - s.len() * s.space().theta(s.t());
            let points: Vec<usize> = holes.holes.iter().collect();
            writeln!(out, "{}", json!({ "count": holes.count(), "expected": expected, "points": points }))?;
        }
        SpreadOp::Maximal { .. } => match s.is_maximal() {
            Maximality::Maximal => writeln!(out, "{}", json!({ "maximal": true, "size": s.len() }))?,
            Maximality::Extendable(w) => writeln!(
                out,
                "{}",
                json!({ "maximal": false, "size": s.len(), "witness": SubspaceJson::from(&w) })
            )?,
        },
        SpreadOp::Complete { out: path, .. } => {
            let g = s.greedy_complete();
            emit(out, path.as_deref(), &io::spread_to_string(&g))?;
        }
        SpreadOp::Induce { block, out: path, .. } => {
            let b: SubspaceJson = serde_json::from_str(&read(&block)?)?;
            let b = b.parse(s.space())?;
            match s.induced_partition(&b) {
                Ok(p) => emit(out, path.as_deref(), &io::partition_to_string(&p))?,
                Err(e) => {
                    writeln!(out, "{}", json!({ "error": e.to_string() }))?;
                    return Ok(EXIT_VIOLATION);
                }
            }
        }
        SpreadOp::Block { n, limit, .. } => {
            let n = n.unwrap_or(s.space().n() + 1 - s.t());
            let blocking = is_blocking_set(s.space(), s.covered(), s.t());
            let found = s.find_trivial_blocking_subspace(n, limit)?;
            writeln!(
                out,
                "{}",
                json!({
                    "union_is_blocking_set": blocking,
                    "n": n,
                    "subspace": found.as_ref().map(SubspaceJson::from),
                })
            )?;
        }
    }
    Ok(EXIT_OK)
}

fn search_kind(a: &SearchArgs) -> Result<SearchKind> {
    Ok(match a.target_kind {
        SearchTarget::Sigma => SearchKind::MinPartitionMaxDim,
        SearchTarget::Rho => SearchKind::MaxPartitionMinDim,
        SearchTarget::Tau => SearchKind::MinMaximalSpread,
        SearchTarget::MaxSpread => SearchKind::MaxPartialSpread,
        SearchTarget::FindMaximal => SearchKind::TargetMaximalSpread {
            target: a.target.ok_or_else(|| Error::Malformed("find-maximal needs --target".into()))?,
        },
    })
}

fn write_certificate(result: &SearchResult, path: &Path) -> Result<()> {
    let text = match &result.certificate {
        Some(Certificate::Partition(p)) => io::partition_to_string(p),
        Some(Certificate::Spread(s)) => io::spread_to_string(s),
        None => return Ok(()),
    };
    fs::write(path, format!("{text}\n"))?;
    Ok(())
}

fn cmd_search(a: &SearchArgs, out: &mut dyn Write) -> Result<i32> {
    let budget = Budget {
        nodes: a.budget_nodes,
        time: match a.budget_secs {
            Some(s) if s.is_finite() && s > 0.0 => Some(Duration::from_secs_f64(s)),
            Some(s) => return Err(Error::Malformed(format!("--budget-secs must be positive, got {s}"))),
            None => None,
        },
    };
    let problem = SearchProblem {
        kind: search_kind(a)?,
        n: a.n,
        t: a.t,
        field: a.field.field()?,
        options: SearchOptions { budget, symmetry: a.symmetry == Toggle::On, threads: a.threads },
    };
    let result = search::solve(&problem).map_err(|e| match e {
        Error::OutOfRange(m) | Error::PreconditionUnmet(m) => Error::Malformed(m),
        Error::BadDimension { n, d } => Error::Malformed(format!("dimension {d} outside 1..={n}")),
        other => other,
    })?;
    let certificate_file = match (&a.certificate_file, &result.certificate) {
        (Some(path), Some(_)) => {
            write_certificate(&result, path)?;
            Some(path.display().to_string())
        }
        _ => None,
    };
    let summary = json!({
        "kind": result.kind.to_string(),
        "n": result.n,
        "t": result.t,
        "q": result.q,
        "optimum": result.optimum,
        "status": result.status,
        "nodes": result.nodes,
        "lower": result.lower,
        "upper": result.upper,
        "proof": result.proof,
        "certificate_file": certificate_file,
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&summary)?)?;
    Ok(EXIT_OK)
}

fn cmd_suite(a: &SuiteArgs, out: &mut dyn Write) -> Result<i32> {
    if a.threads == 0 || a.budget_nodes == 0 {
        return Err(Error::Malformed("--threads and --budget-nodes must be positive".into()));
    }
    let opts = SuiteOptions { quick: a.quick, stretch_nodes: a.budget_nodes, seed: a.seed, threads: a.threads };
    let mut failed = false;
    for i in 1..=suite::CRITERIA {
        let report = suite::run_criterion(i, &opts);
        for c in &report.checks {
            writeln!(out, "{c}")?;
        }
        failed |= report.outcome() == Outcome::Fail;
    }
    Ok(if failed { EXIT_VIOLATION } else { EXIT_OK })
}
