//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage,
//! parse or parameter errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::experiment::{enum_row, loglog_slope, time_queries, ExperimentRow, QueryTiming};
use crate::geom::{PairResult, PointSet};
use crate::io::{format_points, parse_queries, read_points};
use crate::lowerbound::{
    gen_corollary32, gen_hypercube, gen_multicopy, gen_theorem31, gen_theorem31_padded, verify_claims,
    Construction,
};
use crate::partition::{build_slab_partition, SlabPartition};
use crate::query::{default_m, preprocess, query_bruteforce, sparsity_bound};
use crate::random::{random_points, random_slabs};
use crate::slab_enum::{enum_report, enumerate_bruteforce, enumerate_dnc, verify_crossing_forest, Algo};
use crate::wspd::{build_split_tree, build_wspd, verify_separation};

#[derive(Debug, Parser)]
#[command(name = "slabcp", version, about = "Closest pairs in vertical slabs")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Dimension of random point sets.
    #[arg(long, global = true, default_value_t = 2)]
    pub dim: usize,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a point set and its claimed closest pairs.
    Gen(GenArgs),
    /// Enumerate A(S, m) for a point file.
    Enum(EnumArgs),
    /// Answer slab queries from a file.
    Query(QueryArgs),
    /// Run an invariant suite.
    Verify(VerifyArgs),
    /// Growth-curve and timing sweeps as CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructionKind {
    Hypercube,
    Theorem31,
    Multicopy,
    Corollary32,
    Random,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub construction: ConstructionKind,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Sidecar path; defaults to `<out>.claims.json` when `--out` is given.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnumArgs {
    pub points: PathBuf,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value = "dnc")]
    pub algo: Algo,
    /// Include the pairs in the report.
    #[arg(long)]
    pub pairs: bool,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    pub points: PathBuf,
    /// File with one `a b` pair per line.
    #[arg(long)]
    pub queries: PathBuf,
    /// Bucket count; `ceil(sqrt(n))` when absent.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value = "dnc")]
    pub algo: Algo,
    /// Append brute-force answers and a match column.
    #[arg(long)]
    pub oracle: bool,
    /// Write one JSON trace per query to standard error.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Forest,
    Separation,
    Sparsity,
    Oracle,
    Lowerbound,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub property: Property,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, default_value_t = 10)]
    pub seeds: u64,
    #[arg(long, default_value_t = 200)]
    pub queries: usize,
    /// WSPD separation ratio.
    #[arg(long, default_value_t = 4.0)]
    pub s: f64,
    #[arg(long, value_enum, default_value = "hypercube")]
    pub construction: ConstructionKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BenchKind {
    Enum,
    Query,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    pub kind: BenchKind,
    #[arg(long, value_enum, default_value = "random")]
    pub construction: ConstructionKind,
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<u32>,
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    #[arg(long, default_value_t = 200)]
    pub queries: usize,
    #[arg(long, default_value = "dnc")]
    pub algo: Algo,
}

/// Parses `std::env::args` and runs; returns the exit code.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome> {
    let mut buf = Vec::new();
    let outcome = match &cli.command {
        Command::Gen(a) => cmd_gen(cli, a, &mut buf)?,
        Command::Enum(a) => cmd_enum(a, &mut buf)?,
        Command::Query(a) => cmd_query(a, &mut buf, err)?,
        Command::Verify(a) => cmd_verify(cli, a, &mut buf)?,
        Command::Bench(a) => cmd_bench(cli, a, &mut buf)?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, &buf)?,
        None => out.write_all(&buf)?,
    }
    Ok(outcome)
}

fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidParameter(format!("--{name} is required")))
}

fn build_construction(kind: ConstructionKind, n: Option<usize>, m: Option<usize>, k: Option<u32>) -> Result<Construction> {
    Ok(match kind {
        ConstructionKind::Hypercube => gen_hypercube(need(k, "k")?)?.0,
        ConstructionKind::Theorem31 => match n {
            Some(n) => gen_theorem31_padded(need(m, "m")?, n)?.0,
            None => gen_theorem31(need(m, "m")?)?.0,
        },
        ConstructionKind::Multicopy => gen_multicopy(need(n, "n")?, need(m, "m")?)?.0,
        ConstructionKind::Corollary32 => gen_corollary32(need(n, "n")?, need(m, "m")?)?.0,
        ConstructionKind::Random => {
            return Err(Error::InvalidParameter("random sets have no claimed pairs".into()))
        }
    })
}

fn cmd_gen(cli: &Cli, a: &GenArgs, out: &mut Vec<u8>) -> Result<Outcome> {
    if a.construction == ConstructionKind::Random {
        let points = random_points(need(a.n, "n")?, cli.dim, cli.seed);
        out.extend_from_slice(format_points(&points).as_bytes());
        return Ok(Outcome::Pass);
    }
    let c = build_construction(a.construction, a.n, a.m, a.k)?;
    out.extend_from_slice(format_points(&c.points).as_bytes());
    let sidecar = a.sidecar.clone().or_else(|| cli.out.as_deref().map(sidecar_path));
    if let Some(path) = sidecar {
        std::fs::write(path, serde_json::to_string_pretty(&c.sidecar())?)?;
    }
    Ok(Outcome::Pass)
}

/// `<points>.claims.json`.
pub fn sidecar_path(points: &Path) -> PathBuf {
    let mut s = points.as_os_str().to_owned();
    s.push(".claims.json");
    PathBuf::from(s)
}

fn cmd_enum(a: &EnumArgs, out: &mut Vec<u8>) -> Result<Outcome> {
    let points = read_points(&a.points)?;
    let report = enum_report(&points, a.m, a.algo, a.pairs)?;
    serde_json::to_writer_pretty(&mut *out, &report)?;
    out.push(b'\n');
    Ok(Outcome::Pass)
}

fn pair_fields(p: Option<PairResult>) -> String {
    match p {
        Some(p) => format!("{},{},{}", p.i, p.j, p.dist2),
        None => "-1,-1,inf".to_string(),
    }
}

fn cmd_query(a: &QueryArgs, out: &mut Vec<u8>, err: &mut dyn Write) -> Result<Outcome> {
    let points = read_points(&a.points)?;
    let queries = parse_queries(&std::fs::read_to_string(&a.queries)?)?;
    let m = a.m.unwrap_or_else(|| default_m(points.len()));
    let idx = preprocess(&points, m, a.algo)?;
    let mut all_match = true;
    write!(out, "a,b,i,j,dist2")?;
    if a.oracle {
        write!(out, ",oracle_i,oracle_j,oracle_dist2,match")?;
    }
    writeln!(out)?;
    for &(qa, qb) in &queries {
        let (got, trace) = idx.query_slab(qa, qb)?;
        write!(out, "{qa},{qb},{}", pair_fields(got))?;
        if a.oracle {
            let expect = query_bruteforce(&points, qa, qb)?;
            let ok = expect.map(|p| p.key()) == got.map(|p| p.key());
            all_match &= ok;
            write!(out, ",{},{ok}", pair_fields(expect))?;
        }
        writeln!(out)?;
        if a.trace {
            writeln!(err, "{}", json!({ "a": qa, "b": qb, "trace": trace }))?;
        }
    }
    Ok(Outcome::from_bool(all_match))
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    property: &'static str,
    passed: bool,
    checks: usize,
    failures: usize,
    details: serde_json::Value,
}

fn emit_verify(cli: &Cli, report: &VerifyReport, out: &mut Vec<u8>) -> Result<Outcome> {
    if cli.json {
        serde_json::to_writer_pretty(&mut *out, report)?;
        out.push(b'\n');
    } else {
        writeln!(
            out,
            "{} {}: {} checks, {} failures",
            report.property,
            if report.passed { "PASS" } else { "FAIL" },
            report.checks,
            report.failures
        )?;
        writeln!(out, "{}", report.details)?;
    }
    Ok(Outcome::from_bool(report.passed))
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs, out: &mut Vec<u8>) -> Result<Outcome> {
    let report = match a.property {
        Property::Forest => verify_forest(cli, a)?,
        Property::Separation => verify_wspd(cli, a)?,
        Property::Sparsity => verify_sparsity(cli, a)?,
        Property::Oracle => verify_oracle(cli, a)?,
        Property::Lowerbound => verify_lowerbound(a)?,
    };
    emit_verify(cli, &report, out)
}

fn seeds(cli: &Cli, count: u64) -> impl Iterator<Item = u64> {
    let base = cli.seed;
    (0..count).map(move |s| base.wrapping_add(s))
}

fn median_x(points: &PointSet) -> f64 {
    let order = points.ids_by_x();
    let k = order.len() / 2;
    (points.x(order[k - 1]) + points.x(order[k])) / 2.0
}

fn verify_forest(cli: &Cli, a: &VerifyArgs) -> Result<VerifyReport> {
    let n = a.n.unwrap_or(48);
    let mut failures = 0;
    let mut crossing = 0;
    for seed in seeds(cli, a.seeds) {
        let points = random_points(n, 2, seed);
        let r = verify_crossing_forest(&points, median_x(&points))?;
        crossing += r.crossing;
        if !(r.pos_acyclic && r.neg_acyclic) {
            failures += 1;
        }
    }
    Ok(VerifyReport {
        property: "forest",
        passed: failures == 0,
        checks: a.seeds as usize,
        failures,
        details: json!({ "n": n, "crossing_edges": crossing }),
    })
}

fn verify_wspd(cli: &Cli, a: &VerifyArgs) -> Result<VerifyReport> {
    let n = a.n.unwrap_or(256);
    let mut failures = 0;
    let mut max_constant = 0.0f64;
    for seed in seeds(cli, a.seeds) {
        let points = random_points(n, cli.dim, seed);
        let w = build_wspd(build_split_tree(&points)?, a.s)?;
        max_constant = max_constant.max(w.size_constant(cli.dim));
        let ok = w.verify_ball_separation() && w.verify_unique_coverage(n) && verify_separation(&w, &points);
        if !ok {
            failures += 1;
        }
    }
    Ok(VerifyReport {
        property: "separation",
        passed: failures == 0,
        checks: a.seeds as usize,
        failures,
        details: json!({ "n": n, "d": cli.dim, "s": a.s, "max_size_constant": max_constant }),
    })
}

fn verify_sparsity(cli: &Cli, a: &VerifyArgs) -> Result<VerifyReport> {
    let n = a.n.unwrap_or(2048);
    let bound = 2 * sparsity_bound(cli.dim);
    let mut failures = 0;
    let mut max_report = 0;
    let mut boxes = 0;
    for seed in seeds(cli, a.seeds.min(3)) {
        let points = random_points(n, cli.dim, seed);
        let m = a.m.unwrap_or_else(|| default_m(n));
        let idx = preprocess(&points, m, Algo::Dnc)?;
        for (qa, qb) in random_slabs(a.queries, 0.0, 1.0, seed) {
            let (_, trace) = idx.query_slab(qa, qb)?;
            boxes += trace.boxes;
            for &r in &trace.box_reports {
                max_report = max_report.max(r);
                if r > bound {
                    failures += 1;
                }
            }
        }
    }
    Ok(VerifyReport {
        property: "sparsity",
        passed: failures == 0,
        checks: boxes,
        failures,
        details: json!({ "n": n, "d": cli.dim, "bound": bound, "max_box_report": max_report }),
    })
}

fn verify_oracle(cli: &Cli, a: &VerifyArgs) -> Result<VerifyReport> {
    let n = a.n.unwrap_or(128);
    let m = a.m.unwrap_or_else(|| default_m(n));
    let mut checks = 0;
    let mut failures = 0;
    for seed in seeds(cli, a.seeds) {
        let points = random_points(n, cli.dim, seed);
        let partition = build_slab_partition(&points, m)?;
        checks += 1;
        if enumerate_dnc(&points, &partition)?.keys() != enumerate_bruteforce(&points, &partition).keys() {
            failures += 1;
        }
        let idx = preprocess(&points, m, Algo::Dnc)?;
        for (qa, qb) in random_slabs(a.queries, -0.05, 1.05, seed) {
            checks += 1;
            if idx.query(qa, qb)? != query_bruteforce(&points, qa, qb)? {
                failures += 1;
            }
        }
    }
    Ok(VerifyReport {
        property: "oracle",
        passed: failures == 0,
        checks,
        failures,
        details: json!({ "n": n, "m": m, "d": cli.dim }),
    })
}

fn verify_lowerbound(a: &VerifyArgs) -> Result<VerifyReport> {
    let c = build_construction(a.construction, a.n, a.m, a.k)?;
    let claims = verify_claims(&c.points, &c.claims);
    let count = match &c.boundaries {
        Some(b) => {
            let p = SlabPartition::from_boundaries(&c.points, b.clone())?;
            enumerate_bruteforce(&c.points, &p).count()
        }
        None => {
            let p = build_slab_partition(&c.points, c.m)?;
            enumerate_bruteforce(&c.points, &p).count()
        }
    };
    let passed = claims.all_confirmed() && count >= c.claimed_count();
    Ok(VerifyReport {
        property: "lowerbound",
        passed,
        checks: claims.checked,
        failures: claims.failures.len(),
        details: json!({
            "construction": c.name,
            "params": c.params,
            "n": c.points.len(),
            "m": c.m,
            "claimed_count": c.claimed_count(),
            "measured_count": count,
        }),
    })
}

fn cmd_bench(cli: &Cli, a: &BenchArgs, out: &mut Vec<u8>) -> Result<Outcome> {
    match a.kind {
        BenchKind::Enum => {
            let rows = bench_enum(cli, a)?;
            if cli.json {
                serde_json::to_writer_pretty(&mut *out, &rows)?;
                out.push(b'\n');
            } else {
                writeln!(out, "{}", ExperimentRow::CSV_HEADER)?;
                for r in &rows {
                    writeln!(out, "{}", r.to_csv())?;
                }
            }
        }
        BenchKind::Query => {
            let ns = if a.n.is_empty() { vec![1024, 2048, 4096, 8192, 16384] } else { a.n.clone() };
            let rows: Vec<QueryTiming> = ns
                .iter()
                .map(|&n| time_queries(n, cli.dim, a.queries, cli.seed))
                .collect::<Result<_>>()?;
            let slope = (rows.len() >= 2).then(|| {
                let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
                let ys: Vec<f64> = rows.iter().map(|r| r.mean_seconds).collect();
                loglog_slope(&xs, &ys)
            });
            if cli.json {
                serde_json::to_writer_pretty(&mut *out, &json!({ "rows": rows, "slope": slope }))?;
                out.push(b'\n');
            } else {
                writeln!(out, "{}", QueryTiming::CSV_HEADER)?;
                for r in &rows {
                    writeln!(out, "{}", r.to_csv())?;
                }
                if let Some(s) = slope {
                    writeln!(out, "# loglog_slope={s:.4}")?;
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

fn bench_enum(cli: &Cli, a: &BenchArgs) -> Result<Vec<ExperimentRow>> {
    let mut rows = Vec::new();
    let name = a.construction.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    match a.construction {
        ConstructionKind::Random => {
            for &n in &a.n {
                for &m in &a.m {
                    for seed in seeds(cli, a.seeds) {
                        rows.push(enum_row(&random_points(n, cli.dim, seed), m, &name, a.algo)?);
                    }
                }
            }
        }
        ConstructionKind::Hypercube => {
            for &k in &a.k {
                let c = gen_hypercube(k)?.0;
                let ms = if a.m.is_empty() { vec![c.points.len()] } else { a.m.clone() };
                for m in ms {
                    rows.push(enum_row(&c.points, m, &name, a.algo)?);
                }
            }
        }
        ConstructionKind::Theorem31 => {
            for &m in &a.m {
                let c = match a.n.first() {
                    Some(&n) => gen_theorem31_padded(m, n)?.0,
                    None => gen_theorem31(m)?.0,
                };
                rows.push(enum_row(&c.points, m, &name, a.algo)?);
            }
        }
        ConstructionKind::Multicopy | ConstructionKind::Corollary32 => {
            for &n in &a.n {
                for &m in &a.m {
                    let c = build_construction(a.construction, Some(n), Some(m), None)?;
                    rows.push(enum_row(&c.points, m, &name, a.algo)?);
                }
            }
        }
    }
    Ok(rows)
}
