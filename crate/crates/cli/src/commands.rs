use std::fs;
use std::io::Write;
use std::path::PathBuf;

use chainpoly_core::enumeration::enumerate_polygons;
use chainpoly_core::explorer::{
    match_signature, search_unit_multisets, SearchOptions, Semantics, DEFAULT_NODE_CAP,
};
use chainpoly_core::montecarlo::{compare, simulate, DEFAULT_Z_THRESHOLD};
use chainpoly_core::verification::verify_all;
use chainpoly_core::{IdentityReport, QHalfPoly, SimulationConfig, TriangleSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::json;

use crate::record::{write_csv, write_json, PolygonRecord};
use crate::render::{file_name, render_svg};
use crate::{parse_fraction, CliError, Outcome};

#[derive(Debug, Parser)]
#[command(
    name = "chainpoly",
    version,
    about = "Convex lattice chains and their q-polynomial identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every identity form for one pair (i, n) or a sweep.
    Verify(VerifyArgs),
    /// List the chain polygons of Δ(i, j) with their lattice counts.
    Enumerate(EnumerateArgs),
    /// Run the random hull process and compare against exact probabilities.
    Simulate(SimulateArgs),
    /// Search small multisets with Σ x^a (1-x)^b = 1 and match them to triangles.
    Explore(ExploreArgs),
    /// Write one SVG figure per chain polygon of Δ(i, j).
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, requires = "n", conflicts_with = "all_up_to")]
    pub i: Option<i64>,
    #[arg(long, requires = "i")]
    pub n: Option<i64>,
    /// Check every pair 1 <= i < n <= N.
    #[arg(long, value_name = "N")]
    pub all_up_to: Option<i64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub i: i64,
    #[arg(long)]
    pub j: i64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub i: i64,
    #[arg(long)]
    pub j: i64,
    /// Selection probability as an exact fraction, e.g. 1/3.
    #[arg(long, value_parser = parse_fraction)]
    pub x: Ratio<u64>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Rows with |z| above this are flagged.
    #[arg(long, default_value_t = DEFAULT_Z_THRESHOLD)]
    pub z_threshold: f64,
    /// Worker threads; the table does not depend on this.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    #[arg(long)]
    pub max_a: u32,
    #[arg(long)]
    pub max_b: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_size: u32,
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    pub max_m: i64,
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    pub max_n: i64,
    /// Treat signatures as sets: collapse repeated pairs before matching and
    /// use each pair at most once in the search.
    #[arg(long)]
    pub set_semantics: bool,
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    pub node_cap: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub i: i64,
    #[arg(long)]
    pub j: i64,
    #[arg(long)]
    pub out_dir: PathBuf,
}

pub fn run<W: Write>(cli: Cli, out: &mut W) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Verify(a) => verify(&a, out),
        Command::Enumerate(a) => enumerate(&a, out),
        Command::Simulate(a) => simulate_cmd(&a, out),
        Command::Explore(a) => explore(&a, out),
        Command::Render(a) => render(&a, out),
    }
}

fn poly_json(p: &QHalfPoly) -> serde_json::Value {
    let terms: Vec<_> = p
        .terms()
        .rev()
        .map(|(e, c)| json!({ "exponentDoubled": e, "coefficient": c.to_string() }))
        .collect();
    json!({ "text": p.to_string(), "terms": terms })
}

fn report_json(r: &IdentityReport) -> serde_json::Value {
    let checks: Vec<_> = r
        .checks
        .iter()
        .map(|c| json!({ "kind": c.kind.to_string(), "passed": c.passed, "left": c.left, "right": c.right }))
        .collect();
    let mut v = json!({
        "i": r.spec.i(),
        "n": r.spec.n(),
        "j": r.spec.j(),
        "lhs": poly_json(&r.lhs),
        "rhs": poly_json(&r.rhs),
        "checks": checks,
        "allPassed": r.all_passed(),
    });
    if !r.all_passed() {
        v["ledger"] = r
            .ledger
            .iter()
            .map(|e| {
                json!({
                    "composition": e.composition.to_string(),
                    "polygon": e.polygon.to_string(),
                    "k": e.k,
                    "exponentDoubled": e.exponent_doubled,
                    "polygonExponentDoubled": e.polygon_exponent_doubled,
                })
            })
            .collect();
    }
    v
}

fn write_report<W: Write>(r: &IdentityReport, out: &mut W) -> Result<(), CliError> {
    writeln!(out, "i={} n={} (j={})", r.spec.i(), r.spec.n(), r.spec.j())?;
    writeln!(out, "  lhs = {}", r.lhs)?;
    writeln!(out, "  rhs = {}", r.rhs)?;
    for c in &r.checks {
        let tag = if c.passed { "pass" } else { "FAIL" };
        writeln!(out, "  [{tag}] {}: {} = {}", c.kind, c.left, c.right)?;
    }
    if let Some(fail) = r.first_failure() {
        writeln!(out, "  first failure: {}", fail.kind)?;
        writeln!(
            out,
            "  ledger (composition, polygon, k, doubled exponents):"
        )?;
        for e in &r.ledger {
            writeln!(
                out,
                "    {} {} k={} e={} e_poly={}",
                e.composition, e.polygon, e.k, e.exponent_doubled, e.polygon_exponent_doubled
            )?;
        }
    }
    Ok(())
}

fn verify<W: Write>(a: &VerifyArgs, out: &mut W) -> Result<Outcome, CliError> {
    let pairs: Vec<(i64, i64)> = match (a.i, a.n, a.all_up_to) {
        (Some(i), Some(n), None) => {
            TriangleSpec::from_pair(i, n)?;
            vec![(i, n)]
        }
        (None, None, Some(max)) => {
            if max < 2 {
                return Err(CliError::Usage(format!(
                    "--all-up-to needs N >= 2, got {max}"
                )));
            }
            (2..=max)
                .flat_map(|n| (1..n).map(move |i| (i, n)))
                .collect()
        }
        _ => {
            return Err(CliError::Usage(
                "give either --i and --n, or --all-up-to".into(),
            ))
        }
    };

    let mut reports = Vec::with_capacity(pairs.len());
    for (i, n) in pairs {
        reports.push(verify_all(i, n)?);
    }
    let passed = reports.iter().filter(|r| r.all_passed()).count();

    if a.json {
        let v = json!({
            "pairs": reports.len(),
            "passed": passed,
            "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
        });
        serde_json::to_writer_pretty(&mut *out, &v)?;
        writeln!(out)?;
    } else {
        for r in &reports {
            write_report(r, out)?;
        }
        writeln!(out, "{} pairs, {} passed", reports.len(), passed)?;
    }
    Ok(if passed == reports.len() {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn enumerate<W: Write>(a: &EnumerateArgs, out: &mut W) -> Result<Outcome, CliError> {
    let spec = TriangleSpec::new(a.i, a.j)?;
    let records: Vec<PolygonRecord> = enumerate_polygons(spec)
        .iter()
        .map(PolygonRecord::from_polygon)
        .collect();
    match a.format {
        Format::Json => write_json(&records, out)?,
        Format::Csv => write_csv(&records, out)?,
    }
    Ok(Outcome::Pass)
}

fn simulate_cmd<W: Write>(a: &SimulateArgs, out: &mut W) -> Result<Outcome, CliError> {
    let spec = TriangleSpec::new(a.i, a.j)?;
    let config = SimulationConfig::new(spec, a.x, a.trials, a.seed)?;
    if a.z_threshold.is_nan() || a.z_threshold <= 0.0 {
        return Err(CliError::Usage("--z-threshold must be positive".into()));
    }
    let table = match a.threads {
        Some(0) => return Err(CliError::Usage("--threads must be at least 1".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| simulate(&config)),
        None => simulate(&config),
    };
    let report = compare(&table, &config, a.z_threshold);

    if a.json {
        let rows: Vec<_> = report
            .rows
            .iter()
            .map(|r| {
                json!({
                    "vertices": r.polygon.vertices().iter().map(|v| [v.x, v.y]).collect::<Vec<_>>(),
                    "count": r.count,
                    "empirical": r.empirical,
                    "exact": r.exact.to_string(),
                    "z": if r.z.is_finite() { json!(r.z) } else { json!(r.z.to_string()) },
                    "flagged": r.flagged,
                })
            })
            .collect();
        let v = json!({
            "i": a.i, "j": a.j, "x": a.x.to_string(), "trials": a.trials, "seed": a.seed,
            "zThreshold": a.z_threshold,
            "rows": rows,
            "normalization": report.normalization.to_string(),
            "unexpected": report.unexpected.iter().map(|(p, c)| json!({"polygon": p.to_string(), "count": c})).collect::<Vec<_>>(),
            "passed": report.passed(),
        });
        serde_json::to_writer_pretty(&mut *out, &v)?;
        writeln!(out)?;
    } else {
        writeln!(
            out,
            "{spec} x={} trials={} seed={} z-threshold={}",
            a.x, a.trials, a.seed, a.z_threshold
        )?;
        writeln!(
            out,
            "{:<40} {:>10} {:>10} {:>12} {:>9}",
            "polygon", "count", "empirical", "exact", "z"
        )?;
        for r in &report.rows {
            writeln!(
                out,
                "{:<40} {:>10} {:>10.6} {:>12} {:>+9.3}{}",
                r.polygon.to_string(),
                r.count,
                r.empirical,
                r.exact.to_string(),
                r.z,
                if r.flagged { "  FLAGGED" } else { "" }
            )?;
        }
        for (p, c) in &report.unexpected {
            writeln!(out, "unexpected outcome {p}: {c}")?;
        }
        writeln!(
            out,
            "sum of exact probabilities = {}{}",
            report.normalization,
            if report.normalized() {
                " (exact)"
            } else {
                "  MISMATCH"
            }
        )?;
        writeln!(out, "flagged rows: {}", report.flagged().count())?;
    }
    Ok(if report.passed() {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn explore<W: Write>(a: &ExploreArgs, out: &mut W) -> Result<Outcome, CliError> {
    let semantics = if a.set_semantics {
        Semantics::Set
    } else {
        Semantics::Multiset
    };
    let found = search_unit_multisets(
        a.max_a,
        a.max_b,
        a.max_size as usize,
        SearchOptions {
            semantics,
            node_cap: a.node_cap,
        },
    )?;
    let mut rows = Vec::with_capacity(found.len());
    for sig in &found {
        rows.push((sig, match_signature(sig, a.max_m, a.max_n, semantics)?));
    }

    if a.json {
        let v: Vec<_> = rows
            .iter()
            .map(|(sig, matches)| {
                json!({
                    "pairs": sig.pairs().iter().map(|&(u, w)| [u, w]).collect::<Vec<_>>(),
                    "matches": matches.iter().map(|&(m, n)| [m, n]).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::to_writer_pretty(&mut *out, &json!({ "multisets": v }))?;
        writeln!(out)?;
    } else {
        writeln!(
            out,
            "bounds a<={} b<={} size<={} m<={} n<={} ({})",
            a.max_a,
            a.max_b,
            a.max_size,
            a.max_m,
            a.max_n,
            if a.set_semantics { "sets" } else { "multisets" }
        )?;
        if rows.is_empty() {
            writeln!(out, "no unit multisets found")?;
        }
        for (sig, matches) in &rows {
            if matches.is_empty() {
                writeln!(out, "{sig} matched by none")?;
            } else {
                let list: Vec<String> = matches.iter().map(|(m, n)| format!("({m},{n})")).collect();
                writeln!(out, "{sig} matched by {}", list.join(","))?;
            }
        }
    }
    Ok(Outcome::Pass)
}

fn render<W: Write>(a: &RenderArgs, out: &mut W) -> Result<Outcome, CliError> {
    let spec = TriangleSpec::new(a.i, a.j)?;
    fs::create_dir_all(&a.out_dir).map_err(|source| CliError::Io {
        path: a.out_dir.clone(),
        source,
    })?;
    for (index, poly) in enumerate_polygons(spec).iter().enumerate() {
        let path = a.out_dir.join(file_name(index));
        fs::write(&path, render_svg(poly)).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        writeln!(out, "{}", path.display())?;
    }
    Ok(Outcome::Pass)
}
