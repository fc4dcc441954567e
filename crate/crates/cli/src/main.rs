//! `gwcalc`: batch front end for curve counts, Gromov–Witten invariants,
//! quantum products, WDVV checks and boundary combinatorics.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod cache;
mod output;
mod parse;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use gwcalc::boundary::{
    boundary_divisor_count_m0n, count_labeled_configurations, enumerate_partitions,
    partitions_to_json, stratum_dimension, MarkSet,
};
use gwcalc::potentials::{
    classical_potential_with, gw_potential_p1, gw_potential_with, quantum_potential_p1x1_with,
    quantum_potential_p2_reduced_with, wdvv_general_pr_with, wdvv_residual_p1x1_from,
    wdvv_residual_p2_from,
};
use gwcalc::quantum::{
    cup_p1x1, cup_pr, small_qmul, BigQuantumElement, BigQuantumRing, RingElement,
};
use gwcalc::series::TruncatedSeries;
use gwcalc::{CurveCounts, Degree, GwEngine, InvariantKey, Rational, TargetSpace};

use output::{Format, Report, ValueEntry};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Parser)]
#[command(name = "gwcalc", version, about = "Exact genus-zero Gromov-Witten computations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "plain", global = true)]
    format: Format,
    /// Include elapsed milliseconds in JSON output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rational plane curves of degree d through 3d-1 points.
    Nd(NdArgs),
    /// Rational curves of bidegree (d,e) on P1xP1 through 2d+2e-1 points.
    Nde(NdeArgs),
    /// A genus-zero Gromov-Witten invariant.
    Gw(GwArgs),
    /// Cup, small quantum or big quantum product of basis classes.
    Qmul(QmulArgs),
    /// WDVV residual of the potential, truncated at an order.
    Wdvv(WdvvArgs),
    /// The truncated Gromov-Witten potential.
    Potential(PotentialArgs),
    /// Boundary divisors D(ij|kl) of a space of stable maps.
    Partitions(PartitionArgs),
    /// Number of boundary divisors of M_0,n.
    Divisors(DivisorArgs),
    /// Dimension of the stratum of M_0,n with delta nodes.
    Stratum(StratumArgs),
    /// Labelled mark distributions on two twigs of sizes a|b.
    Configs(ConfigArgs),
}

#[derive(Args)]
struct NdArgs {
    #[arg(long, allow_negative_numbers = true)]
    d: i64,
    /// Print the whole table N_1..N_d.
    #[arg(long)]
    upto: bool,
}

#[derive(Args)]
struct NdeArgs {
    #[arg(long, allow_negative_numbers = true, requires = "e", conflicts_with = "upto")]
    d: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires = "d")]
    e: Option<i64>,
    /// Print the matrix of N_(d,e) for d, e up to this bound.
    #[arg(long, required_unless_present = "d")]
    upto: Option<u32>,
}

#[derive(Args)]
struct GwArgs {
    /// p<r> or p1xp1.
    #[arg(long)]
    target: String,
    /// Integer degree, or d,e on p1xp1.
    #[arg(long, required_unless_present = "collected", conflicts_with = "collected")]
    degree: Option<String>,
    /// Inputs, e.g. h2:4,h1:2 or T3:3.
    #[arg(long, default_value = "")]
    classes: String,
    /// Sum over all degrees; at most one satisfies the dimension constraint.
    #[arg(long)]
    collected: bool,
}

#[derive(Args)]
struct QmulArgs {
    #[arg(long)]
    target: String,
    /// Small quantum product (the default).
    #[arg(long, conflicts_with_all = ["big", "cup"])]
    small: bool,
    /// Big quantum product with truncated series coefficients.
    #[arg(long, conflicts_with = "cup")]
    big: bool,
    /// Classical cup product.
    #[arg(long)]
    cup: bool,
    /// Truncation order of the big product.
    #[arg(long, default_value_t = 4)]
    order: u32,
    /// Basis classes, multiplied left to right.
    #[arg(required = true, num_args = 1..)]
    classes: Vec<String>,
}

#[derive(Args)]
struct WdvvArgs {
    /// p2, p1xp1, or p3 (with --indices).
    #[arg(long)]
    target: String,
    #[arg(long)]
    order: u32,
    /// i,j,k,l for the general equation on P2/P3.
    #[arg(long)]
    indices: Option<String>,
}

#[derive(Args)]
struct PotentialArgs {
    #[arg(long)]
    target: String,
    #[arg(long, default_value_t = 4)]
    order: u32,
    /// Only the degree-zero cubic part.
    #[arg(long, conflicts_with = "quantum")]
    classical: bool,
    /// Only the positive-degree part (p2 reduced family or p1xp1).
    #[arg(long)]
    quantum: bool,
}

#[derive(Args)]
struct PartitionArgs {
    /// Number of marks; labelled m1, m2, p1, p2, ...
    #[arg(long)]
    marks: u32,
    /// Integer degree, or d,e for bidegrees.
    #[arg(long)]
    degree: String,
    #[arg(long, default_value = "m1,m2:p1,p2")]
    pins: String,
    /// Only print the number of partitions.
    #[arg(long)]
    count: bool,
}

#[derive(Args)]
struct DivisorArgs {
    #[arg(long)]
    n: u32,
}

#[derive(Args)]
struct StratumArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    delta: u32,
}

#[derive(Args)]
struct ConfigArgs {
    #[arg(long)]
    n: u32,
    /// Twig sizes a,b.
    #[arg(long)]
    split: String,
}

fn cmd_nd(engine: &GwEngine, a: &NdArgs) -> Result<Report, CliError> {
    if a.d < 1 {
        return Err(CliError::usage(format!("--d must be at least 1, got {}", a.d)));
    }
    let counts = engine.counts();
    let mut r = if a.upto {
        let mut r = Report::new("nd");
        r.header = vec!["d".into(), "N_d".into()];
        for d in 1..=a.d {
            let v = Rational::from(counts.n_d(d).map_err(usage)?);
            r.rows.push(vec![d.to_string(), v.to_string()]);
            r.record.values.push(ValueEntry::number(format!("N_{d}"), &v));
        }
        r
    } else {
        let v = Rational::from(counts.n_d(a.d).map_err(usage)?);
        Report::single("nd", "N_d", ValueEntry::number(format!("N_{}", a.d), &v))
    };
    r.input("d", a.d).input("upto", a.upto);
    Ok(r)
}

fn cmd_nde(engine: &GwEngine, a: &NdeArgs) -> Result<Report, CliError> {
    let counts = engine.counts();
    if let Some(bound) = a.upto {
        let mut r = Report::new("nde");
        r.input("upto", bound);
        r.header = std::iter::once("d\\e".to_string())
            .chain((0..=bound).map(|e| e.to_string()))
            .collect();
        for d in 0..=bound {
            let mut row = vec![d.to_string()];
            for e in 0..=bound {
                let label = format!("N_({d},{e})");
                if d == 0 && e == 0 {
                    row.push("x".into());
                    r.record.values.push(ValueEntry::text(label, "x"));
                    continue;
                }
                let v = Rational::from(counts.n_de(d.into(), e.into()).map_err(usage)?);
                row.push(v.to_string());
                r.record.values.push(ValueEntry::number(label, &v));
            }
            r.rows.push(row);
        }
        return Ok(r);
    }
    let (d, e) = (a.d.expect("clap requires d"), a.e.expect("clap requires e"));
    let v = Rational::from(counts.n_de(d, e).map_err(usage)?);
    let mut r = Report::single("nde", "N_(d,e)", ValueEntry::number(format!("N_({d},{e})"), &v));
    r.input("d", d).input("e", e);
    Ok(r)
}

fn cmd_gw(engine: &GwEngine, a: &GwArgs) -> Result<Report, CliError> {
    let target = parse::target(&a.target)?;
    let exps = parse::classes(target, &a.classes)?;
    let (label, value, degree) = if a.collected {
        let v = engine.collected_invariant(target, &exps).map_err(usage)?;
        ("I".to_string(), v, None)
    } else {
        let degree = parse::degree(target, a.degree.as_deref().expect("clap requires degree"))?;
        let key = InvariantKey::new(target, degree, exps.clone()).map_err(usage)?;
        let v = engine.gw(&key).map_err(usage)?;
        (format!("I_{degree}"), v, Some(degree.to_string()))
    };
    let mut r = Report::single("gw", &label, ValueEntry::number(label.clone(), &value));
    r.input("target", target.to_string())
        .input("classes", exps.counts().to_vec())
        .input("collected", a.collected);
    if let Some(d) = degree {
        r.input("degree", d);
    }
    Ok(r)
}

fn cmd_qmul(engine: &GwEngine, a: &QmulArgs) -> Result<Report, CliError> {
    let target = parse::target(&a.target)?;
    let idx: Vec<usize> = a
        .classes
        .iter()
        .map(|c| parse::class_index(target, c))
        .collect::<Result<_, _>>()?;
    let mut r = if a.big {
        let ring = BigQuantumRing::new(engine, target, a.order).map_err(usage)?;
        let order = i64::from(a.order);
        let mut acc = BigQuantumElement::basis(target, idx[0], order).map_err(usage)?;
        for &j in &idx[1..] {
            let b = BigQuantumElement::basis(target, j, order).map_err(usage)?;
            acc = ring.mul(&acc, &b).map_err(usage)?;
        }
        let mut r = Report::new("qmul");
        r.header = vec!["class".into(), "coefficient".into()];
        for f in 0..target.basis_len() {
            let c = acc.coefficient(f);
            if c.is_zero() {
                continue;
            }
            let name = target.class_name(f);
            r.rows.push(vec![format!("{name}:"), c.to_string()]);
            r.record.values.push(ValueEntry::text(name, c.to_string()));
        }
        if r.rows.is_empty() {
            r.rows.push(vec!["0".into()]);
        }
        r.input("order", a.order);
        r
    } else {
        let mut acc = RingElement::basis(target, idx[0]).map_err(usage)?;
        for &j in &idx[1..] {
            acc = if a.cup {
                cup_product(&acc, j)?
            } else {
                let b = RingElement::basis(target, j).map_err(usage)?;
                small_qmul(&acc, &b).map_err(usage)?
            };
        }
        Report::single("qmul", "product", ValueEntry::text("product", acc.to_string()))
    };
    let mode = if a.big { "big" } else if a.cup { "cup" } else { "small" };
    r.input("target", target.to_string())
        .input("mode", mode)
        .input("classes", a.classes.clone());
    Ok(r)
}

fn cup_product(x: &RingElement, j: usize) -> Result<RingElement, CliError> {
    let target = x.target();
    let mut out = RingElement::zero(target);
    for (&i, poly) in x.components() {
        let prod = match target {
            TargetSpace::Projective(r) => cup_pr(i, j, r),
            TargetSpace::P1xP1 => cup_p1x1(i, j),
        }
        .map_err(usage)?;
        for (&k, p) in prod.components() {
            for (e, c) in poly.terms() {
                for (_, c2) in p.terms() {
                    let t = RingElement::term(target, k, e.clone(), c * c2).map_err(usage)?;
                    out = out.checked_add(&t).map_err(usage)?;
                }
            }
        }
    }
    Ok(out)
}

fn first_term(s: &TruncatedSeries) -> String {
    match s.leading_term() {
        Some((e, c)) => TruncatedSeries::monomial(s.order(), e.clone(), c.clone()).to_string(),
        None => "0".into(),
    }
}

fn cmd_wdvv(engine: &GwEngine, a: &WdvvArgs) -> Result<Report, CliError> {
    let target = parse::target(&a.target)?;
    let counts: &CurveCounts = engine.counts();
    let residual = match (target, &a.indices) {
        (TargetSpace::Projective(2), None) => {
            let g = quantum_potential_p2_reduced_with(a.order, |d| counts.n_d(d.into()).expect("d ≥ 1"));
            wdvv_residual_p2_from(&g)
        }
        (TargetSpace::P1xP1, None) => {
            let g = quantum_potential_p1x1_with(a.order + 3, |d, e| {
                counts.n_de(d.into(), e.into()).expect("(d,e) ≠ (0,0)")
            });
            wdvv_residual_p1x1_from(&g).map_err(usage)?
        }
        (TargetSpace::Projective(r), Some(ix)) => {
            let idx = parse::indices(ix)?;
            wdvv_general_pr_with(engine, r, idx, a.order).map_err(usage)?
        }
        (TargetSpace::Projective(r), None) => {
            wdvv_general_pr_with(engine, r, [1, 1, r as usize, r as usize], a.order).map_err(usage)?
        }
        (TargetSpace::P1xP1, Some(_)) => {
            return Err(CliError::usage("--indices is not supported for p1xp1"));
        }
    };
    let status = if residual.is_zero() {
        format!("ZERO up to order {}", a.order)
    } else {
        format!("NONZERO up to order {}: first term {}", a.order, first_term(&residual))
    };
    let mut r = Report::single("wdvv", "status", ValueEntry::text("status", status.clone()));
    r.record.values.push(ValueEntry::text("residual", residual.to_string()));
    r.input("target", target.to_string()).input("order", a.order);
    if let Some(ix) = &a.indices {
        r.input("indices", ix.clone());
    }
    if residual.is_zero() {
        Ok(r)
    } else {
        Err(CliError::Verification(r.render(Format::Plain)))
    }
}

fn cmd_potential(engine: &GwEngine, a: &PotentialArgs) -> Result<Report, CliError> {
    let target = parse::target(&a.target)?;
    let counts = engine.counts();
    let (label, series) = if a.classical {
        ("classical", classical_potential_with(engine, target).map_err(usage)?)
    } else if a.quantum {
        match target {
            TargetSpace::P1xP1 => (
                "quantum",
                quantum_potential_p1x1_with(a.order, |d, e| {
                    counts.n_de(d.into(), e.into()).expect("(d,e) ≠ (0,0)")
                }),
            ),
            TargetSpace::Projective(2) => {
                let g = quantum_potential_p2_reduced_with(a.order, |d| counts.n_d(d.into()).expect("d ≥ 1"));
                let mut r = Report::new("potential");
                r.header = vec!["series".into(), "value".into()];
                for (name, ijk) in [("G111", (1, 1, 1)), ("G112", (1, 1, 2)), ("G122", (1, 2, 2)), ("G222", (2, 2, 2))] {
                    let s = g.get(ijk.0, ijk.1, ijk.2).to_string();
                    r.rows.push(vec![format!("{name}:"), s.clone()]);
                    r.record.values.push(ValueEntry::text(name, s));
                }
                r.input("target", target.to_string()).input("order", a.order).input("part", "quantum");
                return Ok(r);
            }
            other => return Err(CliError::usage(format!("--quantum is available for p2 and p1xp1, not {other}"))),
        }
    } else if target == TargetSpace::Projective(1) {
        ("potential", gw_potential_p1(a.order))
    } else {
        ("potential", gw_potential_with(engine, target, a.order).map_err(usage)?)
    };
    let mut r = Report::single("potential", label, ValueEntry::text(label, series.to_string()));
    let part = if a.classical { "classical" } else if a.quantum { "quantum" } else { "full" };
    r.input("target", target.to_string()).input("order", a.order).input("part", part);
    Ok(r)
}

fn cmd_partitions(a: &PartitionArgs) -> Result<Report, CliError> {
    // the target only fixes how the degree is read
    let degree = if a.degree.contains(',') {
        parse::degree(TargetSpace::P1xP1, &a.degree)?
    } else {
        parse::degree(TargetSpace::Projective(2), &a.degree)?
    };
    let pins = parse::pins(&a.pins)?;
    let marks = MarkSet::standard(a.marks);
    let pin_refs = [pins[0].as_str(), pins[1].as_str(), pins[2].as_str(), pins[3].as_str()];
    let parts = enumerate_partitions(&marks, degree, pin_refs).map_err(usage)?;
    let count = Rational::from(parts.len() as u64);
    let mut r = if a.count {
        Report::single("partitions", "count", ValueEntry::number("count", &count))
    } else {
        let mut r = Report::new("partitions");
        r.record.values.push(ValueEntry::number("count", &count));
        let bi = matches!(degree, Degree::Bi(_));
        r.header = ["A", "B", "dA", "dB"].map(String::from).to_vec();
        if bi {
            r.header.extend(["eA".to_string(), "eB".to_string()]);
        }
        for p in &parts {
            let mut row = vec![format!("{{{}}}", p.a.join(",")), format!("{{{}}}", p.b.join(","))];
            match (p.degree_a, p.degree_b) {
                (Degree::Single(x), Degree::Single(y)) => row.extend([x.to_string(), y.to_string()]),
                (Degree::Bi(x), Degree::Bi(y)) => {
                    row.extend([x.d, y.d, x.e, y.e].map(|v| v.to_string()))
                }
                _ => unreachable!("both sides share the degree type"),
            }
            r.rows.push(row);
        }
        r
    };
    r.record.partitions = (!a.count).then(|| partitions_to_json(&parts));
    r.input("marks", a.marks)
        .input("degree", degree.to_string())
        .input("pins", a.pins.clone());
    Ok(r)
}

fn cmd_divisors(a: &DivisorArgs) -> Result<Report, CliError> {
    let v = Rational::from(boundary_divisor_count_m0n(a.n).map_err(usage)?);
    let mut r = Report::single("divisors", "count", ValueEntry::number("count", &v));
    r.input("n", a.n);
    Ok(r)
}

fn cmd_stratum(a: &StratumArgs) -> Result<Report, CliError> {
    let v = Rational::from(stratum_dimension(a.n, a.delta).map_err(usage)?);
    let mut r = Report::single("stratum", "dimension", ValueEntry::number("dimension", &v));
    r.input("n", a.n).input("delta", a.delta);
    Ok(r)
}

fn cmd_configs(a: &ConfigArgs) -> Result<Report, CliError> {
    let (x, y) = a
        .split
        .split_once(',')
        .and_then(|(x, y)| Some((x.trim().parse().ok()?, y.trim().parse().ok()?)))
        .ok_or_else(|| CliError::usage(format!("bad split {:?}; expected a,b", a.split)))?;
    let v = Rational::from(count_labeled_configurations(a.n, x, y).map_err(usage)?);
    let mut r = Report::single("configs", "count", ValueEntry::number("count", &v));
    r.input("n", a.n).input("split", json!([x, y]));
    Ok(r)
}

fn run(cli: &Cli, engine: &GwEngine) -> Result<Report, CliError> {
    match &cli.command {
        Command::Nd(a) => cmd_nd(engine, a),
        Command::Nde(a) => cmd_nde(engine, a),
        Command::Gw(a) => cmd_gw(engine, a),
        Command::Qmul(a) => cmd_qmul(engine, a),
        Command::Wdvv(a) => cmd_wdvv(engine, a),
        Command::Potential(a) => cmd_potential(engine, a),
        Command::Partitions(a) => cmd_partitions(a),
        Command::Divisors(a) => cmd_divisors(a),
        Command::Stratum(a) => cmd_stratum(a),
        Command::Configs(a) => cmd_configs(a),
    }
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let engine = GwEngine::with_counts(Arc::new(CurveCounts::default()));
    let cache_path = std::env::var_os("GW_CACHE").map(PathBuf::from);
    if let Some(path) = &cache_path {
        if let Err(e) = cache::load(path, &engine) {
            eprintln!("warning: cannot read cache {}: {e}", path.display());
        }
    }
    let start = Instant::now();
    let result = run(&cli, &engine);
    if let Some(path) = &cache_path {
        if let Err(e) = cache::save(path, &engine) {
            eprintln!("warning: cannot write cache {}: {e}", path.display());
        }
    }
    match result {
        Ok(mut report) => {
            if cli.timing {
                report.record.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            emit(&report.render(cli.format));
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Verification(msg)) => {
            emit(&msg);
            ExitCode::from(1)
        }
    }
}
