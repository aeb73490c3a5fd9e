//! `lieharm`: harmonic spinors on low-dimensional metric Lie algebras.

mod format;
mod sweep;

use std::fmt::Write as _;
use std::io::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lieharm::catalog::{evaluate, families, find_family, reproduce_with, Group};
use lieharm::clifford::IrrepChoice;
use lieharm::dirac::{analyze_with, AnalysisReport, AnalyzeOptions, KERNEL_TOL};
use lieharm::forms::{is_automorphism, verify_equivalence};
use lieharm::io::{matrix_from_rows, parse_algebra, parse_metric};
use lieharm::{LieAlgebra, MetricForm, RMat};
use serde::Deserialize;

use crate::format::{num, to_json};
use crate::sweep::{parse_range, Range, Sweep, SweepSpec};

#[derive(Parser)]
#[command(name = "lieharm", version, about = "Harmonic spinors on left-invariant metrics of Lie groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Emit JSON (default).
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit a human-readable report.
    #[arg(long)]
    text: bool,
}

#[derive(Args, Clone, Copy)]
struct Numerics {
    /// Relative singular value cutoff for the kernel.
    #[arg(long, default_value_t = KERNEL_TOL)]
    tolerance: f64,
    /// Seed for frame reordering.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Irrep {
    Default,
    Opposite,
}

#[derive(Subcommand)]
enum Command {
    /// Curvature, Dirac operator and harmonic spinors of one metric Lie algebra.
    Analyze {
        algebra: PathBuf,
        metric: PathBuf,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        numerics: Numerics,
        #[arg(long, value_enum, default_value = "default")]
        irrep: Irrep,
    },
    /// List the table families, or check one member with --family/--at.
    Catalog {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        family: Option<String>,
        /// Comma-separated parameter values for --family.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        numerics: Numerics,
    },
    /// Recompute every sampled row of the tables; exit 1 on any mismatch.
    Reproduce {
        /// riemannian, lorentzian_unimodular, lorentzian_nonunimodular,
        /// two_dim, appendix or all.
        #[arg(long, default_value = "all")]
        group: String,
        #[arg(long, default_value_t = 5)]
        density: usize,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        numerics: Numerics,
    },
    /// Parameter sweep written as CSV.
    Sweep {
        /// Sweep spec: a catalog family with fixed values, or a metric template.
        spec: PathBuf,
        /// Algebra for a metric template.
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// name=a:b:step, repeatable; the first range varies slowest.
        #[arg(long = "param", value_name = "RANGE", allow_hyphen_values = true)]
        params: Vec<String>,
        /// Write to a file instead of standard output.
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[command(flatten)]
        numerics: Numerics,
    },
    /// Check that A is an automorphism with A^T g1 A = g2.
    VerifyEquivalence {
        algebra: PathBuf,
        g1: PathBuf,
        g2: PathBuf,
        automorphism: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[command(flatten)]
        output: Output,
    },
}

/// Error with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: String) -> Self {
        Self { code: 2, message }
    }
}

/// Write to stdout, treating a closed pipe as success.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<LieAlgebra, Failure> {
    parse_algebra(&read(path)?).map_err(|e| Failure { message: format!("{}: {}", path.display(), e), ..e.into() })
}

fn load_metric(path: &Path) -> Result<MetricForm, Failure> {
    parse_metric(&read(path)?).map_err(|e| Failure { message: format!("{}: {}", path.display(), e), ..e.into() })
}

fn options(n: &Numerics, irrep: Irrep) -> AnalyzeOptions {
    AnalyzeOptions {
        irrep: match irrep {
            Irrep::Default => IrrepChoice::Default,
            Irrep::Opposite => IrrepChoice::Opposite,
        },
        frame_seed: n.seed,
        check_opposite: false,
        kernel_tol: n.tolerance,
    }
}

fn matrix_text(s: &mut String, rows: impl Iterator<Item = Vec<String>>) {
    for r in rows {
        let _ = writeln!(s, "  [{}]", r.join(", "));
    }
}

fn complex(re: f64, im: f64) -> String {
    let (r, i) = (format::round12(re), format::round12(im));
    if i == 0.0 {
        num(r)
    } else if r == 0.0 {
        format!("{}i", num(i))
    } else {
        format!("{}{}{}i", num(r), if i < 0.0 { "-" } else { "+" }, num(i.abs()))
    }
}

fn analysis_text(r: &AnalysisReport, seed: u64) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# seed={seed}");
    match &r.identity {
        Some(id) => {
            let _ = writeln!(s, "algebra: {} (dim {})", id.name, r.dim);
        }
        None => {
            let _ = writeln!(s, "algebra: dim {}", r.dim);
        }
    }
    let _ = writeln!(s, "unimodular: {}", r.unimodular);
    let _ = writeln!(s, "killing_signature: {}", r.killing_signature);
    let _ = writeln!(s, "metric_signature: {}", r.metric_signature);
    let _ = writeln!(s, "ricci_signature: {}", r.ricci_signature);
    let _ = writeln!(s, "scalar: {}", num(r.scalar));
    let _ = writeln!(s, "ricci:");
    matrix_text(&mut s, r.ricci.iter().map(|row| row.iter().map(|x| num(*x)).collect()));
    let _ = writeln!(s, "dirac:");
    matrix_text(&mut s, r.dirac.matrix.iter().map(|row| row.iter().map(|[a, b]| complex(*a, *b)).collect()));
    for (k, v) in &r.dirac.route_residuals {
        let _ = writeln!(s, "residual {k}: {}", num(*v));
    }
    let _ = writeln!(s, "residual ricci: {}", num(r.ricci_residual));
    if let Some(b) = r.dirac.almost_abelian {
        let _ = writeln!(s, "almost_abelian: {b:?}");
    }
    let _ = writeln!(s, "harmonic_dim: {}", r.harmonic_dim);
    for v in &r.harmonic.basis {
        let _ = writeln!(s, "  ({})", v.iter().map(|[a, b]| complex(*a, *b)).collect::<Vec<_>>().join(", "));
    }
    if let Some(p) = &r.predicates {
        if let Some(h) = p.riemannian {
            let _ = writeln!(s, "riemannian_condition: {h}");
        }
        if let Some(h) = p.lorentzian {
            let _ = writeln!(s, "lorentzian_condition: {h} (value {})", num(p.lorentzian_value.unwrap_or(0.0)));
        }
        let _ = writeln!(s, "condition_agrees: {}", p.agrees);
    }
    s
}

fn run_analyze(
    algebra: &Path,
    metric: &Path,
    output: Output,
    numerics: Numerics,
    irrep: Irrep,
) -> Result<ExitCode, Failure> {
    let alg = load_algebra(algebra)?;
    let g = load_metric(metric)?;
    let r = analyze_with(&alg, &g, options(&numerics, irrep))?;
    if output.text {
        emit(&analysis_text(&r, numerics.seed));
    } else {
        emit(&format!("{}\n", to_json(&r)));
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_groups(name: &str) -> Result<Vec<Group>, Failure> {
    if name == "all" {
        return Ok(Group::ALL.to_vec());
    }
    name.split(',')
        .map(|g| Group::parse(g.trim()).ok_or_else(|| Failure::usage(format!("unknown group '{g}'"))))
        .collect()
}

#[derive(serde::Serialize)]
struct FamilyInfo {
    id: &'static str,
    group: Group,
    algebra: &'static str,
    params: &'static [&'static str],
    constraints: &'static str,
    harmonic_kernel: usize,
    kernel_source: lieharm::catalog::KernelSource,
    ricci_regimes: Vec<String>,
}

fn run_catalog(
    group: Option<String>,
    family: Option<String>,
    at: Option<String>,
    output: Output,
    numerics: Numerics,
) -> Result<ExitCode, Failure> {
    if let Some(id) = family {
        let f = find_family(&id).ok_or_else(|| Failure::usage(format!("unknown family '{id}'")))?;
        let p: Vec<f64> = match at.as_deref() {
            None | Some("") => Vec::new(),
            Some(s) => s
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| Failure::usage(format!("bad number '{t}'"))))
                .collect::<Result<_, _>>()?,
        };
        f.check_params(&p)?;
        let row = evaluate(&f, &p, options(&numerics, Irrep::Default));
        if output.text {
            let want = if row.expected_harmonic { row.expected_kernel } else { 0 };
            emit(&format!("{} on {}\n", f.label, f.algebra));
            emit(&format!("params: ({})\n", p.iter().map(|x| num(*x)).collect::<Vec<_>>().join(", ")));
            emit(&format!("kernel_dim: {} expected {}\n", row.kernel_dim, want));
            match row.expected_ricci {
                Some(e) => emit(&format!("ricci_signature: {} expected {}\n", row.ricci_signature, e)),
                None => emit(&format!("ricci_signature: {}\n", row.ricci_signature)),
            }
            emit(&format!("scalar: {}\n", num(row.scalar)));
            for f in &row.failures {
                emit(&format!("FAIL {f}\n"));
            }
            for f in &row.findings {
                emit(&format!("finding: {f}\n"));
            }
        } else {
            emit(&format!("{}\n", to_json(&row)));
        }
        return Ok(if row.pass { ExitCode::SUCCESS } else { ExitCode::from(1) });
    }
    let groups = parse_groups(group.as_deref().unwrap_or("all"))?;
    let infos: Vec<FamilyInfo> = groups
        .iter()
        .flat_map(|g| families(*g))
        .map(|f| FamilyInfo {
            id: f.id,
            group: f.group,
            algebra: f.algebra,
            params: f.params,
            constraints: f.constraints,
            harmonic_kernel: f.harmonic_kernel,
            kernel_source: f.kernel_source,
            ricci_regimes: f.regimes.iter().map(|s| s.to_string()).collect(),
        })
        .collect();
    if output.text {
        for i in &infos {
            emit(&format!(
                "{:<26} {:<40} params ({}) where {}\n",
                i.group.name(),
                i.id,
                i.params.join(", "),
                i.constraints
            ));
        }
    } else {
        emit(&format!("{}\n", to_json(&infos)));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_reproduce(group: &str, density: usize, output: Output, numerics: Numerics) -> Result<ExitCode, Failure> {
    let groups = parse_groups(group)?;
    if density == 0 {
        return Err(Failure::usage("density must be positive".into()));
    }
    let report = reproduce_with(&groups, density, numerics.seed);
    if output.text {
        emit(&report.to_text());
    } else {
        emit(&format!("{}\n", to_json(&report)));
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_sweep(
    spec: &Path,
    algebra: Option<&Path>,
    params: &[String],
    out: Option<&Path>,
    numerics: Numerics,
) -> Result<ExitCode, Failure> {
    let spec: SweepSpec = serde_json::from_str(&read(spec)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", spec.display())))?;
    let alg = algebra.map(load_algebra).transpose()?;
    let ranges: Vec<Range> = params.iter().map(|p| parse_range(p).map_err(Failure::usage)).collect::<Result<_, _>>()?;
    let sweep = Sweep::new(spec, alg, ranges)?;
    let rows = sweep.run(options(&numerics, Irrep::Default))?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| Failure { code: 1, message: e.to_string() };
    w.write_record(sweep.header()).map_err(io)?;
    for r in &rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure { code: 1, message: e.to_string() })?;
    match out {
        Some(p) => fs::write(p, bytes).map_err(|e| Failure { code: 1, message: format!("{}: {e}", p.display()) })?,
        None => {
            let _ = std::io::stdout().lock().write_all(&bytes);
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixJson {
    Rows(Vec<Vec<f64>>),
    Tagged { dim: usize, a: Vec<Vec<f64>> },
}

#[derive(serde::Serialize)]
struct EquivalenceReport {
    equivalent: bool,
    automorphism_residual: f64,
    congruence_residual: f64,
    tolerance: f64,
}

fn run_verify(
    algebra: &Path,
    g1: &Path,
    g2: &Path,
    a: &Path,
    tolerance: f64,
    output: Output,
) -> Result<ExitCode, Failure> {
    let alg = load_algebra(algebra)?;
    let (g1, g2) = (load_metric(g1)?, load_metric(g2)?);
    let raw: MatrixJson =
        serde_json::from_str(&read(a)?).map_err(|e| Failure::usage(format!("{}: {e}", a.display())))?;
    let m: RMat = match raw {
        MatrixJson::Rows(r) => matrix_from_rows(r.len(), &r)?,
        MatrixJson::Tagged { dim, a } => matrix_from_rows(dim, &a)?,
    };
    if m.nrows() != alg.dim() || g1.dim() != alg.dim() || g2.dim() != alg.dim() {
        return Err(Failure::usage(format!("dimensions must all equal {}", alg.dim())));
    }
    let report = EquivalenceReport {
        equivalent: verify_equivalence(&alg, &g1, &g2, &m, tolerance),
        automorphism_residual: is_automorphism(&alg, &m),
        congruence_residual: (m.transpose() * g1.matrix() * &m - g2.matrix()).amax(),
        tolerance,
    };
    if output.text {
        emit(&format!("automorphism_residual: {}\n", num(report.automorphism_residual)));
        emit(&format!("congruence_residual: {}\n", num(report.congruence_residual)));
        emit(&format!("equivalent: {}\n", report.equivalent));
    } else {
        emit(&format!("{}\n", to_json(&report)));
    }
    Ok(if report.equivalent { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { algebra, metric, output, numerics, irrep } => {
            run_analyze(&algebra, &metric, output, numerics, irrep)
        }
        Command::Catalog { group, family, at, output, numerics } => run_catalog(group, family, at, output, numerics),
        Command::Reproduce { group, density, output, numerics } => run_reproduce(&group, density, output, numerics),
        Command::Sweep { spec, algebra, params, out, numerics } => {
            run_sweep(&spec, algebra.as_deref(), &params, out.as_deref(), numerics)
        }
        Command::VerifyEquivalence { algebra, g1, g2, automorphism, tolerance, output } => {
            run_verify(&algebra, &g1, &g2, &automorphism, tolerance, output)
        }
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
