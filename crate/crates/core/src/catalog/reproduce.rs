use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::families::{families, Group, MetricFamily};
use crate::dirac::{analyze_with, AnalyzeOptions};
use crate::forms::Signature;

pub const ROUTE_TOL: f64 = 1e-10;
pub const RICCI_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReproductionRow {
    pub group: Group,
    pub family: String,
    pub label: String,
    pub algebra: String,
    pub params: Vec<f64>,
    pub kernel_dim: usize,
    pub expected_harmonic: bool,
    pub expected_kernel: usize,
    pub ricci_signature: Signature,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_ricci: Option<Signature>,
    pub scalar: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_scalar: Option<f64>,
    pub route_residual: f64,
    pub ricci_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicate_agrees: Option<bool>,
    pub pass: bool,
    pub failures: Vec<String>,
    pub findings: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverageEntry {
    pub algebra: String,
    pub harmonic_rows: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegimeHit {
    pub family: String,
    pub regime: Signature,
    pub samples: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReproductionReport {
    pub groups: Vec<Group>,
    pub density: usize,
    /// Frame seed passed to every analysis.
    pub seed: u64,
    pub rows: Vec<ReproductionRow>,
    /// Passing harmonic rows per algebra; every algebra must have one.
    pub coverage: Vec<CoverageEntry>,
    pub regimes: Vec<RegimeHit>,
    /// Problems not tied to a single row.
    pub global_failures: Vec<String>,
}

impl ReproductionReport {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass).count() + self.global_failures.len()
    }

    pub fn findings(&self) -> usize {
        self.rows.iter().filter(|r| !r.findings.is_empty()).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let groups: Vec<&str> = self.groups.iter().map(|g| g.name()).collect();
        let _ = writeln!(s, "# groups={} density={} seed={}", groups.join(","), self.density, self.seed);
        let mut current = None;
        for r in &self.rows {
            if current != Some((r.group, r.family.as_str())) {
                let _ = writeln!(s, "[{}] {} on {}", r.group.name(), r.label, r.algebra);
                current = Some((r.group, r.family.as_str()));
            }
            let _ = write!(s, "  {}", r.label);
            if !r.params.is_empty() {
                let params: Vec<String> = r.params.iter().map(|v| format!("{v:.6}")).collect();
                let _ = write!(s, " ({})", params.join(", "));
            }
            let want = if r.expected_harmonic { r.expected_kernel } else { 0 };
            let _ = write!(s, " kernel {} expected {} ricci {}", r.kernel_dim, want, r.ricci_signature);
            if let Some(e) = r.expected_ricci {
                let _ = write!(s, " expected {e}");
            }
            let _ = write!(s, " {}", if r.pass { "ok" } else { "FAIL" });
            for f in &r.failures {
                let _ = write!(s, " [{f}]");
            }
            for f in &r.findings {
                let _ = write!(s, " [finding: {f}]");
            }
            s.push('\n');
        }
        let _ = writeln!(s, "coverage:");
        for c in &self.coverage {
            let _ = writeln!(s, "  {}: {} harmonic rows", c.algebra, c.harmonic_rows);
        }
        for f in &self.global_failures {
            let _ = writeln!(s, "FAIL {f}");
        }
        let _ = writeln!(s, "{} rows, {} failures, {} findings", self.rows.len(), self.failures(), self.findings());
        s
    }
}

/// Analyze one family member and compare against the table expectations.
pub fn evaluate(f: &MetricFamily, p: &[f64], opts: AnalyzeOptions) -> ReproductionRow {
    let expected_harmonic = f.expected_harmonic(p).unwrap_or(false);
    let mut row = ReproductionRow {
        group: f.group,
        family: f.id.to_string(),
        label: f.label.to_string(),
        algebra: f.algebra.to_string(),
        params: p.to_vec(),
        kernel_dim: 0,
        expected_harmonic,
        expected_kernel: f.harmonic_kernel,
        ricci_signature: Signature::new(0, 0, 0),
        expected_ricci: f.expected_ricci(p),
        scalar: 0.0,
        expected_scalar: f.expected_scalar(p),
        route_residual: 0.0,
        ricci_residual: 0.0,
        predicate_agrees: None,
        pass: false,
        failures: Vec::new(),
        findings: Vec::new(),
    };
    let report = f.algebra(p).and_then(|a| f.metric(p).and_then(|g| analyze_with(&a, &g, opts)));
    let r = match report {
        Ok(r) => r,
        Err(e) => {
            row.failures.push(e.to_string());
            return row;
        }
    };
    row.kernel_dim = r.harmonic_dim;
    row.ricci_signature = r.ricci_signature;
    row.scalar = r.scalar;
    row.route_residual = r.max_route_residual();
    row.ricci_residual = r.ricci_residual;
    row.predicate_agrees = r.predicates.as_ref().filter(|q| q.riemannian.is_some() || q.lorentzian.is_some()).map(|q| q.agrees);

    let want = if expected_harmonic { f.harmonic_kernel } else { 0 };
    if r.harmonic_dim != want {
        let msg = format!("kernel {} != {}", r.harmonic_dim, want);
        if f.kernel_findings_only {
            row.findings.push(msg);
        } else {
            row.failures.push(msg);
        }
    }
    if let Some(e) = row.expected_ricci {
        if e != r.ricci_signature {
            let msg = format!("ricci {} != {}", r.ricci_signature, e);
            if f.ricci_findings_only {
                row.findings.push(msg);
            } else {
                row.failures.push(msg);
            }
        }
    }
    if let Some(s) = row.expected_scalar {
        if (s - r.scalar).abs() > RICCI_TOL * s.abs().max(1.0) {
            row.failures.push(format!("scalar {} != {}", r.scalar, s));
        }
    }
    let scale = r.dirac_matrix.iter().fold(1.0_f64, |m, z| m.max(z.norm()));
    if row.route_residual > ROUTE_TOL * scale {
        row.failures.push(format!("route residual {:e}", row.route_residual));
    }
    let rscale = r.ricci_matrix.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    if row.ricci_residual > RICCI_TOL * rscale {
        row.failures.push(format!("ricci residual {:e}", row.ricci_residual));
    }
    if row.predicate_agrees == Some(false) {
        row.failures.push("closed-form predicate disagrees".to_string());
    }
    row.pass = row.failures.is_empty();
    row
}

/// Recompute every sample of the given groups. Rows come out in family
/// order then sample order regardless of thread scheduling.
pub fn reproduce_groups(groups: &[Group], density: usize) -> ReproductionReport {
    reproduce_with(groups, density, 0)
}

/// As [`reproduce_groups`] with every frame reordered by `seed`.
pub fn reproduce_with(groups: &[Group], density: usize, seed: u64) -> ReproductionReport {
    let opts = AnalyzeOptions { frame_seed: seed, ..AnalyzeOptions::default() };
    let fams: Vec<MetricFamily> = groups.iter().flat_map(|g| families(*g)).collect();
    let jobs: Vec<(usize, Vec<f64>)> =
        fams.iter().enumerate().flat_map(|(i, f)| f.samples(density).into_iter().map(move |p| (i, p))).collect();
    let rows: Vec<ReproductionRow> = jobs.par_iter().map(|(i, p)| evaluate(&fams[*i], p, opts)).collect();

    let mut coverage: BTreeMap<String, usize> = BTreeMap::new();
    for f in &fams {
        coverage.entry(f.algebra.to_string()).or_insert(0);
    }
    for r in rows.iter().filter(|r| r.pass && r.expected_harmonic) {
        *coverage.entry(r.algebra.clone()).or_insert(0) += 1;
    }
    let mut global_failures = Vec::new();
    for (alg, n) in &coverage {
        if *n == 0 {
            global_failures.push(format!("no harmonic metric reproduced on {alg}"));
        }
    }

    let mut regimes = Vec::new();
    for f in &fams {
        for reg in f.regimes {
            let hits = rows
                .iter()
                .filter(|r| r.family == f.id && r.group == f.group && r.expected_ricci == Some(*reg))
                .count();
            if hits == 0 {
                global_failures.push(format!("{}: regime {} not sampled", f.id, reg));
            }
            regimes.push(RegimeHit { family: f.id.to_string(), regime: *reg, samples: hits });
        }
    }

    ReproductionReport {
        groups: groups.to_vec(),
        density,
        seed,
        rows,
        coverage: coverage.into_iter().map(|(algebra, harmonic_rows)| CoverageEntry { algebra, harmonic_rows }).collect(),
        regimes,
        global_failures,
    }
}

pub fn reproduce(group: Group, density: usize) -> ReproductionReport {
    reproduce_groups(&[group], density)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_order() {
        let a = reproduce(Group::TwoDim, 3);
        let b = reproduce(Group::TwoDim, 3);
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.passed(), "{}", a.to_text());
    }
}
