//! Metric families of the classification tables.
//!
//! Each family carries its builder, parameter constraints, the harmonicity
//! condition and (where tabulated) the Ricci signature regimes. Builders are
//! written in the basis `{x, y, z}` of the bracket column they belong to.

use serde::{Deserialize, Serialize};

use crate::algebra::{catalog_algebra, LieAlgebra};
use crate::error::{Error, Result};
use crate::forms::{MetricForm, Signature};
use crate::RMat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Riemannian,
    LorentzianUnimodular,
    LorentzianNonunimodular,
    TwoDim,
    Appendix,
}

impl Group {
    pub const ALL: [Group; 5] = [
        Group::Riemannian,
        Group::LorentzianUnimodular,
        Group::LorentzianNonunimodular,
        Group::TwoDim,
        Group::Appendix,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Group::Riemannian => "riemannian",
            Group::LorentzianUnimodular => "lorentzian_unimodular",
            Group::LorentzianNonunimodular => "lorentzian_nonunimodular",
            Group::TwoDim => "two_dim",
            Group::Appendix => "appendix",
        }
    }

    pub fn parse(s: &str) -> Option<Group> {
        Group::ALL.into_iter().find(|g| g.name() == s)
    }
}

/// Whether an expected kernel dimension is printed in a table or follows
/// from the explicit matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelSource {
    Quoted,
    Derived,
}

pub type Params = [f64];

#[derive(Clone)]
pub struct MetricFamily {
    pub id: &'static str,
    /// Display name used in text reports.
    pub label: &'static str,
    pub group: Group,
    /// Algebra as named in the tables.
    pub algebra: &'static str,
    pub params: &'static [&'static str],
    pub constraints: &'static str,
    /// Printed Ricci signature regimes that the sampler must hit.
    pub regimes: &'static [Signature],
    /// Kernel dimension of harmonic members.
    pub harmonic_kernel: usize,
    pub kernel_source: KernelSource,
    /// Ricci mismatches are reported as findings rather than failures.
    pub ricci_findings_only: bool,
    /// Kernel mismatches are reported as findings rather than failures.
    pub kernel_findings_only: bool,
    make_algebra: fn(&Params) -> Result<LieAlgebra>,
    validate: fn(&Params) -> std::result::Result<(), String>,
    build: fn(&Params) -> RMat,
    harmonic: fn(&Params) -> bool,
    ricci: Option<fn(&Params) -> Signature>,
    scalar: Option<fn(&Params) -> f64>,
    sampler: fn(usize) -> Vec<Vec<f64>>,
}

impl std::fmt::Debug for MetricFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MetricFamily").field("id", &self.id).field("group", &self.group).finish()
    }
}

impl MetricFamily {
    pub fn check_params(&self, p: &Params) -> Result<()> {
        if p.len() != self.params.len() {
            return Err(Error::InvalidParameter(format!(
                "{} expects parameters ({}), got {} values",
                self.id,
                self.params.join(", "),
                p.len()
            )));
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("{}: non-finite parameter", self.id)));
        }
        (self.validate)(p).map_err(|c| Error::InvalidParameter(format!("{}: violates {}", self.id, c)))
    }

    pub fn algebra(&self, p: &Params) -> Result<LieAlgebra> {
        self.check_params(p)?;
        (self.make_algebra)(p)
    }

    pub fn metric(&self, p: &Params) -> Result<MetricForm> {
        self.check_params(p)?;
        MetricForm::new((self.build)(p))
    }

    pub fn expected_harmonic(&self, p: &Params) -> Result<bool> {
        self.check_params(p)?;
        Ok((self.harmonic)(p))
    }

    pub fn expected_ricci(&self, p: &Params) -> Option<Signature> {
        self.ricci.map(|f| f(p))
    }

    pub fn expected_scalar(&self, p: &Params) -> Option<f64> {
        self.scalar.map(|f| f(p))
    }

    /// Grid samples plus, for every harmonic sample, each parameter moved
    /// by `+0.1` when the result stays valid.
    pub fn samples(&self, density: usize) -> Vec<Vec<f64>> {
        let mut base: Vec<Vec<f64>> = Vec::new();
        for p in (self.sampler)(density.max(3)) {
            if self.check_params(&p).is_ok() && !base.iter().any(|b| same(b, &p)) {
                base.push(p);
            }
        }
        let mut out = base.clone();
        for p in &base {
            if !(self.harmonic)(p) {
                continue;
            }
            for k in 0..p.len() {
                let mut q = p.clone();
                q[k] += 0.1;
                if self.check_params(&q).is_ok() && !out.iter().any(|b| same(b, &q)) {
                    out.push(q);
                }
            }
        }
        out
    }

    /// Samples expected to be harmonic.
    pub fn harmonic_samples(&self, density: usize) -> Vec<Vec<f64>> {
        self.samples(density).into_iter().filter(|p| (self.harmonic)(p)).collect()
    }
}

fn same(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| approx(*x, *y))
}

/// Relative equality used by all table conditions.
pub fn approx(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

const S300: Signature = Signature::new(3, 0, 0);
const S120: Signature = Signature::new(1, 2, 0);
const S102: Signature = Signature::new(1, 0, 2);
const S012: Signature = Signature::new(0, 1, 2);
const S003: Signature = Signature::new(0, 0, 3);
const S002: Signature = Signature::new(0, 0, 2);

/// Log-spaced positive values in `[0.5, 3]`.
fn pos(d: usize) -> Vec<f64> {
    (0..d).map(|i| 0.5 * 6f64.powf(i as f64 / (d - 1) as f64)).collect()
}

fn signs() -> [f64; 2] {
    [1.0, -1.0]
}

fn is_sign(e: f64) -> bool {
    e == 1.0 || e == -1.0
}

fn diag3(a: f64, b: f64, c: f64) -> RMat {
    RMat::from_diagonal(&nalgebra::DVector::from_vec(vec![a, b, c]))
}

/// Symmetric 3x3 from its upper triangle.
fn sym3(m11: f64, m12: f64, m13: f64, m22: f64, m23: f64, m33: f64) -> RMat {
    RMat::from_row_slice(3, 3, &[m11, m12, m13, m12, m22, m23, m13, m23, m33])
}

fn check(ok: bool, what: &'static str) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn named(name: &'static str) -> fn(&Params) -> Result<LieAlgebra> {
    match name {
        "su2" => |_| catalog_algebra("su2", &[]),
        "sl2" => |_| catalog_algebra("sl2", &[]),
        "e2" => |_| catalog_algebra("e2", &[]),
        "e11" => |_| catalog_algebra("e11", &[]),
        "e11_lorentzian" => |_| catalog_algebra("e11_lorentzian", &[]),
        "heis3" => |_| catalog_algebra("heis3", &[]),
        "r2_rtimes_id" => |_| catalog_algebra("r2_rtimes_id", &[]),
        "g1" => |_| catalog_algebra("g1", &[]),
        "aff_r" => |_| catalog_algebra("aff_r", &[]),
        _ => unreachable!("no fixed catalog entry {name}"),
    }
}

fn g_gt1(p: &Params) -> Result<LieAlgebra> {
    catalog_algebra("g_gt1", &p[..1])
}

fn g_lt1(p: &Params) -> Result<LieAlgebra> {
    catalog_algebra("g_lt1", &p[..1])
}

#[allow(clippy::too_many_arguments)]
fn family(
    id: &'static str,
    group: Group,
    algebra: &'static str,
    make_algebra: fn(&Params) -> Result<LieAlgebra>,
    params: &'static [&'static str],
    constraints: &'static str,
    validate: fn(&Params) -> std::result::Result<(), String>,
    build: fn(&Params) -> RMat,
    harmonic: fn(&Params) -> bool,
    sampler: fn(usize) -> Vec<Vec<f64>>,
) -> MetricFamily {
    let (harmonic_kernel, kernel_source) = match group {
        Group::LorentzianNonunimodular | Group::TwoDim => (1, KernelSource::Derived),
        _ => (2, KernelSource::Quoted),
    };
    MetricFamily {
        id,
        label: id,
        group,
        algebra,
        params,
        constraints,
        regimes: &[],
        harmonic_kernel,
        kernel_source,
        ricci_findings_only: false,
        kernel_findings_only: false,
        make_algebra,
        validate,
        build,
        harmonic,
        ricci: None,
        scalar: None,
        sampler,
    }
}

impl MetricFamily {
    fn with_ricci(mut self, f: fn(&Params) -> Signature, regimes: &'static [Signature]) -> Self {
        self.ricci = Some(f);
        self.regimes = regimes;
        self
    }

    fn labelled(mut self, label: &'static str) -> Self {
        self.label = label;
        self
    }

    fn with_scalar(mut self, f: fn(&Params) -> f64) -> Self {
        self.scalar = Some(f);
        self
    }

    fn findings_only(mut self) -> Self {
        self.ricci_findings_only = true;
        self
    }

    fn kernel_findings_only(mut self) -> Self {
        self.kernel_findings_only = true;
        self
    }

    /// Same family restricted to the harmonic locus, in another group.
    fn harmonic_locus(&self, id: &'static str, group: Group, sampler: fn(usize) -> Vec<Vec<f64>>) -> Self {
        let mut f = self.clone();
        f.id = id;
        f.label = id;
        f.group = group;
        f.sampler = sampler;
        f.regimes = &[];
        f
    }
}

fn riemannian() -> Vec<MetricFamily> {
    vec![
        family(
            "sl2 g(lambda,mu,nu)",
            Group::Riemannian,
            "sl(2,R)",
            named("sl2"),
            &["lambda", "mu", "nu"],
            "lambda > 0, mu >= nu > 0",
            |p| check(p[0] > 0.0 && p[1] >= p[2] && p[2] > 0.0, "lambda > 0, mu >= nu > 0"),
            |p| diag3(p[0], p[1], p[2]),
            |p| approx(p[0], p[1] + p[2]),
            |d| {
                let mut out = Vec::new();
                for &mu in &pos(d) {
                    for &nu in pos(d).iter().filter(|nu| **nu <= mu) {
                        for lambda in [mu + nu, mu - nu, 0.5 * nu, 2.0 * (mu + nu)] {
                            out.push(vec![lambda, mu, nu]);
                        }
                    }
                }
                out
            },
        )
        .with_ricci(|p| if approx(p[0], p[1] - p[2]) { S012 } else { S120 }, &[S012, S120]),
        family(
            "e11 g(nu)",
            Group::Riemannian,
            "e(1,1)",
            named("e11"),
            &["nu"],
            "nu > 0",
            |p| check(p[0] > 0.0, "nu > 0"),
            |p| diag3(1.0, 1.0, p[0]),
            |_| true,
            |d| pos(d).into_iter().chain([0.1, 1.0, 10.0]).map(|v| vec![v]).collect(),
        )
        .with_ricci(|_| S012, &[S012]),
        family(
            "e11 g(mu,nu)",
            Group::Riemannian,
            "e(1,1)",
            named("e11"),
            &["mu", "nu"],
            "mu > 1, nu > 0",
            |p| check(p[0] > 1.0 && p[1] > 0.0, "mu > 1, nu > 0"),
            |p| sym3(1.0, 1.0, 0.0, p[0], 0.0, p[1]),
            |_| false,
            |d| {
                let mut out = Vec::new();
                for mu in [1.5, 2.0, 5.0] {
                    for nu in pos(d) {
                        out.push(vec![mu, nu]);
                    }
                }
                out
            },
        )
        .with_ricci(|_| S120, &[S120]),
    ]
}

fn sll_k(a: f64, alpha: f64, beta: f64) -> (f64, f64, f64) {
    let n = (alpha * alpha + beta * beta).sqrt();
    let k = 4.0 / (a * a * alpha * n);
    let m = (beta * beta - alpha * alpha) / n;
    (k, m, n)
}

fn appendix() -> Vec<MetricFamily> {
    vec![
        family(
            "su",
            Group::Appendix,
            "su(2)",
            named("su2"),
            &["mu1", "mu2", "mu3"],
            "mu1 >= mu2 > 0, mu3 > 0",
            |p| check(p[0] >= p[1] && p[1] > 0.0 && p[2] > 0.0, "mu1 >= mu2 > 0, mu3 > 0"),
            |p| diag3(p[0], p[1], -p[2]),
            |p| approx(p[2], p[0] + p[1]),
            |d| {
                let mut out = Vec::new();
                for &m2 in &pos(d) {
                    for &m3 in &pos(d) {
                        for m1 in [m2 + m3, m2, 2.0 * (m2 + m3)] {
                            out.push(vec![m1, m2, m3]);
                        }
                    }
                }
                out.extend(su_harmonic(d));
                out
            },
        )
        .with_ricci(
            |p| {
                if approx(p[0], p[1] + p[2]) {
                    S102
                } else if p[0] < p[1] + p[2] {
                    S300
                } else {
                    S120
                }
            },
            &[S300, S120, S102],
        ),
        family(
            "sll1",
            Group::Appendix,
            "sl(2,R)",
            named("sl2"),
            &["mu1", "mu2", "mu3"],
            "mu1 > 0, mu2 >= mu3 > 0",
            |p| check(p[0] > 0.0 && p[1] >= p[2] && p[2] > 0.0, "mu1 > 0, mu2 >= mu3 > 0"),
            |p| diag3(-p[0], p[1], p[2]),
            |_| false,
            |d| {
                let mut out = Vec::new();
                for &m2 in &pos(d) {
                    for &m3 in pos(d).iter().filter(|m| **m <= m2) {
                        for m1 in [m2 + m3, 2.0 * (m2 + m3), m2 + 0.5 * m3, m2 - m3] {
                            out.push(vec![m1, m2, m3]);
                        }
                    }
                }
                out
            },
        )
        .with_ricci(
            |p| {
                if approx(p[2], p[0] - p[1]) {
                    S102
                } else if approx(p[2], p[1] - p[0]) {
                    S012
                } else if p[2] < p[0] - p[1] {
                    S300
                } else {
                    S120
                }
            },
            &[S300, S120, S102, S012],
        ),
        family(
            "sll2",
            Group::Appendix,
            "sl(2,R)",
            named("sl2"),
            &["mu1", "mu2", "mu3"],
            "mu1, mu2, mu3 > 0",
            |p| check(p.iter().all(|v| *v > 0.0), "mu1, mu2, mu3 > 0"),
            |p| diag3(p[0], -p[1], p[2]),
            |p| approx(p[0], p[2] - p[1]),
            |d| {
                let mut out = Vec::new();
                for &m2 in &pos(d) {
                    for &m3 in &pos(d) {
                        for m1 in [m2 - m3, 0.5 * (m2 - m3), m2 + m3, m2 + 2.0 * m3, m3 - m2] {
                            out.push(vec![m1, m2, m3]);
                        }
                    }
                }
                out
            },
        )
        .with_ricci(
            |p| {
                if approx(p[0], p[1] - p[2]) {
                    S102
                } else if approx(p[0], p[1] + p[2]) {
                    S012
                } else if p[0] < p[1] - p[2] {
                    S300
                } else {
                    S120
                }
            },
            &[S300, S120, S102, S012],
        ),
        family(
            "sll3",
            Group::Appendix,
            "sl(2,R)",
            named("sl2"),
            &["a", "alpha", "beta"],
            "a != 0, alpha > 0, beta > 0",
            |p| check(p[0] != 0.0 && p[1] > 0.0 && p[2] > 0.0, "a != 0, alpha > 0, beta > 0"),
            |p| {
                let (a, alpha, beta) = (p[0], p[1], p[2]);
                let (k, m, n) = sll_k(a, alpha, beta);
                sym3(k * m, k * beta, 0.0, k * n, 0.0, k * a * a * alpha / n)
            },
            |_| false,
            |d| {
                let mut out = Vec::new();
                for &alpha in &pos(d) {
                    for &beta in &pos(d) {
                        let r = (2.0 * alpha).sqrt();
                        for a in [r, -r, 0.5 * r, 2.0 * r] {
                            out.push(vec![a, alpha, beta]);
                        }
                    }
                }
                out
            },
        )
        .with_ricci(|p| if approx(p[0] * p[0], 2.0 * p[1]) { S012 } else { S120 }, &[S120, S012])
        .findings_only(),
        family(
            "sll4",
            Group::Appendix,
            "sl(2,R)",
            named("sl2"),
            &["a", "alpha", "beta"],
            "a != 0, alpha < 0, beta > 0, 2 beta^2 > alpha^2",
            |p| {
                check(
                    p[0] != 0.0 && p[1] < 0.0 && p[2] > 0.0 && 2.0 * p[2] * p[2] > p[1] * p[1],
                    "a != 0, alpha < 0, beta > 0, 2 beta^2 > alpha^2",
                )
            },
            |p| {
                let (a, alpha, beta) = (p[0], p[1], p[2]);
                let (k, m, n) = sll_k(a, alpha, beta);
                sym3(-k * n, 0.0, k * beta, k * a * a * alpha / n, 0.0, k * m)
            },
            sll4_harmonic,
            |d| {
                let mut out = Vec::new();
                for a in [0.5_f64, 1.0, 2.0] {
                    for frac in [0.2, 0.5, 0.8, 1.5] {
                        let alpha = -a * a * frac;
                        let beta0 = (-a * a * alpha / 2.0).sqrt();
                        for beta in std::iter::once(beta0).chain(pos(d)) {
                            out.push(vec![a, alpha, beta]);
                        }
                    }
                }
                out
            },
        )
        .with_ricci(|_| S120, &[S120]),
        family(
            "sll5",
            Group::Appendix,
            "sl(2,R)",
            named("sl2"),
            &["u", "v"],
            "|u| < v, v > 0",
            |p| check(p[0].abs() < p[1] && p[1] > 0.0, "|u| < v, v > 0"),
            |p| {
                let (u, v) = (p[0], p[1]);
                let k = 16.0 / (v * v - u * u);
                sym3(k * u, 0.0, k * v, k * 2.0 * (u + v), 0.0, k * u)
            },
            |_| false,
            |d| {
                let mut out = Vec::new();
                for v in pos(d) {
                    for f in [-0.5, 0.0, 0.5] {
                        out.push(vec![f * v, v]);
                    }
                }
                out
            },
        )
        .with_ricci(|_| S120, &[S120])
        .findings_only(),
        family(
            "sll6",
            Group::Appendix,
            "sl(2,R)",
            named("sl2"),
            &["a", "b"],
            "a != 0, b != 0",
            |p| check(p[0] != 0.0 && p[1] != 0.0, "a != 0, b != 0"),
            |p| {
                let (a, b) = (p[0], p[1]);
                let k = 1.0 / (2.0 * a * b);
                sym3(k * (a - 8.0), -k * a, 0.0, k * (a + 8.0), 0.0, k * 8.0 * a / b)
            },
            |p| approx(p[0], -2.0 * p[1]),
            |d| {
                let mut out = Vec::new();
                for &m in &pos(d) {
                    for b in [m, -m] {
                        for a in [2.0 * b, -2.0 * b, 3.0 * b, -0.5 * b] {
                            out.push(vec![a, b]);
                        }
                    }
                }
                out
            },
        )
        .with_ricci(|p| if approx(p[0], 2.0 * p[1]) { S012 } else { S120 }, &[S120, S012]),
        family(
            "sll7",
            Group::Appendix,
            "sl(2,R)",
            named("sl2"),
            &["a"],
            "a > 0",
            |p| check(p[0] > 0.0, "a > 0"),
            |p| {
                let a = p[0];
                let (a2, a4) = (a * a, a.powi(4));
                let k = 2.0 / (a4 * (1.0 + 2.0 * a2));
                let m = 1.0 - 4.0 * a4;
                let n = (1.0 + 2.0 * a2).powf(1.5);
                let s = 4.0 * a4 + 6.0 * a2 + 1.0;
                let r = 2.0 * a.powi(3) * 2f64.sqrt();
                sym3(k * m, k * n, 0.0, k * s, k * r, k * 4.0 * a4)
            },
            |_| false,
            |d| pos(d).into_iter().map(|a| vec![a]).collect(),
        )
        .with_ricci(|_| S120, &[S120])
        .findings_only(),
        family(
            "ee1",
            Group::Appendix,
            "e(2)",
            named("e2"),
            &["u", "v"],
            "u >= v > 0",
            |p| check(p[0] >= p[1] && p[1] > 0.0, "u >= v > 0"),
            |p| sym3(0.0, 1.0, 0.0, p[0], 0.0, p[1]),
            |_| false,
            |d| {
                let mut out = Vec::new();
                for v in pos(d) {
                    for u in [v, 2.0 * v, v + 0.3] {
                        out.push(vec![u, v]);
                    }
                }
                out
            },
        )
        .with_ricci(|p| if approx(p[0], p[1]) { S003 } else { S120 }, &[S003, S120]),
        family(
            "ee2",
            Group::Appendix,
            "e(2)",
            named("e2"),
            &["u", "v"],
            "u < 0, v > 0",
            |p| check(p[0] < 0.0 && p[1] > 0.0, "u < 0, v > 0"),
            |p| sym3(0.0, -1.0, 0.0, p[0], 0.0, p[1]),
            |p| approx(p[0], -p[1]),
            |d| {
                let mut out = Vec::new();
                for v in pos(d) {
                    for u in [-v, -2.0 * v, -0.5 * v] {
                        out.push(vec![u, v]);
                    }
                }
                out
            },
        )
        .with_ricci(
            |p| {
                if approx(p[0], -p[1]) {
                    S102
                } else if p[0] < -p[1] {
                    S300
                } else {
                    S120
                }
            },
            &[S300, S120, S102],
        ),
        family(
            "ee3",
            Group::Appendix,
            "e(2)",
            named("e2"),
            &["u"],
            "u > 0",
            |p| check(p[0] > 0.0, "u > 0"),
            |p| sym3(0.0, 1.0, 0.0, 0.0, 0.0, p[0]),
            |_| false,
            |d| pos(d).into_iter().map(|u| vec![u]).collect(),
        )
        .with_ricci(|_| S120, &[S120]),
        family(
            "sol1",
            Group::Appendix,
            "e(1,1)",
            named("e11_lorentzian"),
            &["u", "v"],
            "|u| < v, v > 0",
            |p| check(p[0].abs() < p[1] && p[1] > 0.0, "|u| < v, v > 0"),
            |p| {
                let (u, v) = (p[0], p[1]);
                sym3(4.0 / (u * u - v * v), 0.0, 0.0, 1.0, u / v, 1.0)
            },
            |p| p[0] == 0.0 || approx(p[0] + 1.0, 1.0),
            |d| {
                let mut out = Vec::new();
                for v in pos(d) {
                    for f in [0.0, 0.5, -0.5] {
                        out.push(vec![f * v, v]);
                    }
                }
                out
            },
        )
        .with_ricci(|p| if approx(p[0] + 1.0, 1.0) { S012 } else { S120 }, &[S120, S012]),
        family(
            "sol2",
            Group::Appendix,
            "e(1,1)",
            named("e11_lorentzian"),
            &["u", "v"],
            "|u| < v, v > 0",
            |p| check(p[0].abs() < p[1] && p[1] > 0.0, "|u| < v, v > 0"),
            |p| {
                let (u, v) = (p[0], p[1]);
                sym3(4.0 / (u * u - v * v), 0.0, 0.0, u / v, -1.0, u / v)
            },
            |_| false,
            |d| {
                let mut out = Vec::new();
                for v in pos(d) {
                    for f in [0.0, 0.5, -0.5] {
                        out.push(vec![f * v, v]);
                    }
                }
                out
            },
        )
        .with_ricci(
            |p| {
                if approx(p[0] + 1.0, 1.0) {
                    S003
                } else if p[0] > 0.0 {
                    S120
                } else {
                    S300
                }
            },
            &[S120, S300, S003],
        )
        .findings_only(),
        family(
            "sol3",
            Group::Appendix,
            "e(1,1)",
            named("e11_lorentzian"),
            &["u", "v"],
            "u > 0, v > 0",
            |p| check(p[0] > 0.0 && p[1] > 0.0, "u > 0, v > 0"),
            |p| {
                let (u, v) = (p[0], p[1]);
                sym3(1.0 / (u + v), 0.0, 0.0, -v / u, 1.0, 1.0)
            },
            |_| false,
            |d| {
                let mut out = Vec::new();
                for u in pos(d) {
                    for v in pos(d) {
                        out.push(vec![u, v]);
                    }
                }
                out
            },
        )
        .with_ricci(|_| S120, &[S120]),
        family(
            "sol4",
            Group::Appendix,
            "e(1,1)",
            named("e11_lorentzian"),
            &["u"],
            "u > 0",
            |p| check(p[0] > 0.0, "u > 0"),
            |p| diag3(1.0 / p[0], -1.0, 1.0),
            |_| true,
            |d| pos(d).into_iter().map(|u| vec![u]).collect(),
        )
        .with_ricci(|_| S012, &[S012]),
        family(
            "sol5",
            Group::Appendix,
            "e(1,1)",
            named("e11_lorentzian"),
            &["u"],
            "u > 0",
            |p| check(p[0] > 0.0, "u > 0"),
            |p| sym3(0.0, 0.0, -2.0 / p[0], 1.0, 1.0, 1.0),
            |_| false,
            |d| pos(d).into_iter().map(|u| vec![u]).collect(),
        )
        .with_ricci(|_| S120, &[S120]),
        family(
            "sol6",
            Group::Appendix,
            "e(1,1)",
            named("e11_lorentzian"),
            &["u"],
            "u != 0",
            |p| check(p[0] != 0.0, "u != 0"),
            |p| sym3(p[0] * p[0], 0.0, 0.0, p[0], 1.0, 0.0),
            |_| false,
            |d| pos(d).into_iter().flat_map(|u| [vec![u], vec![-u]]).collect(),
        )
        .with_ricci(|p| if p[0] > 0.0 { S012 } else { S102 }, &[S012, S102]),
        family(
            "sol7",
            Group::Appendix,
            "e(1,1)",
            named("e11_lorentzian"),
            &[],
            "none",
            |_| Ok(()),
            |_| sym3(0.0, 0.0, 1.0, 1.0, 0.0, 0.0),
            |_| true,
            |_| vec![vec![]],
        )
        .with_ricci(|_| S012, &[S012]),
        family(
            "nil+",
            Group::Appendix,
            "heis3",
            named("heis3"),
            &["lambda"],
            "lambda > 0",
            |p| check(p[0] > 0.0, "lambda > 0"),
            |p| diag3(1.0, -1.0, p[0]),
            |_| false,
            |d| pos(d).into_iter().map(|l| vec![l]).collect(),
        )
        .with_ricci(|_| S120, &[S120]),
        family(
            "nil-",
            Group::Appendix,
            "heis3",
            named("heis3"),
            &["lambda"],
            "lambda > 0",
            |p| check(p[0] > 0.0, "lambda > 0"),
            |p| diag3(1.0, 1.0, -p[0]),
            |_| false,
            |d| pos(d).into_iter().map(|l| vec![l]).collect(),
        )
        .with_ricci(|_| S300, &[S300]),
        family(
            "nil0",
            Group::Appendix,
            "heis3",
            named("heis3"),
            &[],
            "none",
            |_| Ok(()),
            |_| sym3(1.0, 0.0, 0.0, 0.0, 1.0, 0.0),
            |_| true,
            |_| vec![vec![]],
        )
        .with_ricci(|_| S003, &[S003]),
    ]
}

fn sll4_harmonic(p: &Params) -> bool {
    let (a, alpha, beta) = (p[0], p[1], p[2]);
    approx(2.0 * beta * beta, -a * a * alpha) && -a * a < alpha && alpha < 0.0
}

fn su_harmonic(d: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for &m1 in &pos(d) {
        for &m2 in pos(d).iter().filter(|m| **m <= m1) {
            out.push(vec![m1, m2, m1 + m2]);
        }
    }
    out
}

/// Harmonic rows of the unimodular Lorentzian table, as loci inside the
/// appendix families so that single-parameter perturbations are available.
fn lorentzian_unimodular(app: &[MetricFamily]) -> Vec<MetricFamily> {
    let get = |id: &str| app.iter().find(|f| f.id == id).expect("appendix family").clone();
    let g = Group::LorentzianUnimodular;
    vec![
        get("su").harmonic_locus("su(2) diag(mu,nu,-(mu+nu))", g, su_harmonic),
        get("sll2").harmonic_locus("sl(2,R) diag(nu-mu,-mu,nu)", g, |d| {
            let mut out = Vec::new();
            for &mu in &pos(d) {
                for &nu in pos(d).iter().filter(|nu| **nu > mu) {
                    out.push(vec![nu - mu, mu, nu]);
                }
            }
            out
        }),
        get("sll4").harmonic_locus("sl(2,R) sll4 with 2beta^2 = -a^2 alpha", g, |d| {
            let mut out = Vec::new();
            for a in [0.5_f64, 1.0, 2.0] {
                for i in 0..d {
                    let frac = (i as f64 + 1.0) / (d as f64 + 1.0);
                    let alpha = -a * a * frac;
                    out.push(vec![a, alpha, (-a * a * alpha / 2.0).sqrt()]);
                }
            }
            out
        }),
        get("sll6").harmonic_locus("sl(2,R) sll6 with a = -2b", g, |d| {
            pos(d).into_iter().flat_map(|b| [vec![-2.0 * b, b], vec![2.0 * b, -b]]).collect()
        }),
        get("ee2").harmonic_locus("e(2) u = -v", g, |d| pos(d).into_iter().map(|v| vec![-v, v]).collect()),
        get("sol1").harmonic_locus("e(1,1) sol1 u = 0", g, |d| pos(d).into_iter().map(|v| vec![0.0, v]).collect()),
        get("sol4").harmonic_locus("e(1,1) sol4", g, |d| pos(d).into_iter().map(|u| vec![u]).collect()),
        get("sol7").harmonic_locus("e(1,1) sol7", g, |_| vec![vec![]]),
        get("nil0").harmonic_locus("heis3 nil0", g, |_| vec![vec![]]),
    ]
}

fn c_gt1() -> Vec<f64> {
    vec![1.5, 2.0, 3.0, 6.0]
}

fn c_lt1() -> Vec<f64> {
    vec![-3.0, -1.0, 0.0, 0.5, -0.5]
}

fn lorentzian_nonunimodular() -> Vec<MetricFamily> {
    let g = Group::LorentzianNonunimodular;
    vec![
        family(
            "R2xId diag(1,-eps,eps mu)",
            g,
            "R^2 x_Id R",
            named("r2_rtimes_id"),
            &["eps", "mu"],
            "eps = +-1, mu > 0",
            |p| check(is_sign(p[0]) && p[1] > 0.0, "eps = +-1, mu > 0"),
            |p| diag3(1.0, -p[0], p[0] * p[1]),
            |_| false,
            |d| signs().into_iter().flat_map(|e| pos(d).into_iter().map(move |m| vec![e, m])).collect(),
        ),
        family(
            "R2xId [[1,0,0],[0,0,1],[0,1,0]]",
            g,
            "R^2 x_Id R",
            named("r2_rtimes_id"),
            &[],
            "none",
            |_| Ok(()),
            |_| sym3(1.0, 0.0, 0.0, 0.0, 1.0, 0.0),
            |_| true,
            |_| vec![vec![]],
        ),
        family(
            "g(c>1) [[mu,0,0],[0,0,1],[0,1,0]]",
            g,
            "g(c), c>1",
            g_gt1,
            &["c", "mu"],
            "c > 1, mu > 0",
            |p| check(p[0] > 1.0 && p[1] > 0.0, "c > 1, mu > 0"),
            |p| sym3(p[1], 0.0, 0.0, 0.0, 1.0, 0.0),
            |_| false,
            |d| c_gt1().into_iter().flat_map(|c| pos(d).into_iter().map(move |m| vec![c, m])).collect(),
        ),
        family(
            "g(c>1) [[1,1,0],[1,tau,0],[0,0,mu]]",
            g,
            "g(c), c>1",
            g_gt1,
            &["c", "tau", "mu"],
            "c > 1, tau < 1, mu > 0",
            |p| check(p[0] > 1.0 && p[1] < 1.0 && p[2] > 0.0, "c > 1, tau < 1, mu > 0"),
            |p| sym3(1.0, 1.0, 0.0, p[1], 0.0, p[2]),
            |p| {
                let s = 4.0 * (p[0] + 3.0).sqrt();
                let base = -p[0] - 6.0;
                approx(p[1], base + s) || approx(p[1], base - s)
            },
            |d| {
                let mut out = Vec::new();
                for c in c_gt1() {
                    let s = 4.0 * (c + 3.0).sqrt();
                    for tau in [-c - 6.0 + s, -c - 6.0 - s, 0.0, -1.0] {
                        for mu in pos(d) {
                            out.push(vec![c, tau, mu]);
                        }
                    }
                }
                out
            },
        ),
        family(
            "g(c>1) [[1,1,0],[1,nu,0],[0,0,-mu]]",
            g,
            "g(c), c>1",
            g_gt1,
            &["c", "nu", "mu"],
            "c > 1, 1 < nu <= c, mu > 0",
            |p| check(p[0] > 1.0 && 1.0 < p[1] && p[1] <= p[0] && p[2] > 0.0, "c > 1, 1 < nu <= c, mu > 0"),
            |p| sym3(1.0, 1.0, 0.0, p[1], 0.0, -p[2]),
            |_| false,
            |d| {
                let mut out = Vec::new();
                for c in c_gt1() {
                    for nu in [0.5 * (1.0 + c), c] {
                        for mu in pos(d) {
                            out.push(vec![c, nu, mu]);
                        }
                    }
                }
                out
            },
        ),
        family(
            "g(1) [[0,0,1],[0,mu,0],[1,0,0]]",
            g,
            "g(1)",
            named("g1"),
            &["mu"],
            "mu > 0",
            |p| check(p[0] > 0.0, "mu > 0"),
            |p| sym3(0.0, 0.0, 1.0, p[0], 0.0, 0.0),
            |_| true,
            |d| pos(d).into_iter().map(|m| vec![m]).collect(),
        ),
        family(
            "g(1) [[mu,0,0],[0,0,1],[0,1,0]]",
            g,
            "g(1)",
            named("g1"),
            &["mu"],
            "mu > 0",
            |p| check(p[0] > 0.0, "mu > 0"),
            |p| sym3(p[0], 0.0, 0.0, 0.0, 1.0, 0.0),
            |_| false,
            |d| pos(d).into_iter().map(|m| vec![m]).collect(),
        ),
        family(
            "g(1) diag(1,-nu,mu)",
            g,
            "g(1)",
            named("g1"),
            &["nu", "mu"],
            "nu > 0, mu > 0",
            |p| check(p[0] > 0.0 && p[1] > 0.0, "nu > 0, mu > 0"),
            |p| diag3(1.0, -p[0], p[1]),
            |p| approx(p[0], 1.0 / 16.0),
            g1_nu_mu,
        ),
        family(
            "g(1) diag(1,nu,-mu)",
            g,
            "g(1)",
            named("g1"),
            &["nu", "mu"],
            "nu > 0, mu > 0",
            |p| check(p[0] > 0.0 && p[1] > 0.0, "nu > 0, mu > 0"),
            |p| diag3(1.0, p[0], -p[1]),
            |_| false,
            g1_nu_mu,
        ),
        family(
            "g(1) diag(-1,nu,mu)",
            g,
            "g(1)",
            named("g1"),
            &["nu", "mu"],
            "nu > 0, mu > 0",
            |p| check(p[0] > 0.0 && p[1] > 0.0, "nu > 0, mu > 0"),
            |p| diag3(-1.0, p[0], p[1]),
            |p| approx(p[0], 1.0 / 16.0),
            g1_nu_mu,
        ),
        family(
            "g(1) [[0,eps,0],[eps,0,0],[0,0,mu]]",
            g,
            "g(1)",
            named("g1"),
            &["eps", "mu"],
            "eps = +-1, mu > 0",
            |p| check(is_sign(p[0]) && p[1] > 0.0, "eps = +-1, mu > 0"),
            |p| sym3(0.0, p[0], 0.0, 0.0, 0.0, p[1]),
            |_| false,
            |d| signs().into_iter().flat_map(|e| pos(d).into_iter().map(move |m| vec![e, m])).collect(),
        ),
        family(
            "g(c<1) [[0,0,1],[0,1,0],[1,0,0]]",
            g,
            "g(c), c<1",
            g_lt1,
            &["c"],
            "c < 1",
            |p| check(p[0] < 1.0, "c < 1"),
            |_| sym3(0.0, 0.0, 1.0, 1.0, 0.0, 0.0),
            |p| approx(p[0] + 1.0, 1.0),
            |_| c_lt1().into_iter().map(|c| vec![c]).collect(),
        )
        .kernel_findings_only(),
        family(
            "g(c<1) [[1,0,0],[0,0,1],[0,1,0]]",
            g,
            "g(c), c<1",
            g_lt1,
            &["c"],
            "c < 1",
            |p| check(p[0] < 1.0, "c < 1"),
            |_| sym3(1.0, 0.0, 0.0, 0.0, 1.0, 0.0),
            |_| true,
            |_| c_lt1().into_iter().map(|c| vec![c]).collect(),
        ),
        family(
            "g(c<1) [[1,1,0],[1,1,mu],[0,mu,0]]",
            g,
            "g(c), c<1",
            g_lt1,
            &["c", "mu"],
            "c < 1, mu > 0",
            |p| check(p[0] < 1.0 && p[1] > 0.0, "c < 1, mu > 0"),
            |p| sym3(1.0, 1.0, 0.0, 1.0, p[1], 0.0),
            |_| false,
            c_lt1_mu,
        ),
        family(
            "g(c<1) diag(1,1,-mu)",
            g,
            "g(c), c<1",
            g_lt1,
            &["c", "mu"],
            "c < 1, mu > 0",
            |p| check(p[0] < 1.0 && p[1] > 0.0, "c < 1, mu > 0"),
            |p| diag3(1.0, 1.0, -p[1]),
            |_| false,
            c_lt1_mu,
        ),
        family(
            "g(c<1) diag(eps,-eps,mu)",
            g,
            "g(c), c<1",
            g_lt1,
            &["c", "eps", "mu"],
            "c < 1, eps = +-1, mu > 0",
            |p| check(p[0] < 1.0 && is_sign(p[1]) && p[2] > 0.0, "c < 1, eps = +-1, mu > 0"),
            |p| diag3(p[1], -p[1], p[2]),
            |_| false,
            c_lt1_eps_mu,
        ),
        family(
            "g(c<1) [[0,1,0],[1,0,0],[0,0,mu]]",
            g,
            "g(c), c<1",
            g_lt1,
            &["c", "mu"],
            "c < 1, mu > 0",
            |p| check(p[0] < 1.0 && p[1] > 0.0, "c < 1, mu > 0"),
            |p| sym3(0.0, 1.0, 0.0, 0.0, 0.0, p[1]),
            |p| approx(p[0], -3.0),
            c_lt1_mu,
        ),
        family(
            "g(c<1) [[0,1,0],[1,eps,0],[0,0,mu]]",
            g,
            "g(c), c<1",
            g_lt1,
            &["c", "eps", "mu"],
            "c < 1, eps = +-1, mu > 0",
            |p| check(p[0] < 1.0 && is_sign(p[1]) && p[2] > 0.0, "c < 1, eps = +-1, mu > 0"),
            |p| sym3(0.0, 1.0, 0.0, p[1], 0.0, p[2]),
            |p| approx(p[0], -3.0),
            c_lt1_eps_mu,
        ),
        family(
            "g(c<1) [[1,1,0],[1,tau,0],[0,0,nu]]",
            g,
            "g(c), c<1",
            g_lt1,
            &["c", "tau", "nu"],
            "c < 1, nu (tau - 1) < 0",
            |p| check(p[0] < 1.0 && p[2] * (p[1] - 1.0) < 0.0, "c < 1, nu (tau - 1) < 0"),
            |p| sym3(1.0, 1.0, 0.0, p[1], 0.0, p[2]),
            |p| p[2] > 0.0 && approx(p[1], (p[0] + 3.0) / 4.0),
            |d| {
                let mut out = Vec::new();
                for c in c_lt1() {
                    for tau in [(c + 3.0) / 4.0, 0.9 * (c + 3.0) / 4.0 - 0.2] {
                        for nu in pos(d) {
                            out.push(vec![c, tau, nu]);
                        }
                    }
                    // nu < 0 requires tau > 1
                    out.push(vec![c, 1.5, -1.0]);
                }
                out
            },
        ),
        family(
            "g(c<1) [[-1,1,0],[1,-eta,0],[0,0,mu]]",
            g,
            "g(c), c<1",
            g_lt1,
            &["c", "eta", "mu"],
            "c < 1, eta < 1, mu > 0",
            |p| check(p[0] < 1.0 && p[1] < 1.0 && p[2] > 0.0, "c < 1, eta < 1, mu > 0"),
            |p| sym3(-1.0, 1.0, 0.0, -p[1], 0.0, p[2]),
            |p| approx(p[1], (p[0] + 3.0) / 4.0),
            |d| {
                let mut out = Vec::new();
                for c in c_lt1() {
                    for eta in [(c + 3.0) / 4.0, (c + 3.0) / 4.0 - 0.5] {
                        for mu in pos(d) {
                            out.push(vec![c, eta, mu]);
                        }
                    }
                }
                out
            },
        ),
    ]
}

fn g1_nu_mu(d: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for nu in [1.0 / 16.0, 0.5, 2.0] {
        for mu in pos(d) {
            out.push(vec![nu, mu]);
        }
    }
    out
}

fn c_lt1_mu(d: usize) -> Vec<Vec<f64>> {
    c_lt1().into_iter().flat_map(|c| pos(d).into_iter().map(move |m| vec![c, m])).collect()
}

fn c_lt1_eps_mu(d: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for c in c_lt1() {
        for e in signs() {
            for m in pos(d) {
                out.push(vec![c, e, m]);
            }
        }
    }
    out
}

fn two_dim() -> Vec<MetricFamily> {
    let g = Group::TwoDim;
    vec![
        family(
            "g+(t)",
            g,
            "aff(R)",
            named("aff_r"),
            &["t"],
            "t > 0",
            |p| check(p[0] > 0.0, "t > 0"),
            |p| RMat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -p[0]]),
            |_| false,
            |d| pos(d).into_iter().chain([0.5, 1.0, 4.0]).map(|t| vec![t]).collect(),
        )
        .with_scalar(|p| 2.0 / p[0])
        .labelled("g₊(t)"),
        family(
            "g-(t)",
            g,
            "aff(R)",
            named("aff_r"),
            &["t"],
            "t > 0",
            |p| check(p[0] > 0.0, "t > 0"),
            |p| RMat::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, p[0]]),
            |_| false,
            |d| pos(d).into_iter().chain([0.5, 1.0, 4.0]).map(|t| vec![t]).collect(),
        )
        .with_scalar(|p| -2.0 / p[0])
        .labelled("g₋(t)"),
        family(
            "g0",
            g,
            "aff(R)",
            named("aff_r"),
            &[],
            "none",
            |_| Ok(()),
            |_| RMat::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]),
            |_| true,
            |_| vec![vec![]],
        )
        .with_ricci(|_| S002, &[S002])
        .with_scalar(|_| 0.0)
        .labelled("g₀"),
    ]
}

/// All families of a group.
pub fn families(group: Group) -> Vec<MetricFamily> {
    match group {
        Group::Riemannian => riemannian(),
        Group::Appendix => appendix(),
        Group::LorentzianUnimodular => lorentzian_unimodular(&appendix()),
        Group::LorentzianNonunimodular => lorentzian_nonunimodular(),
        Group::TwoDim => two_dim(),
    }
}

/// Every family of every group.
pub fn all_families() -> Vec<MetricFamily> {
    Group::ALL.iter().flat_map(|g| families(*g)).collect()
}

/// Look a family up by id.
pub fn find_family(id: &str) -> Option<MetricFamily> {
    all_families().into_iter().find(|f| f.id == id)
}
