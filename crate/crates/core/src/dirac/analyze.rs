use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    coframe_differentials, dirac_almost_abelian_with, dirac_coframe_with, dirac_connection_with,
    harmonic_with_tol, AlmostAbelianBranch, Coefficients3, HarmonicReport, KERNEL_TOL,
};
use crate::algebra::{detect_almost_abelian, identify_3d, AlgebraIdentity, LieAlgebra, JACOBI_TOL};
use crate::clifford::IrrepChoice;
use crate::connection::{ricci_direct_with, ricci_structural};
use crate::error::{Error, Result};
use crate::forms::{orthonormal_frame, signature_of, MetricForm, Signature, SIGNATURE_TOL};
use crate::linalg;
use crate::{CMat, RMat};

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub irrep: IrrepChoice,
    /// Nonzero seeds reorder and flip the frame before computing.
    pub frame_seed: u64,
    /// Also compute the kernel with the opposite odd irreducible.
    pub check_opposite: bool,
    /// Relative singular value cutoff for the kernel.
    pub kernel_tol: f64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self { irrep: IrrepChoice::Default, frame_seed: 0, check_opposite: false, kernel_tol: KERNEL_TOL }
    }
}

/// Closed-form harmonicity conditions in three dimensions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThreeDimPredicates {
    pub coefficients: Coefficients3,
    /// `b23 = -a13, c12 = -a23 + b13, c13 = -b12, c23 = a12` (positive definite only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub riemannian: Option<bool>,
    /// `4(a12-c23)^2 - 4(a13+b23)^2 - (a23-b13-c12)^2 + 4(b12+c13)^2`
    /// on a `(+,+,-)` frame.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lorentzian_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lorentzian: Option<bool>,
    /// The evaluated predicate agrees with `kernel_dim > 0`.
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiracSection {
    /// Connection-route matrix as rows of `[re, im]`.
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub route_residuals: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub almost_abelian: Option<AlmostAbelianBranch>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HarmonicSection {
    pub dim: usize,
    pub basis: Vec<Vec<[f64; 2]>>,
    pub singular_values: Vec<f64>,
}

impl From<&HarmonicReport> for HarmonicSection {
    fn from(h: &HarmonicReport) -> Self {
        Self { dim: h.kernel_dim, basis: h.kernel_basis.clone(), singular_values: h.singular_values.clone() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity: Option<AlgebraIdentity>,
    pub unimodular: bool,
    pub killing_signature: Signature,
    pub metric_signature: Signature,
    pub ricci: Vec<Vec<f64>>,
    pub ricci_signature: Signature,
    pub scalar: f64,
    /// `max |Ric_structural - Ric_direct|`.
    pub ricci_residual: f64,
    pub dirac: DiracSection,
    pub harmonic_dim: usize,
    pub harmonic: HarmonicSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicates: Option<ThreeDimPredicates>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opposite_irrep_dim: Option<usize>,
    #[serde(skip)]
    pub ricci_matrix: RMat,
    #[serde(skip)]
    pub dirac_matrix: CMat,
}

impl AnalysisReport {
    pub fn max_route_residual(&self) -> f64 {
        self.dirac.route_residuals.values().cloned().fold(0.0, f64::max)
    }
}

fn rows_real(m: &RMat) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().cloned().collect()).collect()
}

fn rows_complex(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect()).collect()
}

pub fn analyze(alg: &LieAlgebra, g: &MetricForm) -> Result<AnalysisReport> {
    analyze_with(alg, g, AnalyzeOptions::default())
}

/// Full pipeline: invariants, Ricci by both routes, Dirac by every applicable
/// route with cross-residuals, kernel, and the 3D closed-form predicates.
pub fn analyze_with(alg: &LieAlgebra, g: &MetricForm, opts: AnalyzeOptions) -> Result<AnalysisReport> {
    let n = alg.dim();
    if g.dim() != n {
        return Err(Error::LengthMismatch { expected: n, got: g.dim() });
    }
    let jac = alg.check_jacobi();
    if jac > JACOBI_TOL {
        return Err(Error::Jacobi(jac));
    }
    let metric_signature = g.signature();
    let frame = orthonormal_frame(g)?.reordered(opts.frame_seed);

    let identity = (n == 3).then(|| identify_3d(alg));
    let killing_signature = signature_of(&alg.killing_form(), SIGNATURE_TOL);

    let direct = ricci_direct_with(alg, g, &frame)?;
    let structural = ricci_structural(alg, g)?;
    let ricci_residual = linalg::max_abs(&(&direct.ricci - &structural.ricci));

    let cof = dirac_coframe_with(alg, &frame, opts.irrep)?;
    let con = dirac_connection_with(alg, &frame, opts.irrep)?;
    let mut route_residuals = BTreeMap::new();
    route_residuals.insert("coframe_vs_connection".to_string(), cof.distance(&con));

    let mut almost_abelian = None;
    let det = detect_almost_abelian(alg);
    if let Some(pres) = det.presentations.first() {
        if let Ok(aa) = dirac_almost_abelian_with(alg, pres, g, opts.irrep) {
            let same_frame = dirac_connection_with(alg, &aa.dirac.frame, opts.irrep)?;
            route_residuals
                .insert("almost_abelian_vs_connection".to_string(), aa.dirac.distance(&same_frame));
            almost_abelian = Some(aa.branch);
        }
    }

    let h = harmonic_with_tol(&con.m, opts.kernel_tol);
    let opposite_irrep_dim = opts.check_opposite.then(|| {
        let flip = match opts.irrep {
            IrrepChoice::Default => IrrepChoice::Opposite,
            IrrepChoice::Opposite => IrrepChoice::Default,
        };
        dirac_connection_with(alg, &frame, flip).map(|m| harmonic_with_tol(&m.m, opts.kernel_tol).kernel_dim)
    });
    let opposite_irrep_dim = opposite_irrep_dim.transpose()?;

    let predicates = if n == 3 {
        let diffs = coframe_differentials(alg, &frame)?;
        let c = diffs.coefficients_3d().expect("three-dimensional");
        Some(predicates_3d(c, &frame.eps, h.kernel_dim > 0))
    } else {
        None
    };

    Ok(AnalysisReport {
        dim: n,
        identity,
        unimodular: alg.is_unimodular(),
        killing_signature,
        metric_signature,
        ricci: rows_real(&direct.ricci),
        ricci_signature: direct.ricci_signature,
        scalar: direct.scalar,
        ricci_residual,
        dirac: DiracSection { matrix: rows_complex(&con.m), route_residuals, almost_abelian },
        harmonic_dim: h.kernel_dim,
        harmonic: HarmonicSection::from(&h),
        predicates,
        opposite_irrep_dim,
        ricci_matrix: direct.ricci,
        dirac_matrix: con.m,
    })
}

fn predicates_3d(c: Coefficients3, eps: &[i8], harmonic: bool) -> ThreeDimPredicates {
    let scale = [c.a12, c.a13, c.a23, c.b12, c.b13, c.b23, c.c12, c.c13, c.c23]
        .iter()
        .fold(1.0_f64, |a, x| a.max(x.abs()));
    let mut out = ThreeDimPredicates {
        coefficients: c,
        riemannian: None,
        lorentzian_value: None,
        lorentzian: None,
        agrees: true,
    };
    match eps {
        [1, 1, 1] => {
            let tol = 1e-9 * scale;
            let holds = (c.b23 + c.a13).abs() <= tol
                && (c.c12 + c.a23 - c.b13).abs() <= tol
                && (c.c13 + c.b12).abs() <= tol
                && (c.c23 - c.a12).abs() <= tol;
            out.riemannian = Some(holds);
            out.agrees = holds == harmonic;
        }
        [1, 1, -1] => {
            let v = 4.0 * (c.a12 - c.c23).powi(2) - 4.0 * (c.a13 + c.b23).powi(2)
                - (c.a23 - c.b13 - c.c12).powi(2)
                + 4.0 * (c.b12 + c.c13).powi(2);
            let holds = v.abs() <= 1e-8 * scale * scale;
            out.lorentzian_value = Some(v);
            out.lorentzian = Some(holds);
            out.agrees = holds == harmonic;
        }
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog_algebra;

    #[test]
    fn spec_examples() {
        let r = analyze(&catalog_algebra("sl2", &[]).unwrap(), &MetricForm::diagonal(&[3.0, 2.0, 1.0])).unwrap();
        assert_eq!(r.harmonic_dim, 2);
        let p = r.predicates.as_ref().unwrap();
        assert_eq!(p.riemannian, Some(true));
        assert!(p.agrees);

        let r = analyze(&catalog_algebra("su2", &[]).unwrap(), &MetricForm::diagonal(&[1.0, 1.0, -2.0])).unwrap();
        assert_eq!(r.harmonic_dim, 2);
        assert!(r.predicates.unwrap().agrees);

        let r = analyze(&catalog_algebra("heis3", &[]).unwrap(), &MetricForm::identity(3)).unwrap();
        assert_eq!(r.harmonic_dim, 0);
        assert!(r.max_route_residual() < 1e-10);
    }

    #[test]
    fn rejects_bad_input() {
        let alg = catalog_algebra("su2", &[]).unwrap();
        assert!(matches!(analyze(&alg, &MetricForm::diagonal(&[1.0, 1.0, 0.0])), Err(Error::Degenerate(_))));
        assert!(matches!(analyze(&alg, &MetricForm::identity(2)), Err(Error::LengthMismatch { .. })));
    }
}
