//! Dirac operator on left-invariant spinors.
//!
//! Three independent constructions are provided: the coframe formula
//! `D = -1/4 sum_i (eps_i e^i ^ de^i + 2 i_{e_i} de^i)`, the spin-connection
//! sum `D = sum_k eps_k gamma_k Omega_k`, and closed forms for almost-Abelian
//! algebras. They agree exactly when evaluated on the same frame and
//! representation.

mod analyze;

pub use analyze::{analyze, analyze_with, AnalysisReport, AnalyzeOptions, ThreeDimPredicates};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlmostAbelianPresentation, LieAlgebra};
use crate::clifford::{build_rep_with, IrrepChoice};
use crate::connection::{frame_algebra, levi_civita_frame, spin_connection};
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::forms::{self, isotropic_frame, orthonormal_frame, Frame, MetricForm};
use crate::linalg::{self, RANK_TOL};
use crate::{CMat, RMat, RVec, C64};

/// Relative singular-value threshold for the kernel.
pub const KERNEL_TOL: f64 = 1e-8;

/// The 2-forms `de^k` on an orthonormal frame.
#[derive(Clone, Debug)]
pub struct CoframeDifferentials {
    pub de: Vec<Form>,
}

/// The nine coefficients of `de^1, de^2, de^3` in three dimensions,
/// `de^1 = a12 e^12 + a13 e^13 + a23 e^23` and likewise `b`, `c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coefficients3 {
    pub a12: f64,
    pub a13: f64,
    pub a23: f64,
    pub b12: f64,
    pub b13: f64,
    pub b23: f64,
    pub c12: f64,
    pub c13: f64,
    pub c23: f64,
}

impl CoframeDifferentials {
    pub fn dim(&self) -> usize {
        self.de.len()
    }

    /// `de^k(e_i, e_j)`.
    pub fn component(&self, k: usize, i: usize, j: usize) -> f64 {
        self.de[k].eval2(i, j)
    }

    /// Largest coefficient of `d(de^k)`; vanishes iff the Jacobi identity holds.
    pub fn d_squared_residual(&self) -> f64 {
        self.de.iter().map(|f| f.d(&self.de).max_abs()).fold(0.0, f64::max)
    }

    pub fn coefficients_3d(&self) -> Option<Coefficients3> {
        if self.dim() != 3 {
            return None;
        }
        let c = |k: usize, i: usize, j: usize| self.component(k, i, j);
        Some(Coefficients3 {
            a12: c(0, 0, 1),
            a13: c(0, 0, 2),
            a23: c(0, 1, 2),
            b12: c(1, 0, 1),
            b13: c(1, 0, 2),
            b23: c(1, 1, 2),
            c12: c(2, 0, 1),
            c13: c(2, 0, 2),
            c23: c(2, 1, 2),
        })
    }
}

/// `de^k(e_i, e_j) = -e^k([e_i, e_j])` on the frame.
pub fn coframe_differentials(alg: &LieAlgebra, frame: &Frame) -> Result<CoframeDifferentials> {
    let f = frame_algebra(alg, frame)?;
    Ok(differentials_of(&f))
}

fn differentials_of(f: &LieAlgebra) -> CoframeDifferentials {
    let n = f.dim();
    let de = (0..n)
        .map(|k| {
            let mut form = Form::zero(n);
            for i in 0..n {
                for j in (i + 1)..n {
                    form.set((1 << i) | (1 << j), -f.structure(k, i, j));
                }
            }
            form
        })
        .collect();
    CoframeDifferentials { de }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiracRoute {
    Coframe,
    Connection,
    AlmostAbelian,
}

/// The Dirac operator on left-invariant spinors, with the frame it was
/// computed on.
#[derive(Clone, Debug)]
pub struct DiracMatrix {
    pub m: CMat,
    pub route: DiracRoute,
    pub frame: Frame,
}

impl DiracMatrix {
    pub fn max_abs(&self) -> f64 {
        self.m.iter().fold(0.0, |a, z| a.max(z.norm()))
    }

    /// `max |self - other|`, for matrices on the same frame.
    pub fn distance(&self, other: &DiracMatrix) -> f64 {
        (&self.m - &other.m).iter().fold(0.0, |a, z| a.max(z.norm()))
    }
}

fn nondegenerate_frame(g: &MetricForm) -> Result<Frame> {
    orthonormal_frame(g)
}

pub fn dirac_coframe(alg: &LieAlgebra, g: &MetricForm) -> Result<DiracMatrix> {
    let frame = nondegenerate_frame(g)?;
    dirac_coframe_with(alg, &frame, IrrepChoice::Default)
}

/// Coframe formula on a given orthonormal frame.
pub fn dirac_coframe_with(alg: &LieAlgebra, frame: &Frame, choice: IrrepChoice) -> Result<DiracMatrix> {
    let rep = build_rep_with(&frame.eps, choice)?;
    let diffs = coframe_differentials(alg, frame)?;
    let n = alg.dim();
    let mut total = Form::zero(n);
    for i in 0..n {
        let de = &diffs.de[i];
        total = total + Form::e(n, i).wedge(de) * frame.sign(i) + de.interior(i) * 2.0;
    }
    let m = rep.act_form(&(total * -0.25))?;
    Ok(DiracMatrix { m, route: DiracRoute::Coframe, frame: frame.clone() })
}

pub fn dirac_connection(alg: &LieAlgebra, g: &MetricForm) -> Result<DiracMatrix> {
    let frame = nondegenerate_frame(g)?;
    dirac_connection_with(alg, &frame, IrrepChoice::Default)
}

/// `sum_k eps_k gamma_k Omega_k` on a given orthonormal frame.
pub fn dirac_connection_with(
    alg: &LieAlgebra,
    frame: &Frame,
    choice: IrrepChoice,
) -> Result<DiracMatrix> {
    let rep = build_rep_with(&frame.eps, choice)?;
    let f = frame_algebra(alg, frame)?;
    let conn = levi_civita_frame(&f, &frame.eps);
    let omega = spin_connection(&conn, &rep)?;
    let d = rep.spinor_dim();
    let mut m = CMat::zeros(d, d);
    for (k, om) in omega.iter().enumerate() {
        m += &rep.gamma[k] * om * Complex::from(frame.sign(k));
    }
    Ok(DiracMatrix { m, route: DiracRoute::Connection, frame: frame.clone() })
}

/// Which closed form the almost-Abelian route used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlmostAbelianBranch {
    NonIsotropic,
    Isotropic,
}

#[derive(Clone, Debug)]
pub struct AlmostAbelianDirac {
    pub dirac: DiracMatrix,
    pub branch: AlmostAbelianBranch,
    /// `D` in the basis the closed form uses.
    pub d: RMat,
}

/// Closed-form Dirac operator of an almost-Abelian metric algebra; the
/// branch is chosen from the restriction of `g` to the ideal.
pub fn dirac_almost_abelian(
    alg: &LieAlgebra,
    pres: &AlmostAbelianPresentation,
    g: &MetricForm,
) -> Result<AlmostAbelianDirac> {
    dirac_almost_abelian_with(alg, pres, g, IrrepChoice::Default)
}

pub fn dirac_almost_abelian_with(
    alg: &LieAlgebra,
    pres: &AlmostAbelianPresentation,
    g: &MetricForm,
    choice: IrrepChoice,
) -> Result<AlmostAbelianDirac> {
    if g.is_degenerate() {
        return Err(Error::Degenerate("metric is degenerate".into()));
    }
    if forms::is_isotropic(g, pres) {
        isotropic_branch(alg, pres, g, choice)
    } else {
        non_isotropic_branch(alg, pres, g, choice)
    }
}

/// Coordinates of `x` in the span of `basis` (columns), with a residual check.
fn coords_in(basis: &RMat, x: &RVec) -> Result<RVec> {
    let (c, resid) = linalg::coordinates(basis, x);
    if resid > 1e-9 * (1.0 + x.amax()) {
        return Err(Error::InvalidPresentation("bracket leaves the ideal".into()));
    }
    Ok(c)
}

fn non_isotropic_branch(
    alg: &LieAlgebra,
    pres: &AlmostAbelianPresentation,
    g: &MetricForm,
    choice: IrrepChoice,
) -> Result<AlmostAbelianDirac> {
    let n = alg.dim();
    let h = &pres.ideal_basis;
    let gh = g.restrict(h)?;
    let fh = orthonormal_frame(&gh)?;
    let on_h = h * &fh.b;
    // unit normal to the ideal
    let normal = linalg::nullspace(&(on_h.transpose() * g.matrix()), RANK_TOL);
    if normal.ncols() != 1 {
        return Err(Error::InvalidPresentation("ideal has no unique normal".into()));
    }
    let mut e_n = normal.column(0).into_owned();
    let norm2 = g.inner(&e_n, &e_n);
    e_n /= norm2.abs().sqrt();
    // orient e_n like the transversal so D keeps its sign
    if g.inner(&e_n, &pres.transversal) * norm2 < 0.0 {
        e_n = -e_n;
    }
    let mut b = on_h.clone().insert_column(n - 1, 0.0);
    b.set_column(n - 1, &e_n);
    let mut eps = fh.eps.clone();
    eps.push(if norm2 > 0.0 { 1 } else { -1 });
    let frame = Frame { b, eps };

    let mut d = RMat::zeros(n - 1, n - 1);
    for j in 0..(n - 1) {
        let br = alg.bracket(&e_n, &on_h.column(j).into_owned());
        d.set_column(j, &coords_in(&on_h, &br)?);
    }

    let rep = build_rep_with(&frame.eps, choice)?;
    let mut omega = Form::zero(n);
    for i in 0..(n - 1) {
        for j in (i + 1)..(n - 1) {
            let w = frame.sign(i) * d[(i, j)] - frame.sign(j) * d[(j, i)];
            omega = omega + Form::monomial(n, &[i, j, n - 1], -0.25 * w)?;
        }
    }
    omega = omega + Form::e(n, n - 1) * (-0.5 * d.trace());
    let m = rep.act_form(&omega)?;
    Ok(AlmostAbelianDirac {
        dirac: DiracMatrix { m, route: DiracRoute::AlmostAbelian, frame },
        branch: AlmostAbelianBranch::NonIsotropic,
        d,
    })
}

fn isotropic_branch(
    alg: &LieAlgebra,
    pres: &AlmostAbelianPresentation,
    g: &MetricForm,
    choice: IrrepChoice,
) -> Result<AlmostAbelianDirac> {
    let n = alg.dim();
    let iso = isotropic_frame(g, pres)?;
    let v = &iso.v;
    let h_basis = v.columns(0, n - 1).into_owned();
    let v_n = v.column(n - 1).into_owned();
    let mut d = RMat::zeros(n - 1, n - 1);
    for j in 0..(n - 1) {
        let br = alg.bracket(&v_n, &h_basis.column(j).into_owned());
        d.set_column(j, &coords_in(&h_basis, &br)?);
    }
    let frame = iso.companion();
    let rep = build_rep_with(&frame.eps, choice)?;

    let s2 = std::f64::consts::SQRT_2;
    let (p, q) = (n - 2, n - 1);
    let null = Form::e(n, p) - Form::e(n, q);
    let mut omega = Form::zero(n);
    for i in 0..p {
        for j in (i + 1)..p {
            let w = frame.sign(i) * d[(i, j)] - frame.sign(j) * d[(j, i)];
            let eij = Form::monomial(n, &[i, j], 1.0)?;
            omega = omega + eij.wedge(&null) * (-(s2 / 8.0) * w);
        }
    }
    for i in 0..p {
        omega = omega + Form::monomial(n, &[i, p, q], 0.25 * frame.sign(i) * d[(i, p)])?;
    }
    omega = omega + null * (-(s2 / 4.0) * d.trace());
    let m = rep.act_form(&omega)?;
    Ok(AlmostAbelianDirac {
        dirac: DiracMatrix { m, route: DiracRoute::AlmostAbelian, frame },
        branch: AlmostAbelianBranch::Isotropic,
        d,
    })
}

/// Kernel of the Dirac matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HarmonicReport {
    pub kernel_dim: usize,
    /// Orthonormal kernel vectors as `[re, im]` pairs.
    pub kernel_basis: Vec<Vec<[f64; 2]>>,
    pub singular_values: Vec<f64>,
}

impl HarmonicReport {
    pub fn kernel_vectors(&self) -> Vec<Vec<C64>> {
        self.kernel_basis
            .iter()
            .map(|v| v.iter().map(|[re, im]| C64::new(*re, *im)).collect())
            .collect()
    }
}

pub fn harmonic(m: &CMat) -> HarmonicReport {
    harmonic_with_tol(m, KERNEL_TOL)
}

/// Kernel with singular values below `tol * max(1, sigma_max)` treated as zero.
pub fn harmonic_with_tol(m: &CMat, tol: f64) -> HarmonicReport {
    let d = m.nrows();
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let cut = tol * smax.max(1.0);
    let mut basis = Vec::new();
    for (k, s) in sv.iter().enumerate() {
        if *s < cut {
            basis.push((0..d).map(|c| {
                let z = v_t[(k, c)].conj();
                [z.re, z.im]
            }).collect());
        }
    }
    HarmonicReport { kernel_dim: basis.len(), kernel_basis: basis, singular_values: sv }
}
