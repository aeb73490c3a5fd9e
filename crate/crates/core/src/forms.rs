//! Symmetric bilinear forms, signatures and adapted frames.

use std::fmt;

use nalgebra::SymmetricEigen;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlmostAbelianPresentation, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, RANK_TOL};
use crate::{RMat, RVec};

/// Relative eigenvalue threshold used for signatures.
pub const SIGNATURE_TOL: f64 = 1e-9;

/// Counts `(p, q, r)` of positive, negative and null directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl Signature {
    pub const fn new(p: usize, q: usize, r: usize) -> Self {
        Self { p, q, r }
    }

    pub fn dim(&self) -> usize {
        self.p + self.q + self.r
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

/// Signature of a symmetric matrix: eigenvalues compared against
/// `tol * max |lambda|`. The zero matrix has signature `(0, 0, n)`.
pub fn signature_of(m: &RMat, tol: f64) -> Signature {
    let n = m.nrows();
    if n == 0 {
        return Signature::new(0, 0, 0);
    }
    let ev = m.clone().symmetric_eigenvalues();
    let scale = ev.amax();
    if scale == 0.0 {
        return Signature::new(0, 0, n);
    }
    let cut = tol * scale;
    let p = ev.iter().filter(|l| **l > cut).count();
    let q = ev.iter().filter(|l| **l < -cut).count();
    Signature::new(p, q, n - p - q)
}

/// Signature with an absolute eigenvalue threshold.
pub fn signature_abs(m: &RMat, tol: f64) -> Signature {
    let n = m.nrows();
    let ev = m.clone().symmetric_eigenvalues();
    let p = ev.iter().filter(|l| **l > tol).count();
    let q = ev.iter().filter(|l| **l < -tol).count();
    Signature::new(p, q, n - p - q)
}

/// A symmetric bilinear form in the defining basis of an algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricForm {
    g: RMat,
}

impl MetricForm {
    /// Wrap a matrix, requiring exact symmetry.
    pub fn new(g: RMat) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::LengthMismatch { expected: g.nrows(), got: g.ncols() });
        }
        let asym = linalg::max_abs(&(&g - g.transpose()));
        if asym != 0.0 {
            return Err(Error::Asymmetric(asym));
        }
        Ok(Self { g })
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: r.len() });
            }
        }
        Self::new(RMat::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn diagonal(d: &[f64]) -> Self {
        Self { g: RMat::from_diagonal(&RVec::from_column_slice(d)) }
    }

    pub fn identity(n: usize) -> Self {
        Self { g: RMat::identity(n, n) }
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    pub fn matrix(&self) -> &RMat {
        &self.g
    }

    pub fn inner(&self, x: &RVec, y: &RVec) -> f64 {
        x.dot(&(&self.g * y))
    }

    pub fn signature(&self) -> Signature {
        signature_of(&self.g, SIGNATURE_TOL)
    }

    pub fn is_degenerate(&self) -> bool {
        self.signature().r > 0
    }

    /// `A^T G A`.
    pub fn pullback(&self, a: &RMat) -> Self {
        let m = a.transpose() * &self.g * a;
        // re-symmetrise round-off so the exact-symmetry invariant holds
        let g = (&m + m.transpose()) * 0.5;
        Self { g }
    }

    /// Gram matrix on the span of the columns of `s`, in that basis.
    pub fn restrict(&self, s: &RMat) -> Result<Self> {
        if linalg::rank(s, RANK_TOL) != s.ncols() {
            return Err(Error::DependentSpan);
        }
        Ok(self.pullback(s))
    }
}

/// A pseudo-orthonormal basis: columns of `b` with `g(b_i, b_j) = eps_i delta_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    pub b: RMat,
    pub eps: Vec<i8>,
}

impl Frame {
    /// Validate a proposed frame against `g`, reading the signs off the Gram matrix.
    pub fn new(g: &MetricForm, b: RMat) -> Result<Self> {
        let gram = b.transpose() * g.matrix() * &b;
        let n = b.ncols();
        let eps: Vec<i8> = (0..n).map(|i| if gram[(i, i)] > 0.0 { 1 } else { -1 }).collect();
        let frame = Self { b, eps };
        let resid = frame.residual(g);
        if resid > 1e-10 {
            return Err(Error::Degenerate(format!("frame is not orthonormal, residual {resid:e}")));
        }
        Ok(frame)
    }

    pub fn dim(&self) -> usize {
        self.eps.len()
    }

    #[inline]
    pub fn sign(&self, i: usize) -> f64 {
        f64::from(self.eps[i])
    }

    /// `max |B^T G B - diag(eps)|`.
    pub fn residual(&self, g: &MetricForm) -> f64 {
        let gram = self.b.transpose() * g.matrix() * &self.b;
        let n = self.dim();
        let target = RMat::from_fn(n, n, |i, j| if i == j { self.sign(i) } else { 0.0 });
        linalg::max_abs(&(gram - target))
    }

    /// Another valid frame for the same metric: columns permuted within each
    /// sign block and randomly negated. Seed 0 returns the frame unchanged.
    pub fn reordered(&self, seed: u64) -> Self {
        if seed == 0 {
            return self.clone();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.dim();
        let mut pos: Vec<usize> = (0..n).filter(|&i| self.eps[i] > 0).collect();
        let mut neg: Vec<usize> = (0..n).filter(|&i| self.eps[i] < 0).collect();
        pos.shuffle(&mut rng);
        neg.shuffle(&mut rng);
        let order: Vec<usize> = pos.into_iter().chain(neg).collect();
        let mut b = RMat::zeros(n, n);
        let mut eps = Vec::with_capacity(n);
        for (dst, &src) in order.iter().enumerate() {
            let s = if rng.random_bool(0.5) { -1.0 } else { 1.0 };
            b.set_column(dst, &(self.b.column(src) * s));
            eps.push(self.eps[src]);
        }
        Self { b, eps }
    }

    /// Frame change by a constant rotation mixing the first two columns of
    /// the same sign; used to test frame invariance beyond permutations.
    pub fn rotated(&self, i: usize, j: usize, angle: f64) -> Self {
        let mut out = self.clone();
        if self.eps[i] != self.eps[j] {
            return out;
        }
        let (c, s) = (angle.cos(), angle.sin());
        let bi = self.b.column(i).into_owned();
        let bj = self.b.column(j).into_owned();
        out.b.set_column(i, &(&bi * c + &bj * s));
        out.b.set_column(j, &(&bj * c - &bi * s));
        out
    }
}

/// Pseudo-orthonormal frame from the symmetric eigendecomposition of `g`,
/// positive directions first.
pub fn orthonormal_frame(g: &MetricForm) -> Result<Frame> {
    let sig = g.signature();
    if sig.r > 0 {
        return Err(Error::Degenerate(format!("metric has signature {sig}")));
    }
    let n = g.dim();
    let SymmetricEigen { eigenvalues, eigenvectors } = g.matrix().clone().symmetric_eigen();
    let mut cols: Vec<(f64, usize, RVec)> = (0..n)
        .map(|k| {
            let mut v = eigenvectors.column(k).into_owned();
            linalg::normalize_sign(&mut v);
            (eigenvalues[k], v.iamax(), v)
        })
        .collect();
    // positives first, then by dominant coordinate so that diagonal metrics
    // keep the defining order
    cols.sort_by(|a, b| {
        let sa = a.0 < 0.0;
        let sb = b.0 < 0.0;
        sa.cmp(&sb).then(a.1.cmp(&b.1)).then(b.0.abs().total_cmp(&a.0.abs()))
    });
    let mut b = RMat::zeros(n, n);
    let mut eps = Vec::with_capacity(n);
    for (idx, (lambda, _, v)) in cols.into_iter().enumerate() {
        b.set_column(idx, &(v / lambda.abs().sqrt()));
        eps.push(if lambda > 0.0 { 1 } else { -1 });
    }
    Ok(Frame { b, eps })
}

/// Basis `(v_1, ..., v_n)` adapted to a degenerate codimension-one ideal:
/// Gram matrix `diag(eps_v) + [[0, 1], [1, 0]]`, `v_{n-1}` spanning the radical
/// of the ideal and `v_n` the null transversal.
#[derive(Clone, Debug)]
pub struct IsotropicFrame {
    pub v: RMat,
    pub eps_v: Vec<i8>,
}

impl IsotropicFrame {
    pub fn dim(&self) -> usize {
        self.v.ncols()
    }

    /// Gram matrix the frame is supposed to have.
    pub fn target_gram(&self) -> RMat {
        let n = self.dim();
        let mut t = RMat::zeros(n, n);
        for (i, e) in self.eps_v.iter().enumerate() {
            t[(i, i)] = f64::from(*e);
        }
        t[(n - 2, n - 1)] = 1.0;
        t[(n - 1, n - 2)] = 1.0;
        t
    }

    pub fn residual(&self, g: &MetricForm) -> f64 {
        let gram = self.v.transpose() * g.matrix() * &self.v;
        linalg::max_abs(&(gram - self.target_gram()))
    }

    /// Orthonormal companion: `e_i = v_i` for `i < n-1`,
    /// `e_{n-1} = (v_{n-1} + v_n)/sqrt 2` (positive), `e_n = (v_{n-1} - v_n)/sqrt 2`
    /// (negative).
    pub fn companion(&self) -> Frame {
        let n = self.dim();
        let mut b = self.v.clone();
        let a = self.v.column(n - 2).into_owned();
        let c = self.v.column(n - 1).into_owned();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        b.set_column(n - 2, &((&a + &c) * r));
        b.set_column(n - 1, &((&a - &c) * r));
        let mut eps = self.eps_v.clone();
        eps.extend([1, -1]);
        Frame { b, eps }
    }
}

/// True when the metric restricted to the ideal of `pres` is degenerate.
pub fn is_isotropic(g: &MetricForm, pres: &AlmostAbelianPresentation) -> bool {
    let h = g.pullback(&pres.ideal_basis);
    signature_of(h.matrix(), RANK_TOL).r > 0
}

/// Build the isotropic frame for an almost-Abelian presentation whose ideal
/// carries a degenerate metric with one-dimensional radical.
pub fn isotropic_frame(g: &MetricForm, pres: &AlmostAbelianPresentation) -> Result<IsotropicFrame> {
    let n = g.dim();
    if g.is_degenerate() {
        return Err(Error::Degenerate("metric is degenerate".into()));
    }
    let h = &pres.ideal_basis;
    let gh = g.restrict(h)?;
    let rad = linalg::nullspace(gh.matrix(), RANK_TOL);
    if rad.ncols() != 1 {
        return Err(Error::NotIsotropic(format!(
            "radical of the ideal has dimension {}",
            rad.ncols()
        )));
    }
    let r = rad.column(0).into_owned();
    let mut v_null = h * &r;
    v_null /= v_null.amax();
    linalg::normalize_sign(&mut v_null);

    // complement of the radical inside the ideal, orthonormalised
    let mut frame_v = Vec::new();
    let mut eps_v = Vec::new();
    if n > 2 {
        let comp = linalg::nullspace(&RMat::from_row_slice(1, n - 1, r.as_slice()), RANK_TOL);
        let span = h * comp;
        let gv = g.restrict(&span)?;
        let f = orthonormal_frame(&gv)?;
        for k in 0..f.dim() {
            frame_v.push(&span * f.b.column(k));
            eps_v.push(f.eps[k]);
        }
    }

    let mut w = pres.transversal.clone();
    for (u, e) in frame_v.iter().zip(&eps_v) {
        w -= u * (f64::from(*e) * g.inner(&w, u));
    }
    let pair = g.inner(&v_null, &w);
    if pair.abs() <= 1e-12 {
        return Err(Error::Degenerate("transversal is orthogonal to the radical".into()));
    }
    w /= pair;
    let v_n = &w - &v_null * (0.5 * g.inner(&w, &w));

    let mut v = RMat::zeros(n, n);
    for (k, u) in frame_v.iter().enumerate() {
        v.set_column(k, u);
    }
    v.set_column(n - 2, &v_null);
    v.set_column(n - 1, &v_n);
    let out = IsotropicFrame { v, eps_v };
    let resid = out.residual(g);
    if resid > 1e-10 * (1.0 + linalg::max_abs(g.matrix())) {
        return Err(Error::NotIsotropic(format!("frame residual {resid:e}")));
    }
    Ok(out)
}

/// `max ||A[v_i, v_j] - [A v_i, A v_j]||_inf` over basis pairs.
pub fn is_automorphism(alg: &LieAlgebra, a: &RMat) -> f64 {
    let n = alg.dim();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = a * alg.basis_bracket(i, j);
            let rhs = alg.bracket(&a.column(i).into_owned(), &a.column(j).into_owned());
            worst = worst.max((lhs - rhs).amax());
        }
    }
    worst
}

/// `g2 = A^T g1 A` with `A` an automorphism, both to `tol` (relative to `g1`).
pub fn verify_equivalence(
    alg: &LieAlgebra,
    g1: &MetricForm,
    g2: &MetricForm,
    a: &RMat,
    tol: f64,
) -> bool {
    if a.nrows() != alg.dim() || a.ncols() != alg.dim() || g1.dim() != g2.dim() {
        return false;
    }
    if a.determinant().abs() <= 1e-12 {
        return false;
    }
    let pulled = a.transpose() * g1.matrix() * a;
    is_automorphism(alg, a) <= tol
        && linalg::max_abs(&(pulled - g2.matrix())) <= tol * linalg::max_abs(g1.matrix()).max(1.0)
}

/// The three normal forms of Lorentzian metrics on `aff(R)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AffLabel {
    GPlus,
    GMinus,
    GZero,
}

impl AffLabel {
    /// Normal form matrix for this label and parameter.
    pub fn matrix(&self, t: Option<f64>) -> RMat {
        let t = t.unwrap_or(0.0);
        match self {
            AffLabel::GPlus => RMat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -t]),
            AffLabel::GMinus => RMat::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, t]),
            AffLabel::GZero => RMat::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]),
        }
    }
}

impl fmt::Display for AffLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AffLabel::GPlus => "g_plus",
            AffLabel::GMinus => "g_minus",
            AffLabel::GZero => "g_zero",
        })
    }
}

#[derive(Clone, Debug)]
pub struct AffCanonical {
    pub label: AffLabel,
    pub t: Option<f64>,
    /// Automorphism `A = [[a, b], [0, 1]]` with `A^T G A` the normal form.
    pub a: RMat,
}

impl AffCanonical {
    pub fn canonical(&self) -> MetricForm {
        MetricForm { g: self.label.matrix(self.t) }
    }
}

/// Bring a Lorentzian metric on `aff(R)` (`[v_1, v_2] = v_1`) to normal form
/// using the triangular automorphisms `[[a, b], [0, 1]]`.
pub fn canonicalize_aff_metric(g: &MetricForm) -> Result<AffCanonical> {
    if g.dim() != 2 {
        return Err(Error::UnsupportedDimension(g.dim(), "2"));
    }
    let m = g.matrix();
    let (x, y, z) = (m[(0, 0)], m[(0, 1)], m[(1, 1)]);
    if x * z >= y * y {
        return Err(Error::NotLorentzian(format!("xz = {} >= y^2 = {}", x * z, y * y)));
    }
    let scale = linalg::max_abs(m);
    let (label, t, a, b) = if x.abs() > 1e-12 * scale {
        let t = (y * y - x * z) / x.abs();
        let label = if x > 0.0 { AffLabel::GPlus } else { AffLabel::GMinus };
        (label, Some(t), 1.0 / x.abs().sqrt(), -y / x)
    } else {
        (AffLabel::GZero, None, 1.0 / y, -z / (2.0 * y))
    };
    Ok(AffCanonical { label, t, a: RMat::from_row_slice(2, 2, &[a, b, 0.0, 1.0]) })
}

/// Seeded random metric `A^T diag(+1.., -1..) A` of signature `(p, q, 0)`.
pub fn random_metric(p: usize, q: usize, seed: u64) -> Result<MetricForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_metric_with(p, q, &mut rng)
}

/// As [`random_metric`], drawing from a caller-provided generator.
pub fn random_metric_with<R: Rng>(p: usize, q: usize, rng: &mut R) -> Result<MetricForm> {
    let n = p + q;
    if n == 0 {
        return Err(Error::UnsupportedDimension(0, "1..=4"));
    }
    let d = RMat::from_fn(n, n, |i, j| match (i == j, i < p) {
        (true, true) => 1.0,
        (true, false) => -1.0,
        _ => 0.0,
    });
    loop {
        let a = RMat::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
        let sv = a.clone().singular_values();
        if sv.min() < 0.25 {
            continue;
        }
        let m = a.transpose() * &d * &a;
        return Ok(MetricForm { g: (&m + m.transpose()) * 0.5 });
    }
}
