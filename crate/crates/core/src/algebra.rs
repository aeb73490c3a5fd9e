//! Real Lie algebras given by structure constants.
//!
//! A [`LieAlgebra`] stores `c[k][i][j]` with `[v_i, v_j] = sum_k c[k][i][j] v_k`
//! in a fixed defining basis `{v_i}`. Everything downstream (metrics, frames,
//! connections) is expressed in that basis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{self, Signature};
use crate::linalg::{self, RANK_TOL};
use crate::{RMat, RVec};

/// Tolerance below which a Jacobi residual counts as zero.
pub const JACOBI_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<f64>,
    label: Option<String>,
}

/// One nonzero bracket `[v_i, v_j] = sum_k v[k] v_k` with `i < j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub v: Vec<f64>,
}

impl Bracket {
    pub fn new(i: usize, j: usize, v: Vec<f64>) -> Self {
        Self { i, j, v }
    }
}

/// Build a Lie algebra from its nonzero brackets on pairs `i < j`.
///
/// Antisymmetry is filled in; the Jacobi identity is not checked.
pub fn make_algebra(dim: usize, brackets: &[Bracket]) -> Result<LieAlgebra> {
    if !(1..=4).contains(&dim) {
        return Err(Error::UnsupportedDimension(dim, "1..=4"));
    }
    let mut c = vec![0.0; dim * dim * dim];
    let mut seen = vec![false; dim * dim];
    for b in brackets {
        if b.i >= dim || b.j >= dim {
            return Err(Error::IndexOutOfRange { i: b.i, j: b.j, dim });
        }
        if b.i >= b.j {
            return Err(Error::UnorderedPair { i: b.i, j: b.j });
        }
        if b.v.len() != dim {
            return Err(Error::LengthMismatch { expected: dim, got: b.v.len() });
        }
        if std::mem::replace(&mut seen[b.i * dim + b.j], true) {
            return Err(Error::DuplicatePair { i: b.i, j: b.j });
        }
        for (k, val) in b.v.iter().enumerate() {
            c[(k * dim + b.i) * dim + b.j] = *val;
            c[(k * dim + b.j) * dim + b.i] = -*val;
        }
    }
    Ok(LieAlgebra { dim, c, label: None })
}

impl LieAlgebra {
    /// Build from a full rank-3 array `c[k][i][j]` (flattened row-major).
    /// The array is antisymmetrised in `(i, j)`.
    pub fn from_constants(dim: usize, c: &[f64]) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(Error::LengthMismatch { expected: dim * dim * dim, got: c.len() });
        }
        let mut out = vec![0.0; c.len()];
        for k in 0..dim {
            for i in 0..dim {
                for j in 0..dim {
                    let a = c[(k * dim + i) * dim + j];
                    let b = c[(k * dim + j) * dim + i];
                    out[(k * dim + i) * dim + j] = 0.5 * (a - b);
                }
            }
        }
        Ok(Self { dim, c: out, label: None })
    }

    /// Abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        Self { dim, c: vec![0.0; dim * dim * dim], label: Some("abelian".into()) }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Structure constant `c[k][i][j]`.
    #[inline]
    pub fn structure(&self, k: usize, i: usize, j: usize) -> f64 {
        self.c[(k * self.dim + i) * self.dim + j]
    }

    pub fn constants(&self) -> &[f64] {
        &self.c
    }

    /// Nonzero brackets on pairs `i < j`.
    pub fn brackets(&self) -> Vec<Bracket> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let v: Vec<f64> = (0..n).map(|k| self.structure(k, i, j)).collect();
                if v.iter().any(|x| *x != 0.0) {
                    out.push(Bracket { i, j, v });
                }
            }
        }
        out
    }

    /// `[x, y]` for coordinate vectors in the defining basis.
    pub fn bracket(&self, x: &RVec, y: &RVec) -> RVec {
        let n = self.dim;
        RVec::from_fn(n, |k, _| {
            let mut s = 0.0;
            for i in 0..n {
                if x[i] == 0.0 {
                    continue;
                }
                for j in 0..n {
                    s += x[i] * y[j] * self.structure(k, i, j);
                }
            }
            s
        })
    }

    /// `[v_i, v_j]` as a coordinate vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> RVec {
        RVec::from_fn(self.dim, |k, _| self.structure(k, i, j))
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(|v| *v == 0.0)
    }

    /// Largest infinity-norm of the cyclic Jacobi sum over basis triples.
    pub fn check_jacobi(&self) -> f64 {
        let n = self.dim;
        let e = |i: usize| RVec::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 });
        let mut worst = 0.0_f64;
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    let (x, y, z) = (e(a), e(b), e(d));
                    let s = self.bracket(&x, &self.bracket(&y, &z))
                        + self.bracket(&y, &self.bracket(&z, &x))
                        + self.bracket(&z, &self.bracket(&x, &y));
                    worst = worst.max(s.amax());
                }
            }
        }
        worst
    }

    /// Matrix of `ad(x) = [x, .]` in the defining basis.
    pub fn adjoint(&self, x: &RVec) -> RMat {
        let n = self.dim;
        RMat::from_fn(n, n, |k, j| (0..n).map(|i| x[i] * self.structure(k, i, j)).sum())
    }

    fn adjoint_basis(&self, i: usize) -> RMat {
        let n = self.dim;
        RMat::from_fn(n, n, |k, j| self.structure(k, i, j))
    }

    /// Killing form `B[i][j] = tr(ad(v_i) ad(v_j))`.
    pub fn killing_form(&self) -> RMat {
        let n = self.dim;
        let ads: Vec<RMat> = (0..n).map(|i| self.adjoint_basis(i)).collect();
        let mut b = RMat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = (&ads[i] * &ads[j]).trace();
                b[(i, j)] = v;
                b[(j, i)] = v;
            }
        }
        b
    }

    /// The linear form `x -> tr(ad(x))` in coordinates.
    pub fn trace_form(&self) -> RVec {
        RVec::from_fn(self.dim, |i, _| self.adjoint_basis(i).trace())
    }

    pub fn is_unimodular(&self) -> bool {
        self.trace_form().iter().all(|t| t.abs() <= 1e-12)
    }

    /// Matrix whose columns are `[v_i, v_j]`, `i < j`.
    fn bracket_span(&self) -> RMat {
        let n = self.dim;
        let mut cols = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                cols.push(self.basis_bracket(i, j));
            }
        }
        if cols.is_empty() {
            RMat::zeros(n, 0)
        } else {
            RMat::from_columns(&cols)
        }
    }

    /// Dimension of the derived algebra `[g, g]`.
    pub fn derived_dim(&self) -> usize {
        linalg::rank(&self.bracket_span(), RANK_TOL)
    }

    /// True when the lower central series reaches zero within `dim` steps.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.dim;
        // current term of the lower central series, as a column span
        let mut span = RMat::identity(n, n);
        for _ in 0..=n {
            if linalg::rank(&span, RANK_TOL) == 0 {
                return true;
            }
            let mut cols = Vec::new();
            for i in 0..n {
                let e = RVec::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 });
                for col in span.column_iter() {
                    cols.push(self.bracket(&e, &col.into_owned()));
                }
            }
            span = RMat::from_columns(&cols);
        }
        linalg::rank(&span, RANK_TOL) == 0
    }

    /// Structure constants in the basis `w_i = sum_a P[a][i] v_a`.
    pub fn change_basis(&self, p: &RMat) -> Result<Self> {
        let n = self.dim;
        if p.nrows() != n || p.ncols() != n {
            return Err(Error::LengthMismatch { expected: n, got: p.nrows() });
        }
        let det = p.determinant();
        if det.abs() <= 1e-12 {
            return Err(Error::Singular(det.abs()));
        }
        let pinv = p.clone().try_inverse().ok_or(Error::Singular(det.abs()))?;
        let mut c = vec![0.0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                let br = self.bracket(&p.column(i).into_owned(), &p.column(j).into_owned());
                let coords = &pinv * br;
                for k in 0..n {
                    c[(k * n + i) * n + j] = coords[k];
                }
            }
        }
        Ok(Self { dim: n, c, label: self.label.clone() })
    }

    /// Subalgebra spanned by the columns of `basis`, with structure constants
    /// in that basis. Fails if the span is not closed under the bracket.
    pub fn subalgebra(&self, basis: &RMat) -> Result<Self> {
        let m = basis.ncols();
        if linalg::rank(basis, RANK_TOL) != m {
            return Err(Error::DependentSpan);
        }
        let mut c = vec![0.0; m * m * m];
        for i in 0..m {
            for j in 0..m {
                let br = self.bracket(&basis.column(i).into_owned(), &basis.column(j).into_owned());
                let (coords, resid) = linalg::coordinates(basis, &br);
                if resid > 1e-9 * (1.0 + br.amax()) {
                    return Err(Error::InvalidPresentation(
                        "span is not closed under the bracket".into(),
                    ));
                }
                for k in 0..m {
                    c[(k * m + i) * m + j] = coords[k];
                }
            }
        }
        Ok(Self { dim: m, c, label: None })
    }

    /// Basis (columns) of the unimodular kernel `ker(x -> tr ad(x))`.
    pub fn unimodular_kernel(&self) -> RMat {
        let tau = self.trace_form();
        if tau.amax() <= 1e-12 {
            return RMat::identity(self.dim, self.dim);
        }
        linalg::nullspace(&RMat::from_row_slice(1, self.dim, tau.as_slice()), RANK_TOL)
    }
}

/// A codimension-one Abelian ideal `h` with a transversal vector `v_n` and
/// the derivation `D = ad(v_n)|_h` in the ideal basis.
#[derive(Clone, Debug)]
pub struct AlmostAbelianPresentation {
    /// Columns span `h` (defining-basis coordinates).
    pub ideal_basis: RMat,
    pub transversal: RVec,
    /// `D[k][i]`: `[v_n, h_i] = sum_k D[k][i] h_k`.
    pub d: RMat,
}

impl AlmostAbelianPresentation {
    /// Build the presentation for a given ideal basis and transversal, computing
    /// `D` and checking both invariants.
    pub fn new(alg: &LieAlgebra, ideal_basis: RMat, transversal: RVec) -> Result<Self> {
        let n = alg.dim();
        if ideal_basis.nrows() != n || ideal_basis.ncols() + 1 != n {
            return Err(Error::InvalidPresentation("ideal basis must have n-1 columns".into()));
        }
        let mut full = ideal_basis.clone().insert_column(n - 1, 0.0);
        full.set_column(n - 1, &transversal);
        if linalg::rank(&full, RANK_TOL) != n {
            return Err(Error::InvalidPresentation("transversal lies in the ideal".into()));
        }
        let scale = 1.0 + linalg::max_abs(&RMat::from_column_slice(alg.c.len(), 1, &alg.c));
        for a in 0..(n - 1) {
            for b in 0..(n - 1) {
                let br = alg.bracket(
                    &ideal_basis.column(a).into_owned(),
                    &ideal_basis.column(b).into_owned(),
                );
                if br.amax() > 1e-9 * scale {
                    return Err(Error::InvalidPresentation("ideal is not Abelian".into()));
                }
            }
        }
        let mut d = RMat::zeros(n - 1, n - 1);
        for i in 0..(n - 1) {
            let br = alg.bracket(&transversal, &ideal_basis.column(i).into_owned());
            let (coords, resid) = linalg::coordinates(&ideal_basis, &br);
            if resid > 1e-9 * scale {
                return Err(Error::InvalidPresentation("ad(v_n) does not preserve h".into()));
            }
            d.set_column(i, &coords);
        }
        Ok(Self { ideal_basis, transversal, d })
    }

    pub fn trace(&self) -> f64 {
        self.d.trace()
    }

    /// Basis of the whole algebra: ideal basis followed by the transversal.
    pub fn adapted_basis(&self) -> RMat {
        let n = self.transversal.len();
        let mut full = self.ideal_basis.clone().insert_column(n - 1, 0.0);
        full.set_column(n - 1, &self.transversal);
        full
    }
}

/// Result of the codimension-one Abelian ideal search.
#[derive(Clone, Debug)]
pub struct AlmostAbelianDetection {
    pub presentations: Vec<AlmostAbelianPresentation>,
    /// Set when the Abelian ideals form a positive-dimensional family; only
    /// one representative is returned in that case.
    pub family: bool,
}

impl AlmostAbelianDetection {
    pub fn is_almost_abelian(&self) -> bool {
        !self.presentations.is_empty()
    }
}

/// Find the codimension-one Abelian ideals of `alg`.
///
/// A hyperplane `ker(phi)` is an Abelian ideal iff `phi` annihilates
/// `[g, g]` and `phi ^ C = 0`, where `C` is the bracket read as a vector-valued
/// 2-form. Both conditions are linear in `phi`, so the solution set is a
/// linear subspace of `g*`.
pub fn detect_almost_abelian(alg: &LieAlgebra) -> AlmostAbelianDetection {
    let n = alg.dim();
    if alg.is_abelian() || n < 2 {
        return AlmostAbelianDetection { presentations: vec![], family: false };
    }
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            rows.push((0..n).map(|k| alg.structure(k, i, j)).collect());
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            for d in (b + 1)..n {
                for k in 0..n {
                    let mut row = vec![0.0; n];
                    row[a] += alg.structure(k, b, d);
                    row[b] += alg.structure(k, d, a);
                    row[d] += alg.structure(k, a, b);
                    rows.push(row);
                }
            }
        }
    }
    let m = RMat::from_fn(rows.len(), n, |r, c| rows[r][c]);
    let sol = linalg::nullspace(&m, RANK_TOL);
    if sol.ncols() == 0 {
        return AlmostAbelianDetection { presentations: vec![], family: false };
    }
    let family = sol.ncols() > 1;
    // prefer a coordinate functional when one lies in the solution space
    let proj = &sol * sol.transpose();
    let phi = (0..n)
        .find(|&k| (1.0 - proj[(k, k)]).abs() < 1e-9)
        .map(|k| RVec::from_fn(n, |i, _| if i == k { 1.0 } else { 0.0 }))
        .unwrap_or_else(|| {
            let mut v = sol.column(0).into_owned();
            linalg::normalize_sign(&mut v);
            v
        });
    match presentation_from_functional(alg, &phi) {
        Ok(p) => AlmostAbelianDetection { presentations: vec![p], family },
        Err(_) => AlmostAbelianDetection { presentations: vec![], family: false },
    }
}

fn presentation_from_functional(alg: &LieAlgebra, phi: &RVec) -> Result<AlmostAbelianPresentation> {
    let n = alg.dim();
    let p = phi.iamax();
    let mut cols = Vec::with_capacity(n - 1);
    for i in 0..n {
        if i == p {
            continue;
        }
        let mut v = RVec::zeros(n);
        v[i] = 1.0;
        v[p] = -phi[i] / phi[p];
        cols.push(v);
    }
    let ideal = RMat::from_columns(&cols);
    let mut transversal = RVec::zeros(n);
    transversal[p] = 1.0 / phi[p];
    AlmostAbelianPresentation::new(alg, ideal, transversal)
}

/// Names of the algebras in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraName {
    Abelian,
    Heis3,
    E2,
    E11,
    Su2,
    Sl2,
    R2RtimesId,
    /// `g(c) = R^2 x_D R` with `c = 4 det(D) / tr(D)^2`.
    G(f64),
    AffR,
    D41,
    Unknown,
}

impl std::fmt::Display for AlgebraName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlgebraName::Abelian => write!(f, "abelian"),
            AlgebraName::Heis3 => write!(f, "heis3"),
            AlgebraName::E2 => write!(f, "e2"),
            AlgebraName::E11 => write!(f, "e11"),
            AlgebraName::Su2 => write!(f, "su2"),
            AlgebraName::Sl2 => write!(f, "sl2"),
            AlgebraName::R2RtimesId => write!(f, "r2_rtimes_id"),
            AlgebraName::G(c) => write!(f, "g({})", c),
            AlgebraName::AffR => write!(f, "aff_r"),
            AlgebraName::D41 => write!(f, "d41"),
            AlgebraName::Unknown => write!(f, "unknown"),
        }
    }
}

impl AlgebraName {
    /// Same catalog entry, comparing `g(c)` parameters with a tolerance.
    pub fn matches(&self, other: &AlgebraName, tol: f64) -> bool {
        match (self, other) {
            (AlgebraName::G(a), AlgebraName::G(b)) => (a - b).abs() <= tol * (1.0 + a.abs()),
            _ => self == other,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraIdentity {
    pub name: AlgebraName,
    pub unimodular: bool,
    pub killing_signature: Signature,
    pub derived_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<String>,
}

/// Identify a three-dimensional real Lie algebra.
pub fn identify_3d(alg: &LieAlgebra) -> AlgebraIdentity {
    let killing = alg.killing_form();
    let killing_signature = forms::signature_of(&killing, forms::SIGNATURE_TOL);
    let derived_dim = alg.derived_dim();
    let unimodular = alg.is_unimodular();
    let mut out = AlgebraIdentity {
        name: AlgebraName::Unknown,
        unimodular,
        killing_signature,
        derived_dim,
        diagnostics: None,
    };
    if alg.dim() != 3 {
        out.diagnostics = Some(format!("dimension {} is not 3", alg.dim()));
        return out;
    }
    let jac = alg.check_jacobi();
    if jac > JACOBI_TOL {
        out.diagnostics = Some(format!("Jacobi residual {jac:e}"));
        return out;
    }
    match derived_dim {
        0 => out.name = AlgebraName::Abelian,
        3 => {
            out.name = match (killing_signature.p, killing_signature.q, killing_signature.r) {
                (0, 3, 0) => AlgebraName::Su2,
                (2, 1, 0) => AlgebraName::Sl2,
                _ => {
                    out.diagnostics = Some(format!(
                        "perfect algebra with Killing signature {killing_signature}"
                    ));
                    AlgebraName::Unknown
                }
            }
        }
        _ => {
            let det = detect_almost_abelian(alg);
            let Some(p) = det.presentations.first() else {
                out.diagnostics = Some("no codimension-one Abelian ideal".into());
                return out;
            };
            out.name = classify_derivation(&p.d);
        }
    }
    out
}

/// Isomorphism class of `R^2 x_D R` from the 2x2 derivation `D`.
fn classify_derivation(d: &RMat) -> AlgebraName {
    let scale = linalg::max_abs(d);
    if scale == 0.0 {
        return AlgebraName::Abelian;
    }
    let tol = 1e-9 * scale;
    let tr = d.trace();
    let det = d.determinant();
    if tr.abs() <= tol {
        if det.abs() <= tol * scale {
            AlgebraName::Heis3
        } else if det < 0.0 {
            AlgebraName::E11
        } else {
            AlgebraName::E2
        }
    } else {
        let half = 0.5 * tr;
        let off = (d[(0, 1)].abs()).max(d[(1, 0)].abs());
        let scalar = off <= tol && (d[(0, 0)] - half).abs() <= tol && (d[(1, 1)] - half).abs() <= tol;
        if scalar {
            AlgebraName::R2RtimesId
        } else {
            AlgebraName::G(4.0 * det / (tr * tr))
        }
    }
}

fn pair(alg: &mut Vec<Bracket>, n: usize, a: usize, b: usize, v: &[f64]) {
    // [v_a, v_b] = v, normalised to a < b
    let (i, j, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut vec = vec![0.0; n];
    for (k, x) in v.iter().enumerate() {
        vec[k] = sign * x;
    }
    alg.push(Bracket::new(i, j, vec));
}

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;

/// Algebras exactly as printed in the bracket columns of the classification
/// tables, in the basis `{x, y, z}` (indices 0, 1, 2).
///
/// Recognised names: `abelian`, `heis3`, `su2`, `sl2` (aliases
/// `sl2_riemannian_basis`, `sl2_lorentzian_basis`), `e2`, `e11` (alias
/// `e11_riemannian`), `e11_lorentzian`, `r2_rtimes_id`, `g1` (Jordan block
/// presentation), `g` (dispatches on `c`), `g_gt1` (`c >= 1`), `g_lt1`
/// (`c < 1`), `aff_r`, `d41`.
pub fn catalog_algebra(name: &str, params: &[f64]) -> Result<LieAlgebra> {
    let mut b = Vec::new();
    let n3 = 3;
    let param = |what: &str| -> Result<f64> {
        params
            .first()
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("{what} requires parameter c")))
    };
    let (dim, label) = match name {
        "abelian" => {
            let dim = params.first().map(|d| *d as usize).unwrap_or(3);
            return Ok(LieAlgebra::abelian(dim));
        }
        "heis3" => {
            pair(&mut b, n3, X, Y, &[0.0, 0.0, 1.0]);
            (3, "heis3".to_string())
        }
        "su2" => {
            pair(&mut b, n3, X, Y, &[0.0, 0.0, 2.0]);
            pair(&mut b, n3, Z, X, &[0.0, 2.0, 0.0]);
            pair(&mut b, n3, Z, Y, &[-2.0, 0.0, 0.0]);
            (3, "su2".to_string())
        }
        "sl2" | "sl2_riemannian_basis" | "sl2_lorentzian_basis" => {
            pair(&mut b, n3, X, Y, &[0.0, 0.0, 2.0]);
            pair(&mut b, n3, Z, X, &[0.0, 2.0, 0.0]);
            pair(&mut b, n3, Z, Y, &[2.0, 0.0, 0.0]);
            (3, "sl2".to_string())
        }
        "e2" => {
            pair(&mut b, n3, X, Y, &[0.0, 0.0, 1.0]);
            pair(&mut b, n3, Z, X, &[0.0, 1.0, 0.0]);
            (3, "e2".to_string())
        }
        "e11" | "e11_riemannian" => {
            pair(&mut b, n3, Z, X, &[1.0, 0.0, 0.0]);
            pair(&mut b, n3, Z, Y, &[0.0, -1.0, 0.0]);
            (3, "e11".to_string())
        }
        "e11_lorentzian" => {
            pair(&mut b, n3, X, Y, &[0.0, 1.0, 0.0]);
            pair(&mut b, n3, Z, X, &[0.0, 0.0, 1.0]);
            (3, "e11_lorentzian".to_string())
        }
        "r2_rtimes_id" => {
            pair(&mut b, n3, Z, X, &[1.0, 0.0, 0.0]);
            pair(&mut b, n3, Z, Y, &[0.0, 1.0, 0.0]);
            (3, "r2_rtimes_id".to_string())
        }
        "g1" => {
            pair(&mut b, n3, Z, X, &[1.0, 0.0, 0.0]);
            pair(&mut b, n3, Z, Y, &[1.0, 1.0, 0.0]);
            (3, "g(1)".to_string())
        }
        "g" => {
            let c = param("g")?;
            return if c > 1.0 {
                catalog_algebra("g_gt1", params)
            } else if c < 1.0 {
                catalog_algebra("g_lt1", params)
            } else {
                catalog_algebra("g1", &[])
            };
        }
        "g_gt1" => {
            let c = param("g_gt1")?;
            if c.is_nan() || c < 1.0 {
                return Err(Error::InvalidParameter(format!("g_gt1 requires c >= 1, got {c}")));
            }
            pair(&mut b, n3, Z, X, &[0.0, 1.0, 0.0]);
            pair(&mut b, n3, Z, Y, &[-c, 2.0, 0.0]);
            (3, format!("g({c})"))
        }
        "g_lt1" => {
            let c = param("g_lt1")?;
            if c.is_nan() || c >= 1.0 {
                return Err(Error::InvalidParameter(format!("g_lt1 requires c < 1, got {c}")));
            }
            let w = (1.0 - c).sqrt();
            pair(&mut b, n3, Z, X, &[1.0 + w, 0.0, 0.0]);
            pair(&mut b, n3, Z, Y, &[0.0, 1.0 - w, 0.0]);
            (3, format!("g({c})"))
        }
        "aff_r" => {
            pair(&mut b, 2, 0, 1, &[1.0, 0.0]);
            (2, "aff_r".to_string())
        }
        "d41" => {
            // de1 = e1^e4 + 4 e2^e3, de2 = e2^e4 with de(x, y) = -e([x, y])
            pair(&mut b, 4, 0, 3, &[-1.0, 0.0, 0.0, 0.0]);
            pair(&mut b, 4, 1, 2, &[-4.0, 0.0, 0.0, 0.0]);
            pair(&mut b, 4, 1, 3, &[0.0, -1.0, 0.0, 0.0]);
            (4, "d41".to_string())
        }
        other => return Err(Error::UnknownName(other.to_string())),
    };
    Ok(make_algebra(dim, &b)?.with_label(label))
}
