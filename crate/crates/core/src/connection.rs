//! Levi-Civita and spin connections of left-invariant metrics, and Ricci
//! curvature by two independent routes.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::forms::{self, orthonormal_frame, Frame, MetricForm, Signature};
use crate::linalg;
use crate::{CMat, RMat, RVec};

/// `Gamma[k][i][j] = g(nabla_{e_k} e_i, e_j)` on an orthonormal frame.
#[derive(Clone, Debug)]
pub struct ConnectionCoefficients {
    n: usize,
    gamma: Vec<f64>,
    eps: Vec<i8>,
}

impl ConnectionCoefficients {
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.gamma[(k * self.n + i) * self.n + j]
    }

    /// `max |Gamma[k][i][j] + Gamma[k][j][i]|`; zero for a metric connection.
    pub fn compatibility_residual(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0_f64;
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    worst = worst.max((self.get(k, i, j) + self.get(k, j, i)).abs());
                }
            }
        }
        worst
    }

    /// Matrix of `nabla_{e_k}` acting on frame coordinates.
    fn covariant_matrix(&self, k: usize) -> RMat {
        let n = self.n;
        RMat::from_fn(n, n, |m, c| f64::from(self.eps[m]) * self.get(k, c, m))
    }
}

/// Structure constants of `alg` in the frame basis.
pub fn frame_algebra(alg: &LieAlgebra, frame: &Frame) -> Result<LieAlgebra> {
    alg.change_basis(&frame.b)
}

/// Koszul formula on the frame.
pub fn levi_civita(alg: &LieAlgebra, frame: &Frame) -> Result<ConnectionCoefficients> {
    let f = frame_algebra(alg, frame)?;
    Ok(levi_civita_frame(&f, &frame.eps))
}

/// Koszul formula for an algebra already written in an orthonormal frame.
pub fn levi_civita_frame(f: &LieAlgebra, eps: &[i8]) -> ConnectionCoefficients {
    let n = f.dim();
    let e = |m: usize| f64::from(eps[m]);
    // g([e_a, e_b], e_m)
    let s = |a: usize, b: usize, m: usize| e(m) * f.structure(m, a, b);
    let mut gamma = vec![0.0; n * n * n];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                gamma[(k * n + i) * n + j] = 0.5 * (s(k, i, j) - s(i, j, k) + s(j, k, i));
            }
        }
    }
    ConnectionCoefficients { n, gamma, eps: eps.to_vec() }
}

/// `Omega_k = 1/2 sum_{i<j} eps_i eps_j Gamma[k][i][j] gamma_i gamma_j`.
pub fn spin_connection(conn: &ConnectionCoefficients, rep: &CliffordRep) -> Result<Vec<CMat>> {
    if rep.eps != conn.eps {
        return Err(Error::PatternMismatch { rep: rep.eps.clone(), frame: conn.eps.clone() });
    }
    let n = conn.n;
    let d = rep.spinor_dim();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut om = CMat::zeros(d, d);
        for i in 0..n {
            for j in (i + 1)..n {
                let c = 0.5 * f64::from(conn.eps[i] * conn.eps[j]) * conn.get(k, i, j);
                if c != 0.0 {
                    om += &rep.gamma[i] * &rep.gamma[j] * Complex::from(c);
                }
            }
        }
        out.push(om);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurvatureReport {
    /// Ricci tensor in the defining basis.
    pub ricci: RMat,
    pub scalar: f64,
    pub ricci_signature: Signature,
}

impl CurvatureReport {
    fn from_ricci(ricci: RMat, g: &MetricForm) -> Result<Self> {
        let ginv = g
            .matrix()
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Degenerate("metric is not invertible".into()))?;
        let ricci = (&ricci + ricci.transpose()) * 0.5;
        let scalar = (ginv * &ricci).trace();
        let ricci_signature = ricci_signature(&ricci);
        Ok(Self { ricci, scalar, ricci_signature })
    }
}

/// Signature of a Ricci matrix with an absolute threshold scaled by its size.
pub fn ricci_signature(ricci: &RMat) -> Signature {
    let tol = forms::SIGNATURE_TOL * linalg::max_abs(ricci).max(1.0);
    forms::signature_abs(ricci, tol)
}

/// Ricci curvature of the frame algebra, in frame components.
fn ricci_frame(f: &LieAlgebra, conn: &ConnectionCoefficients) -> RMat {
    let n = f.dim();
    let nabla: Vec<RMat> = (0..n).map(|k| conn.covariant_matrix(k)).collect();
    let mut ric = RMat::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            // R(e_a, e_b) = [N_a, N_b] - N_{[e_a, e_b]}
            let mut r = &nabla[a] * &nabla[b] - &nabla[b] * &nabla[a];
            for (m, nm) in nabla.iter().enumerate() {
                let c = f.structure(m, a, b);
                if c != 0.0 {
                    r -= nm * c;
                }
            }
            for c in 0..n {
                ric[(b, c)] += r[(a, c)];
            }
        }
    }
    ric
}

/// Ricci tensor from the curvature of the Koszul connection.
pub fn ricci_direct(alg: &LieAlgebra, g: &MetricForm) -> Result<CurvatureReport> {
    let frame = orthonormal_frame(g)?;
    ricci_direct_with(alg, g, &frame)
}

/// As [`ricci_direct`], on a caller-supplied orthonormal frame.
pub fn ricci_direct_with(alg: &LieAlgebra, g: &MetricForm, frame: &Frame) -> Result<CurvatureReport> {
    let f = frame_algebra(alg, frame)?;
    let conn = levi_civita_frame(&f, &frame.eps);
    let ric_f = ricci_frame(&f, &conn);
    let binv = frame
        .b
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Degenerate("frame is singular".into()))?;
    let ric = binv.transpose() * ric_f * binv;
    CurvatureReport::from_ricci(ric, g)
}

/// Ricci tensor from the closed formula
/// `Ric(x, x) = -1/2 sum eps_i |[x, e_i]|^2 + 1/4 sum eps_i eps_j g([e_i, e_j], x)^2
///  - 1/2 B(x, x) - g([z, x], x)` with `g(z, .) = tr ad(.)`, polarised.
pub fn ricci_structural(alg: &LieAlgebra, g: &MetricForm) -> Result<CurvatureReport> {
    let n = alg.dim();
    let frame = orthonormal_frame(g)?;
    let gm = g.matrix();
    let ginv = gm
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Degenerate("metric is not invertible".into()))?;
    let z = &ginv * alg.trace_form();
    let killing = alg.killing_form();
    let e: Vec<RVec> = (0..n).map(|i| frame.b.column(i).into_owned()).collect();
    let basis: Vec<RVec> =
        (0..n).map(|i| RVec::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 })).collect();

    // ad_x e_i for each basis x and frame e_i
    let ad_e: Vec<Vec<RVec>> =
        basis.iter().map(|x| e.iter().map(|ei| alg.bracket(x, ei)).collect()).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let w = f64::from(frame.eps[i] * frame.eps[j]);
            pairs.push((w, gm * alg.bracket(&e[i], &e[j])));
        }
    }
    let zx: Vec<RVec> = basis.iter().map(|x| gm * alg.bracket(&z, x)).collect();

    let mut ric = RMat::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let mut v = 0.0;
            for (i, (xa, xb)) in ad_e[a].iter().zip(&ad_e[b]).enumerate() {
                v -= 0.5 * frame.sign(i) * g.inner(xa, xb);
            }
            for (w, lowered) in &pairs {
                v += 0.5 * w * lowered[a] * lowered[b];
            }
            v -= 0.5 * killing[(a, b)];
            v -= 0.5 * (zx[a][b] + zx[b][a]);
            ric[(a, b)] = v;
            ric[(b, a)] = v;
        }
    }
    CurvatureReport::from_ricci(ric, g)
}

pub fn scalar_curvature(alg: &LieAlgebra, g: &MetricForm) -> Result<f64> {
    Ok(ricci_direct(alg, g)?.scalar)
}
