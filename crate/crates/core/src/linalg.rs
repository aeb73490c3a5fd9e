//! Small dense helpers shared by the modules.

use crate::{RMat, RVec};

/// Relative singular-value threshold used for rank decisions.
pub(crate) const RANK_TOL: f64 = 1e-9;

pub(crate) fn max_abs(m: &RMat) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

/// Numerical rank of `m`: singular values above `tol * sigma_max`.
pub(crate) fn rank(m: &RMat, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > tol * smax).count()
}

/// Orthonormal basis (columns) of the right null space of `m`.
pub(crate) fn nullspace(m: &RMat, tol: f64) -> RMat {
    let n = m.ncols();
    if m.nrows() == 0 {
        return RMat::identity(n, n);
    }
    // pad to square so the SVD returns a full V
    let rows = m.nrows().max(n);
    let mut a = RMat::zeros(rows, n);
    a.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cols: Vec<RVec> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| smax == 0.0 || **s <= tol * smax)
        .map(|(k, _)| v_t.row(k).transpose())
        .collect();
    if cols.is_empty() {
        RMat::zeros(n, 0)
    } else {
        RMat::from_columns(&cols)
    }
}

/// Flip the sign of `v` so that its first entry of significant size is positive.
pub(crate) fn normalize_sign(v: &mut RVec) {
    let scale = v.amax();
    if let Some(x) = v.iter().find(|x| x.abs() > 1e-9 * scale) {
        if *x < 0.0 {
            v.neg_mut();
        }
    }
}

/// Least-squares coordinates of `target` in the column basis `basis`, with
/// the residual norm (infinity norm) of the fit.
pub(crate) fn coordinates(basis: &RMat, target: &RVec) -> (RVec, f64) {
    let pinv = basis
        .clone()
        .pseudo_inverse(1e-13)
        .expect("pseudo-inverse with non-negative epsilon");
    let coords = &pinv * target;
    let resid = (basis * &coords - target).amax();
    (coords, resid)
}
