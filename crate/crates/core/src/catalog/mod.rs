//! Parametrized metric families from the classification tables and the
//! harness that recomputes them.

mod families;
mod reproduce;

pub use families::{
    all_families, approx, families, find_family, Group, KernelSource, MetricFamily, Params,
};
pub use reproduce::{
    evaluate, reproduce, reproduce_groups, reproduce_with, CoverageEntry, RegimeHit, ReproductionReport, ReproductionRow,
    ROUTE_TOL, RICCI_TOL,
};

use crate::error::{Error, Result};

/// Expected harmonicity of family `id` at `params`.
pub fn expected_harmonic(id: &str, params: &[f64]) -> Result<bool> {
    find_family(id).ok_or_else(|| Error::UnknownName(id.to_string()))?.expected_harmonic(params)
}
