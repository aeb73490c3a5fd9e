//! JSON formats.
//!
//! Algebra: `{"dim": 3, "brackets": [{"i": 0, "j": 1, "v": [0, 0, 1]}]}`,
//! 0-based indices with `i < j`, omitted pairs are zero.
//!
//! Metric: `{"dim": 3, "g": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}`, row-major and
//! exactly symmetric.

use serde::{Deserialize, Serialize};

use crate::algebra::{make_algebra, Bracket, LieAlgebra};
use crate::error::{Error, Result};
use crate::forms::MetricForm;
use crate::RMat;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<Bracket>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetricJson {
    pub dim: usize,
    pub g: Vec<Vec<f64>>,
}

pub fn parse_algebra(text: &str) -> Result<LieAlgebra> {
    let raw: AlgebraJson = serde_json::from_str(text)?;
    let alg = make_algebra(raw.dim, &raw.brackets)?;
    Ok(match raw.label {
        Some(l) => alg.with_label(l),
        None => alg,
    })
}

pub fn parse_metric(text: &str) -> Result<MetricForm> {
    let raw: MetricJson = serde_json::from_str(text)?;
    matrix_from_rows(raw.dim, &raw.g).and_then(MetricForm::new)
}

/// Square matrix from nested rows, checking the stated dimension.
pub fn matrix_from_rows(dim: usize, rows: &[Vec<f64>]) -> Result<RMat> {
    if rows.len() != dim {
        return Err(Error::LengthMismatch { expected: dim, got: rows.len() });
    }
    for r in rows {
        if r.len() != dim {
            return Err(Error::LengthMismatch { expected: dim, got: r.len() });
        }
    }
    Ok(RMat::from_fn(dim, dim, |i, j| rows[i][j]))
}

pub fn algebra_to_json(alg: &LieAlgebra) -> AlgebraJson {
    AlgebraJson { dim: alg.dim(), brackets: alg.brackets(), label: alg.label().map(str::to_string) }
}

pub fn metric_to_json(g: &MetricForm) -> MetricJson {
    let m = g.matrix();
    MetricJson { dim: g.dim(), g: (0..m.nrows()).map(|i| m.row(i).iter().cloned().collect()).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog_algebra;

    #[test]
    fn algebra_round_trip() {
        let su2 = catalog_algebra("su2", &[]).unwrap();
        let text = serde_json::to_string(&algebra_to_json(&su2)).unwrap();
        assert_eq!(parse_algebra(&text).unwrap(), su2);
    }

    #[test]
    fn heis_literal() {
        let h = parse_algebra(r#"{"dim": 3, "brackets": [{"i": 0, "j": 1, "v": [0, 0, 1]}]}"#).unwrap();
        assert_eq!(h.constants(), catalog_algebra("heis3", &[]).unwrap().constants());
    }

    #[test]
    fn metric_errors() {
        let err = parse_metric(r#"{"dim": 2, "g": [[1, 2], [3, 1]]}"#).unwrap_err();
        assert!(err.to_string().contains('1'), "{err}");
        assert!(matches!(err, Error::Asymmetric(a) if a == 1.0));
        assert!(matches!(parse_metric(r#"{"dim": 3, "g": [[1, 0], [0, 1]]}"#), Err(Error::LengthMismatch { .. })));
        assert!(matches!(parse_metric("{"), Err(Error::Parse(_))));
        let g = parse_metric(r#"{"dim": 2, "g": [[0, 1], [1, 0]]}"#).unwrap();
        let back = serde_json::to_string(&metric_to_json(&g)).unwrap();
        assert_eq!(parse_metric(&back).unwrap(), g);
    }
}
