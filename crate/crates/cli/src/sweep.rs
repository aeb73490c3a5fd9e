use std::collections::BTreeMap;

use lieharm::algebra::catalog_algebra;
use lieharm::catalog::{find_family, MetricFamily};
use lieharm::dirac::{analyze_with, AnalyzeOptions};
use lieharm::io::{parse_algebra, AlgebraJson};
use lieharm::{Error, LieAlgebra, MetricForm, RMat};
use serde::Deserialize;

use crate::format::num;
use crate::Failure;

/// A metric entry in a template: a number, or a parameter name with an
/// optional leading `-`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Num(f64),
    Sym(String),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Catalog(String),
    Inline(AlgebraJson),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    /// Catalog family id.
    #[serde(default)]
    pub family: Option<String>,
    /// Values for family parameters not being swept.
    #[serde(default)]
    pub fixed: BTreeMap<String, f64>,
    /// Metric template used when no family is given.
    #[serde(default)]
    pub metric: Option<Vec<Vec<Entry>>>,
    #[serde(default)]
    pub algebra: Option<AlgebraRef>,
    #[serde(default)]
    pub algebra_params: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Range {
    pub name: String,
    pub values: Vec<f64>,
}

/// Parse `name=a:b:step` into the inclusive grid `a, a+step, ..., <= b`.
pub fn parse_range(s: &str) -> Result<Range, String> {
    let (name, rest) = s.split_once('=').ok_or_else(|| format!("expected name=a:b:step, got '{s}'"))?;
    let parts: Vec<&str> = rest.split(':').collect();
    let [a, b, step] = parts.as_slice() else {
        return Err(format!("expected name=a:b:step, got '{s}'"));
    };
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number '{t}' in '{s}'"));
    let (a, b, step) = (parse(a)?, parse(b)?, parse(step)?);
    if step.is_nan() || step <= 0.0 || !a.is_finite() || !b.is_finite() {
        return Err(format!("step must be positive and bounds finite in '{s}'"));
    }
    let mut values = Vec::new();
    let mut k = 0usize;
    loop {
        let v = a + k as f64 * step;
        if v > b + 1e-9 * step {
            break;
        }
        values.push(v);
        k += 1;
    }
    Ok(Range { name: name.trim().to_string(), values })
}

enum Builder {
    Family(MetricFamily, Vec<String>),
    Template(LieAlgebra, Vec<Vec<Entry>>),
}

pub struct Sweep {
    builder: Builder,
    ranges: Vec<Range>,
    fixed: BTreeMap<String, f64>,
}

impl Sweep {
    pub fn new(spec: SweepSpec, algebra_file: Option<LieAlgebra>, ranges: Vec<Range>) -> Result<Self, Failure> {
        let builder = match (&spec.family, spec.metric) {
            (Some(id), None) => {
                let f = find_family(id).ok_or_else(|| Failure::usage(format!("unknown family '{id}'")))?;
                let names: Vec<String> = f.params.iter().map(|s| s.to_string()).collect();
                for n in spec.fixed.keys().chain(ranges.iter().map(|r| &r.name)) {
                    if !names.contains(n) {
                        return Err(Failure::usage(format!(
                            "family '{id}' has no parameter '{n}' (parameters: {})",
                            names.join(", ")
                        )));
                    }
                }
                for n in &names {
                    if !spec.fixed.contains_key(n) && !ranges.iter().any(|r| &r.name == n) {
                        return Err(Failure::usage(format!("parameter '{n}' is neither fixed nor swept")));
                    }
                }
                Builder::Family(f, names)
            }
            (None, Some(t)) => {
                let alg = match (algebra_file, spec.algebra) {
                    (Some(a), _) => a,
                    (None, Some(AlgebraRef::Catalog(name))) => {
                        catalog_algebra(&name, &spec.algebra_params).map_err(Failure::from)?
                    }
                    (None, Some(AlgebraRef::Inline(j))) => {
                        parse_algebra(&serde_json::to_string(&j).expect("serializable")).map_err(Failure::from)?
                    }
                    (None, None) => return Err(Failure::usage("metric template needs an algebra".into())),
                };
                let n = alg.dim();
                if t.len() != n || t.iter().any(|r| r.len() != n) {
                    return Err(Failure::usage(format!("metric template must be {n}x{n}")));
                }
                for row in &t {
                    for e in row {
                        if let Entry::Sym(s) = e {
                            let name = s.trim_start_matches('-');
                            if !spec.fixed.contains_key(name) && !ranges.iter().any(|r| r.name == name) {
                                return Err(Failure::usage(format!("parameter '{name}' is neither fixed nor swept")));
                            }
                        }
                    }
                }
                Builder::Template(alg, t)
            }
            _ => return Err(Failure::usage("sweep spec needs exactly one of 'family' or 'metric'".into())),
        };
        Ok(Self { builder, ranges, fixed: spec.fixed })
    }

    pub fn header(&self) -> Vec<String> {
        let mut h: Vec<String> = self.ranges.iter().map(|r| r.name.clone()).collect();
        h.extend(["kernel_dim", "ricci_signature", "scalar"].map(String::from));
        h
    }

    /// Grid points in row-major order, first range slowest.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut out = vec![Vec::new()];
        for r in &self.ranges {
            out = out
                .into_iter()
                .flat_map(|p| {
                    r.values.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(*v);
                        q
                    })
                })
                .collect();
        }
        if self.ranges.iter().any(|r| r.values.is_empty()) {
            out.clear();
        }
        out
    }

    fn values(&self, point: &[f64]) -> BTreeMap<String, f64> {
        let mut v = self.fixed.clone();
        for (r, x) in self.ranges.iter().zip(point) {
            v.insert(r.name.clone(), *x);
        }
        v
    }

    fn build(&self, point: &[f64]) -> Result<(LieAlgebra, MetricForm), Failure> {
        let vals = self.values(point);
        match &self.builder {
            Builder::Family(f, names) => {
                let p: Vec<f64> = names.iter().map(|n| vals[n]).collect();
                let a = f.algebra(&p).map_err(Failure::from)?;
                let g = f.metric(&p).map_err(Failure::from)?;
                Ok((a, g))
            }
            Builder::Template(a, t) => {
                let n = a.dim();
                let m = RMat::from_fn(n, n, |i, j| match &t[i][j] {
                    Entry::Num(x) => *x,
                    Entry::Sym(s) => match s.strip_prefix('-') {
                        Some(name) => -vals[name],
                        None => vals[s.as_str()],
                    },
                });
                let g = MetricForm::new(m).map_err(Failure::from)?;
                Ok((a.clone(), g))
            }
        }
    }

    /// Check every grid point against the family constraints before any
    /// output is produced.
    pub fn validate(&self) -> Result<(), Failure> {
        if let Builder::Family(f, names) = &self.builder {
            for point in self.points() {
                let vals = self.values(&point);
                let p: Vec<f64> = names.iter().map(|n| vals[n]).collect();
                f.check_params(&p).map_err(Failure::from)?;
            }
        }
        Ok(())
    }

    pub fn run(&self, opts: AnalyzeOptions) -> Result<Vec<Vec<String>>, Failure> {
        self.validate()?;
        let mut rows = Vec::new();
        for point in self.points() {
            let (a, g) = self.build(&point)?;
            let r = analyze_with(&a, &g, opts).map_err(Failure::from)?;
            let mut row: Vec<String> = point.iter().map(|v| num(*v)).collect();
            row.push(r.harmonic_dim.to_string());
            row.push(r.ricci_signature.to_string());
            row.push(num(r.scalar));
            rows.push(row);
        }
        Ok(rows)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Jacobi(_) => 3,
            Error::Degenerate(_) | Error::Singular(_) => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}
