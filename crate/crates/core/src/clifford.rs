//! Complex irreducible representations of `Cl(p, q)` for `n <= 4`.
//!
//! Relations are `gamma_i gamma_j + gamma_j gamma_i = -2 eps_i delta_ij`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::exterior::{indices_of, Form};
use crate::{CMat, C64};

/// Where the gamma matrices came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepSource {
    /// One of the fixed displays for `(+,+,+)`, `(+,+,-)`, `(+,-,+)`, `(+,+,+,+)`.
    Fixed,
    /// All-positive base with `gamma_k -> i gamma_k` on negative directions.
    Generic,
}

/// Which of the two inequivalent irreducibles to use in odd dimension.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IrrepChoice {
    #[default]
    Default,
    /// `gamma_n -> -gamma_n`.
    Opposite,
}

#[derive(Clone, Debug)]
pub struct CliffordRep {
    pub n: usize,
    pub eps: Vec<i8>,
    pub gamma: Vec<CMat>,
    pub source: RepSource,
}

const O: C64 = Complex::new(0.0, 0.0);
const R1: C64 = Complex::new(1.0, 0.0);
const I1: C64 = Complex::new(0.0, 1.0);

fn m2(a: [C64; 4]) -> CMat {
    CMat::from_row_slice(2, 2, &a)
}

fn m4(a: [C64; 16]) -> CMat {
    CMat::from_row_slice(4, 4, &a)
}

fn cl3_positive() -> Vec<CMat> {
    vec![m2([O, I1, I1, O]), m2([O, R1, -R1, O]), m2([I1, O, O, -I1])]
}

fn cl4_positive() -> Vec<CMat> {
    vec![
        m4([O, O, O, -R1, O, O, -R1, O, O, R1, O, O, R1, O, O, O]),
        m4([O, O, O, I1, O, O, -I1, O, O, -I1, O, O, I1, O, O, O]),
        m4([O, O, -R1, O, O, O, O, R1, R1, O, O, O, O, -R1, O, O]),
        m4([O, O, I1, O, O, O, O, I1, I1, O, O, O, O, I1, O, O]),
    ]
}

fn positive_base(n: usize) -> Vec<CMat> {
    match n {
        1 => vec![CMat::from_element(1, 1, I1)],
        2 => cl3_positive().into_iter().take(2).collect(),
        3 => cl3_positive(),
        _ => cl4_positive(),
    }
}

/// Fixed matrices for the patterns that have them.
fn fixed(eps: &[i8]) -> Option<Vec<CMat>> {
    match eps {
        [1, 1, 1] => Some(cl3_positive()),
        [1, 1, -1] => {
            let mut g = cl3_positive();
            g[2] = m2([R1, O, O, -R1]);
            Some(g)
        }
        [1, -1, 1] => Some(vec![m2([O, I1, I1, O]), m2([R1, O, O, -R1]), m2([O, R1, -R1, O])]),
        [1, 1, 1, 1] => Some(cl4_positive()),
        _ => None,
    }
}

/// Build the representation for a sign pattern.
pub fn build_rep(eps: &[i8]) -> Result<CliffordRep> {
    build_rep_with(eps, IrrepChoice::Default)
}

pub fn build_rep_with(eps: &[i8], choice: IrrepChoice) -> Result<CliffordRep> {
    let n = eps.len();
    if !(1..=4).contains(&n) {
        return Err(Error::UnsupportedDimension(n, "1..=4"));
    }
    if eps.iter().any(|e| *e != 1 && *e != -1) {
        return Err(Error::InvalidParameter(format!("sign pattern {eps:?}")));
    }
    let (mut gamma, source) = match fixed(eps) {
        Some(g) => (g, RepSource::Fixed),
        None => {
            let mut g = positive_base(n);
            for (k, e) in eps.iter().enumerate() {
                if *e < 0 {
                    g[k] *= I1;
                }
            }
            (g, RepSource::Generic)
        }
    };
    if choice == IrrepChoice::Opposite {
        gamma[n - 1] *= -R1;
    }
    Ok(CliffordRep { n, eps: eps.to_vec(), gamma, source })
}

impl CliffordRep {
    /// Spinor dimension `2^(n/2)`.
    pub fn spinor_dim(&self) -> usize {
        self.gamma[0].nrows()
    }

    fn sign(&self, i: usize) -> f64 {
        f64::from(self.eps[i])
    }

    /// `max_{i,j} || gamma_i gamma_j + gamma_j gamma_i + 2 delta_ij eps_i Id ||_inf`.
    pub fn verify_relations(&self) -> f64 {
        let d = self.spinor_dim();
        let id = CMat::identity(d, d);
        let mut worst = 0.0_f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let mut m = &self.gamma[i] * &self.gamma[j] + &self.gamma[j] * &self.gamma[i];
                if i == j {
                    m += &id * Complex::from(2.0 * self.sign(i));
                }
                worst = worst.max(m.iter().fold(0.0, |a, z| a.max(z.norm())));
            }
        }
        worst
    }

    /// Product `gamma_{i_1} ... gamma_{i_k}` for the indices in `mask`.
    pub fn product(&self, mask: u32) -> CMat {
        let d = self.spinor_dim();
        let mut m = CMat::identity(d, d);
        for i in indices_of(mask) {
            m *= &self.gamma[i];
        }
        m
    }

    /// `gamma_1 ... gamma_n`.
    pub fn volume(&self) -> CMat {
        self.product((1u32 << self.n) - 1)
    }

    /// Action of a form: `sum_I (prod_{i in I} eps_i) omega_I gamma_{i_1} ... gamma_{i_k}`.
    pub fn act_form(&self, omega: &Form) -> Result<CMat> {
        if omega.dim() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: omega.dim() });
        }
        let d = self.spinor_dim();
        let mut out = CMat::zeros(d, d);
        for (mask, c) in omega.terms() {
            let s: f64 = indices_of(mask).iter().map(|i| self.sign(*i)).product();
            out += self.product(mask) * Complex::from(s * c);
        }
        Ok(out)
    }

    /// `sum_i eps_i alpha_i gamma_i` for a covector given by components.
    pub fn act_covector(&self, alpha: &[f64]) -> CMat {
        let d = self.spinor_dim();
        let mut out = CMat::zeros(d, d);
        for (i, a) in alpha.iter().enumerate() {
            out += &self.gamma[i] * Complex::from(self.sign(i) * a);
        }
        out
    }
}
