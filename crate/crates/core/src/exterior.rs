//! Exterior algebra of an `n`-dimensional coframe.
//!
//! A form is stored as `2^n` coefficients indexed by bitmask: bit `i` set
//! means `e^i` occurs, factors always in increasing order.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    n: usize,
    coef: Vec<f64>,
}

/// Sign of moving the factors of `b` past those of `a` into sorted order.
fn wedge_sign(a: u32, b: u32) -> f64 {
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Bitmask of a strictly increasing multi-index.
pub fn mask_of(n: usize, idx: &[usize]) -> Result<u32> {
    let mut mask = 0u32;
    for (pos, &i) in idx.iter().enumerate() {
        if i >= n || (pos > 0 && idx[pos - 1] >= i) {
            return Err(Error::BadMultiIndex(idx.to_vec()));
        }
        mask |= 1 << i;
    }
    Ok(mask)
}

/// Increasing multi-index of a bitmask.
pub fn indices_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

impl Form {
    pub fn zero(n: usize) -> Self {
        Self { n, coef: vec![0.0; 1 << n] }
    }

    pub fn scalar(n: usize, s: f64) -> Self {
        let mut f = Self::zero(n);
        f.coef[0] = s;
        f
    }

    /// The 1-form `e^i`.
    pub fn e(n: usize, i: usize) -> Self {
        let mut f = Self::zero(n);
        f.coef[1 << i] = 1.0;
        f
    }

    /// `c e^{i_1} ^ ... ^ e^{i_k}` for a strictly increasing multi-index.
    pub fn monomial(n: usize, idx: &[usize], c: f64) -> Result<Self> {
        let mask = mask_of(n, idx)?;
        let mut f = Self::zero(n);
        f.coef[mask as usize] = c;
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Coefficient of the monomial with the given bitmask.
    pub fn get(&self, mask: u32) -> f64 {
        self.coef[mask as usize]
    }

    pub fn set(&mut self, mask: u32, v: f64) {
        self.coef[mask as usize] = v;
    }

    /// Value on the frame vectors `(e_i, e_j)` for a 2-form component,
    /// antisymmetric in `(i, j)`.
    pub fn eval2(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let v = self.coef[(1 << i) | (1 << j)];
        if i < j {
            v
        } else {
            -v
        }
    }

    /// Nonzero terms as `(mask, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.coef
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(m, c)| (m as u32, *c))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coef.iter().all(|c| c.abs() <= tol)
    }

    pub fn max_abs(&self) -> f64 {
        self.coef.iter().fold(0.0, |a, c| a.max(c.abs()))
    }

    pub fn wedge(&self, other: &Form) -> Form {
        debug_assert_eq!(self.n, other.n);
        let mut out = Form::zero(self.n);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if a & b != 0 {
                    continue;
                }
                out.coef[(a | b) as usize] += wedge_sign(a, b) * ca * cb;
            }
        }
        out
    }

    /// Interior product with the frame vector `e_i`.
    pub fn interior(&self, i: usize) -> Form {
        let bit = 1u32 << i;
        let mut out = Form::zero(self.n);
        for (m, c) in self.terms() {
            if m & bit == 0 {
                continue;
            }
            let before = (m & (bit - 1)).count_ones();
            let s = if before.is_multiple_of(2) { 1.0 } else { -1.0 };
            out.coef[(m & !bit) as usize] += s * c;
        }
        out
    }

    /// Exterior derivative, given the differentials `de[k]` of the coframe.
    pub fn d(&self, de: &[Form]) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in self.terms() {
            let idx = indices_of(m);
            for (pos, &k) in idx.iter().enumerate() {
                let mut term = Form::scalar(self.n, if pos % 2 == 0 { c } else { -c });
                for (p2, &j) in idx.iter().enumerate() {
                    term = if p2 == pos { term.wedge(&de[k]) } else { term.wedge(&Form::e(self.n, j)) };
                }
                out = out + term;
            }
        }
        out
    }
}

impl Add for Form {
    type Output = Form;
    fn add(mut self, rhs: Form) -> Form {
        for (a, b) in self.coef.iter_mut().zip(rhs.coef) {
            *a += b;
        }
        self
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(self, rhs: Form) -> Form {
        self + (-rhs)
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(mut self) -> Form {
        self.coef.iter_mut().for_each(|c| *c = -*c);
        self
    }
}

impl Mul<f64> for Form {
    type Output = Form;
    fn mul(mut self, s: f64) -> Form {
        self.coef.iter_mut().for_each(|c| *c *= s);
        self
    }
}
