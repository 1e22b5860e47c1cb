//! Truncated power series with complex coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores `a_0..=a_N`. Binary operations
//! return a series of the smaller operand order; nothing ever extends the
//! truncation. Logarithms, exponentials and real powers are defined only for
//! the principal branch, i.e. for series whose constant term is `1`
//! (respectively `0` for [`TruncatedSeries::exp1`]).

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default truncation order used by the verification pipelines.
pub const DEFAULT_ORDER: usize = 12;

/// Slack used when checking that a constant term equals `0` or `1`.
const BRANCH_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series of the given order from leading coefficients; missing
    /// entries are zero, surplus entries are dropped.
    pub fn from_coeffs<I>(order: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = Complex64>,
    {
        let mut c: Vec<Complex64> = coeffs.into_iter().take(order + 1).collect();
        c.resize(order + 1, ZERO);
        TruncatedSeries { coeffs: c }
    }

    pub fn from_real(order: usize, coeffs: &[f64]) -> Self {
        Self::from_coeffs(order, coeffs.iter().map(|&x| Complex64::new(x, 0.0)))
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![ZERO; order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = ONE;
        s
    }

    /// `coeff · z^power`, or the zero series if `power > order`.
    pub fn monomial(order: usize, power: usize, coeff: Complex64) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = coeff;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order + 1);
        self
    }

    pub fn scale(mut self, factor: Complex64) -> Self {
        for c in &mut self.coeffs {
            *c *= factor;
        }
        self
    }

    pub fn scale_real(self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(other.order());
        let mut out = vec![ZERO; order + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a == ZERO {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Principal logarithm of a series with constant term `1`.
    pub fn log1(&self) -> Result<TruncatedSeries> {
        self.expect_constant(1.0)?;
        let s = &self.coeffs;
        let n_max = self.order();
        // s' = s·L'  =>  n L_n = n s_n - Σ_{k=1}^{n-1} k L_k s_{n-k}
        let mut l = vec![ZERO; n_max + 1];
        for n in 1..=n_max {
            let mut acc = s[n] * n as f64;
            for k in 1..n {
                acc -= l[k] * s[n - k] * k as f64;
            }
            l[n] = acc / n as f64;
        }
        Ok(TruncatedSeries { coeffs: l })
    }

    /// Exponential of a series with constant term `0`.
    pub fn exp1(&self) -> Result<TruncatedSeries> {
        self.expect_constant(0.0)?;
        let s = &self.coeffs;
        let n_max = self.order();
        // E' = s'·E  =>  n E_n = Σ_{k=1}^{n} k s_k E_{n-k}
        let mut e = vec![ZERO; n_max + 1];
        e[0] = ONE;
        for n in 1..=n_max {
            let mut acc = ZERO;
            for k in 1..=n {
                acc += s[k] * e[n - k] * k as f64;
            }
            e[n] = acc / n as f64;
        }
        Ok(TruncatedSeries { coeffs: e })
    }

    /// Principal real power `s^beta = exp(beta · log s)` for `s_0 = 1`.
    pub fn pow_frac(&self, beta: f64) -> Result<TruncatedSeries> {
        self.log1()?.scale_real(beta).exp1()
    }

    /// Termwise derivative; the order drops by one (an order-0 series maps to
    /// the order-0 zero series).
    pub fn differentiate(&self) -> TruncatedSeries {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| a * k as f64)
            .collect();
        TruncatedSeries { coeffs }
    }

    /// `z · s'(z)` at the same order.
    pub fn euler(&self) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &a)| a * k as f64)
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Horner evaluation of the stored polynomial.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &a| acc * z + a)
    }

    fn expect_constant(&self, expected: f64) -> Result<()> {
        let found = self.coeffs[0];
        if (found - Complex64::new(expected, 0.0)).norm() > BRANCH_TOL {
            return Err(Error::ConstantTerm { found, expected });
        }
        Ok(())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries::from_coeffs(
            order,
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b),
        )
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries::from_coeffs(
            order,
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b),
        )
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scale_real(-1.0)
    }
}
