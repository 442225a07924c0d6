//! Truncated formal power series and Laurent series over an exact ring.
//!
//! A [`PowerSeries`] of order `N` stores the coefficients of `u^0..=u^N`.
//! Binary operations return the smaller of the operand orders, so a result
//! never claims more than its inputs determine.

mod laurent;

use std::fmt;

use thiserror::Error;

use crate::exact_ring::{Rational, Ring};

pub use laurent::LaurentSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("inner series of a composition must vanish at u = 0")]
    NonzeroConstantTerm,
    #[error("constant term {0} is not a unit of the coefficient ring")]
    NotInvertible(String),
    #[error("series is not revertible: {0}")]
    NotRevertible(&'static str),
    #[error("leading coefficient {0} of the Laurent series is not a unit")]
    LeadingNotUnit(String),
    #[error("cannot invert the zero Laurent series")]
    InvertZero,
    #[error("coefficient of u^{requested} lies outside the reliable window (known through u^{precision})")]
    OutsideWindow { requested: i64, precision: i64 },
}

/// Truncated power series `c_0 + c_1 u + ... + c_N u^N`.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> PowerSeries<R> {
    /// Builds a series of the given order, padding with zeros or dropping
    /// coefficients past `u^order`.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        PowerSeries { coeffs }
    }

    /// Series whose order is the number of supplied coefficients minus one.
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a power series stores at least u^0");
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![R::one()], order)
    }

    /// The series `u`.
    pub fn variable(order: usize) -> Self {
        Self::new(vec![R::zero(), R::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `u^k`, or `None` past the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&R> {
        self.coeffs.get(k)
    }

    pub fn coefficients(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<R> {
        self.coeffs
    }

    pub fn constant_term(&self) -> &R {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn map(&self, f: impl Fn(&R) -> R) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Coefficientwise change of ring.
    pub fn map_ring<S: Ring>(&self, f: impl Fn(&R) -> S) -> PowerSeries<S> {
        PowerSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|k| self.coeffs[k].add(&rhs.coeffs[k])).collect();
        PowerSeries { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|k| self.coeffs[k].sub(&rhs.coeffs[k])).collect();
        PowerSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        self.map(R::neg)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn scale_ring(&self, c: &R) -> Self {
        self.map(|a| a.mul(c))
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| R::sum_of_products((0..=k).map(|i| (&self.coeffs[i], &rhs.coeffs[k - i]))))
            .collect();
        PowerSeries { coeffs }
    }

    /// `self(inner(u))`, by Horner's rule.
    ///
    /// The result has the order of `inner` capped by that of `self`: since
    /// `inner` vanishes at zero, `u^k` terms of the result only involve
    /// coefficients of `self` up to `u^k`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = PowerSeries::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        Ok(acc)
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_term();
        let inv0 = c0
            .unit_inverse()
            .ok_or_else(|| SeriesError::NotInvertible(c0.to_string()))?;
        let order = self.order();
        let mut out: Vec<R> = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        for n in 1..=order {
            let acc = R::sum_of_products((1..=n).map(|k| (&self.coeffs[k], &out[n - k])));
            out.push(acc.mul(&inv0).neg());
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Compositional inverse of a series `a_1 u + a_2 u^2 + ...` with `a_1`
    /// a unit.
    ///
    /// Uses Lagrange inversion: with `phi = u / self`, the coefficient of
    /// `u^n` in the reversion is `[u^(n-1)] phi^n / n`.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NotRevertible("constant term is nonzero"));
        }
        let order = self.order();
        if order == 0 {
            return Ok(PowerSeries::zero(0));
        }
        let linear = &self.coeffs[1];
        if linear.unit_inverse().is_none() {
            return Err(SeriesError::NotRevertible("linear coefficient is not a unit"));
        }
        // self / u, of order N - 1
        let shifted = PowerSeries::from_coeffs(self.coeffs[1..].to_vec());
        let phi = shifted.invert()?;
        let mut out = Vec::with_capacity(order + 1);
        out.push(R::zero());
        let mut power = phi.clone();
        for n in 1..=order {
            let c = &power.coeffs[n - 1];
            out.push(c.scale(&Rational::new(1, n as u64).expect("n >= 1")));
            if n < order {
                power = power.mul(&phi);
            }
        }
        Ok(PowerSeries { coeffs: out })
    }
}

impl<R: Ring> fmt::Display for PowerSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, 0, &self.coeffs)
    }
}

impl<R: Ring> fmt::Debug for PowerSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries[order {}]({self})", self.order())
    }
}

/// Writes `c_v*u^v + ... + c_N*u^N`, skipping zero coefficients.
pub(crate) fn write_terms<R: Ring>(
    f: &mut fmt::Formatter<'_>,
    first_exponent: i64,
    coeffs: &[R],
) -> fmt::Result {
    let mut wrote = false;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if wrote {
            f.write_str(" + ")?;
        }
        wrote = true;
        let e = first_exponent + k as i64;
        if c.is_compound() {
            write!(f, "({c})*u^{e}")?;
        } else {
            write!(f, "{c}*u^{e}")?;
        }
    }
    if !wrote {
        f.write_str("0")?;
    }
    Ok(())
}
