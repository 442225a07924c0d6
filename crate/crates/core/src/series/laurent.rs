use std::fmt;

use super::{write_terms, PowerSeries, SeriesError};
use crate::exact_ring::Ring;

/// Truncated Laurent series `u^v * (unit part)`.
///
/// Coefficients are known for exponents up to [`precision`](Self::precision)
/// and everything below the valuation is zero. A nonzero series has a unit
/// part with nonzero constant term. The zero series stores a single zero
/// coefficient at `u^precision`, so that it still records how far it is
/// known to vanish.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries<R> {
    valuation: i64,
    unit_part: PowerSeries<R>,
}

impl<R: Ring> LaurentSeries<R> {
    /// Builds `sum_k coeffs[k] u^(first_exponent + k)`, known through
    /// `u^(first_exponent + coeffs.len() - 1)`. Leading zeros are stripped.
    pub fn from_coeffs(first_exponent: i64, coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a Laurent series needs a known window");
        let precision = first_exponent + coeffs.len() as i64 - 1;
        match coeffs.iter().position(|c| !c.is_zero()) {
            Some(lead) => LaurentSeries {
                valuation: first_exponent + lead as i64,
                unit_part: PowerSeries::from_coeffs(coeffs[lead..].to_vec()),
            },
            None => Self::zero(precision),
        }
    }

    /// Zero, known to vanish through `u^precision`.
    pub fn zero(precision: i64) -> Self {
        LaurentSeries {
            valuation: precision,
            unit_part: PowerSeries::zero(0),
        }
    }

    pub fn from_power_series(series: &PowerSeries<R>) -> Self {
        Self::from_coeffs(0, series.coefficients().to_vec())
    }

    /// `u^shift * series`.
    pub fn shifted(series: &PowerSeries<R>, shift: i64) -> Self {
        Self::from_coeffs(shift, series.coefficients().to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.unit_part.constant_term().is_zero()
    }

    /// Lowest exponent with a nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.valuation)
    }

    /// Highest exponent whose coefficient is known.
    pub fn precision(&self) -> i64 {
        self.valuation + self.unit_part.order() as i64
    }

    /// Unit part; `None` for the zero series.
    pub fn unit_part(&self) -> Option<&PowerSeries<R>> {
        (!self.is_zero()).then_some(&self.unit_part)
    }

    /// Exact coefficient of `u^m`. Exponents above the precision are
    /// rejected rather than read as zero.
    pub fn coeff(&self, m: i64) -> Result<R, SeriesError> {
        let precision = self.precision();
        if m > precision {
            return Err(SeriesError::OutsideWindow {
                requested: m,
                precision,
            });
        }
        if m < self.valuation {
            return Ok(R::zero());
        }
        Ok(self.unit_part.coefficients()[(m - self.valuation) as usize].clone())
    }

    /// Coefficients of `u^from ..= u^precision`.
    pub fn window(&self, from: i64) -> Result<Vec<R>, SeriesError> {
        (from..=self.precision()).map(|m| self.coeff(m)).collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let precision = self.precision().min(rhs.precision());
        let low = self.valuation.min(rhs.valuation).min(precision);
        let coeffs = (low..=precision)
            .map(|m| {
                let a = self.coeff(m).expect("within window");
                let b = rhs.coeff(m).expect("within window");
                a.add(&b)
            })
            .collect();
        Self::from_coeffs(low, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            valuation: self.valuation,
            unit_part: self.unit_part.neg(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Valuations add and unit parts multiply; the relative precision of
    /// the product is the smaller relative precision of the factors.
    pub fn mul(&self, rhs: &Self) -> Self {
        match (self.is_zero(), rhs.is_zero()) {
            (false, false) => LaurentSeries {
                valuation: self.valuation + rhs.valuation,
                unit_part: self.unit_part.mul(&rhs.unit_part),
            },
            // a = O(u^(Pa+1)) times b with valuation vb
            (true, false) => Self::zero(self.precision() + rhs.valuation),
            (false, true) => Self::zero(rhs.precision() + self.valuation),
            (true, true) => Self::zero(self.precision() + rhs.precision() + 1),
        }
    }

    /// Multiplicative inverse of a nonzero series whose leading coefficient
    /// is a unit.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::InvertZero);
        }
        let lead = self.unit_part.constant_term();
        if lead.unit_inverse().is_none() {
            return Err(SeriesError::LeadingNotUnit(lead.to_string()));
        }
        Ok(LaurentSeries {
            valuation: -self.valuation,
            unit_part: self.unit_part.invert()?,
        })
    }

    /// Drops everything above `u^precision`.
    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision() {
            return self.clone();
        }
        if precision < self.valuation || self.is_zero() {
            return Self::zero(precision);
        }
        LaurentSeries {
            valuation: self.valuation,
            unit_part: self.unit_part.truncate((precision - self.valuation) as usize),
        }
    }

    pub fn map_ring<S: Ring>(&self, f: impl Fn(&R) -> S) -> LaurentSeries<S> {
        LaurentSeries::from_coeffs(self.valuation, self.unit_part.coefficients().iter().map(f).collect())
    }
}

impl<R: Ring> fmt::Display for LaurentSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.valuation, self.unit_part.coefficients())
    }
}

impl<R: Ring> fmt::Debug for LaurentSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries[through u^{}]({self})", self.precision())
    }
}
