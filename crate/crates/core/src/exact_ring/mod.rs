//! Exact coefficient rings.
//!
//! Everything downstream (series, genera, localization sums) is generic over
//! [`Ring`], an exact commutative ring containing the rationals. Two rings are
//! provided: [`Rational`] and [`YPolynomial`], the polynomials in a formal
//! variable `y` with rational coefficients.

mod rational;
mod ypoly;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use rational::Rational;
pub use ypoly::YPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

/// Runtime tag for a coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingKind {
    Rational,
    YPolynomial,
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Rational => f.write_str("rational"),
            RingKind::YPolynomial => f.write_str("y_polynomial"),
        }
    }
}

/// An exact commutative ring containing the rationals.
///
/// Equality is structural: implementors keep a canonical form.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    const KIND: RingKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Multiplication by a rational scalar.
    fn scale(&self, c: &Rational) -> Self;

    /// The image of a rational under the structure map `Q -> R`.
    fn from_rational(c: Rational) -> Self;

    /// Inverse of `self` if it is a unit of the ring.
    ///
    /// For [`YPolynomial`] only nonzero constants are units.
    fn unit_inverse(&self) -> Option<Self>;

    /// `sum_i a_i * b_i`. Implementors may accumulate without intermediate
    /// normalization.
    fn sum_of_products<'a>(pairs: impl Iterator<Item = (&'a Self, &'a Self)>) -> Self
    where
        Self: 'a,
    {
        pairs.fold(Self::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
    }

    fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// True when the display form needs parentheses inside a product.
    fn is_compound(&self) -> bool {
        false
    }
}
