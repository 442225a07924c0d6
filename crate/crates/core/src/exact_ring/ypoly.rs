use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Rational, Ring, RingKind};

/// Polynomial in the formal variable `y` with rational coefficients.
///
/// Stored as integer numerators over one positive common denominator, with
/// no common factor between the denominator and all numerators. The last
/// numerator is never zero; the zero polynomial has no coefficients and
/// denominator 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct YPolynomial {
    numers: Vec<BigInt>,
    denom: BigInt,
}

impl Default for YPolynomial {
    fn default() -> Self {
        YPolynomial {
            numers: Vec::new(),
            denom: BigInt::one(),
        }
    }
}

impl YPolynomial {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let denom = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numers = coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        Self::from_parts(numers, denom)
    }

    /// Normalizes `numers / denom` into canonical form.
    fn from_parts(mut numers: Vec<BigInt>, mut denom: BigInt) -> Self {
        while numers.last().is_some_and(Zero::is_zero) {
            numers.pop();
        }
        if numers.is_empty() {
            return YPolynomial::default();
        }
        if denom.is_negative() {
            denom = -denom;
            numers.iter_mut().for_each(|n| *n = -&*n);
        }
        let mut g = denom.clone();
        for n in &numers {
            if g.is_one() {
                break;
            }
            g = g.gcd(n);
        }
        if !g.is_one() {
            numers.iter_mut().for_each(|n| *n = &*n / &g);
            denom /= g;
        }
        YPolynomial { numers, denom }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::from_parts(coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `y`.
    pub fn y() -> Self {
        Self::from_integers(&[0, 1])
    }

    /// `c * y^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut numers = vec![BigInt::zero(); k];
        numers.push(c.numer().clone());
        Self::from_parts(numers, c.denom().clone())
    }

    /// Coefficients of `y^0 ..= y^degree`.
    pub fn coefficients(&self) -> Vec<Rational> {
        (0..self.numers.len()).map(|k| self.coeff(k)).collect()
    }

    /// Coefficient of `y^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        match self.numers.get(k) {
            Some(n) => Rational::new(n.clone(), self.denom.clone()).expect("positive denominator"),
            None => Rational::zero(),
        }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.numers.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.numers.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &Rational) -> Rational {
        if self.numers.is_empty() {
            return Rational::zero();
        }
        let (p, q) = (at.numer(), at.denom());
        // sum n_k p^k q^(d-k), divided by denom * q^d
        let mut acc = BigInt::zero();
        let mut q_power = BigInt::one();
        for n in self.numers.iter().rev() {
            acc = acc * p + n * &q_power;
            q_power *= q;
        }
        let q_top = q_power / q;
        Rational::new(acc, &self.denom * q_top).expect("positive denominator")
    }

    /// Substitutes `y -> c * y`.
    pub fn rescale_variable(&self, c: &Rational) -> Self {
        let mut power = Rational::one();
        let mut coeffs = Vec::with_capacity(self.numers.len());
        for a in self.coefficients() {
            coeffs.push(&a * &power);
            power = &power * c;
        }
        Self::new(coeffs)
    }

    fn combine(&self, rhs: &Self, subtract: bool) -> Self {
        let denom = self.denom.lcm(&rhs.denom);
        let fa = &denom / &self.denom;
        let fb = &denom / &rhs.denom;
        let len = self.numers.len().max(rhs.numers.len());
        let zero = BigInt::zero();
        let numers = (0..len)
            .map(|k| {
                let a = self.numers.get(k).unwrap_or(&zero) * &fa;
                let b = rhs.numers.get(k).unwrap_or(&zero) * &fb;
                if subtract {
                    a - b
                } else {
                    a + b
                }
            })
            .collect();
        Self::from_parts(numers, denom)
    }
}

impl From<Rational> for YPolynomial {
    fn from(c: Rational) -> Self {
        YPolynomial::constant(c)
    }
}

impl fmt::Display for YPolynomial {
    /// Human form, e.g. `1 - y + 1/2*y^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}*")?;
                    }
                    if k == 1 {
                        f.write_str("y")?;
                    } else {
                        write!(f, "y^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for YPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YPolynomial({self})")
    }
}

impl Serialize for YPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coefficients().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for YPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Vec::<Rational>::deserialize(deserializer).map(YPolynomial::new)
    }
}

impl Ring for YPolynomial {
    const KIND: RingKind = RingKind::YPolynomial;

    fn zero() -> Self {
        YPolynomial::default()
    }

    fn one() -> Self {
        YPolynomial::constant(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.numers.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, false)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, true)
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return YPolynomial::default();
        }
        let mut numers = vec![BigInt::zero(); self.numers.len() + rhs.numers.len() - 1];
        for (i, a) in self.numers.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.numers.iter().enumerate() {
                numers[i + j] += a * b;
            }
        }
        Self::from_parts(numers, &self.denom * &rhs.denom)
    }

    fn neg(&self) -> Self {
        YPolynomial {
            numers: self.numers.iter().map(|n| -n).collect(),
            denom: self.denom.clone(),
        }
    }

    fn scale(&self, c: &Rational) -> Self {
        Self::from_parts(
            self.numers.iter().map(|n| n * c.numer()).collect(),
            &self.denom * c.denom(),
        )
    }

    fn from_rational(c: Rational) -> Self {
        YPolynomial::constant(c)
    }

    fn sum_of_products<'a>(pairs: impl Iterator<Item = (&'a Self, &'a Self)>) -> Self {
        // running numerators over a common denominator
        let mut numers: Vec<BigInt> = Vec::new();
        let mut denom = BigInt::one();
        for (a, b) in pairs {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let d = &a.denom * &b.denom;
            let (quot, rem) = denom.div_rem(&d);
            let factor = if rem.is_zero() {
                quot
            } else {
                let lcm = denom.lcm(&d);
                let up = &lcm / &denom;
                numers.iter_mut().for_each(|n| *n *= &up);
                denom = lcm;
                &denom / &d
            };
            let len = a.numers.len() + b.numers.len() - 1;
            if numers.len() < len {
                numers.resize(len, BigInt::zero());
            }
            for (i, x) in a.numers.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let x = x * &factor;
                for (j, y) in b.numers.iter().enumerate() {
                    numers[i + j] += &x * y;
                }
            }
        }
        Self::from_parts(numers, denom)
    }

    fn unit_inverse(&self) -> Option<Self> {
        match self.numers.as_slice() {
            [n] => Some(Self::from_parts(vec![self.denom.clone()], n.clone())),
            _ => None,
        }
    }

    fn is_compound(&self) -> bool {
        self.numers.iter().filter(|n| !n.is_zero()).count() > 1
    }
}
