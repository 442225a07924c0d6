//! Multiplicative genera given by their values on projective spaces.
//!
//! A genus `h` enters the localization machinery only through its
//! logarithm `g_h(u) = u + sum_m h(CP(m)) / (m + 1) * u^(m+1)` and the
//! per-weight factors `g_h^-1(j * g_h(u))`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exact_ring::{Rational, Ring, RingKind, YPolynomial};
use crate::series::{PowerSeries, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error("genus {genus:?} has no value for CP({index})")]
    MissingCpValue { genus: String, index: usize },
    #[error("weight zero: fixed point not isolated")]
    ZeroWeight,
    #[error("truncation order must be at least 1")]
    OrderTooSmall,
    #[error("unknown genus {0:?} (expected todd, chi_y, signature or euler)")]
    UnknownGenus(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

type CpFormula<R> = Arc<dyn Fn(usize) -> R + Send + Sync>;

#[derive(Clone)]
enum CpValues<R> {
    /// `values[m - 1] = h(CP(m))`
    Listed(Vec<R>),
    Formula(CpFormula<R>),
}

/// A genus defined by `h(CP(m))` for `m >= 1`; `h(point) = 1` is implicit.
#[derive(Clone)]
pub struct GenusSpec<R> {
    name: String,
    values: CpValues<R>,
}

impl<R: Ring> GenusSpec<R> {
    /// Genus with finitely many listed values, `cp_values[m - 1] = h(CP(m))`.
    pub fn listed(name: impl Into<String>, cp_values: Vec<R>) -> Self {
        GenusSpec {
            name: name.into(),
            values: CpValues::Listed(cp_values),
        }
    }

    /// Genus with a value for every `CP(m)`.
    pub fn from_formula(
        name: impl Into<String>,
        formula: impl Fn(usize) -> R + Send + Sync + 'static,
    ) -> Self {
        GenusSpec {
            name: name.into(),
            values: CpValues::Formula(Arc::new(formula)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> RingKind {
        R::KIND
    }

    /// `h(CP(m))`; `m = 0` gives the value on a point.
    pub fn cp_value(&self, m: usize) -> Option<R> {
        if m == 0 {
            return Some(R::one());
        }
        match &self.values {
            CpValues::Listed(v) => v.get(m - 1).cloned(),
            CpValues::Formula(f) => Some(f(m)),
        }
    }

    /// Largest `m` with a known value, `None` when unbounded.
    pub fn max_cp(&self) -> Option<usize> {
        match &self.values {
            CpValues::Listed(v) => Some(v.len()),
            CpValues::Formula(_) => None,
        }
    }

    /// The listed values for `CP(1)..=CP(max_m)`.
    pub fn cp_values(&self, max_m: usize) -> Result<Vec<R>, GenusError> {
        (1..=max_m).map(|m| self.require(m)).collect()
    }

    /// Copy of this genus with values stored explicitly up to `CP(max_m)`.
    pub fn to_listed(&self, max_m: usize) -> Result<Self, GenusError> {
        Ok(GenusSpec::listed(self.name.clone(), self.cp_values(max_m)?))
    }

    /// Coefficientwise image of the genus under a ring map.
    pub fn map_values<S: Ring>(
        &self,
        name: impl Into<String>,
        f: impl Fn(&R) -> S + Send + Sync + 'static,
    ) -> GenusSpec<S>
    where
        R: 'static,
    {
        let values = match &self.values {
            CpValues::Listed(v) => CpValues::Listed(v.iter().map(&f).collect()),
            CpValues::Formula(g) => {
                let g = Arc::clone(g);
                CpValues::Formula(Arc::new(move |m| f(&g(m))))
            }
        };
        GenusSpec {
            name: name.into(),
            values,
        }
    }

    fn require(&self, m: usize) -> Result<R, GenusError> {
        self.cp_value(m).ok_or_else(|| GenusError::MissingCpValue {
            genus: self.name.clone(),
            index: m,
        })
    }

    /// `g_h(u)` truncated at `u^order`.
    pub fn log_series(&self, order: usize) -> Result<PowerSeries<R>, GenusError> {
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(R::zero());
        for m in 0..order {
            let h = self.require(m)?;
            coeffs.push(h.scale(&Rational::new(1, m as u64 + 1).expect("m + 1 > 0")));
        }
        Ok(PowerSeries::new(coeffs, order))
    }

    /// The series `g_h` and its compositional inverse at a fixed order, for
    /// computing many weight factors.
    pub fn logarithm(&self, order: usize) -> Result<GenusLogarithm<R>, GenusError> {
        if order == 0 {
            return Err(GenusError::OrderTooSmall);
        }
        let log = self.log_series(order)?;
        let exp = log.revert()?;
        Ok(GenusLogarithm { log, exp })
    }

    /// `g_h^-1(j * g_h(u))` truncated at `u^order`.
    pub fn weight_factor(&self, j: i64, order: usize) -> Result<PowerSeries<R>, GenusError> {
        if j == 0 {
            return Err(GenusError::ZeroWeight);
        }
        self.logarithm(order)?.weight_factor(j)
    }
}

impl GenusSpec<Rational> {
    /// `Td(CP(m)) = 1` for every `m`.
    pub fn todd() -> Self {
        GenusSpec::from_formula("todd", |_| Rational::one())
    }

    /// `chi_y` at `y = 1`: `1` on even `CP(m)`, `0` on odd.
    pub fn signature() -> Self {
        GenusSpec::chi_y().specialize("signature", Rational::one())
    }

    /// `chi_y` at `y = -1`: `CP(m)` maps to `m + 1`.
    pub fn euler() -> Self {
        GenusSpec::chi_y().specialize("euler", Rational::from(-1))
    }
}

impl GenusSpec<YPolynomial> {
    /// `chi_y(CP(m)) = 1 - y + y^2 - ... + (-y)^m`.
    pub fn chi_y() -> Self {
        GenusSpec::from_formula("chi_y", chi_y_of_projective_space)
    }

    /// Evaluates every value at `y = at`.
    pub fn specialize(&self, name: impl Into<String>, at: Rational) -> GenusSpec<Rational> {
        self.map_values(name, move |p| p.eval(&at))
    }
}

/// `sum_{k=0}^{m} (-y)^k`.
pub fn chi_y_of_projective_space(m: usize) -> YPolynomial {
    YPolynomial::from_integers(
        &(0..=m)
            .map(|k| if k % 2 == 0 { 1 } else { -1 })
            .collect::<Vec<_>>(),
    )
}

impl<R: Ring> fmt::Debug for GenusSpec<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("GenusSpec");
        d.field("name", &self.name).field("ring", &R::KIND);
        match &self.values {
            CpValues::Listed(v) => d.field("cp_values", v),
            CpValues::Formula(_) => d.field("cp_values", &"<formula>"),
        };
        d.finish()
    }
}

/// `g_h` and `g_h^-1` at a fixed truncation order.
#[derive(Debug, Clone)]
pub struct GenusLogarithm<R: Ring> {
    log: PowerSeries<R>,
    exp: PowerSeries<R>,
}

impl<R: Ring> GenusLogarithm<R> {
    pub fn order(&self) -> usize {
        self.log.order()
    }

    pub fn log(&self) -> &PowerSeries<R> {
        &self.log
    }

    /// Compositional inverse of the logarithm.
    pub fn exp(&self) -> &PowerSeries<R> {
        &self.exp
    }

    /// `g_h^-1(j * g_h(u))`.
    pub fn weight_factor(&self, j: i64) -> Result<PowerSeries<R>, GenusError> {
        if j == 0 {
            return Err(GenusError::ZeroWeight);
        }
        let inner = self.log.scale(&Rational::from(j));
        Ok(self.exp.compose(&inner)?)
    }
}

/// Binomial expansion of `1 - (1 - u)^j`, using the generalized binomial
/// series for negative `j`.
pub fn todd_weight_factor_closed_form(
    j: i64,
    order: usize,
) -> Result<PowerSeries<Rational>, GenusError> {
    if j == 0 {
        return Err(GenusError::ZeroWeight);
    }
    let j = Rational::from(j);
    let mut coeffs = vec![Rational::zero()];
    // binom(j, k) (-1)^k, built incrementally
    let mut term = Rational::one();
    for k in 1..=order {
        let k_q = Rational::from(k as i64);
        term = &(&term * &(&k_q - &Rational::one() - &j)) / &k_q;
        coeffs.push(-&term);
    }
    Ok(PowerSeries::new(coeffs, order))
}

/// The four genera every report computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinGenus {
    Todd,
    ChiY,
    Signature,
    Euler,
}

impl BuiltinGenus {
    pub const ALL: [BuiltinGenus; 4] = [
        BuiltinGenus::Todd,
        BuiltinGenus::ChiY,
        BuiltinGenus::Signature,
        BuiltinGenus::Euler,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinGenus::Todd => "todd",
            BuiltinGenus::ChiY => "chi_y",
            BuiltinGenus::Signature => "signature",
            BuiltinGenus::Euler => "euler",
        }
    }

    pub fn spec(self) -> AnyGenus {
        match self {
            BuiltinGenus::Todd => AnyGenus::Rational(GenusSpec::todd()),
            BuiltinGenus::ChiY => AnyGenus::YPolynomial(GenusSpec::chi_y()),
            BuiltinGenus::Signature => AnyGenus::Rational(GenusSpec::signature()),
            BuiltinGenus::Euler => AnyGenus::Rational(GenusSpec::euler()),
        }
    }
}

impl fmt::Display for BuiltinGenus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinGenus {
    type Err = GenusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BuiltinGenus::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| GenusError::UnknownGenus(s.to_string()))
    }
}

/// A genus over either coefficient ring, chosen at runtime.
///
/// Serializes as `{"name": ..., "ring": "rational" | "y_polynomial",
/// "cp_values": [...]}`; formula-backed genera must be converted with
/// [`GenusSpec::to_listed`] first.
#[derive(Debug, Clone)]
pub enum AnyGenus {
    Rational(GenusSpec<Rational>),
    YPolynomial(GenusSpec<YPolynomial>),
}

impl AnyGenus {
    pub fn name(&self) -> &str {
        match self {
            AnyGenus::Rational(g) => g.name(),
            AnyGenus::YPolynomial(g) => g.name(),
        }
    }

    pub fn ring(&self) -> RingKind {
        match self {
            AnyGenus::Rational(_) => RingKind::Rational,
            AnyGenus::YPolynomial(_) => RingKind::YPolynomial,
        }
    }
}

#[derive(Deserialize)]
#[serde(tag = "ring", rename_all = "snake_case", deny_unknown_fields)]
enum GenusFile {
    Rational {
        name: String,
        cp_values: Vec<Rational>,
    },
    YPolynomial {
        name: String,
        cp_values: Vec<YPolynomial>,
    },
}

#[derive(Serialize)]
struct GenusFileOut<'a, R> {
    name: &'a str,
    ring: RingKind,
    cp_values: Vec<R>,
}

impl Serialize for AnyGenus {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::Error;
        match self {
            AnyGenus::Rational(g) => GenusFileOut {
                name: &g.name,
                ring: RingKind::Rational,
                cp_values: listed(g).map_err(S::Error::custom)?,
            }
            .serialize(serializer),
            AnyGenus::YPolynomial(g) => GenusFileOut {
                name: &g.name,
                ring: RingKind::YPolynomial,
                cp_values: listed(g).map_err(S::Error::custom)?,
            }
            .serialize(serializer),
        }
    }
}

fn listed<R: Ring>(g: &GenusSpec<R>) -> Result<Vec<R>, &'static str> {
    match &g.values {
        CpValues::Listed(v) => Ok(v.clone()),
        CpValues::Formula(_) => Err("formula-backed genus must be listed before serializing"),
    }
}

impl<'de> Deserialize<'de> for AnyGenus {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(match GenusFile::deserialize(deserializer)? {
            GenusFile::Rational { name, cp_values } => {
                AnyGenus::Rational(GenusSpec::listed(name, cp_values))
            }
            GenusFile::YPolynomial { name, cp_values } => {
                AnyGenus::YPolynomial(GenusSpec::listed(name, cp_values))
            }
        })
    }
}
