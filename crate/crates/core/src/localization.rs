//! Fixed-point data and the two fixed-point formulas: the Conner–Floyd
//! Laurent sum for an arbitrary genus, and the combinatorial `chi_y` sum over
//! fixed components.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_ring::{Rational, Ring, YPolynomial};
use crate::genus::{GenusError, GenusSpec};
use crate::series::{LaurentSeries, PowerSeries, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizationError {
    #[error("truncation order {order} is below the minimum {min} needed for the constant term")]
    OrderTooSmall { order: usize, min: usize },
    #[error("invalid fixed-point data: {0}")]
    InvalidDataset(ValidationReport),
    #[error(transparent)]
    Genus(#[from] GenusError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// An isolated fixed point with the weights of the tangent representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedPoint {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub weights: Vec<i64>,
}

impl FixedPoint {
    pub fn new(weights: Vec<i64>) -> Self {
        FixedPoint {
            label: None,
            weights,
        }
    }

    pub fn labeled(label: impl Into<String>, weights: Vec<i64>) -> Self {
        FixedPoint {
            label: Some(label.into()),
            weights,
        }
    }

    /// Number of strictly negative weights.
    pub fn negative_weight_count(&self) -> usize {
        self.weights.iter().filter(|&&w| w < 0).count()
    }
}

/// Fixed-point data of a circle action on a `2n`-manifold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedPointSet {
    pub half_dimension: usize,
    pub points: Vec<FixedPoint>,
}

impl FixedPointSet {
    pub fn new(half_dimension: usize, points: Vec<FixedPoint>) -> Self {
        FixedPointSet {
            half_dimension,
            points,
        }
    }

    pub fn empty(half_dimension: usize) -> Self {
        Self::new(half_dimension, Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Label of point `i`, or `#i` for unlabeled points.
    pub fn point_name(&self, i: usize) -> String {
        match &self.points[i].label {
            Some(l) => l.clone(),
            None => format!("#{i}"),
        }
    }

    /// Default truncation order `n + 8`.
    pub fn default_order(&self) -> usize {
        self.half_dimension + 8
    }

    /// Smallest order at which the constant term is determined.
    pub fn min_order(&self) -> usize {
        self.half_dimension + 1
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.half_dimension == 0 {
            violations.push(Violation {
                point: None,
                kind: ViolationKind::ZeroDimension,
            });
        }
        for (i, p) in self.points.iter().enumerate() {
            if p.weights.len() != self.half_dimension {
                violations.push(Violation {
                    point: Some(self.point_name(i)),
                    kind: ViolationKind::WeightCount {
                        expected: self.half_dimension,
                        found: p.weights.len(),
                    },
                });
            }
            for (position, _) in p.weights.iter().enumerate().filter(|(_, &w)| w == 0) {
                violations.push(Violation {
                    point: Some(self.point_name(i)),
                    kind: ViolationKind::ZeroWeight { position },
                });
            }
        }
        ValidationReport { violations }
    }

    /// `Ok` when [`validate`](Self::validate) finds nothing.
    pub fn ensure_valid(&self) -> Result<(), LocalizationError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(LocalizationError::InvalidDataset(report))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Offending point, `None` for dataset-level problems.
    pub point: Option<String>,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationKind {
    ZeroDimension,
    WeightCount { expected: usize, found: usize },
    ZeroWeight { position: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = &self.point {
            write!(f, "point {p}: ")?;
        }
        match &self.kind {
            ViolationKind::ZeroDimension => f.write_str("half-dimension must be positive"),
            ViolationKind::WeightCount { expected, found } => {
                write!(f, "weight count: expected {expected}, found {found}")
            }
            ViolationKind::ZeroWeight { position } => {
                write!(f, "zero weight at position {position}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A fixed component: its `chi_y` genus and the number of negative weights
/// on its normal bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentData {
    pub d: usize,
    pub chi_y_value: YPolynomial,
}

/// `sum_p prod_k (g_h^-1(j_k g_h(u)))^-1` over the fixed points.
///
/// Weight factors are computed once per distinct weight and the per-point
/// products in parallel; the sum is exact so the grouping is irrelevant.
pub fn conner_floyd_sum<R: Ring>(
    genus: &GenusSpec<R>,
    fps: &FixedPointSet,
    order: usize,
) -> Result<LaurentSeries<R>, LocalizationError> {
    fps.ensure_valid()?;
    let n = fps.half_dimension;
    if order < fps.min_order() {
        return Err(LocalizationError::OrderTooSmall {
            order,
            min: fps.min_order(),
        });
    }
    // n reciprocal factors, each known through u^(order - 2)
    let precision = order as i64 - 1 - n as i64;
    if fps.is_empty() {
        return Ok(LaurentSeries::zero(precision));
    }

    let logarithm = genus.logarithm(order)?;
    let mut distinct: Vec<i64> = fps.points.iter().flat_map(|p| p.weights.iter().copied()).collect();
    distinct.sort_unstable();
    distinct.dedup();
    let reciprocals: HashMap<i64, LaurentSeries<R>> = distinct
        .par_iter()
        .map(|&j| {
            let factor = logarithm.weight_factor(j)?;
            let inv = LaurentSeries::from_power_series(&factor).invert()?;
            Ok((j, inv))
        })
        .collect::<Result<_, LocalizationError>>()?;

    let terms: Vec<LaurentSeries<R>> = fps
        .points
        .par_iter()
        .map(|p| {
            p.weights
                .iter()
                .map(|j| &reciprocals[j])
                .fold(LaurentSeries::from_power_series(&PowerSeries::one(order)), |acc, r| {
                    acc.mul(r)
                })
        })
        .collect();
    let sum = terms
        .iter()
        .skip(1)
        .fold(terms[0].clone(), |acc, t| acc.add(t));
    Ok(sum.truncate(precision))
}

/// Outcome of evaluating the Conner–Floyd sum for one genus.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalizationReport<R: Ring> {
    pub genus_name: String,
    pub laurent: LaurentSeries<R>,
    /// No nonzero coefficient on `u^-n ..= u^-1`.
    pub negative_part_zero: bool,
    /// Meaningful only when `negative_part_zero` holds.
    pub constant_term: R,
    pub truncation_order: usize,
}

impl<R: Ring> LocalizationReport<R> {
    /// Nonzero coefficients among `u^-n ..= u^-1`, as `(exponent, value)`.
    pub fn negative_terms(&self) -> Vec<(i64, R)> {
        let low = self.laurent.valuation().unwrap_or(0).min(0);
        (low..0)
            .filter_map(|m| {
                let c = self.laurent.coeff(m).ok()?;
                (!c.is_zero()).then_some((m, c))
            })
            .collect()
    }
}

pub fn genus_via_localization<R: Ring>(
    genus: &GenusSpec<R>,
    fps: &FixedPointSet,
    order: usize,
) -> Result<LocalizationReport<R>, LocalizationError> {
    let laurent = conner_floyd_sum(genus, fps, order)?;
    let n = fps.half_dimension as i64;
    let negative_part_zero = (-n..0).all(|m| laurent.coeff(m).map(|c| c.is_zero()).unwrap_or(false));
    let constant_term = laurent.coeff(0)?;
    Ok(LocalizationReport {
        genus_name: genus.name().to_string(),
        laurent,
        negative_part_zero,
        constant_term,
        truncation_order: order,
    })
}

/// `sum_p (-y)^(d_p)` over isolated fixed points.
pub fn chi_y_isolated(fps: &FixedPointSet) -> YPolynomial {
    let n = fps.points.iter().map(|p| p.weights.len()).max().unwrap_or(0);
    let mut counts = vec![0i64; n + 1];
    for p in &fps.points {
        counts[p.negative_weight_count()] += 1;
    }
    let signed: Vec<i64> = counts
        .iter()
        .enumerate()
        .map(|(d, &c)| if d % 2 == 0 { c } else { -c })
        .collect();
    YPolynomial::from_integers(&signed)
}

/// `sum_s (-y)^(d_s) chi_y(M_s)`.
pub fn chi_y_from_components(components: &[ComponentData]) -> YPolynomial {
    let minus_y = YPolynomial::from_integers(&[0, -1]);
    components.iter().fold(YPolynomial::zero(), |acc, c| {
        let power = (0..c.d).fold(YPolynomial::one(), |p, _| p.mul(&minus_y));
        acc.add(&power.mul(&c.chi_y_value))
    })
}

/// `sum_p 1 / prod_k j_k`, the coefficient of `u^-n` in the Todd sum.
pub fn todd_leading_coefficient(fps: &FixedPointSet) -> Rational {
    fps.points
        .iter()
        .map(|p| {
            let prod = p
                .weights
                .iter()
                .fold(Rational::one(), |acc, &w| acc * Rational::from(w));
            prod.recip().unwrap_or_else(|_| Rational::zero())
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fps(n: usize, pts: &[&[i64]]) -> FixedPointSet {
        FixedPointSet::new(
            n,
            pts.iter()
                .enumerate()
                .map(|(i, w)| FixedPoint::labeled(format!("p{i}"), w.to_vec()))
                .collect(),
        )
    }

    fn cp1() -> FixedPointSet {
        fps(1, &[&[1], &[-1]])
    }

    fn cp2() -> FixedPointSet {
        fps(2, &[&[1, 2], &[-1, 1], &[-2, -1]])
    }

    #[test]
    fn negative_weight_counts() {
        assert_eq!(FixedPoint::new(vec![1, 2]).negative_weight_count(), 0);
        assert_eq!(FixedPoint::new(vec![-1, 1]).negative_weight_count(), 1);
        assert_eq!(FixedPoint::new(vec![-3, -5]).negative_weight_count(), 2);
    }

    #[test]
    fn cp1_todd_sum_is_one() {
        let s = conner_floyd_sum(&GenusSpec::todd(), &cp1(), 4).unwrap();
        assert_eq!(s.valuation(), Some(0));
        assert_eq!(s.window(0).unwrap(), vec![Rational::one(), Rational::zero(), Rational::zero()]);
    }

    #[test]
    fn empty_sum_is_zero() {
        let s = conner_floyd_sum(&GenusSpec::todd(), &FixedPointSet::empty(3), 6).unwrap();
        assert!(s.is_zero());
        let r = genus_via_localization(&GenusSpec::chi_y(), &FixedPointSet::empty(2), 10).unwrap();
        assert!(r.negative_part_zero);
        assert!(r.constant_term.is_zero());
    }

    #[test]
    fn single_positive_point_has_poles() {
        let single = fps(2, &[&[1, 1]]);
        let s = conner_floyd_sum(&GenusSpec::todd(), &single, 5).unwrap();
        assert_eq!(s.valuation(), Some(-2));
        assert_eq!(s.coeff(-2).unwrap(), Rational::one());
        assert_eq!(s.coeff(0).unwrap(), Rational::zero());
        let r = genus_via_localization(&GenusSpec::todd(), &single, 5).unwrap();
        assert!(!r.negative_part_zero);
        assert_eq!(r.negative_terms(), vec![(-2, Rational::one())]);
    }

    #[test]
    fn cp2_todd() {
        let r = genus_via_localization(&GenusSpec::todd(), &cp2(), 10).unwrap();
        assert!(r.negative_part_zero);
        assert_eq!(r.constant_term, Rational::one());
        assert_eq!(r.truncation_order, 10);
        assert_eq!(r.laurent.precision(), 7);
    }

    #[test]
    fn cp1_chi_y() {
        let r = genus_via_localization(&GenusSpec::chi_y(), &cp1(), 9).unwrap();
        assert!(r.negative_part_zero);
        assert_eq!(r.constant_term, YPolynomial::from_integers(&[1, -1]));
    }

    #[test]
    fn order_must_cover_the_constant_term() {
        assert_eq!(
            conner_floyd_sum(&GenusSpec::todd(), &cp2(), 2),
            Err(LocalizationError::OrderTooSmall { order: 2, min: 3 })
        );
        let s = conner_floyd_sum(&GenusSpec::todd(), &cp2(), 3).unwrap();
        assert_eq!(s.precision(), 0);
        assert_eq!(s.coeff(0).unwrap(), Rational::one());
    }

    #[test]
    fn chi_y_formulas() {
        assert_eq!(chi_y_isolated(&cp2()), YPolynomial::from_integers(&[1, -1, 1]));
        assert!(chi_y_isolated(&FixedPointSet::empty(2)).is_zero());
        assert_eq!(
            chi_y_isolated(&fps(1, &[&[3], &[-2]])),
            YPolynomial::from_integers(&[1, -1])
        );
        let c = |d, p: &[i64]| ComponentData {
            d,
            chi_y_value: YPolynomial::from_integers(p),
        };
        assert_eq!(
            chi_y_from_components(&[c(0, &[1]), c(1, &[1])]),
            YPolynomial::from_integers(&[1, -1])
        );
        assert_eq!(
            chi_y_from_components(&[c(0, &[1, -1])]),
            YPolynomial::from_integers(&[1, -1])
        );
        assert_eq!(
            chi_y_from_components(&[c(1, &[1, 1])]),
            YPolynomial::from_integers(&[0, -1, -1])
        );
    }

    #[test]
    fn validation() {
        assert!(cp1().validate().is_valid());
        let bad = fps(2, &[&[1, 0], &[1]]);
        let report = bad.validate();
        assert_eq!(report.violations.len(), 2);
        assert_eq!(
            report.violations[0],
            Violation {
                point: Some("p0".into()),
                kind: ViolationKind::ZeroWeight { position: 1 }
            }
        );
        assert_eq!(
            report.violations[1].kind,
            ViolationKind::WeightCount {
                expected: 2,
                found: 1
            }
        );
        assert!(report.to_string().contains("zero weight"));
        assert!(report.to_string().contains("weight count"));
        assert!(matches!(
            conner_floyd_sum(&GenusSpec::todd(), &bad, 6),
            Err(LocalizationError::InvalidDataset(_))
        ));
    }

    #[test]
    fn leading_coefficient_matches_sum() {
        let data = fps(2, &[&[1, 2], &[3, -1], &[2, 5]]);
        let s = conner_floyd_sum(&GenusSpec::todd(), &data, 6).unwrap();
        assert_eq!(s.coeff(-2).unwrap(), todd_leading_coefficient(&data));
        assert_eq!(todd_leading_coefficient(&cp2()), Rational::zero());
    }

    #[test]
    fn dataset_json_schema() {
        let text = r#"{"half_dimension":1,"points":[{"label":"p0","weights":[1]},{"weights":[-1]}]}"#;
        let d: FixedPointSet = serde_json::from_str(text).unwrap();
        assert_eq!(d.points[1].label, None);
        assert_eq!(serde_json::to_string(&d).unwrap(), text);
    }
}
