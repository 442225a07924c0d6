//! Fixed-point data of standard circle actions, used as ground truth.

use thiserror::Error;

use crate::localization::{FixedPoint, FixedPointSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("action not isolated-fixed-point: weights must be distinct")]
    RepeatedWeight,
    #[error("need at least two weights for CP(n), n >= 1")]
    TooFewWeights,
    #[error("n must be at least 1")]
    ZeroDimension,
}

/// The action `t.[z_0 : ... : z_n] = [t^a_0 z_0 : ... : t^a_n z_n]` on
/// `CP(n)`. Fixed point `i` has weights `a_j - a_i` for `j != i`.
pub fn cp_n_dataset(a: &[i64]) -> Result<FixedPointSet, GeneratorError> {
    if a.len() < 2 {
        return Err(GeneratorError::TooFewWeights);
    }
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(GeneratorError::RepeatedWeight);
    }
    let points = a
        .iter()
        .enumerate()
        .map(|(i, ai)| {
            let weights = a
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, aj)| aj - ai)
                .collect();
            FixedPoint::labeled(format!("p{i}"), weights)
        })
        .collect();
    Ok(FixedPointSet::new(a.len() - 1, points))
}

/// Diagonal action on a product: points pair up and weights concatenate.
pub fn product_dataset(a: &FixedPointSet, b: &FixedPointSet) -> FixedPointSet {
    let mut points = Vec::with_capacity(a.len() * b.len());
    for p in &a.points {
        for q in &b.points {
            let label = match (&p.label, &q.label) {
                (Some(x), Some(y)) => Some(format!("{x}.{y}")),
                _ => None,
            };
            let mut weights = p.weights.clone();
            weights.extend_from_slice(&q.weights);
            points.push(FixedPoint { label, weights });
        }
    }
    FixedPointSet::new(a.half_dimension + b.half_dimension, points)
}

/// `(S^2)^n` with the rotation on every factor: `2^n` points, weights `+-1`.
pub fn semifree_sphere_power(n: usize) -> Result<FixedPointSet, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::ZeroDimension);
    }
    let sphere = cp_n_dataset(&[0, 1])?;
    Ok((1..n).fold(sphere.clone(), |acc, _| product_dataset(&acc, &sphere)))
}
