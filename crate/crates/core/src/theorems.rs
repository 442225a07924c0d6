//! Checks built on the fixed-point formulas: Hamiltonian classification by
//! the Todd genus, the semi-free fixed-point profile, the parity
//! obstruction, Morse-theoretic Betti numbers and the Poincaré and signature
//! identities.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_ring::{Rational, YPolynomial};
use crate::genus::GenusSpec;
use crate::linalg::{self, LinearSystemError};
use crate::localization::{
    chi_y_isolated, genus_via_localization, todd_leading_coefficient, FixedPointSet,
    LocalizationError, ValidationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("invalid fixed-point data: {0}")]
    InvalidDataset(ValidationReport),
    #[error("lemma is about nonempty fixed sets")]
    EmptyFixedSet,
    #[error("signature relation stated for 4n-manifolds (half-dimension {0} is odd)")]
    OddHalfDimension(usize),
    #[error("half-dimension must be at least 1")]
    ZeroHalfDimension,
    #[error("semi-free linear system has no unique solution: {0}")]
    SemifreeSystem(#[from] LinearSystemError),
    #[error(transparent)]
    Localization(LocalizationError),
}

impl From<LocalizationError> for TheoremError {
    fn from(e: LocalizationError) -> Self {
        match e {
            LocalizationError::InvalidDataset(r) => TheoremError::InvalidDataset(r),
            other => TheoremError::Localization(other),
        }
    }
}

fn ensure_valid(fps: &FixedPointSet) -> Result<(), TheoremError> {
    let report = fps.validate();
    if report.is_valid() {
        Ok(())
    } else {
        Err(TheoremError::InvalidDataset(report))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Hamiltonian,
    NonHamiltonian,
    NotRealizable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Hamiltonian => "Hamiltonian",
            Verdict::NonHamiltonian => "NonHamiltonian",
            Verdict::NotRealizable => "NotRealizable",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonicityVerdict {
    pub todd_value: Rational,
    pub verdict: Verdict,
    pub reasons: Vec<String>,
}

/// Classifies a symplectic circle action with isolated fixed points by its
/// Todd genus: `1` means Hamiltonian, `0` non-Hamiltonian. Data whose Todd
/// sum has poles, or whose Todd genus is anything else, cannot come from
/// such an action.
pub fn classify_hamiltonian(fps: &FixedPointSet) -> Result<HamiltonicityVerdict, TheoremError> {
    classify_hamiltonian_at(fps, fps.default_order())
}

pub fn classify_hamiltonian_at(
    fps: &FixedPointSet,
    order: usize,
) -> Result<HamiltonicityVerdict, TheoremError> {
    ensure_valid(fps)?;
    let report = genus_via_localization(&GenusSpec::todd(), fps, order)?;
    let todd_value = report.constant_term.clone();
    let mut reasons = Vec::new();
    let verdict = if !report.negative_part_zero {
        for (m, c) in report.negative_terms() {
            reasons.push(format!("coefficient of u^{m} in the Todd sum is {c}, not 0"));
        }
        Verdict::NotRealizable
    } else if todd_value.is_one() {
        reasons.push("Todd genus is 1".to_string());
        Verdict::Hamiltonian
    } else if todd_value.is_zero() {
        reasons.push("Todd genus is 0".to_string());
        Verdict::NonHamiltonian
    } else {
        reasons.push(format!(
            "Todd genus {todd_value} is neither 0 nor 1: no symplectic action has this data"
        ));
        Verdict::NotRealizable
    };
    Ok(HamiltonicityVerdict {
        todd_value,
        verdict,
        reasons,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityWitness {
    pub holds: bool,
    /// A point with an even number of negative weights.
    pub even: Option<String>,
    /// A point with an odd number of negative weights.
    pub odd: Option<String>,
}

/// Whether both parities of negative-weight counts occur among the points.
pub fn check_parity_lemma(fps: &FixedPointSet) -> Result<ParityWitness, TheoremError> {
    if fps.is_empty() {
        return Err(TheoremError::EmptyFixedSet);
    }
    let find = |parity: usize| {
        (0..fps.len())
            .find(|&i| fps.points[i].negative_weight_count() % 2 == parity)
            .map(|i| fps.point_name(i))
    };
    let even = find(0);
    let odd = find(1);
    Ok(ParityWitness {
        holds: even.is_some() && odd.is_some(),
        even,
        odd,
    })
}

/// The `u^-n` coefficient of the Todd sum, `sum_p 1 / prod_k j_k`.
///
/// Each term has sign `(-1)^(d_p)`, so it cannot vanish when all `d_p` share
/// a parity.
pub fn parity_obstruction_value(fps: &FixedPointSet) -> Result<Rational, TheoremError> {
    ensure_valid(fps)?;
    Ok(todd_leading_coefficient(fps))
}

/// Numbers `F_k` of fixed points with exactly `k` negative weights in a
/// semi-free action with isolated fixed points and Todd genus `lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemifreeProfile {
    pub n: usize,
    pub lambda: Rational,
    #[serde(rename = "F")]
    pub counts: Vec<Rational>,
}

/// `F_k = lambda * C(n, k)`.
pub fn semifree_profile(n: usize, lambda: &Rational) -> Result<SemifreeProfile, TheoremError> {
    if n == 0 {
        return Err(TheoremError::ZeroHalfDimension);
    }
    let mut binom = Rational::one();
    let mut counts = Vec::with_capacity(n + 1);
    for k in 0..=n {
        counts.push(lambda * &binom);
        binom = &(&binom * &Rational::from((n - k) as i64)) / &Rational::from(k as i64 + 1);
    }
    Ok(SemifreeProfile {
        n,
        lambda: lambda.clone(),
        counts,
    })
}

/// Solves for `F_0..F_n` from the requirement that
/// `f(u) = sum_k F_k (u - 1)^k / u^n` has no pole and constant term `lambda`.
///
/// A point with `k` weights `-1` and `n - k` weights `+1` contributes
/// `(u - 1)^k / u^n` to the Todd sum, so `f` is that sum.
pub fn solve_semifree_system(
    n: usize,
    lambda: &Rational,
) -> Result<SemifreeProfile, TheoremError> {
    if n == 0 {
        return Err(TheoremError::ZeroHalfDimension);
    }
    // expansions[k][m] = coefficient of u^m in (u - 1)^k
    let mut expansions: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
    for k in 1..=n {
        let prev = &expansions[k - 1];
        let mut next = vec![Rational::zero(); k + 1];
        for (m, c) in prev.iter().enumerate() {
            next[m + 1] = &next[m + 1] + c;
            next[m] = &next[m] - c;
        }
        expansions.push(next);
    }
    // row m: coefficient of u^(m - n) in f
    let matrix: Vec<Vec<Rational>> = (0..=n)
        .map(|m| {
            (0..=n)
                .map(|k| expansions[k].get(m).cloned().unwrap_or_default())
                .collect()
        })
        .collect();
    let mut rhs = vec![Rational::zero(); n + 1];
    rhs[n] = lambda.clone();
    let counts = linalg::solve_unique(&matrix, &rhs)?;
    Ok(SemifreeProfile {
        n,
        lambda: lambda.clone(),
        counts,
    })
}

/// Betti numbers of the manifold read off from the moment map: each fixed
/// point is a critical point of index `2 d_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiProfile {
    /// `b_0 ..= b_2n`; also the coefficients of the Poincaré polynomial.
    pub betti: Vec<u64>,
}

impl BettiProfile {
    pub fn total(&self) -> u64 {
        self.betti.iter().sum()
    }

    /// `P_M(t)` with `t^2 = -y`, i.e. `sum_k b_2k (-y)^k`.
    pub fn poincare_at_sqrt_minus_y(&self) -> YPolynomial {
        let coeffs: Vec<i64> = self
            .betti
            .iter()
            .step_by(2)
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .collect();
        YPolynomial::from_integers(&coeffs)
    }

    /// `sum_k b_4k - sum_k b_(4k+2)`.
    pub fn alternating_even_sum(&self) -> Rational {
        let total: i64 = self
            .betti
            .iter()
            .enumerate()
            .filter(|(i, _)| i % 2 == 0)
            .map(|(i, &b)| if i % 4 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        Rational::from(total)
    }
}

impl fmt::Display for BettiProfile {
    /// The Poincaré polynomial in `t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, &b) in self.betti.iter().enumerate().filter(|(_, &b)| b != 0) {
            if wrote {
                f.write_str(" + ")?;
            }
            wrote = true;
            match (k, b) {
                (0, _) => write!(f, "{b}")?,
                (_, 1) => write!(f, "t^{k}")?,
                _ => write!(f, "{b}*t^{k}")?,
            }
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub fn betti_from_moment_map(fps: &FixedPointSet) -> Result<BettiProfile, TheoremError> {
    ensure_valid(fps)?;
    let mut betti = vec![0u64; 2 * fps.half_dimension + 1];
    for p in &fps.points {
        betti[2 * p.negative_weight_count()] += 1;
    }
    Ok(BettiProfile { betti })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck<T> {
    pub holds: bool,
    pub lhs: T,
    pub rhs: T,
}

impl<T: PartialEq> IdentityCheck<T> {
    fn compare(lhs: T, rhs: T) -> Self {
        IdentityCheck {
            holds: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

/// `chi_y(M)` from the fixed points against `P_M(sqrt(-y))` from the Morse
/// count.
pub fn poincare_identity_check(
    fps: &FixedPointSet,
) -> Result<IdentityCheck<YPolynomial>, TheoremError> {
    let betti = betti_from_moment_map(fps)?;
    Ok(IdentityCheck::compare(
        chi_y_isolated(fps),
        betti.poincare_at_sqrt_minus_y(),
    ))
}

/// Signature (`chi_y` at `y = 1`) against `sum b_4k - sum b_(4k+2)`.
pub fn signature_relation_check(
    fps: &FixedPointSet,
) -> Result<IdentityCheck<Rational>, TheoremError> {
    if !fps.half_dimension.is_multiple_of(2) {
        return Err(TheoremError::OddHalfDimension(fps.half_dimension));
    }
    let betti = betti_from_moment_map(fps)?;
    Ok(IdentityCheck::compare(
        chi_y_isolated(fps).eval(&Rational::one()),
        betti.alternating_even_sum(),
    ))
}
