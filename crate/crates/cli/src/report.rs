//! JSON documents printed by the commands. Every type deserializes back to
//! itself, so a report written with `--json` can be read and re-emitted
//! byte for byte.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use circle_genera::exact_ring::{Rational, RingKind, YPolynomial};
use circle_genera::genus::GenusSpec;
use circle_genera::localization::{chi_y_isolated, genus_via_localization, FixedPointSet};
use circle_genera::theorems::{
    betti_from_moment_map, check_parity_lemma, classify_hamiltonian_at, poincare_identity_check,
    signature_relation_check, TheoremError, Verdict,
};

/// Output of `compute --json`. Ring elements use the library serialization:
/// a rational string, or an array of rational strings for a polynomial in
/// `y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComputeReport {
    pub genus: String,
    pub ring: RingKind,
    pub order: usize,
    /// Highest exponent of `u` whose coefficient is known.
    pub precision: i64,
    pub series: String,
    pub negative_part_zero: bool,
    pub negative_terms: Vec<NegativeTerm>,
    /// The genus, present only when the negative part vanishes.
    pub value: Option<Value>,
    pub value_display: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NegativeTerm {
    pub exponent: i64,
    pub coefficient: Value,
    pub display: String,
}

/// Output of `semifree --json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemifreeReport {
    pub n: usize,
    pub lambda: Rational,
    pub solved: Vec<Rational>,
    pub binomial: Vec<Rational>,
    pub agree: bool,
}

/// Results of the individual checks in a full report. A check that does
/// not apply to the dataset is omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportChecks {
    /// The Todd sum has no pole at `u = 0`.
    pub todd_poles_cancel: bool,
    pub chi_y_poles_cancel: bool,
    /// The localized `chi_y` equals `sum_p (-y)^(d_p)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_y_matches_fixed_points: Option<bool>,
    /// `chi_y` at `y = 0, 1, -1` equals the Todd genus, the signature, and
    /// the number of fixed points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub specializations: Option<bool>,
    /// Points with both parities of negative-weight count occur.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity_lemma: Option<bool>,
    /// The `u^-n` Todd coefficient vanishes.
    pub parity_obstruction_zero: bool,
    pub poincare_identity: bool,
    /// Only for half-dimension divisible by two.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature_relation: Option<bool>,
}

impl ReportChecks {
    /// Every check that applies passed.
    pub fn all_hold(&self) -> bool {
        [
            Some(self.todd_poles_cancel),
            Some(self.chi_y_poles_cancel),
            self.chi_y_matches_fixed_points,
            self.specializations,
            self.parity_lemma,
            Some(self.parity_obstruction_zero),
            Some(self.poincare_identity),
            self.signature_relation,
        ]
        .into_iter()
        .flatten()
        .all(|b| b)
    }
}

/// Output of `report`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FullReport {
    pub half_dimension: usize,
    pub points: usize,
    pub order: usize,
    pub verdict: Verdict,
    pub reasons: Vec<String>,
    /// Genus values; `None` when the corresponding sum keeps a pole.
    pub todd: Option<Rational>,
    pub chi_y: Option<YPolynomial>,
    pub signature: Option<Rational>,
    pub euler: Option<Rational>,
    /// `sum_p (-y)^(d_p)`.
    pub chi_y_fixed_points: YPolynomial,
    pub betti: Vec<u64>,
    pub parity_obstruction: Rational,
    pub checks: ReportChecks,
}

impl FullReport {
    pub fn build(fps: &FixedPointSet, order: usize) -> Result<Self, TheoremError> {
        let value = |r: circle_genera::localization::LocalizationReport<Rational>| {
            r.negative_part_zero.then_some(r.constant_term)
        };
        let todd = value(genus_via_localization(&GenusSpec::todd(), fps, order)?);
        let signature = value(genus_via_localization(&GenusSpec::signature(), fps, order)?);
        let euler = value(genus_via_localization(&GenusSpec::euler(), fps, order)?);
        let chi = genus_via_localization(&GenusSpec::chi_y(), fps, order)?;
        let chi_y = chi.negative_part_zero.then_some(chi.constant_term);

        let verdict = classify_hamiltonian_at(fps, order)?;
        let fixed = chi_y_isolated(fps);
        let betti = betti_from_moment_map(fps)?;
        let obstruction = circle_genera::theorems::parity_obstruction_value(fps)?;

        let specializations = match (&chi_y, &todd, &signature, &euler) {
            (Some(c), Some(t), Some(s), Some(e)) => Some(
                c.eval(&Rational::zero()) == *t
                    && c.eval(&Rational::one()) == *s
                    && c.eval(&Rational::from(-1)) == *e
                    && *e == Rational::from(fps.len() as i64),
            ),
            _ => None,
        };
        let parity_lemma = if fps.is_empty() {
            None
        } else {
            Some(check_parity_lemma(fps)?.holds)
        };
        let signature_relation = if fps.half_dimension.is_multiple_of(2) {
            Some(signature_relation_check(fps)?.holds)
        } else {
            None
        };
        let checks = ReportChecks {
            todd_poles_cancel: todd.is_some(),
            chi_y_poles_cancel: chi_y.is_some(),
            chi_y_matches_fixed_points: chi_y.as_ref().map(|c| *c == fixed),
            specializations,
            parity_lemma,
            parity_obstruction_zero: obstruction.is_zero(),
            poincare_identity: poincare_identity_check(fps)?.holds,
            signature_relation,
        };
        Ok(FullReport {
            half_dimension: fps.half_dimension,
            points: fps.len(),
            order,
            verdict: verdict.verdict,
            reasons: verdict.reasons,
            todd,
            chi_y,
            signature,
            euler,
            chi_y_fixed_points: fixed,
            betti: betti.betti,
            parity_obstruction: obstruction,
            checks,
        })
    }
}

impl fmt::Display for FullReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Option<String>| v.unwrap_or_else(|| "undefined (pole)".to_string());
        writeln!(
            f,
            "{} fixed points, half-dimension {}, truncation order {}",
            self.points, self.half_dimension, self.order
        )?;
        writeln!(f, "verdict: {}", self.verdict)?;
        for r in &self.reasons {
            writeln!(f, "  {r}")?;
        }
        writeln!(f, "Td = {}", show(self.todd.as_ref().map(ToString::to_string)))?;
        writeln!(f, "χ_y = {}", show(self.chi_y.as_ref().map(ToString::to_string)))?;
        writeln!(f, "σ = {}", show(self.signature.as_ref().map(ToString::to_string)))?;
        writeln!(f, "χ = {}", show(self.euler.as_ref().map(ToString::to_string)))?;
        let betti: Vec<String> = self.betti.iter().map(u64::to_string).collect();
        writeln!(f, "betti = ({})", betti.join(", "))?;
        let c = &self.checks;
        let rows: [(&str, Option<bool>); 8] = [
            ("Todd poles cancel", Some(c.todd_poles_cancel)),
            ("χ_y poles cancel", Some(c.chi_y_poles_cancel)),
            ("χ_y matches fixed points", c.chi_y_matches_fixed_points),
            ("specializations", c.specializations),
            ("parity lemma", c.parity_lemma),
            ("parity obstruction zero", Some(c.parity_obstruction_zero)),
            ("Poincaré identity", Some(c.poincare_identity)),
            ("signature relation", c.signature_relation),
        ];
        writeln!(f, "checks:")?;
        for (name, value) in rows {
            if let Some(v) = value {
                writeln!(f, "  {name}: {v}")?;
            }
        }
        Ok(())
    }
}
