//! Hirzebruch genera of manifolds with circle actions, computed exactly from
//! fixed-point data.
//!
//! The crate evaluates the Conner–Floyd localization sum for an arbitrary
//! multiplicative genus given by its values on projective spaces, the
//! combinatorial `chi_y` fixed-point formula, and a set of checks built on
//! them: Hamiltonian classification through the Todd genus, the semi-free
//! fixed-point profile, the parity obstruction, Morse-theoretic Betti numbers
//! and the Poincaré/signature identities.
//!
//! All arithmetic is exact ([`Rational`], [`YPolynomial`]); the only loss of
//! information is series truncation, which every series records.

pub mod exact_ring;
pub mod generators;
pub mod genus;
pub mod linalg;
pub mod localization;
pub mod series;
pub mod theorems;

pub use exact_ring::{Rational, Ring, RingError, RingKind, YPolynomial};
pub use genus::{AnyGenus, BuiltinGenus, GenusError, GenusSpec};
pub use localization::{
    ComponentData, FixedPoint, FixedPointSet, LocalizationError, LocalizationReport,
};
pub use series::{LaurentSeries, PowerSeries, SeriesError};
