//! Exact twisted Alexander polynomials of knots from finite-image
//! representations, representation-shift periodic point counts over cyclic
//! branched covers, and the fibering obstructions derived from them.
//!
//! The algebra is generic over an integer coefficient type (see
//! [`scalar::Coefficient`]); the aliases below fix it to arbitrary-precision
//! integers, which is what every public workflow uses.

pub mod campaign;
pub mod catalog;
pub mod cli;
pub mod covers;
pub mod error;
pub mod fox;
pub mod groups;
pub mod homs;
pub mod laurent;
pub mod matrix;
pub mod presentation;
pub mod scalar;
pub mod smith;
pub mod twisted;
pub mod words;

pub use error::{Error, Result};

/// Laurent polynomial over `Z`.
pub type Poly = laurent::LaurentPoly<num_bigint::BigInt>;
/// Matrix of Laurent polynomials over `Z`.
pub type PolyMatrix = matrix::LaurentMatrix<num_bigint::BigInt>;
/// Laurent polynomial over `Z` up to units `±t^k`.
pub type PolyClass = laurent::UnitClass<num_bigint::BigInt>;
/// Element of the integral group ring of a free group.
pub type GroupRingElement = fox::GroupRingElement<num_bigint::BigInt>;
/// Finitely generated abelian group with integer invariants.
pub type AbelianGroup = smith::AbelianGroup<num_bigint::BigInt>;
