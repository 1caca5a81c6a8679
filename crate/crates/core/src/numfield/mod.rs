//! Exact arithmetic in real number fields ℚ(θ).
//!
//! Elements are rational coordinate vectors over the power basis of a
//! fixed root θ of a monic integer polynomial. Zero testing is exact
//! (coordinates), and signs of nonzero elements are decided by evaluating
//! on ever narrower rational intervals around θ. No floating point is
//! involved anywhere.

mod element;
mod field;
mod interval;
mod poly;
mod relations;

pub(crate) use element::rational_to_decimal;
pub use element::AlgebraicNumber;
pub use field::NumberField;
pub use interval::Interval;
pub use poly::Irreducibility;
pub use relations::{normalize_primitive, primitive_relation, rational_relations};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumfieldError {
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid number field: {0}")]
    InvalidField(String),
    #[error("expected at most {expected} coordinates, got {got}")]
    CoordinateCount { expected: usize, got: usize },
    #[error("relation lattice has rank {rank}, expected at most one")]
    AmbiguousRelation { rank: usize },
}
