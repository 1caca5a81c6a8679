//! Cutting-sequence words of straight-line flows on the 2- and 3-torus,
//! their factor complexity, and the five-case classification of cube
//! billiard directions.
//!
//! The numeric core is generic over [`ExactScalar`]; the concrete aliases
//! below fix it to the number-field type used by the command line tool.

pub mod classifier;
pub mod cli;
pub mod coding;
pub mod geometry;
pub mod numfield;
pub mod scalar;
pub mod wordlab;

pub use numfield::{AlgebraicNumber, NumberField, NumfieldError};
pub use scalar::ExactScalar;

/// Exact rational number.
pub type Rational = num_rational::BigRational;

/// Flow direction on the 3-torus with number-field coordinates.
pub type Direction3 = coding::Direction<AlgebraicNumber, 3>;
/// Flow direction on the 2-torus with number-field coordinates.
pub type Direction2 = coding::Direction<AlgebraicNumber, 2>;
/// Start point on the 3-torus.
pub type Point3 = coding::Point<AlgebraicNumber, 3>;
/// Start point on the 2-torus.
pub type Point2 = coding::Point<AlgebraicNumber, 2>;

/// Purely rational direction, used for periodic (case 1) flows and oracles.
pub type RationalDirection3 = coding::Direction<Rational, 3>;
/// Purely rational start point.
pub type RationalPoint3 = coding::Point<Rational, 3>;
