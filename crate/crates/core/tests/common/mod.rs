#![allow(dead_code)]

use std::sync::Arc;

use cubeword::{AlgebraicNumber, Direction3, NumberField, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// ℚ(θ), θ³ + θ − 1 = 0, θ ∈ [0.6, 0.7].
pub fn cubic() -> Arc<NumberField> {
    let p = [-1i64, 1, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
    NumberField::new(p, q(3, 5), q(7, 10), "t").unwrap()
}

pub fn fields() -> Vec<Arc<NumberField>> {
    vec![NumberField::quadratic(2).unwrap(), cubic(), NumberField::sqrt2_sqrt3()]
}

/// Coordinates with small numerators and denominators.
pub fn coords(d: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-12i64..=12, 1i64..=6), d)
}

pub fn element(field: &Arc<NumberField>, c: &[(i64, i64)]) -> AlgebraicNumber {
    AlgebraicNumber::from_coords(field, c.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
}

/// `x` made strictly positive: |x|, or 1 + |x|/2 when x = 0.
pub fn positive(x: AlgebraicNumber) -> AlgebraicNumber {
    match x.sign() {
        1 => x,
        -1 => x.neg(),
        _ => AlgebraicNumber::one(x.field()),
    }
}

/// A random direction in one of the test fields.
pub fn direction() -> impl Strategy<Value = Direction3> {
    (0usize..3, coords(4), coords(4), coords(4)).prop_map(|(f, a, b, c)| {
        let field = fields()[f].clone();
        let d = field.degree();
        let make = |v: &[(i64, i64)]| positive(element(&field, &v[..d]));
        Direction3::new([make(&a), make(&b), make(&c)]).unwrap()
    })
}

pub fn sqrt2_sqrt3_direction(text: &str) -> Direction3 {
    cubeword::cli::parse_direction(text).unwrap()
}
