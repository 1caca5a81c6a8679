//! The scalar abstraction the geometric code is written against.
//!
//! Anything with exact ring operations, an exact sign and a certified
//! fixed-point enclosure can drive word generation. Two implementations
//! ship: plain rationals and number-field elements.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::numfield::{AlgebraicNumber, NumfieldError};
use crate::Rational;

pub trait ExactScalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    /// Embeds a rational into the same domain as `self`.
    fn lift(&self, r: Rational) -> Self;
    fn add(&self, other: &Self) -> Result<Self, NumfieldError>;
    fn sub(&self, other: &Self) -> Result<Self, NumfieldError>;
    fn mul(&self, other: &Self) -> Result<Self, NumfieldError>;
    fn div(&self, other: &Self) -> Result<Self, NumfieldError>;
    /// Exact sign: −1, 0 or +1.
    fn signum(&self) -> i8;
    fn floor(&self) -> BigInt;
    /// Integers `(lo, hi)` with `lo ≤ self·2^bits ≤ hi`.
    fn fixed_point(&self, bits: u32) -> (BigInt, BigInt);
    fn as_rational(&self) -> Option<Rational>;
    /// Decimal approximation with `digits` significant digits.
    fn decimal(&self, digits: u32) -> String;
    /// Exact textual form.
    fn exact(&self) -> String;

    fn lift_int(&self, n: i64) -> Self {
        self.lift(Rational::from_integer(n.into()))
    }
}

impl ExactScalar for Rational {
    fn lift(&self, r: Rational) -> Self {
        r
    }

    fn add(&self, other: &Self) -> Result<Self, NumfieldError> {
        Ok(self + other)
    }

    fn sub(&self, other: &Self) -> Result<Self, NumfieldError> {
        Ok(self - other)
    }

    fn mul(&self, other: &Self) -> Result<Self, NumfieldError> {
        Ok(self * other)
    }

    fn div(&self, other: &Self) -> Result<Self, NumfieldError> {
        if other.is_zero() {
            Err(NumfieldError::DivisionByZero)
        } else {
            Ok(self / other)
        }
    }

    fn signum(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    fn floor(&self) -> BigInt {
        Rational::floor(self).to_integer()
    }

    fn fixed_point(&self, bits: u32) -> (BigInt, BigInt) {
        let v = self * Rational::from_integer(BigInt::from(1) << bits);
        (v.floor().to_integer(), v.ceil().to_integer())
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn decimal(&self, digits: u32) -> String {
        crate::numfield::rational_to_decimal(self, digits)
    }

    fn exact(&self) -> String {
        self.to_string()
    }
}

impl ExactScalar for AlgebraicNumber {
    fn lift(&self, r: Rational) -> Self {
        AlgebraicNumber::from_rational(self.field(), r)
    }

    fn add(&self, other: &Self) -> Result<Self, NumfieldError> {
        self.try_add(other)
    }

    fn sub(&self, other: &Self) -> Result<Self, NumfieldError> {
        self.try_sub(other)
    }

    fn mul(&self, other: &Self) -> Result<Self, NumfieldError> {
        self.try_mul(other)
    }

    fn div(&self, other: &Self) -> Result<Self, NumfieldError> {
        self.try_div(other)
    }

    fn signum(&self) -> i8 {
        self.sign()
    }

    fn floor(&self) -> BigInt {
        AlgebraicNumber::floor(self)
    }

    fn fixed_point(&self, bits: u32) -> (BigInt, BigInt) {
        self.fixed_point_enclosure(bits)
    }

    fn as_rational(&self) -> Option<Rational> {
        AlgebraicNumber::as_rational(self)
    }

    fn decimal(&self, digits: u32) -> String {
        self.to_decimal(digits)
    }

    fn exact(&self) -> String {
        self.to_string()
    }
}
