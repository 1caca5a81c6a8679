use std::fmt;

use num_traits::{Signed, Zero};

use crate::Rational;

/// Closed interval with exact rational endpoints.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Sign of every point of the interval, if it is constant.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let products = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if p < &lo {
                lo = p.clone();
            }
            if p > &hi {
                hi = p.clone();
            }
        }
        Interval { lo, hi }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if c.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    /// Evaluates `Σ coords[i]·x^i` by Horner's scheme.
    pub fn eval_poly(coords: &[Rational], x: &Interval) -> Interval {
        let mut acc = Interval::point(Rational::zero());
        for c in coords.iter().rev() {
            acc = acc.mul(x);
            acc.lo += c;
            acc.hi += c;
        }
        acc
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn mul_handles_mixed_signs() {
        let a = Interval::new(r(-1, 1), r(2, 1));
        let b = Interval::new(r(-3, 1), r(1, 1));
        let p = a.mul(&b);
        assert_eq!(p.lo, r(-6, 1));
        assert_eq!(p.hi, r(3, 1));
    }

    #[test]
    fn horner_encloses_value() {
        let x = Interval::new(r(14, 10), r(15, 10));
        // 1 + x²
        let v = Interval::eval_poly(&[r(1, 1), r(0, 1), r(1, 1)], &x);
        assert!(v.contains(&r(3, 1)));
        assert_eq!(v.sign(), Some(1));
    }
}
