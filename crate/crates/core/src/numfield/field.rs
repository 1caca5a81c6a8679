use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::poly::{self, Irreducibility};
use super::NumfieldError;
use crate::Rational;

/// A real number field ℚ(θ), θ the unique root of `min_poly` inside a
/// rational isolating interval.
pub struct NumberField {
    min_poly: Vec<BigInt>,
    variable: String,
    irreducibility: Irreducibility,
    /// Sign of `min_poly` at the lower endpoint of every root interval.
    sign_at_lo: i8,
    root: RwLock<Interval>,
    /// θ^d, θ^(d+1), …, θ^(2d−2) over the power basis.
    reduction: Vec<Vec<BigInt>>,
}

impl NumberField {
    /// Builds a field from a monic integer polynomial (lowest degree first)
    /// and an interval isolating one of its real roots.
    pub fn new(
        min_poly: Vec<BigInt>,
        lo: Rational,
        hi: Rational,
        variable: impl Into<String>,
    ) -> Result<Arc<Self>, NumfieldError> {
        let mut min_poly = min_poly;
        poly::trim(&mut min_poly);
        let degree = poly::degree(&min_poly).unwrap_or(0);
        if degree == 0 {
            return Err(NumfieldError::InvalidField("defining polynomial must have degree ≥ 1".into()));
        }
        if !min_poly[degree].is_one() {
            return Err(NumfieldError::InvalidField("defining polynomial must be monic".into()));
        }
        if lo > hi {
            return Err(NumfieldError::InvalidField("empty root interval".into()));
        }
        let irreducibility = poly::check_irreducible(&min_poly);
        if irreducibility == Irreducibility::Reducible {
            return Err(NumfieldError::InvalidField("defining polynomial is reducible over ℚ".into()));
        }

        let root = if degree == 1 {
            let r = Rational::from_integer(-min_poly[0].clone());
            if r < lo || r > hi {
                return Err(NumfieldError::InvalidField("root interval misses the root".into()));
            }
            Interval::point(r)
        } else {
            let s_lo = poly::sign_at(&min_poly, &lo);
            let s_hi = poly::sign_at(&min_poly, &hi);
            if s_lo == 0 || s_hi == 0 || s_lo == s_hi {
                return Err(NumfieldError::InvalidField(
                    "defining polynomial must change sign strictly across the root interval".into(),
                ));
            }
            if poly::sturm_count(&min_poly, &lo, &hi) != 1 {
                return Err(NumfieldError::InvalidField("root interval must contain exactly one real root".into()));
            }
            Interval::new(lo, hi)
        };
        let sign_at_lo = poly::sign_at(&min_poly, &root.lo);

        // θ^d = −(c0 + c1 θ + … + c_{d−1} θ^{d−1})
        let mut reduction: Vec<Vec<BigInt>> = Vec::new();
        let mut current: Vec<BigInt> = min_poly[..degree].iter().map(|c| -c).collect();
        for _ in 0..degree.saturating_sub(1) {
            reduction.push(current.clone());
            // multiply by θ
            let top = current[degree - 1].clone();
            let mut next = vec![BigInt::zero(); degree];
            for i in (1..degree).rev() {
                next[i] = current[i - 1].clone();
            }
            for i in 0..degree {
                next[i] -= &top * &min_poly[i];
            }
            current = next;
        }

        Ok(Arc::new(Self {
            min_poly,
            variable: variable.into(),
            irreducibility,
            sign_at_lo,
            root: RwLock::new(root),
            reduction,
        }))
    }

    /// The rationals, presented as ℚ(0).
    pub fn rationals() -> Arc<Self> {
        Self::new(vec![BigInt::zero(), BigInt::one()], -Rational::one(), Rational::one(), "q")
            .expect("x is a valid defining polynomial")
    }

    /// ℚ(θ) with θ = √2 + √3, root of x⁴ − 10x² + 1 in [3, 4].
    pub fn sqrt2_sqrt3() -> Arc<Self> {
        let p = [1, 0, -10, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        Self::new(p, Rational::from_integer(3.into()), Rational::from_integer(4.into()), "t")
            .expect("x⁴ − 10x² + 1 is irreducible")
    }

    /// ℚ(√k) for a positive non-square k.
    pub fn quadratic(k: u64) -> Result<Arc<Self>, NumfieldError> {
        let p = vec![-BigInt::from(k), BigInt::zero(), BigInt::one()];
        Self::new(p, Rational::one(), Rational::from_integer(k.max(2).into()), format!("sqrt{k}"))
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    /// Current isolating interval for θ (shrinks over time).
    pub fn root_interval(&self) -> Interval {
        self.root.read().expect("root lock poisoned").clone()
    }

    /// Narrows the root interval until its width is at most `width`.
    pub fn refine_root(&self, width: &Rational) -> Interval {
        {
            let current = self.root.read().expect("root lock poisoned");
            if &current.width() <= width {
                return current.clone();
            }
        }
        let mut guard = self.root.write().expect("root lock poisoned");
        let mut iv = guard.clone();
        while &iv.width() > width {
            let mid = iv.midpoint();
            let s = poly::sign_at(&self.min_poly, &mid);
            if s == 0 {
                iv = Interval::point(mid);
            } else if s == self.sign_at_lo {
                iv.lo = mid;
            } else {
                iv.hi = mid;
            }
        }
        // Another writer may have gone further meanwhile.
        if iv.width() < guard.width() {
            *guard = iv;
        }
        guard.clone()
    }

    /// Two fields are the same when they share the defining polynomial and
    /// their isolating intervals single out the same root.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        if Arc::ptr_eq(self, other) {
            return true;
        }
        if self.min_poly != other.min_poly {
            return false;
        }
        let a = self.root_interval();
        let b = other.root_interval();
        match a.intersect(&b) {
            None => false,
            Some(both) if both.lo == both.hi => poly::sign_at(&self.min_poly, &both.lo) == 0,
            Some(both) => {
                let mut n = poly::sturm_count(&self.min_poly, &both.lo, &both.hi);
                if poly::sign_at(&self.min_poly, &both.lo) == 0 {
                    n += 1;
                }
                n == 1
            }
        }
    }

    /// Product of two coordinate vectors reduced modulo the defining polynomial.
    pub(crate) fn mul_coords(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let d = self.degree();
        let mut wide = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    wide[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<Rational> = wide[..d].to_vec();
        for (k, c) in wide[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.reduction[k].iter().enumerate() {
                if !r.is_zero() {
                    out[i] += c * Rational::from_integer(r.clone());
                }
            }
        }
        out
    }

    pub(crate) fn inv_coords(&self, a: &[Rational]) -> Option<Vec<Rational>> {
        let m = poly::to_rational(&self.min_poly);
        let (g, s) = poly::half_ext_gcd(a, &m);
        if g.len() != 1 {
            return None;
        }
        let mut out = s;
        out.resize(self.degree(), Rational::zero());
        Some(out)
    }

    pub(crate) fn format_poly(&self) -> String {
        let mut terms = Vec::new();
        for (i, c) in self.min_poly.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            let body = match i {
                0 => mag.to_string(),
                _ => {
                    let coef = if mag.is_one() { String::new() } else { format!("{mag}*") };
                    let pow = if i == 1 { String::new() } else { format!("^{i}") };
                    format!("{coef}{}{pow}", self.variable)
                }
            };
            terms.push((sign, body));
        }
        let mut out = String::new();
        for (k, (sign, body)) in terms.into_iter().enumerate() {
            if k == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let iv = self.root_interval();
        write!(f, "NumberField({} @ {:?})", self.format_poly(), iv)
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(NumberField::new(ip(&[-2, 0, 2]), r(1, 1), r(2, 1), "x").is_err());
        assert!(NumberField::new(ip(&[-4, 0, 1]), r(1, 1), r(3, 1), "x").is_err());
        // interval holding two roots of x⁴ − 10x² + 1
        assert!(NumberField::new(ip(&[1, 0, -10, 0, 1]), r(-1, 1), r(1, 1), "x").is_err());
        // no sign change
        assert!(NumberField::new(ip(&[-2, 0, 1]), r(2, 1), r(3, 1), "x").is_err());
    }

    #[test]
    fn refinement_shrinks_and_keeps_root() {
        let f = NumberField::new(ip(&[-2, 0, 1]), r(1, 1), r(2, 1), "x").unwrap();
        let iv = f.refine_root(&r(1, 1_000_000));
        assert!(iv.width() <= r(1, 1_000_000));
        assert!(iv.lo.clone() * &iv.lo <= r(2, 1));
        assert!(iv.hi.clone() * &iv.hi >= r(2, 1));
    }

    #[test]
    fn same_field_by_root() {
        let a = NumberField::new(ip(&[1, 0, -10, 0, 1]), r(3, 1), r(4, 1), "x").unwrap();
        let b = NumberField::new(ip(&[1, 0, -10, 0, 1]), r(31, 10), r(32, 10), "y").unwrap();
        let c = NumberField::new(ip(&[1, 0, -10, 0, 1]), r(0, 1), r(1, 1), "x").unwrap();
        assert!(a.same_as(&b));
        assert!(!a.same_as(&c));
    }

    #[test]
    fn reduction_table_for_cubic() {
        // x³ + x − 1: θ³ = 1 − θ, θ⁴ = θ − θ²
        let f = NumberField::new(ip(&[-1, 1, 0, 1]), r(6, 10), r(7, 10), "t").unwrap();
        assert_eq!(f.reduction[0], ip(&[1, -1, 0]));
        assert_eq!(f.reduction[1], ip(&[0, 1, -1]));
        assert_eq!(f.to_string(), "t^3 + t - 1");
    }
}
