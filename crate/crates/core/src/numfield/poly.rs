//! Dense univariate polynomials over the integers and rationals.
//!
//! Coefficient vectors are stored lowest degree first and kept trimmed
//! (no trailing zeros) by every function that returns one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

pub(crate) fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn degree<T>(p: &[T]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub(crate) fn to_rational(p: &[BigInt]) -> Vec<Rational> {
    p.iter().cloned().map(Rational::from_integer).collect()
}

pub(crate) fn eval_int_at(p: &[BigInt], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + Rational::from_integer(c.clone());
    }
    acc
}

pub(crate) fn eval_at(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub(crate) fn sign_at(p: &[BigInt], x: &Rational) -> i8 {
    let v = eval_int_at(p, x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn derivative(p: &[Rational]) -> Vec<Rational> {
    let mut d: Vec<Rational> =
        p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect();
    trim(&mut d);
    d
}

pub(crate) fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Euclidean division; `b` must be nonzero.
pub(crate) fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem: Vec<Rational> = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let dr = rem.len() - 1;
        let factor = &rem[dr] / &lead;
        let shift = dr - db;
        for (j, c) in b.iter().enumerate() {
            rem[shift + j] -= &factor * c;
        }
        quot[shift] = factor;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Returns `(g, s)` with `s·a ≡ g (mod m)` and `g = gcd(a, m)` made monic.
pub(crate) fn half_ext_gcd(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0: Vec<Rational> = m.to_vec();
    let mut r1: Vec<Rational> = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if let Some(d) = degree(&r0) {
        let lead = r0[d].clone();
        for c in r0.iter_mut() {
            *c /= &lead;
        }
        for c in s0.iter_mut() {
            *c /= &lead;
        }
    }
    (r0, s0)
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`.
pub(crate) fn sturm_count(p: &[BigInt], lo: &Rational, hi: &Rational) -> usize {
    let p0 = to_rational(p);
    let mut seq = vec![p0.clone(), derivative(&p0)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let (_, r) = div_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let variations = |x: &Rational| -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for q in &seq {
            let v = eval_at(q, x);
            let s = if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    };
    variations(lo).saturating_sub(variations(hi))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn has_integer_root(p: &[BigInt]) -> bool {
    if p[0].is_zero() {
        return true;
    }
    divisors(&p[0])
        .into_iter()
        .any(|d| [d.clone(), -d].iter().any(|x| sign_at(p, &Rational::from_integer(x.clone())) == 0))
}

fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Splits a monic quartic into two monic integer quadratics when possible.
fn has_quadratic_factors(p: &[BigInt]) -> bool {
    let (a0, a1, a2, a3) = (&p[0], &p[1], &p[2], &p[3]);
    for b in divisors(a0).into_iter().flat_map(|d| [d.clone(), -d]) {
        let d = a0 / &b;
        // (x² + a x + b)(x² + c x + d) with c = a3 − a
        let mut candidates = Vec::new();
        if d != b {
            let num = a1 - a3 * &b;
            let den = &d - &b;
            if (&num % &den).is_zero() {
                candidates.push(num / den);
            }
        } else if *a1 == a3 * &b {
            // a² − a3·a + (a2 − 2b) = 0
            let disc = a3 * a3 - BigInt::from(4) * (a2 - BigInt::from(2) * &b);
            if let Some(r) = integer_sqrt_exact(&disc) {
                for num in [a3 + &r, a3 - &r] {
                    if num.is_even() {
                        candidates.push(num / 2);
                    }
                }
            }
        }
        for a in candidates {
            let c = a3 - &a;
            if &b + &d + &a * &c == *a2 && &a * &d + &b * &c == *a1 {
                return true;
            }
        }
    }
    false
}

/// Outcome of the irreducibility test on a monic integer polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    /// Proven irreducible over the rationals.
    Proven,
    /// Found a nontrivial factor.
    Reducible,
    /// Degree above 4: accepted without proof.
    Unchecked,
}

pub(crate) fn check_irreducible(p: &[BigInt]) -> Irreducibility {
    let d = degree(p).unwrap_or(0);
    match d {
        0 => Irreducibility::Reducible,
        1 => Irreducibility::Proven,
        2 | 3 => {
            if has_integer_root(p) {
                Irreducibility::Reducible
            } else {
                Irreducibility::Proven
            }
        }
        4 => {
            if has_integer_root(p) || has_quadratic_factors(p) {
                Irreducibility::Reducible
            } else {
                Irreducibility::Proven
            }
        }
        _ => Irreducibility::Unchecked,
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
    fn sturm_counts_roots_of_quartic() {
        // x⁴ − 10x² + 1 has roots ±0.318, ±3.146
        let p = ip(&[1, 0, -10, 0, 1]);
        assert_eq!(sturm_count(&p, &r(-4, 1), &r(4, 1)), 4);
        assert_eq!(sturm_count(&p, &r(3, 1), &r(4, 1)), 1);
        assert_eq!(sturm_count(&p, &r(0, 1), &r(1, 1)), 1);
        assert_eq!(sturm_count(&p, &r(1, 1), &r(3, 1)), 0);
    }

    #[test]
    fn irreducibility_small_degrees() {
        assert_eq!(check_irreducible(&ip(&[-2, 0, 1])), Irreducibility::Proven);
        assert_eq!(check_irreducible(&ip(&[-4, 0, 1])), Irreducibility::Reducible);
        assert_eq!(check_irreducible(&ip(&[-1, 1, 0, 1])), Irreducibility::Proven);
        assert_eq!(check_irreducible(&ip(&[1, 0, -10, 0, 1])), Irreducibility::Proven);
        // (x² − 2)(x² − 3)
        assert_eq!(check_irreducible(&ip(&[6, 0, -5, 0, 1])), Irreducibility::Reducible);
        // (x² + x + 1)(x² − x + 1) = x⁴ + x² + 1
        assert_eq!(check_irreducible(&ip(&[1, 0, 1, 0, 1])), Irreducibility::Reducible);
        // (x² + 1)² with b = d
        assert_eq!(check_irreducible(&ip(&[1, 0, 2, 0, 1])), Irreducibility::Reducible);
        assert_eq!(check_irreducible(&ip(&[1, 1, 0, 0, 0, 1])), Irreducibility::Unchecked);
    }

    #[test]
    fn inverse_via_gcd() {
        // 1/x mod x³ − x − 1 is x² − 1
        let m = to_rational(&ip(&[-1, -1, 0, 1]));
        let a = to_rational(&ip(&[0, 1]));
        let (g, s) = half_ext_gcd(&a, &m);
        assert_eq!(g, vec![Rational::one()]);
        assert_eq!(s, to_rational(&ip(&[-1, 0, 1])));
    }
}
