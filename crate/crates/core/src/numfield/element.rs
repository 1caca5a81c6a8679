use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::NumberField;
use super::interval::Interval;
use super::NumfieldError;
use crate::Rational;

/// An element of a real number field, stored as rational coordinates over
/// the power basis 1, θ, …, θ^(d−1), together with a rational interval
/// known to contain it.
pub struct AlgebraicNumber {
    field: Arc<NumberField>,
    coords: Vec<Rational>,
    enclosure: RwLock<Interval>,
}

impl Clone for AlgebraicNumber {
    fn clone(&self) -> Self {
        Self { field: Arc::clone(&self.field), coords: self.coords.clone(), enclosure: RwLock::new(self.enclosure()) }
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field.same_as(&other.field)
    }
}

impl Eq for AlgebraicNumber {}

fn pow2(bits: u32) -> Rational {
    Rational::from_integer(BigInt::one() << bits)
}

impl AlgebraicNumber {
    /// Element with the given power-basis coordinates; missing trailing
    /// coordinates are zero.
    pub fn from_coords(field: &Arc<NumberField>, coords: Vec<Rational>) -> Result<Self, NumfieldError> {
        let d = field.degree();
        if coords.len() > d {
            return Err(NumfieldError::CoordinateCount { expected: d, got: coords.len() });
        }
        let mut coords = coords;
        coords.resize(d, Rational::zero());
        Ok(Self::build(field, coords))
    }

    fn build(field: &Arc<NumberField>, coords: Vec<Rational>) -> Self {
        let enclosure = if coords.iter().skip(1).all(Zero::is_zero) {
            Interval::point(coords[0].clone())
        } else {
            Interval::eval_poly(&coords, &field.root_interval())
        };
        Self { field: Arc::clone(field), coords, enclosure: RwLock::new(enclosure) }
    }

    pub fn from_rational(field: &Arc<NumberField>, r: Rational) -> Self {
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[0] = r;
        Self::build(field, coords)
    }

    pub fn from_integer(field: &Arc<NumberField>, n: impl Into<BigInt>) -> Self {
        Self::from_rational(field, Rational::from_integer(n.into()))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Rational::zero())
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    /// The field generator θ.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        let mut coords = vec![Rational::zero(); field.degree()];
        if field.degree() == 1 {
            // θ is rational here
            coords[0] = field.root_interval().lo;
        } else {
            coords[1] = Rational::one();
        }
        Self::build(field, coords)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coords.iter().skip(1).all(Zero::is_zero).then(|| self.coords[0].clone())
    }

    /// Current enclosing interval.
    pub fn enclosure(&self) -> Interval {
        self.enclosure.read().expect("enclosure lock poisoned").clone()
    }

    fn check_field(&self, other: &Self) -> Result<(), NumfieldError> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(NumfieldError::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, NumfieldError> {
        self.check_field(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        let sum = self.enclosure().add(&other.enclosure());
        let out = Self::build(&self.field, coords);
        out.narrow(sum);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, NumfieldError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let e = self.enclosure();
        Self {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|c| -c).collect(),
            enclosure: RwLock::new(Interval::new(-e.hi, -e.lo)),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, NumfieldError> {
        self.check_field(other)?;
        let coords = self.field.mul_coords(&self.coords, &other.coords);
        Ok(Self::build(&self.field, coords))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let coords = self.coords.iter().map(|c| c * r).collect();
        Self { field: Arc::clone(&self.field), coords, enclosure: RwLock::new(self.enclosure().scale(r)) }
    }

    pub fn inv(&self) -> Result<Self, NumfieldError> {
        if self.is_zero() {
            return Err(NumfieldError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, r.recip()));
        }
        let coords = self
            .field
            .inv_coords(&self.coords)
            // a nonzero element of a field is always a unit unless the
            // defining polynomial was reducible
            .ok_or(NumfieldError::DivisionByZero)?;
        Ok(Self::build(&self.field, coords))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, NumfieldError> {
        self.try_mul(&other.inv()?)
    }

    fn narrow(&self, candidate: Interval) {
        let mut guard = self.enclosure.write().expect("enclosure lock poisoned");
        if let Some(both) = guard.intersect(&candidate) {
            if both.width() < guard.width() {
                *guard = both;
            }
        }
    }

    /// Refines the enclosure until its width is at most `2^-bits`.
    pub fn refine_bits(&self, bits: u32) -> Interval {
        let target = pow2(bits).recip();
        let current = self.enclosure();
        if current.width() <= target {
            return current;
        }
        let mut root_bits = bits + 8;
        loop {
            let root = self.field.refine_root(&pow2(root_bits).recip());
            let iv = Interval::eval_poly(&self.coords, &root);
            self.narrow(iv);
            let current = self.enclosure();
            if current.width() <= target {
                return current;
            }
            root_bits += root_bits / 2 + 8;
        }
    }

    /// Exact sign: −1, 0 or +1.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if let Some(s) = self.enclosure().sign() {
            return s;
        }
        let mut bits = 32u32;
        loop {
            let iv = self.refine_bits(bits);
            if let Some(s) = iv.sign() {
                return s;
            }
            bits = bits.saturating_mul(2);
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Result<Ordering, NumfieldError> {
        Ok(self.try_sub(other)?.sign().cmp(&0))
    }

    /// The unique integer k with k ≤ self < k + 1.
    pub fn floor(&self) -> BigInt {
        if let Some(r) = self.as_rational() {
            return r.floor().to_integer();
        }
        let mut iv = self.enclosure();
        let mut bits = 0u32;
        while iv.width() >= Rational::one() {
            bits += 8;
            iv = self.refine_bits(bits);
        }
        let lo = iv.lo.floor().to_integer();
        let hi = iv.hi.floor().to_integer();
        if lo == hi {
            return lo;
        }
        // hi = lo + 1: decide against the integer in between
        let k = Self::from_integer(&self.field, hi.clone());
        match self.try_sub(&k).expect("same field").sign() {
            s if s >= 0 => hi,
            _ => lo,
        }
    }

    /// Certified enclosure of `self·2^bits` by integers `lo ≤ v·2^bits ≤ hi`.
    pub fn fixed_point_enclosure(&self, bits: u32) -> (BigInt, BigInt) {
        let scale = pow2(bits);
        if let Some(r) = self.as_rational() {
            let v = r * scale;
            return (v.floor().to_integer(), v.ceil().to_integer());
        }
        let iv = self.refine_bits(bits);
        ((&iv.lo * &scale).floor().to_integer(), (&iv.hi * &scale).ceil().to_integer())
    }

    /// Decimal rendering with `digits` significant digits, rounded half to even.
    pub fn to_decimal(&self, digits: u32) -> String {
        if let Some(r) = self.as_rational() {
            return rational_to_decimal(&r, digits);
        }
        let neg = self.sign() < 0;
        let mut bits = 16u32;
        loop {
            let iv = self.refine_bits(bits);
            let (a, b) = if neg { (-iv.hi.clone(), -iv.lo.clone()) } else { (iv.lo.clone(), iv.hi.clone()) };
            if a.is_positive() {
                let ra = round_sig(&a, digits);
                let rb = round_sig(&b, digits);
                if ra == rb {
                    let (mantissa, exp) = ra;
                    return format_decimal(neg, &mantissa, exp, digits);
                }
            }
            bits = bits.saturating_mul(2);
        }
    }
}

/// Decimal exponent e with 10^e ≤ x < 10^(e+1), for x > 0.
fn decimal_exponent(x: &Rational) -> i64 {
    let ten = Rational::from_integer(10.into());
    let mut e = (x.numer().bits() as i64 - x.denom().bits() as i64) * 30103 / 100000;
    let pow = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from_integer(num_traits::pow(BigInt::from(10), e as usize))
        } else {
            Rational::from_integer(num_traits::pow(BigInt::from(10), (-e) as usize)).recip()
        }
    };
    loop {
        let p = pow(e);
        if &p > x {
            e -= 1;
        } else if &(p * &ten) <= x {
            e += 1;
        } else {
            return e;
        }
    }
}

/// Rounds x > 0 to `digits` significant digits; returns (mantissa, e) with
/// mantissa·10^(e − digits + 1) the rounded value.
fn round_sig(x: &Rational, digits: u32) -> (BigInt, i64) {
    let mut e = decimal_exponent(x);
    let shift = digits as i64 - 1 - e;
    let scaled = if shift >= 0 {
        x * Rational::from_integer(num_traits::pow(BigInt::from(10), shift as usize))
    } else {
        x / Rational::from_integer(num_traits::pow(BigInt::from(10), (-shift) as usize))
    };
    let fl = scaled.floor().to_integer();
    let frac = &scaled - Rational::from_integer(fl.clone());
    let half = Rational::new(1.into(), 2.into());
    let mut m = match frac.cmp(&half) {
        Ordering::Less => fl,
        Ordering::Greater => fl + 1,
        Ordering::Equal => {
            if fl.is_even() {
                fl
            } else {
                fl + 1
            }
        }
    };
    if m == num_traits::pow(BigInt::from(10), digits as usize) {
        m /= 10;
        e += 1;
    }
    (m, e)
}

fn format_decimal(neg: bool, mantissa: &BigInt, exp: i64, digits: u32) -> String {
    let mut s = mantissa.to_string();
    while s.len() < digits as usize {
        s.push('0');
    }
    let sign = if neg { "-" } else { "" };
    if !(-7..30).contains(&exp) {
        let (head, tail) = s.split_at(1);
        return format!("{sign}{head}.{tail}e{exp}");
    }
    if exp >= 0 {
        let int_len = exp as usize + 1;
        if int_len >= s.len() {
            let zeros = "0".repeat(int_len - s.len());
            format!("{sign}{s}{zeros}")
        } else {
            let (a, b) = s.split_at(int_len);
            format!("{sign}{a}.{b}")
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("{sign}0.{zeros}{s}")
    }
}

pub(crate) fn rational_to_decimal(r: &Rational, digits: u32) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let (m, e) = round_sig(&r.abs(), digits);
    let mut s = format_decimal(r.is_negative(), &m, e, digits);
    if s.contains('.') && !s.contains('e') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Serialized as the exact expression, the power-basis coordinates, the
/// defining field and a 30-digit decimal.
impl serde::Serialize for AlgebraicNumber {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("AlgebraicNumber", 4)?;
        s.serialize_field("exact", &self.to_string())?;
        s.serialize_field("coords", &self.coords.iter().map(ToString::to_string).collect::<Vec<_>>())?;
        s.serialize_field("field", &self.field.to_string())?;
        s.serialize_field("decimal", &self.to_decimal(30))?;
        s.end()
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({}) in {}", c.join(", "), self.field)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.field.variable();
        let mut parts = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = if c.is_integer() { c.to_string() } else { format!("({c})") };
            parts.push(match i {
                0 => c,
                1 => format!("{c}*{v}"),
                _ => format!("{c}*{v}^{i}"),
            });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn sqrt2_field() -> Arc<NumberField> {
        NumberField::quadratic(2).unwrap()
    }

    fn el(f: &Arc<NumberField>, c: &[(i64, i64)]) -> AlgebraicNumber {
        AlgebraicNumber::from_coords(f, c.iter().map(|&(n, d)| r(n, d)).collect()).unwrap()
    }

    fn cubic(c0: i64, c1: i64, lo: Rational, hi: Rational) -> Arc<NumberField> {
        let p = [c0, c1, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        NumberField::new(p, lo, hi, "t").unwrap()
    }

    #[test]
    fn add_examples() {
        let f = sqrt2_field();
        let a = el(&f, &[(0, 1), (1, 1)]);
        assert_eq!(a.try_add(&a).unwrap().coords(), &[r(0, 1), r(2, 1)]);
        let b = el(&f, &[(1, 1), (1, 1)]);
        let c = el(&f, &[(1, 1), (-1, 1)]);
        assert_eq!(b.try_add(&c).unwrap().coords(), &[r(2, 1), r(0, 1)]);
        assert_eq!(a.try_add(&AlgebraicNumber::zero(&f)).unwrap(), a);
    }

    #[test]
    fn mul_examples() {
        let f = sqrt2_field();
        let s = el(&f, &[(0, 1), (1, 1)]);
        assert_eq!(s.try_mul(&s).unwrap().coords(), &[r(2, 1), r(0, 1)]);
        let g = cubic(-1, 1, r(0, 1), r(1, 1));
        let t = el(&g, &[(0, 1), (1, 1), (0, 1)]);
        let t2 = el(&g, &[(0, 1), (0, 1), (1, 1)]);
        assert_eq!(t.try_mul(&t2).unwrap().coords(), &[r(1, 1), r(-1, 1), r(0, 1)]);
        assert_eq!(t.try_mul(&AlgebraicNumber::one(&g)).unwrap(), t);
    }

    #[test]
    fn inv_examples() {
        let f = sqrt2_field();
        let s = el(&f, &[(0, 1), (1, 1)]);
        assert_eq!(s.inv().unwrap().coords(), &[r(0, 1), r(1, 2)]);
        let g = cubic(-1, -1, r(1, 1), r(2, 1));
        let t = AlgebraicNumber::generator(&g);
        assert_eq!(t.inv().unwrap().coords(), &[r(-1, 1), r(0, 1), r(1, 1)]);
        assert_eq!(AlgebraicNumber::one(&g).inv().unwrap(), AlgebraicNumber::one(&g));
        assert!(matches!(AlgebraicNumber::zero(&g).inv(), Err(NumfieldError::DivisionByZero)));
    }

    #[test]
    fn sign_examples() {
        let f = sqrt2_field();
        assert_eq!(AlgebraicNumber::zero(&f).sign(), 0);
        assert_eq!(el(&f, &[(-1, 1), (1, 1)]).sign(), 1);
        assert_eq!(el(&f, &[(3, 2), (-1, 1)]).sign(), 1);
        assert_eq!(el(&f, &[(-3, 2), (1, 1)]).sign(), -1);
        // 99/70 − √2 ≈ 7.2e−5, needs refinement
        assert_eq!(el(&f, &[(99, 70), (-1, 1)]).sign(), 1);
        assert_eq!(el(&f, &[(-577, 408), (1, 1)]).sign(), -1);
    }

    #[test]
    fn floor_examples() {
        let f = sqrt2_field();
        assert_eq!(AlgebraicNumber::from_rational(&f, r(7, 2)).floor(), BigInt::from(3));
        assert_eq!(el(&f, &[(0, 1), (1, 1)]).floor(), BigInt::from(1));
        assert_eq!(el(&f, &[(0, 1), (-1, 1)]).floor(), BigInt::from(-2));
        assert_eq!(AlgebraicNumber::from_integer(&f, -3).floor(), BigInt::from(-3));
        // 1000√2 = 1414.21…
        assert_eq!(el(&f, &[(0, 1), (1000, 1)]).floor(), BigInt::from(1414));
    }

    #[test]
    fn field_mismatch() {
        let a = AlgebraicNumber::generator(&sqrt2_field());
        let b = AlgebraicNumber::generator(&NumberField::quadratic(3).unwrap());
        assert!(matches!(a.try_add(&b), Err(NumfieldError::FieldMismatch)));
        assert!(matches!(a.try_mul(&b), Err(NumfieldError::FieldMismatch)));
    }

    #[test]
    fn decimals() {
        let f = sqrt2_field();
        let s = AlgebraicNumber::generator(&f);
        assert_eq!(s.to_decimal(30), "1.41421356237309504880168872421");
        assert_eq!(s.neg().to_decimal(5), "-1.4142");
        assert_eq!(AlgebraicNumber::from_rational(&f, r(1, 8)).to_decimal(30), "0.125");
        assert_eq!(rational_to_decimal(&r(5, 2), 1), "2");
        assert_eq!(rational_to_decimal(&r(7, 2), 1), "4");
        let big = el(&f, &[(0, 1), (1_000_000_000, 1)]);
        assert_eq!(big.to_decimal(12), "1414213562.37");
    }

    #[test]
    fn fixed_point_enclosure_brackets() {
        let s = AlgebraicNumber::generator(&sqrt2_field());
        let (lo, hi) = s.fixed_point_enclosure(64);
        let two128 = BigInt::one() << 129u32;
        assert!(&lo * &lo <= two128);
        assert!(&hi * &hi >= two128);
        assert!(&hi - &lo <= BigInt::from(2));
    }
}
