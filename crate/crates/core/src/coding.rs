//! Cutting sequences of the translation flow `m + t·ω` on the D-torus.
//!
//! Letter `i` is emitted each time coordinate `i` of the line crosses an
//! integer, in order of crossing time. The D event streams are merged by
//! exact comparison; a certified fixed-point enclosure decides almost every
//! comparison with machine integers and the exact scalar is consulted only
//! when the enclosure straddles zero.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::numfield::{AlgebraicNumber, NumfieldError};
use crate::scalar::ExactScalar;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CodingError {
    #[error("direction coordinate {index} is not strictly positive")]
    NonPositiveCoordinate { index: usize },
    #[error("the orbit meets an edge of the lattice at t = {time} (≈ {approx}); letters {letters:?} tie")]
    SingularOrbit { time: String, approx: String, letters: [u8; 2] },
    #[error("word length must be at least 1")]
    EmptyWord,
    #[error(transparent)]
    Field(#[from] NumfieldError),
}

/// Flow direction with strictly positive coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction<T, const D: usize> {
    coords: [T; D],
}

impl<T: ExactScalar, const D: usize> Direction<T, D> {
    pub fn new(coords: [T; D]) -> Result<Self, CodingError> {
        for (i, c) in coords.iter().enumerate() {
            if c.signum() <= 0 {
                return Err(CodingError::NonPositiveCoordinate { index: i + 1 });
            }
        }
        for c in &coords[1..] {
            coords[0].sub(c)?;
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[T; D] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> &T {
        &self.coords[i]
    }

    /// Reorders coordinates: new coordinate `k` is old coordinate `perm[k]`.
    pub fn permuted(&self, perm: [usize; D]) -> Self {
        Self { coords: std::array::from_fn(|k| self.coords[perm[k]].clone()) }
    }

    /// Scales so that the first coordinate becomes 1.
    pub fn normalized(&self) -> Result<Self, CodingError> {
        let first = self.coords[0].clone();
        let mut out = Vec::with_capacity(D);
        for c in &self.coords {
            out.push(c.div(&first)?);
        }
        Ok(Self { coords: out.try_into().expect("length D") })
    }

    pub fn exact_strings(&self) -> Vec<String> {
        self.coords.iter().map(ExactScalar::exact).collect()
    }
}

/// Start point of the flow.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<T, const D: usize> {
    coords: [T; D],
}

impl<T: ExactScalar, const D: usize> Point<T, D> {
    pub fn new(coords: [T; D]) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[T; D] {
        &self.coords
    }

    pub fn permuted(&self, perm: [usize; D]) -> Self {
        Self { coords: std::array::from_fn(|k| self.coords[perm[k]].clone()) }
    }

    /// The default generic start (1/7, 1/11, 1/13, …) embedded next to `like`.
    pub fn default_for(like: &T) -> Self {
        const DENOMS: [i64; 4] = [7, 11, 13, 17];
        Self { coords: std::array::from_fn(|i| like.lift(Rational::new(1.into(), DENOMS[i].into()))) }
    }

    pub fn origin(like: &T) -> Self {
        Self { coords: std::array::from_fn(|_| like.lift(Rational::zero())) }
    }

    pub fn exact_strings(&self) -> Vec<String> {
        self.coords.iter().map(ExactScalar::exact).collect()
    }
}

/// Finite prefix of a coding word; letters are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicWord {
    pub letters: Vec<u8>,
    pub alphabet: usize,
    pub direction: Vec<String>,
    pub start: Vec<String>,
}

impl SymbolicWord {
    /// A bare word with no provenance.
    pub fn from_letters(letters: Vec<u8>, alphabet: usize) -> Self {
        Self { letters, alphabet, direction: Vec::new(), start: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn as_string(&self) -> String {
        self.letters.iter().map(|&l| char::from(b'0' + l)).collect()
    }
}

const FIXED_BITS: u32 = 64;

fn to_i128_pair((lo, hi): (BigInt, BigInt)) -> Option<(i128, i128)> {
    Some((lo.to_i128()?, hi.to_i128()?))
}

/// Decides `sign(k_i·ω_j − k_j·ω_i − c)` for one ordered pair of families.
struct PairComparator<T> {
    w_i: T,
    w_j: T,
    c: T,
    fast: Option<[(i128, i128); 3]>,
}

impl<T: ExactScalar> PairComparator<T> {
    fn new(w_i: &T, w_j: &T, x_i: &T, x_j: &T) -> Result<Self, NumfieldError> {
        let c = x_i.mul(w_j)?.sub(&x_j.mul(w_i)?)?;
        let fast = (|| {
            Some([
                to_i128_pair(w_i.fixed_point(FIXED_BITS))?,
                to_i128_pair(w_j.fixed_point(FIXED_BITS))?,
                to_i128_pair(c.fixed_point(FIXED_BITS))?,
            ])
        })();
        Ok(Self { w_i: w_i.clone(), w_j: w_j.clone(), c, fast })
    }

    fn fast_sign(&self, k_i: i64, k_j: i64) -> Option<i8> {
        let [wi, wj, c] = self.fast?;
        let (ki, kj) = (k_i as i128, k_j as i128);
        let span = |w: (i128, i128), k: i128| -> Option<(i128, i128)> {
            let a = w.0.checked_mul(k)?;
            let b = w.1.checked_mul(k)?;
            Some((a.min(b), a.max(b)))
        };
        let a = span(wj, ki)?;
        let b = span(wi, kj)?;
        let lo = a.0.checked_sub(b.1)?.checked_sub(c.1)?;
        let hi = a.1.checked_sub(b.0)?.checked_sub(c.0)?;
        if lo > 0 {
            Some(1)
        } else if hi < 0 {
            Some(-1)
        } else {
            None
        }
    }

    fn sign(&self, k_i: i64, k_j: i64) -> Result<i8, NumfieldError> {
        if let Some(s) = self.fast_sign(k_i, k_j) {
            return Ok(s);
        }
        let v = self.w_j.lift_int(k_i).mul(&self.w_j)?.sub(&self.w_i.lift_int(k_j).mul(&self.w_i)?)?.sub(&self.c)?;
        Ok(v.signum())
    }
}

/// Streaming generator of the cutting sequence; yields 1-based letters.
pub struct CuttingSequence<T, const D: usize> {
    direction: Direction<T, D>,
    start: Point<T, D>,
    /// next integer to be crossed by each coordinate
    next: [i64; D],
    /// comparators for pairs (i, j), i < j, in row-major order
    pairs: Vec<PairComparator<T>>,
    failed: bool,
}

impl<T: ExactScalar, const D: usize> CuttingSequence<T, D> {
    pub fn new(direction: &Direction<T, D>, start: &Point<T, D>) -> Result<Self, CodingError> {
        let mut next = [0i64; D];
        for (i, x) in start.coords.iter().enumerate() {
            // first integer strictly above x
            let k: BigInt = x.floor() + 1;
            next[i] = k.to_i64().ok_or(NumfieldError::InvalidField("start coordinate too large".into()))?;
        }
        let mut pairs = Vec::new();
        for i in 0..D {
            for j in i + 1..D {
                pairs.push(PairComparator::new(
                    &direction.coords[i],
                    &direction.coords[j],
                    &start.coords[i],
                    &start.coords[j],
                )?);
            }
        }
        Ok(Self { direction: direction.clone(), start: start.clone(), next, pairs, failed: false })
    }

    fn pair_index(i: usize, j: usize) -> usize {
        // offset of row i in the upper triangle plus column offset
        i * (2 * D - i - 1) / 2 + (j - i - 1)
    }

    /// sign(t_i − t_j) for the current heads of families i and j.
    fn compare(&self, i: usize, j: usize) -> Result<i8, NumfieldError> {
        if i < j {
            self.pairs[Self::pair_index(i, j)].sign(self.next[i], self.next[j])
        } else {
            Ok(-self.pairs[Self::pair_index(j, i)].sign(self.next[j], self.next[i])?)
        }
    }

    fn singular(&self, i: usize, j: usize) -> CodingError {
        let t = (|| {
            let x = &self.start.coords[i];
            x.lift_int(self.next[i]).sub(x)?.div(&self.direction.coords[i])
        })();
        match t {
            Ok(t) => CodingError::SingularOrbit {
                time: t.exact(),
                approx: t.decimal(30),
                letters: [i as u8 + 1, j as u8 + 1],
            },
            Err(e) => e.into(),
        }
    }

    fn step(&mut self) -> Result<u8, CodingError> {
        let mut best = 0;
        for j in 1..D {
            match self.compare(j, best)? {
                s if s < 0 => best = j,
                0 => return Err(self.singular(best, j)),
                _ => {}
            }
        }
        self.next[best] += 1;
        Ok(best as u8 + 1)
    }

    /// Collects the next `len` letters.
    pub fn take_letters(&mut self, len: usize) -> Result<Vec<u8>, CodingError> {
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push(self.step()?);
        }
        Ok(out)
    }
}

impl<T: ExactScalar, const D: usize> Iterator for CuttingSequence<T, D> {
    type Item = Result<u8, CodingError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let r = self.step();
        self.failed = r.is_err();
        Some(r)
    }
}

/// First `len` letters of the coding of the ray `start + t·direction`, t > 0.
pub fn cutting_word<T: ExactScalar, const D: usize>(
    direction: &Direction<T, D>,
    start: &Point<T, D>,
    len: usize,
) -> Result<SymbolicWord, CodingError> {
    if len == 0 {
        return Err(CodingError::EmptyWord);
    }
    let letters = CuttingSequence::new(direction, start)?.take_letters(len)?;
    Ok(SymbolicWord { letters, alphabet: D, direction: direction.exact_strings(), start: start.exact_strings() })
}

pub fn cutting_word_3d(
    direction: &Direction<AlgebraicNumber, 3>,
    start: &Point<AlgebraicNumber, 3>,
    len: usize,
) -> Result<SymbolicWord, CodingError> {
    cutting_word(direction, start, len)
}

pub fn cutting_word_2d(
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
    start: &Point<AlgebraicNumber, 2>,
    len: usize,
) -> Result<SymbolicWord, CodingError> {
    let direction = Direction::new([a.clone(), b.clone()])?;
    cutting_word(&direction, start, len)
}

/// Letter counts divided by the word length, one entry per letter.
pub fn orbit_letter_frequencies(word: &SymbolicWord) -> Vec<Rational> {
    let alphabet = word.alphabet.max(word.letters.iter().copied().max().unwrap_or(0) as usize);
    let mut counts = vec![0u64; alphabet];
    for &l in &word.letters {
        counts[l as usize - 1] += 1;
    }
    let n = BigInt::from(word.len().max(1));
    counts.into_iter().map(|c| Rational::new(c.into(), n.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::NumberField;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn diagonal_through_corner_is_singular() {
        let dir = Direction::new([r(1, 1), r(1, 1)]).unwrap();
        let start = Point::new([r(1, 2), r(1, 2)]);
        match cutting_word(&dir, &start, 5) {
            Err(CodingError::SingularOrbit { time, .. }) => assert_eq!(time, "1/2"),
            other => panic!("expected SingularOrbit, got {other:?}"),
        }
        // x − y = 1/2 never meets a lattice point
        let start = Point::new([r(1, 2), r(0, 1)]);
        assert_eq!(cutting_word(&dir, &start, 6).unwrap().as_string(), "121212");
        // a tie later in the word is caught too
        let dir = Direction::new([r(1, 1), r(1, 3)]).unwrap();
        let start = Point::new([r(0, 1), r(1, 3)]);
        match cutting_word(&dir, &start, 10) {
            Err(CodingError::SingularOrbit { time, .. }) => assert_eq!(time, "2"),
            other => panic!("expected SingularOrbit, got {other:?}"),
        }
    }

    #[test]
    fn rejects_nonpositive() {
        assert_eq!(Direction::new([r(1, 1), r(0, 1), r(1, 1)]), Err(CodingError::NonPositiveCoordinate { index: 2 }));
        assert_eq!(Direction::new([r(-1, 1), r(1, 1)]), Err(CodingError::NonPositiveCoordinate { index: 1 }));
    }

    #[test]
    fn half_slope_exact_order() {
        // x: 1/4 + t, y: 1/3 + t/2. x events at 3/4, 7/4, 11/4…; y events at 4/3, 10/3…
        let dir = Direction::new([r(1, 1), r(1, 2)]).unwrap();
        let start = Point::new([r(1, 4), r(1, 3)]);
        let w = cutting_word(&dir, &start, 8).unwrap();
        // t: 0.75(1) 1.33(2) 1.75(1) 2.75(1) 3.33(2) 3.75(1) 4.75(1) 5.33(2)
        assert_eq!(w.as_string(), "12112112");
    }

    #[test]
    fn first_letter_for_sqrt_direction() {
        let f = NumberField::sqrt2_sqrt3();
        let el =
            |c: &[(i64, i64)]| AlgebraicNumber::from_coords(&f, c.iter().map(|&(n, d)| r(n, d)).collect()).unwrap();
        let one = AlgebraicNumber::one(&f);
        let dir = Direction::new([
            one.clone(),
            el(&[(0, 1), (-9, 2), (0, 1), (1, 2)]),
            el(&[(0, 1), (11, 2), (0, 1), (-1, 2)]),
        ])
        .unwrap();
        let w = cutting_word_3d(&dir, &Point::default_for(&one), 20).unwrap();
        assert_eq!(w.letters[0], 3);
    }

    #[test]
    fn frequencies() {
        let w = SymbolicWord::from_letters(vec![1, 2, 3, 1, 2, 3], 3);
        assert_eq!(orbit_letter_frequencies(&w), vec![r(1, 3), r(1, 3), r(1, 3)]);
        let w = SymbolicWord::from_letters(vec![1, 1, 1], 3);
        assert_eq!(orbit_letter_frequencies(&w), vec![r(1, 1), r(0, 1), r(0, 1)]);
    }

    #[test]
    fn pair_index_layout() {
        assert_eq!(CuttingSequence::<Rational, 3>::pair_index(0, 1), 0);
        assert_eq!(CuttingSequence::<Rational, 3>::pair_index(0, 2), 1);
        assert_eq!(CuttingSequence::<Rational, 3>::pair_index(1, 2), 2);
        assert_eq!(CuttingSequence::<Rational, 4>::pair_index(2, 3), 5);
    }
}
