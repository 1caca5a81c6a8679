//! Slow, direct reference computations. Nothing here shares code with the
//! `cubeword` engines; each function is the most literal reading of its
//! definition.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// p(0..=n_max) of a finite word by hashing every factor.
pub fn naive_factor_counts(letters: &[u8], n_max: usize) -> Vec<u64> {
    (0..=n_max)
        .map(|n| match n {
            0 => 1,
            _ => letters.windows(n).collect::<HashSet<_>>().len() as u64,
        })
        .collect()
}

/// Number of distinct length-`n` factors of the bi-infinite periodic word
/// with period block `block`, for n in 0..=n_max.
pub fn cyclic_factor_counts(block: &[u8], n_max: usize) -> Vec<u64> {
    let p = block.len();
    (0..=n_max)
        .map(|n| {
            (0..p).map(|i| (0..n).map(|k| block[(i + k) % p]).collect::<Vec<u8>>()).collect::<HashSet<_>>().len() as u64
        })
        .collect()
}

fn ratio(q: (i64, i64)) -> BigRational {
    BigRational::new(q.0.into(), q.1.into())
}

/// Two coordinates reach an integer at the same instant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tie {
    pub step: usize,
    pub letters: (u8, u8),
}

/// Coding of `start + t·dir`, t > 0, for rational data given as
/// (numerator, denominator) pairs, by comparing crossing times exactly.
pub fn rational_orbit_word(dir: &[(i64, i64)], start: &[(i64, i64)], len: usize) -> Result<Vec<u8>, Tie> {
    let dir: Vec<BigRational> = dir.iter().map(|&q| ratio(q)).collect();
    let start: Vec<BigRational> = start.iter().map(|&q| ratio(q)).collect();
    let mut next: Vec<BigInt> = start.iter().map(|x| x.floor().to_integer() + 1).collect();
    let mut out = Vec::with_capacity(len);
    for step in 0..len {
        let times: Vec<BigRational> =
            (0..dir.len()).map(|i| (BigRational::from_integer(next[i].clone()) - &start[i]) / &dir[i]).collect();
        let mut best = 0;
        for i in 1..times.len() {
            if times[i] < times[best] {
                best = i;
            }
        }
        if let Some(j) = (0..times.len()).find(|&j| j != best && times[j] == times[best]) {
            return Err(Tie { step, letters: (best.min(j) as u8 + 1, best.max(j) as u8 + 1) });
        }
        out.push(best as u8 + 1);
        next[best] += 1;
    }
    Ok(out)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Letters per closed orbit of a rational direction: the sum of the
/// coordinates of the primitive integer vector along `dir`.
pub fn rational_period(dir: &[(i64, i64)]) -> u64 {
    let lcm = dir.iter().fold(1i64, |l, &(_, d)| l / gcd(l, d) * d);
    let ints: Vec<i64> = dir.iter().map(|&(n, d)| n * (lcm / d)).collect();
    let g = ints.iter().fold(0, |g, &x| gcd(g, x));
    ints.iter().map(|&x| (x / g) as u64).sum()
}

/// Root of `f` in `[lo, hi]` by bisection; `f(lo)` and `f(hi)` must differ in sign.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let lo_sign = f(lo) < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All nonzero integer vectors c with |c_i| ≤ bound and Σ c_i·v_i = 0, where
/// `coords[i]` lists the rational coordinates of v_i in any fixed basis,
/// scaled to integers by a common factor.
pub fn exhaustive_relations(coords: &[Vec<i64>], bound: i64) -> Vec<Vec<i64>> {
    let k = coords.len();
    let dim = coords.iter().map(Vec::len).max().unwrap_or(0);
    let side = (2 * bound + 1) as usize;
    let total = side.pow(k as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let c: Vec<i64> = (0..k)
            .map(|_| {
                let d = (rest % side) as i64 - bound;
                rest /= side;
                d
            })
            .collect();
        if c.iter().all(|&x| x == 0) {
            continue;
        }
        let zero = (0..dim)
            .all(|j| (0..k).map(|i| c[i] as i128 * coords[i].get(j).copied().unwrap_or(0) as i128).sum::<i128>() == 0);
        if zero {
            out.push(c);
        }
    }
    out
}

/// Whether Σ relation_i·v_i = 0 for the integer coordinate vectors `coords`.
pub fn annihilates(coords: &[Vec<i64>], relation: &[BigInt]) -> bool {
    let dim = coords.iter().map(Vec::len).max().unwrap_or(0);
    relation.len() == coords.len()
        && (0..dim).all(|j| {
            relation
                .iter()
                .zip(coords)
                .map(|(c, v)| c * BigInt::from(v.get(j).copied().unwrap_or(0)))
                .sum::<BigInt>()
                .is_zero()
        })
}

/// Row-reduces `rows` over ℚ and returns the reduced nonzero rows with their pivot columns.
fn echelon(rows: &[Vec<BigRational>]) -> Vec<(usize, Vec<BigRational>)> {
    let mut rows: Vec<Vec<BigRational>> = rows.to_vec();
    let width = rows.first().map_or(0, Vec::len);
    let mut out: Vec<(usize, Vec<BigRational>)> = Vec::new();
    for col in 0..width {
        let Some(p) = rows.iter().position(|r| !r[col].is_zero()) else { continue };
        let pivot = rows.remove(p);
        let pivot: Vec<BigRational> = pivot.iter().map(|x| x / &pivot[col]).collect();
        for r in rows.iter_mut().chain(out.iter_mut().map(|(_, r)| r)) {
            let f = r[col].clone();
            if !f.is_zero() {
                for (x, y) in r.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        out.push((col, pivot));
    }
    out
}

/// Rank of a list of integer vectors over ℚ.
pub fn rank(vectors: &[Vec<BigInt>]) -> usize {
    let rows: Vec<Vec<BigRational>> =
        vectors.iter().map(|v| v.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    echelon(&rows).len()
}

/// Whether `v` is an integer combination of the linearly independent `basis`.
pub fn in_integer_span(basis: &[Vec<BigInt>], v: &[i64]) -> bool {
    let r = basis.len();
    if r == 0 {
        return v.iter().all(|&x| x == 0);
    }
    // columns = basis vectors, augmented with v; solve B·k = v
    let n = v.len();
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| BigRational::from_integer(b[i].clone())).collect();
            row.push(BigRational::from_integer(v[i].into()));
            row
        })
        .collect();
    let reduced = echelon(&rows);
    if reduced.iter().any(|(col, _)| *col == r) {
        return false;
    }
    reduced.len() == r && reduced.iter().all(|(_, row)| row[r].denom().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_counts_small_word() {
        assert_eq!(naive_factor_counts(b"abab", 4), vec![1, 2, 2, 2, 1]);
        assert_eq!(naive_factor_counts(b"ab", 3), vec![1, 2, 1, 0]);
    }

    #[test]
    fn cyclic_counts() {
        assert_eq!(cyclic_factor_counts(&[1, 2, 2], 4), vec![1, 2, 3, 3, 3]);
    }

    #[test]
    fn rational_word_slope_half() {
        // x advances twice as fast as y: 1 1 2 1 1 2 ...
        let w = rational_orbit_word(&[(1, 1), (1, 2)], &[(1, 7), (1, 11)], 6).unwrap();
        assert_eq!(w, vec![1, 2, 1, 1, 2, 1]);
        assert!(rational_orbit_word(&[(1, 1), (1, 1)], &[(0, 1), (0, 1)], 2).is_err());
    }

    #[test]
    fn period_of_rational_direction() {
        assert_eq!(rational_period(&[(1, 1), (2, 3), (5, 7)]), 50);
        assert_eq!(rational_period(&[(2, 1), (4, 1)]), 3);
    }

    #[test]
    fn bisection_finds_sqrt2() {
        assert!((bisect(|x| x * x - 2.0, 1.0, 2.0) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn relations_of_rationals() {
        // 1, 2, 3 as rationals: relations span {(2,-1,0), (3,0,-1)}
        let coords = vec![vec![1], vec![2], vec![3]];
        let all = exhaustive_relations(&coords, 3);
        assert!(all.contains(&vec![2, -1, 0]));
        assert!(all.contains(&vec![1, 1, -1]));
        let basis = vec![
            vec![BigInt::from(2), BigInt::from(-1), BigInt::from(0)],
            vec![BigInt::from(3), BigInt::from(0), BigInt::from(-1)],
        ];
        assert!(all.iter().all(|c| in_integer_span(&basis, c)));
        assert!(!in_integer_span(&basis, &[1, 0, 0]));
        assert_eq!(rank(&basis), 2);
        assert!(annihilates(&coords, &basis[0]));
    }

    #[test]
    fn span_requires_integer_coefficients() {
        let basis = vec![vec![BigInt::from(2), BigInt::from(0)]];
        assert!(in_integer_span(&basis, &[4, 0]));
        assert!(!in_integer_span(&basis, &[1, 0]));
    }
}
