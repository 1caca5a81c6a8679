//! Integer linear relations among field elements, by exact lattice kernel
//! computation on the coordinate matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AlgebraicNumber, NumfieldError};

/// A ℤ-basis of `{c ∈ ℤ^k : Σ c_i v_i = 0}` in echelon form with each
/// vector's first nonzero entry positive.
pub fn rational_relations(values: &[AlgebraicNumber]) -> Result<Vec<Vec<BigInt>>, NumfieldError> {
    let Some(first) = values.first() else {
        return Ok(Vec::new());
    };
    for v in &values[1..] {
        if !v.field().same_as(first.field()) {
            return Err(NumfieldError::FieldMismatch);
        }
    }
    let rows = integer_coordinate_rows(values);
    Ok(integer_kernel(&rows, values.len()))
}

/// Coordinate matrix with each row scaled to integers (row i = coordinate i).
fn integer_coordinate_rows(values: &[AlgebraicNumber]) -> Vec<Vec<BigInt>> {
    let d = values[0].coords().len();
    (0..d)
        .map(|i| {
            let lcm = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.coords()[i].denom()));
            values
                .iter()
                .map(|v| {
                    let c = &v.coords()[i];
                    c.numer() * (&lcm / c.denom())
                })
                .collect()
        })
        .collect()
}

/// ℤ-basis of the integer kernel of an integer matrix with `k` columns,
/// via column-style Hermite reduction tracking the unimodular transform.
pub(crate) fn integer_kernel(rows: &[Vec<BigInt>], k: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    // transform columns: u[j] is the combination giving current column j
    let mut u: Vec<Vec<BigInt>> =
        (0..k).map(|j| (0..k).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut pivot_col = 0;
    for row in 0..a.len() {
        if pivot_col >= k {
            break;
        }
        // Euclid on columns pivot_col.. restricted to this row
        loop {
            let mut best: Option<usize> = None;
            for j in pivot_col..k {
                if !a[row][j].is_zero() && best.is_none_or(|b| a[row][j].abs() < a[row][b].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            swap_columns(&mut a, &mut u, pivot_col, b);
            let mut done = true;
            for j in pivot_col + 1..k {
                if a[row][j].is_zero() {
                    continue;
                }
                let q = a[row][j].div_floor(&a[row][pivot_col]);
                sub_column_multiple(&mut a, &mut u, j, pivot_col, &q);
                if !a[row][j].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot_col += 1;
                break;
            }
        }
    }
    let mut basis: Vec<Vec<BigInt>> = u[pivot_col..].to_vec();
    echelonize(&mut basis);
    basis
}

fn swap_columns(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    u.swap(i, j);
}

/// column j −= q · column p
fn sub_column_multiple(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], j: usize, p: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let t = &row[p] * q;
        row[j] -= t;
    }
    let (src, dst) = if p < j {
        let (l, r) = u.split_at_mut(j);
        (&l[p], &mut r[0])
    } else {
        let (l, r) = u.split_at_mut(p);
        (&r[0], &mut l[j])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= s * q;
    }
}

/// Row Hermite normal form of a lattice basis (rows), positive pivots,
/// entries above pivots reduced into [0, pivot).
pub(crate) fn echelonize(basis: &mut Vec<Vec<BigInt>>) {
    let Some(k) = basis.first().map(Vec::len) else { return };
    let mut r = 0;
    for col in 0..k {
        if r >= basis.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..basis.len() {
                if !basis[i][col].is_zero() && best.is_none_or(|b| basis[i][col].abs() < basis[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            basis.swap(r, b);
            let mut done = true;
            for i in r + 1..basis.len() {
                if basis[i][col].is_zero() {
                    continue;
                }
                let q = basis[i][col].div_floor(&basis[r][col]);
                let pivot_row = basis[r].clone();
                for (x, y) in basis[i].iter_mut().zip(&pivot_row) {
                    *x -= y * &q;
                }
                if !basis[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                if basis[r][col].is_negative() {
                    for x in basis[r].iter_mut() {
                        *x = -x.clone();
                    }
                }
                for i in 0..r {
                    let q = basis[i][col].div_floor(&basis[r][col]);
                    if !q.is_zero() {
                        let pivot_row = basis[r].clone();
                        for (x, y) in basis[i].iter_mut().zip(&pivot_row) {
                            *x -= y * &q;
                        }
                    }
                }
                r += 1;
                break;
            }
        }
    }
    basis.retain(|v| v.iter().any(|x| !x.is_zero()));
}

/// Scales an integer vector to coprime entries with its first nonzero entry positive.
pub fn normalize_primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let flip = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    v.iter()
        .map(|x| {
            let y = x / &g;
            if flip {
                -y
            } else {
                y
            }
        })
        .collect()
}

/// The coprime relation among three elements when the relation lattice has
/// rank exactly one; `None` when there is no relation.
pub fn primitive_relation(values: &[AlgebraicNumber; 3]) -> Result<Option<[BigInt; 3]>, NumfieldError> {
    let basis = rational_relations(values)?;
    match basis.len() {
        0 => Ok(None),
        1 => {
            let v = normalize_primitive(&basis[0]);
            Ok(Some([v[0].clone(), v[1].clone(), v[2].clone()]))
        }
        rank => Err(NumfieldError::AmbiguousRelation { rank }),
    }
}
