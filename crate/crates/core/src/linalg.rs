//! Small exact linear-algebra kernels over `BigRational` and `BigInt`.
//!
//! Matrices are row-major `Vec<Vec<_>>`. All routines are exact; sizes in this
//! crate are tiny (rank ≤ 12), so plain Gaussian elimination is used throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QMatrix = Vec<Vec<BigRational>>;
pub type ZMatrix = Vec<Vec<BigInt>>;

pub fn to_rational(m: &[Vec<BigInt>]) -> QMatrix {
    m.iter()
        .map(|row| row.iter().cloned().map(BigRational::from_integer).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut QMatrix, ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..nrows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..m[r].len() {
                    let delta = &f * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Indices of a maximal linearly independent subset of the columns of `m`,
/// chosen greedily from the left.
pub fn independent_columns(m: &[Vec<BigRational>]) -> Vec<usize> {
    if m.is_empty() {
        return Vec::new();
    }
    let ncols = m[0].len();
    let mut work = m.to_vec();
    rref(&mut work, ncols)
}

/// One solution of `a·x = b`, free variables set to zero; `None` when the
/// system is inconsistent.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.len(), b.len());
    let ncols = a.first().map_or(0, Vec::len);
    let mut aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = aug[row][ncols].clone();
    }
    Some(x)
}

/// Diagonal entries of a congruence diagonalization `Pᵀ·G·P = D` of a
/// symmetric rational matrix. Zero pivots are resolved by swapping in a
/// nonzero diagonal entry or, failing that, by the split `eᵢ ← eᵢ + eⱼ` on a
/// nonzero off-diagonal entry.
pub fn congruence_diagonal(gram: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = gram.len();
    let mut a = gram.to_vec();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(p) = (k + 1..n).find(|&p| !a[p][p].is_zero()) {
                a.swap(k, p);
                for row in a.iter_mut() {
                    row.swap(k, p);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row_k += row_j, col_k += col_j: new a_kk = 2·a_kj.
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_zero() {
            // Row k is identically zero on the remaining block.
            diag.push(pivot);
            continue;
        }
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &pivot;
            for c in k..n {
                let delta = &f * &a[k][c];
                a[r][c] -= delta;
            }
            for rr in k..n {
                let delta = &f * &a[rr][k];
                a[rr][r] -= delta;
            }
        }
        diag.push(pivot);
    }
    diag
}

/// Integer row echelon form `E = U·A` with `U` unimodular, tracked together
/// with `U⁻¹`. The first `rank` rows of `E` are nonzero and independent, the
/// remaining rows vanish.
pub struct IntEchelon {
    #[cfg_attr(not(test), allow(dead_code))]
    pub echelon: ZMatrix,
    pub transform: ZMatrix,
    pub inverse: ZMatrix,
    pub rank: usize,
}

fn identity(n: usize) -> ZMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn integer_row_echelon(a: &[Vec<BigInt>]) -> IntEchelon {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut e = a.to_vec();
    let mut u = identity(nrows);
    let mut uinv = identity(nrows);

    // Elementary row operation `row_i ← row_i + f·row_j` on E and U, with the
    // matching column operation `col_j ← col_j − f·col_i` on U⁻¹.
    fn add_row(m: &mut ZMatrix, i: usize, j: usize, f: &BigInt) {
        for c in 0..m[i].len() {
            let d = f * &m[j][c];
            m[i][c] += d;
        }
    }
    fn add_col(m: &mut ZMatrix, j: usize, i: usize, f: &BigInt) {
        for row in m.iter_mut() {
            let d = f * &row[i];
            row[j] -= d;
        }
    }

    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        // Euclid on the column below `row` until a single nonzero entry remains.
        loop {
            let nonzero: Vec<usize> = (row..nrows).filter(|&r| !e[r][col].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let p = *nonzero
                .iter()
                .min_by(|&&x, &&y| e[x][col].abs().cmp(&e[y][col].abs()))
                .unwrap();
            if p != row {
                e.swap(p, row);
                u.swap(p, row);
                for r in uinv.iter_mut() {
                    r.swap(p, row);
                }
            }
            let mut done = true;
            for r in row + 1..nrows {
                if e[r][col].is_zero() {
                    continue;
                }
                let q = e[r][col].div_floor(&e[row][col]);
                let f = -q;
                add_row(&mut e, r, row, &f);
                add_row(&mut u, r, row, &f);
                add_col(&mut uinv, row, r, &f);
                if !e[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !e[row][col].is_zero() {
            row += 1;
        }
    }
    IntEchelon { echelon: e, transform: u, inverse: uinv, rank: row }
}
