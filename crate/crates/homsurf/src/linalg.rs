//! Exact linear algebra over the rationals: rank, reduced echelon form,
//! nullspace, inversion, and Sylvester reduction of symmetric forms.
//!
//! Every rank decision in the crate goes through this module; floating
//! point is never used here.

// Index loops mirror the simultaneous row/column updates of the algorithms.
#![allow(clippy::needless_range_loop)]

use crate::rat::Rat;
use num::traits::{One, Signed, Zero};

pub type RatVec = Vec<Rat>;
pub type RatMat = Vec<Vec<Rat>>;

/// Reduced row echelon form. Returns the reduced matrix (zero rows removed)
/// together with the pivot column of each remaining row.
pub fn rref(rows: &[RatVec]) -> (RatMat, Vec<usize>) {
    let mut mat: RatMat = rows.to_vec();
    let ncols = mat.iter().map(|r| r.len()).max().unwrap_or(0);
    for r in &mut mat {
        r.resize(ncols, Rat::zero());
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        let inv = mat[row][col].clone();
        for v in &mut mat[row] {
            *v = &*v / &inv;
        }
        for r in 0..mat.len() {
            if r != row && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in 0..ncols {
                    let sub = &f * &mat[row][c];
                    mat[r][c] = &mat[r][c] - &sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == mat.len() {
            break;
        }
    }
    mat.truncate(row);
    (mat, pivots)
}

/// Exact rank of a rational matrix.
pub fn rank(rows: &[RatVec]) -> usize {
    rref(rows).0.len()
}

/// True when `v` lies in the row span of `rows`.
pub fn in_row_span(rows: &[RatVec], v: &RatVec) -> bool {
    let r0 = rank(rows);
    let mut ext = rows.to_vec();
    ext.push(v.clone());
    rank(&ext) == r0
}

/// Basis for the right nullspace of the matrix (rows × cols).
pub fn nullspace(rows: &[RatVec], ncols: usize) -> Vec<RatVec> {
    let (red, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![Rat::zero(); ncols];
        v[fc] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -red[r][fc].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves `A x = b` exactly; `None` when inconsistent. With multiple
/// solutions the free variables are set to zero.
pub fn solve(a: &[RatVec], b: &[Rat]) -> Option<RatVec> {
    let ncols = a.iter().map(|r| r.len()).max().unwrap_or(0);
    let aug: RatMat = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.resize(ncols, Rat::zero());
            r.push(rhs.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.contains(&ncols) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![Rat::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = red[r][ncols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix; `None` when singular.
pub fn invert(a: &[RatVec]) -> Option<RatMat> {
    let n = a.len();
    let aug: RatMat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "invert: matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Matrix product.
#[cfg(test)]
pub fn mat_mul(a: &[RatVec], b: &[RatVec]) -> RatMat {
    let n = a.len();
    let m = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = vec![vec![Rat::zero(); m]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                let add = aik * &b[k][j];
                out[i][j] = &out[i][j] + &add;
            }
        }
    }
    out
}

/// Signature `(positive, negative, zero)` of a symmetric rational matrix,
/// computed by exact congruence reduction (Sylvester's law keeps the
/// counts invariant).
pub fn signature(sym: &[RatVec]) -> (usize, usize, usize) {
    let n = sym.len();
    let mut a: RatMat = sym.to_vec();
    debug_assert!(a.iter().all(|r| r.len() == n));
    let (mut pos, mut neg) = (0usize, 0usize);
    let mut step = 0;
    while step < n {
        // Find a nonzero diagonal pivot at or below `step`.
        let diag = (step..n).find(|&i| !a[i][i].is_zero());
        let p = match diag {
            Some(p) => p,
            None => {
                // All remaining diagonal entries vanish; a nonzero
                // off-diagonal pair (i, j) yields a nonzero diagonal after
                // the congruence e_i -> e_i + e_j.
                let mut found = None;
                'outer: for i in step..n {
                    for j in (i + 1)..n {
                        if !a[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = found else {
                    break; // remaining block is zero
                };
                for c in 0..n {
                    let add = a[j][c].clone();
                    a[i][c] = &a[i][c] + &add;
                }
                for r in 0..n {
                    let add = a[r][j].clone();
                    a[r][i] = &a[r][i] + &add;
                }
                i
            }
        };
        // Move the pivot to position `step` (congruence permutation).
        if p != step {
            a.swap(p, step);
            for r in 0..n {
                a[r].swap(p, step);
            }
        }
        let pivot = a[step][step].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        // Clear row and column `step` below the pivot.
        for r in (step + 1)..n {
            if a[r][step].is_zero() {
                continue;
            }
            let f = &a[r][step] / &pivot;
            for c in 0..n {
                let sub = &f * &a[step][c];
                a[r][c] = &a[r][c] - &sub;
            }
            for rr in 0..n {
                let sub = &f * &a[rr][step];
                a[rr][r] = &a[rr][r] - &sub;
            }
        }
        step += 1;
    }
    (pos, neg, n - pos - neg)
}
