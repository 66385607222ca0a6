//! Gaussian elimination over any [`Field`].
//!
//! On exact backends every decision (pivot, rank, consistency) is exact. On
//! `f64` a pivot counts as zero when it is below `tol` times the largest entry
//! of the input.

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Default relative pivot tolerance for floating backends.
pub const FLOAT_RANK_TOLERANCE: f64 = 1e-10;

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn row_reduce<F: Field>(rows: &mut [Vec<F>], tol: f64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let scale = rows
        .iter()
        .flatten()
        .map(Field::magnitude)
        .fold(0.0, f64::max);
    let threshold = tol * scale;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let candidate = if F::EXACT {
            (r..rows.len()).find(|&i| !rows[i][c].is_zero())
        } else {
            (r..rows.len())
                .max_by(|&i, &j| rows[i][c].magnitude().total_cmp(&rows[j][c].magnitude()))
                .filter(|&i| rows[i][c].magnitude() > threshold)
        };
        let Some(p) = candidate else { continue };
        rows.swap(r, p);
        let inv = F::one() / rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v = v.clone() - factor.clone() * p.clone();
            }
            if !F::EXACT {
                row[c] = F::zero();
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>], tol: f64) -> usize {
    let mut work = rows.to_vec();
    row_reduce(&mut work, tol).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows with `ncols` columns.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize, tol: f64) -> Vec<Vec<F>> {
    let mut work = rows.to_vec();
    let pivots = row_reduce(&mut work, tol);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (row, &p) in work.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Least-squares solution of `A X = B` through the normal equations.
///
/// `a` is `m × n`, `b` is `m × k`; returns `X` as `n × k`. Fails when `A` has
/// rank below `n`.
pub fn solve_least_squares<F: Field>(a: &[Vec<F>], b: &[Vec<F>], tol: f64) -> Result<Vec<Vec<F>>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let k = b.first().map_or(0, Vec::len);
    if b.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: b.len(),
        });
    }
    let mut aug: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut row: Vec<F> = (0..n)
                .map(|j| (0..m).fold(F::zero(), |s, r| s + a[r][i].clone() * a[r][j].clone()))
                .collect();
            row.extend((0..k).map(|j| (0..m).fold(F::zero(), |s, r| s + a[r][i].clone() * b[r][j].clone())));
            row
        })
        .collect();
    let pivots = row_reduce(&mut aug, tol);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return Err(Error::Degenerate(format!(
            "linear system has rank {} < {n}",
            pivots.iter().filter(|&&p| p < n).count()
        )));
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Whether `v` lies in the row span of `rows`.
pub fn in_span<F: Field>(rows: &[Vec<F>], v: &[F], tol: f64) -> bool {
    let base = rank(rows, tol);
    let mut extended = rows.to_vec();
    extended.push(v.to_vec());
    rank(&extended, tol) == base
}
