//! Exact dense linear algebra over ℚ: row reduction, rank, nullspace.
//! Matrices here are tiny (at most a few hundred rows), so plain Gaussian
//! elimination with exact rational pivots is the right tool.

use num_traits::{One, Zero};

use crate::polycore::Rational;

/// Row-reduce in place; returns the pivot column of each nonzero row.
fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pivot_row) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot_row);
        let inv = {
            let p = &rows[r][c];
            Rational::one() / p
        };
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in c..ncols {
                    let delta = &rows[r][j] * &factor;
                    rows[i][j] = &rows[i][j] - &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    pivots
}

/// Dimension of the span of the given row vectors.
pub(crate) fn span_dim(vectors: &[Vec<Rational>]) -> usize {
    let mut rows = vectors.to_vec();
    rref(&mut rows).len()
}

/// Rank of a matrix given as rows.
pub(crate) fn rank(rows: &[Vec<Rational>]) -> usize {
    span_dim(rows)
}

/// Basis of the right kernel {v : A v = 0} of a matrix given as rows.
pub(crate) fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut work = rows.to_vec();
    let pivots = rref(&mut work);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &pc) in work.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// dim(U ∩ W) for spans of row vectors, via
/// dim U + dim W − dim(U + W).
pub(crate) fn intersection_dim(u: &[Vec<Rational>], w: &[Vec<Rational>]) -> usize {
    let du = span_dim(u);
    let dw = span_dim(w);
    let mut all = u.to_vec();
    all.extend(w.iter().cloned());
    du + dw - span_dim(&all)
}
