//! Left U_n-cosets: canonical representatives by bottom-up row elimination.

use super::group::GlGroup;
use super::matrix::Matrix;
use crate::algebra::Field;

/// (c, v) with v ∈ U_n and c = v·g the canonical representative of U_n·g.
///
/// Rows are processed from the bottom. Row i is reduced against every lower
/// row j (taken from j = n−1 down to i+1) by clearing its entry in the pivot
/// column of row j, where the pivot is the leftmost nonzero entry.
pub fn coset_canonical_with(g: &Matrix, f: &Field) -> (Matrix, Matrix) {
    let n = g.n();
    let mut c = *g;
    let mut v = Matrix::identity(n);
    let mut pivots = [0usize; super::matrix::MAX_DIM];
    pivots[n - 1] = leftmost(&c, n - 1);
    for i in (0..n.saturating_sub(1)).rev() {
        for j in (i + 1..n).rev() {
            let pj = pivots[j];
            let a = c.get(i, pj);
            if a != 0 {
                let s = f.neg(f.div(a, c.get(j, pj)).unwrap());
                c.row_axpy(i, j, s, f);
                v.row_axpy(i, j, s, f);
            }
        }
        pivots[i] = leftmost(&c, i);
    }
    (c, v)
}

fn leftmost(m: &Matrix, row: usize) -> usize {
    (0..m.n())
        .find(|&j| m.get(row, j) != 0)
        .expect("invertible matrix has no zero row")
}

pub fn coset_canonical(g: &Matrix, f: &Field) -> Matrix {
    coset_canonical_with(g, f).0
}

/// U_n\G transversal: the canonical elements, in index order.
pub fn coset_reps_u(group: &GlGroup) -> Vec<Matrix> {
    let f = group.field();
    group
        .elements()
        .filter(|g| coset_canonical(g, f) == *g)
        .collect()
}
