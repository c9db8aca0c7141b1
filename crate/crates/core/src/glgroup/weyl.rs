//! Weyl elements.

use super::matrix::Matrix;

/// Antidiagonal of ones.
pub fn w_long(n: usize) -> Matrix {
    Matrix::from_fn(n, |i, j| (i + j == n - 1) as u32)
}

/// w_{n,m} = (0 I_m; I_n 0) of size n+m, the top-left zero block being m×n, so
/// that diag(g_2, g_1)·w_{n,m} = w_{n,m}·diag(g_1, g_2) for g_1 ∈ GL_n, g_2 ∈ GL_m.
pub fn w_nm(n: usize, m: usize) -> Matrix {
    let mut w = Matrix::zero(n + m);
    for i in 0..m {
        w.set(i, n + i, 1);
    }
    for i in 0..n {
        w.set(m + i, i, 1);
    }
    w
}

/// Block antidiagonal with identity blocks of sizes (from the top) n_1, …, n_r
/// placed so the permutation reverses the block order of the columns.
pub fn w_blocks(sizes: &[usize]) -> Matrix {
    let total: usize = sizes.iter().sum();
    let mut w = Matrix::zero(total);
    // row block b (size sizes[b]) maps to the column block of the same size
    // counted from the right
    let mut row = 0;
    let mut col_end = total;
    for &s in sizes {
        let col = col_end - s;
        for i in 0..s {
            w.set(row + i, col + i, 1);
        }
        row += s;
        col_end = col;
    }
    w
}
