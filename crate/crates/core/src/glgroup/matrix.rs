//! Small dense matrices over F_q.

use crate::algebra::{Elem, Field};
use std::fmt;

pub const MAX_DIM: usize = 8;

/// An n×n matrix, n ≤ [`MAX_DIM`]. Unused storage is always zero, so the
/// derived equality and hash are exact.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: u8,
    e: [Elem; MAX_DIM * MAX_DIM],
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl Matrix {
    pub fn zero(n: usize) -> Matrix {
        assert!(n <= MAX_DIM && n > 0, "matrix size {n} out of range");
        Matrix {
            n: n as u8,
            e: [0; MAX_DIM * MAX_DIM],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix::scalar(n, 1)
    }

    pub fn scalar(n: usize, a: Elem) -> Matrix {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m.set(i, i, a);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Matrix {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: &[&[Elem]]) -> Matrix {
        let n = rows.len();
        Matrix::from_fn(n, |i, j| rows[i][j])
    }

    pub fn diag(d: &[Elem]) -> Matrix {
        Matrix::from_fn(d.len(), |i, j| if i == j { d[i] } else { 0 })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.e[i * MAX_DIM + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.e[i * MAX_DIM + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn display(&self) -> String {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        format!("[{}]", rows.join("; "))
    }

    pub fn mul(&self, b: &Matrix, f: &Field) -> Matrix {
        let n = self.n();
        debug_assert_eq!(n, b.n());
        let mut c = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let bk = b.get(k, j);
                    if bk != 0 {
                        let v = f.add(c.get(i, j), f.mul(a, bk));
                        c.set(i, j, v);
                    }
                }
            }
        }
        c
    }

    pub fn add(&self, b: &Matrix, f: &Field) -> Matrix {
        Matrix::from_fn(self.n(), |i, j| f.add(self.get(i, j), b.get(i, j)))
    }

    pub fn scale(&self, a: Elem, f: &Field) -> Matrix {
        Matrix::from_fn(self.n(), |i, j| f.mul(a, self.get(i, j)))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.n(), |i, j| self.get(j, i))
    }

    pub fn pow(&self, e: u64, f: &Field) -> Matrix {
        let mut result = Matrix::identity(self.n());
        let mut b = *self;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b, f);
            }
            b = b.mul(&b, f);
            e >>= 1;
        }
        result
    }

    /// Row reduction to echelon form; returns (rank, determinant).
    fn eliminate(&self, f: &Field) -> (usize, Elem) {
        let n = self.n();
        let mut a = *self;
        let mut det = 1;
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| a.get(r, col) != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                a.swap_rows(piv, rank);
                det = f.neg(det);
            }
            let pv = a.get(rank, col);
            det = f.mul(det, pv);
            let inv = f.inv(pv).unwrap();
            for r in rank + 1..n {
                let factor = f.mul(a.get(r, col), inv);
                if factor != 0 {
                    a.row_axpy(r, rank, f.neg(factor), f);
                }
            }
            rank += 1;
        }
        (rank, det)
    }

    pub fn det(&self, f: &Field) -> Elem {
        self.eliminate(f).1
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.eliminate(f).0
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.det(f) != 0
    }

    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        let n = self.n();
        let mut a = *self;
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| a.get(r, col) != 0)?;
            a.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            let s = f.inv(a.get(col, col)).unwrap();
            a.scale_row(col, s, f);
            inv.scale_row(col, s, f);
            for r in 0..n {
                if r != col {
                    let factor = a.get(r, col);
                    if factor != 0 {
                        a.row_axpy(r, col, f.neg(factor), f);
                        inv.row_axpy(r, col, f.neg(factor), f);
                    }
                }
            }
        }
        Some(inv)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n() {
            self.e.swap(a * MAX_DIM + j, b * MAX_DIM + j);
        }
    }

    pub fn scale_row(&mut self, r: usize, s: Elem, f: &Field) {
        for j in 0..self.n() {
            let v = f.mul(self.get(r, j), s);
            self.set(r, j, v);
        }
    }

    /// row[dst] += s · row[src].
    pub fn row_axpy(&mut self, dst: usize, src: usize, s: Elem, f: &Field) {
        for j in 0..self.n() {
            let v = self.get(src, j);
            if v != 0 {
                let w = f.add(self.get(dst, j), f.mul(s, v));
                self.set(dst, j, w);
            }
        }
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| {
            self.get(i, i) == 1 && (0..i).all(|j| self.get(i, j) == 0)
        })
    }

    /// The square block starting at (r, c) of size k.
    pub fn block(&self, r: usize, c: usize, k: usize) -> Matrix {
        Matrix::from_fn(k, |i, j| self.get(r + i, c + j))
    }

    /// Copy `b` into position (r, c).
    pub fn put(&mut self, r: usize, c: usize, b: &Matrix) {
        for i in 0..b.n() {
            for j in 0..b.n() {
                self.set(r + i, c + j, b.get(i, j));
            }
        }
    }

    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let n = blocks.iter().map(|b| b.n()).sum();
        let mut m = Matrix::zero(n);
        let mut off = 0;
        for b in blocks {
            m.put(off, off, b);
            off += b.n();
        }
        m
    }

    /// Characteristic polynomial coefficients c_0..c_n (monic), via sums of
    /// principal minors.
    pub fn char_poly(&self, f: &Field) -> Vec<Elem> {
        let n = self.n();
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = 1;
        for mask in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let k = idx.len();
            let minor = Matrix::from_fn(k, |i, j| self.get(idx[i], idx[j])).det(f);
            // coefficient of x^{n−k} is (−1)^k e_k
            let term = if k % 2 == 1 { f.neg(minor) } else { minor };
            coeffs[n - k] = f.add(coeffs[n - k], term);
        }
        coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let f = Field::new(5, 1).unwrap();
        let a = Matrix::from_rows(&[&[1, 2, 3], &[0, 1, 4], &[2, 0, 1]]);
        let inv = a.inverse(&f).unwrap();
        assert_eq!(a.mul(&inv, &f), Matrix::identity(3));
        // det = 1(1) − 2(0−8) + 3(0−2) = 1 + 16 − 6 = 11 ≡ 1
        assert_eq!(a.det(&f), 1);
        let sing = Matrix::from_rows(&[&[1, 2], &[2, 4]]);
        assert!(sing.inverse(&f).is_none());
        assert_eq!(sing.rank(&f), 1);
    }

    #[test]
    fn char_poly_small() {
        let f = Field::new(3, 1).unwrap();
        // [[0,1],[1,0]]: x^2 − 1
        let a = Matrix::from_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.char_poly(&f), vec![2, 0, 1]);
        let d = Matrix::diag(&[1, 2, 2]);
        // (x−1)(x−2)^2 = x^3 − 5x^2 + 8x − 4 ≡ x^3 + x^2 + 2x + 2
        assert_eq!(d.char_poly(&f), vec![2, 2, 1, 1]);
    }
}
