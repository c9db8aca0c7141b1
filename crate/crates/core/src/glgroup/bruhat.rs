//! Membership in P_{m,n}·w_{n,m}·U_{n+m} and the factorization itself.

use super::matrix::Matrix;
use super::weyl::w_nm;
use crate::algebra::{Elem, Field};

/// Solve Σ x_i·cols[i] = target over F_q. Columns are scanned left to right
/// and each becomes a pivot when independent of the earlier ones; free
/// variables are 0.
pub fn solve_columns(cols: &[Vec<Elem>], target: &[Elem], f: &Field) -> Option<Vec<Elem>> {
    let rows = target.len();
    let k = cols.len();
    // augmented matrix, row-major
    let mut a: Vec<Vec<Elem>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Elem> = cols.iter().map(|c| c[r]).collect();
            row.push(target[r]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..k {
        let Some(p) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(p, rank);
        let inv = f.inv(a[rank][col]).unwrap();
        for x in a[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..rows {
            if r != rank && a[r][col] != 0 {
                let s = a[r][col];
                for c in 0..=k {
                    a[r][c] = f.sub(a[r][c], f.mul(s, a[rank][c]));
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if (rank..rows).any(|r| a[r][k] != 0) {
        return None;
    }
    let mut x = vec![0; k];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][k];
    }
    Some(x)
}

/// g = p·w_{n,m}·u with p ∈ P_{m,n} and u ∈ U_{n+m}, or None when g lies
/// outside that double coset.
///
/// Right column operations v = u^{-1} clear the bottom n rows of the last m
/// columns; then p = g·v·w_{n,m}^{-1}.
pub fn pwu_decompose(g: &Matrix, m: usize, n: usize, f: &Field) -> Option<(Matrix, Matrix)> {
    let size = n + m;
    assert_eq!(g.n(), size);
    let mut v = Matrix::identity(size);
    let bottom = |j: usize| -> Vec<Elem> { (m..size).map(|r| g.get(r, j)).collect() };
    let mut gv = *g;
    for j in n..size {
        let cols: Vec<Vec<Elem>> = (0..j).map(bottom).collect();
        let target: Vec<Elem> = bottom(j).into_iter().map(|x| f.neg(x)).collect();
        let x = solve_columns(&cols, &target, f)?;
        for (i, &xi) in x.iter().enumerate() {
            v.set(i, j, xi);
        }
    }
    for j in n..size {
        for r in 0..size {
            let s = (0..=j).fold(0, |acc, i| f.add(acc, f.mul(g.get(r, i), v.get(i, j))));
            gv.set(r, j, s);
        }
    }
    let w = w_nm(n, m);
    let p = gv.mul(&w.transpose(), f);
    let u = v.inverse(f).unwrap();
    Some((p, u))
}

/// Levi blocks (p_1 ∈ GL_m, p_2 ∈ GL_n) of p ∈ P_{m,n}.
pub fn levi_parts(p: &Matrix, m: usize, n: usize) -> (Matrix, Matrix) {
    (p.block(0, 0, m), p.block(m, m, n))
}

pub fn in_parabolic(p: &Matrix, m: usize) -> bool {
    let size = p.n();
    (m..size).all(|r| (0..m).all(|c| p.get(r, c) == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glgroup::{Composition, GlGroup};
    use std::collections::HashSet;
    use std::sync::Arc;

    fn check_all(q: u32, n: usize, m: usize) {
        let f = Arc::new(Field::of_order(q).unwrap());
        let g = GlGroup::new(f.clone(), n + m).unwrap();
        let w = w_nm(n, m);
        let comp = Composition::new(vec![m, n], n + m).unwrap();
        let ps = g.parabolic(&comp).unwrap();
        let us = g.unipotent();
        let mut members = HashSet::new();
        for p in &ps {
            let pw = p.mul(&w, &f);
            for u in &us {
                members.insert(g.encode(&pw.mul(u, &f)));
            }
        }
        for x in g.elements() {
            let got = pwu_decompose(&x, m, n, &f);
            assert_eq!(got.is_some(), members.contains(&g.encode(&x)), "{x:?}");
            if let Some((p, u)) = got {
                assert!(in_parabolic(&p, m));
                assert!(u.is_upper_unitriangular());
                assert_eq!(p.mul(&w, &f).mul(&u, &f), x);
            }
        }
    }

    #[test]
    fn membership_matches_brute_force() {
        for q in [2, 3] {
            for (n, m) in [(1, 1), (2, 1), (1, 2)] {
                check_all(q, n, m);
            }
        }
    }

    #[test]
    fn weyl_element_decomposes_trivially() {
        let f = Field::of_order(3).unwrap();
        for (n, m) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
            let (p, u) = pwu_decompose(&w_nm(n, m), m, n, &f).unwrap();
            assert_eq!(p, Matrix::identity(n + m));
            assert_eq!(u, Matrix::identity(n + m));
        }
    }

    /// (I_m 0; A I_n) with A = (A_1; A_2), A_2 invertible, factors as
    /// (−A_2^{-1} (I 0); 0 (A_1 I; A_2 0))·w·(I 0 A_2^{-1}; 0 I −A_1A_2^{-1}; 0 0 I).
    #[test]
    fn matches_explicit_display_n_greater_than_m() {
        let f = Field::of_order(3).unwrap();
        let (n, m) = (3, 1);
        for a1a in 0..3 {
            for a1b in 0..3 {
                for a2 in 1..3 {
                    let mut g = Matrix::identity(4);
                    g.set(1, 0, a1a);
                    g.set(2, 0, a1b);
                    g.set(3, 0, a2);
                    let (p, u) = pwu_decompose(&g, m, n, &f).unwrap();
                    let a2i = f.inv(a2).unwrap();
                    let (p1, p2) = levi_parts(&p, m, n);
                    assert_eq!(p1, Matrix::from_rows(&[&[f.neg(a2i)]]));
                    assert_eq!(
                        p2,
                        Matrix::from_rows(&[&[a1a, 1, 0], &[a1b, 0, 1], &[a2, 0, 0]])
                    );
                    let mut ue = Matrix::identity(4);
                    ue.set(0, 3, a2i);
                    ue.set(1, 3, f.neg(f.mul(a1a, a2i)));
                    ue.set(2, 3, f.neg(f.mul(a1b, a2i)));
                    assert_eq!(u, ue);
                }
            }
        }
    }

    #[test]
    fn singular_a_is_not_a_member_when_n_equals_m() {
        for q in [2, 3] {
            let f = Field::of_order(q).unwrap();
            for n in 1..=2usize {
                let g = GlGroup::new(Arc::new(Field::of_order(q).unwrap()), n).unwrap();
                let space = (q as u64).pow((n * n) as u32);
                for code in 0..space {
                    let a = g.decode(code as u32);
                    let mut x = Matrix::identity(2 * n);
                    for i in 0..n {
                        for j in 0..n {
                            x.set(n + i, j, a.get(i, j));
                        }
                    }
                    let member = pwu_decompose(&x, n, n, &f).is_some();
                    assert_eq!(member, a.is_invertible(&f));
                }
            }
        }
    }
}
