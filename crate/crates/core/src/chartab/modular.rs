//! Arithmetic mod a word-sized prime ℓ.

pub fn add(a: u64, b: u64, l: u64) -> u64 {
    (a + b) % l
}
pub fn sub(a: u64, b: u64, l: u64) -> u64 {
    (a + l - b % l) % l
}
pub fn mul(a: u64, b: u64, l: u64) -> u64 {
    ((a as u128 * b as u128) % l as u128) as u64
}
pub fn pow(mut a: u64, mut e: u64, l: u64) -> u64 {
    let mut r = 1 % l;
    a %= l;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, l);
        }
        a = mul(a, a, l);
        e >>= 1;
    }
    r
}
pub fn inv(a: u64, l: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(l));
    pow(a, l - 2, l)
}

/// Smallest prime ℓ ≡ 1 (mod e) with ℓ > bound.
pub fn dixon_prime(e: u64, bound: u64) -> u64 {
    let mut l = (bound / e + 1) * e + 1;
    loop {
        if crate::numeric::is_prime(l) {
            return l;
        }
        l += e;
    }
}

pub fn primitive_root(l: u64) -> u64 {
    let fs = crate::numeric::prime_factors(l - 1);
    (2..l)
        .find(|&g| fs.iter().all(|&r| pow(g, (l - 1) / r, l) != 1))
        .unwrap_or(1)
}

/// Map a residue to the symmetric range (−ℓ/2, ℓ/2].
pub fn centered(a: u64, l: u64) -> i64 {
    if a > l / 2 {
        a as i64 - l as i64
    } else {
        a as i64
    }
}

/// Characteristic polynomial (low-to-high, monic) via Hessenberg reduction.
pub fn char_poly(mut a: Vec<Vec<u64>>, l: u64) -> Vec<u64> {
    let n = a.len();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| a[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            a.swap(i, m);
            for row in a.iter_mut() {
                row.swap(i, m);
            }
        }
        let piv_inv = inv(a[m][m - 1], l);
        for i in m + 1..n {
            let t = mul(a[i][m - 1], piv_inv, l);
            if t == 0 {
                continue;
            }
            for j in 0..n {
                let v = mul(t, a[m][j], l);
                a[i][j] = sub(a[i][j], v, l);
            }
            for row in a.iter_mut() {
                let v = mul(t, row[i], l);
                row[m] = add(row[m], v, l);
            }
        }
    }
    let mut p: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        // (x − a[k−1][k−1]) p[k−1]
        let prev = &p[k - 1];
        let mut cur = vec![0u64; k + 1];
        for (d, &c) in prev.iter().enumerate() {
            cur[d + 1] = add(cur[d + 1], c, l);
            cur[d] = sub(cur[d], mul(c, a[k - 1][k - 1], l), l);
        }
        let mut t = 1u64;
        for i in (1..k).rev() {
            t = mul(t, a[i][i - 1], l);
            let s = mul(t, a[i - 1][k - 1], l);
            for (d, &c) in p[i - 1].iter().enumerate() {
                cur[d] = sub(cur[d], mul(s, c, l), l);
            }
        }
        p.push(cur);
    }
    p.pop().unwrap()
}

pub fn roots(poly: &[u64], l: u64) -> Vec<u64> {
    (0..l)
        .filter(|&x| poly.iter().rev().fold(0, |acc, &c| add(mul(acc, x, l), c, l)) == 0)
        .collect()
}

/// Basis of the kernel of a square matrix.
pub fn kernel(mut a: Vec<Vec<u64>>, l: u64) -> Vec<Vec<u64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(p, rank);
        let iv = inv(a[rank][c], l);
        for x in a[rank].iter_mut() {
            *x = mul(*x, iv, l);
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let s = a[r][c];
                for cc in 0..cols {
                    let v = mul(s, a[rank][cc], l);
                    a[r][cc] = sub(a[r][cc], v, l);
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = sub(0, a[r][fc], l);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_search() {
        let l = dixon_prime(8, 2 * 7);
        assert_eq!(l, 17);
        assert_eq!(primitive_root(17), 3);
        assert_eq!(centered(16, 17), -1);
    }

    #[test]
    fn char_poly_matches_determinant_expansion() {
        let l = 101;
        // companion-like 3×3
        let a = vec![vec![2, 5, 7], vec![1, 3, 4], vec![6, 0, 9]];
        let p = char_poly(a.clone(), l);
        assert_eq!(p.len(), 4);
        assert_eq!(p[3], 1);
        // trace coefficient: −(2+3+9)
        assert_eq!(p[2], sub(0, 14, l));
        // constant: −det; det = 2(27) − 5(9−24) + 7(0−18) = 54+75−126 = 3
        assert_eq!(p[0], sub(0, 3, l));
        for r in roots(&p, l) {
            let mut m = a.clone();
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = sub(row[i], r, l);
            }
            assert!(!kernel(m, l).is_empty());
        }
    }
}
