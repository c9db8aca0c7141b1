//! Floating point helpers: exact-angle roots of unity and compensated sums.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Identity-type checks.
pub const TOL_IDENTITY: f64 = 1e-7;
/// Integrality and zero detection.
pub const TOL_ZERO: f64 = 1e-8;
/// Values below this are reported as structural zeros.
pub const TOL_SNAP: f64 = 1e-9;
/// Log-base-q comparisons of absolute values.
pub const TOL_LOG: f64 = 1e-6;

/// exp(2πi·k/m), with k reduced mod m first and quarter turns exact.
pub fn root_of_unity(k: i64, m: u64) -> Complex64 {
    debug_assert!(m > 0);
    let m = m as i64;
    let k = k.rem_euclid(m);
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * k == m {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * k == m {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * k == 3 * m {
        return Complex64::new(0.0, -1.0);
    }
    // fold into (-m/2, m/2] so the angle stays small
    let k = if 2 * k > m { k - m } else { k };
    Complex64::from_polar(1.0, 2.0 * PI * (k as f64) / (m as f64))
}

/// Neumaier-compensated complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    re: f64,
    im: f64,
    cre: f64,
    cim: f64,
}

fn step(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        step(&mut self.re, &mut self.cre, z.re);
        step(&mut self.im, &mut self.cim, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.cre, self.im + self.cim)
    }
}

impl std::iter::FromIterator<Complex64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = KahanSum::new();
        for z in iter {
            s.add(z);
        }
        s
    }
}

pub fn ksum<I: IntoIterator<Item = Complex64>>(iter: I) -> Complex64 {
    iter.into_iter().collect::<KahanSum>().value()
}

/// Zero out values below [`TOL_SNAP`].
pub fn snap(z: Complex64) -> Complex64 {
    if z.norm() < TOL_SNAP {
        Complex64::new(0.0, 0.0)
    } else {
        z
    }
}

/// Nearest integer if within [`TOL_ZERO`] (real part; imaginary part must vanish).
pub fn as_integer(z: Complex64) -> Option<i64> {
    let r = z.re.round();
    if (z.re - r).abs() < TOL_ZERO && z.im.abs() < TOL_ZERO {
        Some(r as i64)
    } else {
        None
    }
}

/// Numerical rank by Gaussian elimination with partial pivoting.
pub fn complex_rank(rows: &[Vec<Complex64>], tol: f64) -> usize {
    let mut m: Vec<Vec<Complex64>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        if rank == m.len() {
            break;
        }
        let (best, norm) = (rank..m.len())
            .map(|r| (r, m[r][c].norm()))
            .fold((rank, -1.0), |a, b| if b.1 > a.1 { b } else { a });
        if norm <= tol {
            continue;
        }
        m.swap(rank, best);
        let pivot = m[rank][c];
        for r in rank + 1..m.len() {
            let s = m[r][c] / pivot;
            if s != Complex64::new(0.0, 0.0) {
                for k in c..cols {
                    let v = m[rank][k];
                    m[r][k] -= s * v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Split a prime power q = p^f.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    Some((p, e))
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut k = 0;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            k += 1;
        }
        d += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for m in 2..40u64 {
            let s = ksum((0..m as i64).map(|k| root_of_unity(k, m)));
            assert!(s.norm() < 1e-12, "m={m}");
        }
    }

    #[test]
    fn root_of_unity_reduces_exponent() {
        let a = root_of_unity(-3, 7);
        let b = root_of_unity(4, 7);
        assert!((a - b).norm() < 1e-15);
        assert_eq!(root_of_unity(6, 12), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn kahan_beats_naive_on_cancellation() {
        let big = Complex64::new(1e16, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let s = ksum([big, one, -big]);
        assert_eq!(s.re, 1.0);
    }

    #[test]
    fn number_theory_helpers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(3), -1);
        assert_eq!(prime_factors(24), vec![2, 3]);
        assert!(is_prime(7) && !is_prime(9));
    }
}
