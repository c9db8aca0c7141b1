//! Modulus selection: shipped Conway polynomials, primitive-polynomial fallback.

use crate::numeric::prime_factors;
use std::collections::HashMap;
use std::sync::OnceLock;

pub const TABLE_VERSION: u32 = 1;
const TABLE: &str = include_str!("../../data/conway.txt");

fn table() -> &'static HashMap<(u32, u32), Vec<u32>> {
    static T: OnceLock<HashMap<(u32, u32), Vec<u32>>> = OnceLock::new();
    T.get_or_init(|| {
        let mut map = HashMap::new();
        for line in TABLE.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse().expect("bad conway table entry"))
                .collect();
            let (p, d) = (nums[0], nums[1]);
            let coeffs = nums[2..].to_vec();
            assert_eq!(coeffs.len(), d as usize + 1, "conway entry {p} {d}");
            map.insert((p, d), coeffs);
        }
        map
    })
}

/// Conway polynomial C_{p,d}, low-to-high, if shipped.
pub fn conway_polynomial(p: u32, d: u32) -> Option<Vec<u32>> {
    table().get(&(p, d)).cloned()
}

pub fn shipped_entries() -> Vec<(u32, u32)> {
    let mut v: Vec<_> = table().keys().copied().collect();
    v.sort();
    v
}

/// Smallest monic primitive polynomial of degree d over F_p, ordering the
/// candidates x^d + Σ c_i x^i by the integer Σ c_i p^i.
pub fn smallest_primitive(p: u32, d: u32) -> Vec<u32> {
    let total = (p as u64).pow(d);
    for code in 0..total {
        let mut c = Vec::with_capacity(d as usize + 1);
        let mut r = code;
        for _ in 0..d {
            c.push((r % p as u64) as u32);
            r /= p as u64;
        }
        c.push(1);
        if is_primitive(p, &c) {
            return c;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

/// Whether the monic polynomial m generates F_p[x]/(m)^× by x.
pub fn is_primitive(p: u32, m: &[u32]) -> bool {
    let d = m.len() - 1;
    if d == 0 || m[0].is_multiple_of(p) {
        return false;
    }
    let order = (p as u64).pow(d as u32) - 1;
    let x = if d == 1 {
        vec![(p - m[0] % p) % p]
    } else {
        vec![0, 1]
    };
    let one = vec![1];
    if powmod(&x, order, m, p) != one {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|r| powmod(&x, order / r, m, p) != one)
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
    a
}

/// Product mod the monic m over F_p.
pub(crate) fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let d = m.len() - 1;
    for k in (d..prod.len()).rev() {
        let t = prod[k];
        if t == 0 {
            continue;
        }
        for i in 0..=d {
            prod[k - d + i] = (prod[k - d + i] + (p64 - t) * m[i] as u64) % p64;
        }
    }
    prod.truncate(d.max(1));
    trim(prod.into_iter().map(|v| v as u32).collect())
}

pub(crate) fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut result = vec![1];
    let mut b = mulmod(base, &[1], m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

/// g(h) in F_p[x]/(m).
#[cfg(test)]
pub(crate) fn eval_at(g: &[u32], h: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![0];
    for &c in g.iter().rev() {
        acc = mulmod(&acc, h, m, p);
        acc[0] = (acc[0] + c) % p;
    }
    trim(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::divisors;

    /// Conway's order: write f = x^d − a_{d−1}x^{d−1} + a_{d−2}x^{d−2} − …,
    /// compare (a_{d−1}, …, a_0) lexicographically.
    fn conway_key(p: u32, f: &[u32]) -> Vec<u32> {
        let d = f.len() - 1;
        (0..d)
            .rev()
            .map(|i| if (d - i).is_multiple_of(2) { f[i] % p } else { (p - f[i] % p) % p })
            .collect()
    }

    fn from_key(p: u32, key: &[u32]) -> Vec<u32> {
        let d = key.len();
        let mut f = vec![0; d + 1];
        f[d] = 1;
        for (k, &a) in key.iter().enumerate() {
            let i = d - 1 - k;
            f[i] = if (d - i).is_multiple_of(2) { a } else { (p - a) % p };
        }
        f
    }

    fn compatible(p: u32, f: &[u32]) -> bool {
        let d = f.len() as u32 - 1;
        let big = (p as u64).pow(d) - 1;
        divisors(d as u64).into_iter().filter(|&e| e < d as u64).all(|e| {
            let lower = conway_polynomial(p, e as u32).unwrap();
            let small = (p as u64).pow(e as u32) - 1;
            let h = powmod(&[0, 1], big / small, f, p);
            eval_at(&lower, &h, f, p) == vec![0]
        })
    }

    /// Oracle: first compatible primitive polynomial in Conway order.
    fn search(p: u32, d: u32) -> Vec<u32> {
        let total = (p as u64).pow(d);
        for code in 0..total {
            let mut key = vec![0; d as usize];
            let mut r = code;
            for k in (0..d as usize).rev() {
                key[k] = (r % p as u64) as u32;
                r /= p as u64;
            }
            let f = from_key(p, &key);
            if is_primitive(p, &f) && compatible(p, &f) {
                return f;
            }
        }
        unreachable!()
    }

    #[test]
    fn key_roundtrip() {
        let f = vec![2, 2, 1];
        assert_eq!(from_key(3, &conway_key(3, &f)), f);
    }

    #[test]
    fn shipped_entries_are_primitive_and_compatible() {
        for (p, d) in shipped_entries() {
            let f = conway_polynomial(p, d).unwrap();
            assert!(is_primitive(p, &f), "C_{p},{d} not primitive");
            assert!(compatible(p, &f), "C_{p},{d} not compatible");
        }
    }

    #[test]
    fn shipped_entries_match_search() {
        for (p, d) in shipped_entries() {
            if (p as u64).pow(d) > 100_000 {
                continue;
            }
            assert_eq!(conway_polynomial(p, d).unwrap(), search(p, d), "C_{p},{d}");
        }
    }

    #[test]
    fn fallback_is_primitive() {
        let f = smallest_primitive(11, 2);
        assert!(is_primitive(11, &f));
        assert_eq!(f.len(), 3);
    }
}
