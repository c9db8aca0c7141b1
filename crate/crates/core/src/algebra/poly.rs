//! Polynomials over F_q and factorization by trial division.

use super::field::{Elem, Field};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Coefficients low-to-high with no trailing zeros; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Poly(pub Vec<Elem>);

impl Poly {
    pub fn new(mut c: Vec<Elem>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly(c)
    }
    pub fn zero() -> Poly {
        Poly(vec![])
    }
    pub fn one() -> Poly {
        Poly(vec![1])
    }
    /// x − a.
    pub fn linear(field: &Field, a: Elem) -> Poly {
        Poly::new(vec![field.neg(a), 1])
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }
    pub fn is_monic(&self) -> bool {
        self.0.last() == Some(&1)
    }
    pub fn coeffs(&self) -> &[Elem] {
        &self.0
    }

    pub fn add(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    f.add(
                        *self.0.get(i).unwrap_or(&0),
                        *other.0.get(i).unwrap_or(&0),
                    )
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::new(c)
    }

    pub fn pow(&self, e: u32, f: &Field) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self, f))
    }

    /// Quotient and remainder by a nonzero polynomial.
    pub fn divrem(&self, d: &Poly, f: &Field) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = f.inv(d.0[dd]).unwrap();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![0; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let t = f.mul(r[k], lead_inv);
            if t == 0 {
                continue;
            }
            q[k - dd] = t;
            for i in 0..=dd {
                r[k - dd + i] = f.sub(r[k - dd + i], f.mul(t, d.0[i]));
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn eval(&self, x: Elem, f: &Field) -> Elem {
        self.0.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Human-readable form using the integer encoding of coefficients.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            let t = match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            };
            terms.push(t);
        }
        terms.join("+")
    }
}

/// Monic irreducibles over F_q, by degree, built by a sieve.
pub struct IrreducibleSieve {
    by_degree: Vec<Vec<Poly>>,
}

impl IrreducibleSieve {
    pub fn new(field: &Field, max_degree: usize) -> Self {
        let q = field.order() as u64;
        let mut by_degree: Vec<Vec<Poly>> = vec![vec![]];
        for d in 1..=max_degree {
            let mut reducible = std::collections::HashSet::new();
            // products a·b with deg a + deg b = d, a irreducible of degree ≤ d/2
            for da in 1..=d / 2 {
                for a in &by_degree[da] {
                    for b in monic_of_degree(field, d - da) {
                        reducible.insert(a.mul(&b, field));
                    }
                }
            }
            let irr: Vec<Poly> = monic_of_degree(field, d)
                .filter(|p| !reducible.contains(p))
                .collect();
            debug_assert!(irr.len() as u64 <= q.pow(d as u32));
            by_degree.push(irr);
        }
        IrreducibleSieve { by_degree }
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn of_degree(&self, d: usize) -> &[Poly] {
        &self.by_degree[d]
    }

    /// Factor a monic polynomial of degree ≤ 2·max_degree + 1 into
    /// (irreducible, multiplicity), sorted by (degree, coefficients).
    pub fn factor(&self, field: &Field, f: &Poly) -> Result<Vec<(Poly, u32)>> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let mut rest = f.clone();
        let mut out = Vec::new();
        'outer: for d in 1..=self.max_degree() {
            for g in &self.by_degree[d] {
                if rest.degree().unwrap() < 2 * d {
                    break 'outer;
                }
                let mut mult = 0;
                loop {
                    let (quo, rem) = rest.divrem(g, field);
                    if !rem.is_zero() {
                        break;
                    }
                    rest = quo;
                    mult += 1;
                }
                if mult > 0 {
                    out.push((g.clone(), mult));
                }
            }
        }
        if rest.degree().unwrap() > 0 {
            if let Some(pos) = out.iter().position(|(g, _)| *g == rest) {
                out[pos].1 += 1;
            } else {
                out.push((rest, 1));
            }
        }
        out.sort_by(|a, b| poly_order(&a.0, &b.0));
        Ok(out)
    }
}

/// Canonical order: by degree, then coefficients from the top down.
pub fn poly_order(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.0.len()
        .cmp(&b.0.len())
        .then_with(|| a.0.iter().rev().cmp(b.0.iter().rev()))
}

/// All monic polynomials of degree d.
pub fn monic_of_degree(field: &Field, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.order() as u64;
    (0..q.pow(d as u32)).map(move |mut code| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push((code % q) as Elem);
            code /= q;
        }
        c.push(1);
        Poly(c)
    })
}

/// Factor a monic polynomial of degree ≤ 8.
pub fn factor_poly(field: &Field, f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = f.degree().unwrap();
    IrreducibleSieve::new(field, d / 2).factor(field, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let f3 = Field::new(3, 1).unwrap();
        // x^2 − 1 = (x−1)(x+1)
        let fs = factor_poly(&f3, &Poly::new(vec![2, 0, 1])).unwrap();
        assert_eq!(fs, vec![(Poly::new(vec![1, 1]), 1), (Poly::new(vec![2, 1]), 1)]);
        let fs = factor_poly(&f3, &Poly::new(vec![1, 0, 1])).unwrap();
        assert_eq!(fs, vec![(Poly::new(vec![1, 0, 1]), 1)]);
        let f2 = Field::new(2, 1).unwrap();
        let cube = Poly::new(vec![1, 1]).pow(3, &f2);
        assert_eq!(factor_poly(&f2, &cube).unwrap(), vec![(Poly::new(vec![1, 1]), 3)]);
        assert_eq!(factor_poly(&f3, &Poly::new(vec![1, 2])), Err(Error::NotMonic));
    }

    #[test]
    fn factorization_roundtrip_exhaustive() {
        for q in [2, 3, 4] {
            let f = Field::of_order(q).unwrap();
            let sieve = IrreducibleSieve::new(&f, 2);
            for d in 1..=4 {
                for p in monic_of_degree(&f, d) {
                    let fs = sieve.factor(&f, &p).unwrap();
                    let back = fs
                        .iter()
                        .fold(Poly::one(), |acc, (g, m)| acc.mul(&g.pow(*m, &f), &f));
                    assert_eq!(back, p);
                    for (g, _) in &fs {
                        // irreducible: no root and, for degree 4, no quadratic factor
                        let dg = g.degree().unwrap();
                        for h in (1..=dg / 2).flat_map(|e| monic_of_degree(&f, e)) {
                            assert!(!g.divrem(&h, &f).1.is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        let f = Field::of_order(3).unwrap();
        let s = IrreducibleSieve::new(&f, 4);
        let counts: Vec<usize> = (1..=4).map(|d| s.of_degree(d).len()).collect();
        assert_eq!(counts, vec![3, 3, 8, 18]);
    }
}
