//! GL_n(F_q): indexing, enumeration, standard subgroups.

use super::matrix::Matrix;
use crate::algebra::{AdditiveCharacter, Field};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::sync::Arc;

pub const MAX_N: usize = 4;
pub const MAX_ORDER: u64 = 2_000_000;

/// |GL_n(F_q)| = ∏_{i<n} (q^n − q^i).
pub fn gl_order(q: u64, n: usize) -> u64 {
    let qn = q.saturating_pow(n as u32);
    (0..n as u32).fold(1u64, |acc, i| acc.saturating_mul(qn - q.pow(i)))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>, n: usize) -> Result<Composition> {
        if parts.contains(&0) || parts.iter().sum::<usize>() != n {
            return Err(Error::CompositionMismatch {
                parts,
                reason: format!("parts must be positive and sum to {n}"),
            });
        }
        Ok(Composition(parts))
    }
    pub fn parts(&self) -> &[usize] {
        &self.0
    }
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
    pub fn is_proper(&self) -> bool {
        self.0.len() > 1
    }
    /// Starting offset of each block.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = 0;
        self.0
            .iter()
            .map(|&p| {
                let o = off;
                off += p;
                o
            })
            .collect()
    }
    /// All compositions of n, in lexicographic order.
    pub fn all(n: usize) -> Vec<Composition> {
        fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition(cur.clone()));
                return;
            }
            for p in 1..=rest {
                cur.push(p);
                rec(rest - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, &mut vec![], &mut out);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupKind {
    UpperUnipotent,
    UnipotentRadical(Composition),
    Parabolic(Composition),
    Levi(Composition),
    Mirabolic,
    Center,
}

#[derive(Clone, Debug)]
pub struct GlGroup {
    field: Arc<Field>,
    n: usize,
    order: u64,
}

impl GlGroup {
    pub fn new(field: Arc<Field>, n: usize) -> Result<GlGroup> {
        let q = field.order();
        if n == 0 || n > MAX_N {
            return Err(Error::EnvelopeExceeded {
                n,
                q,
                reason: format!("n must be between 1 and {MAX_N}"),
            });
        }
        let order = gl_order(q as u64, n);
        if order > MAX_ORDER {
            return Err(Error::EnvelopeExceeded {
                n,
                q,
                reason: format!("|G| = {order} exceeds {MAX_ORDER}"),
            });
        }
        Ok(GlGroup { field, n, order })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn q(&self) -> u32 {
        self.field.order()
    }
    pub fn order(&self) -> u64 {
        self.order
    }
    /// q^{n²}, the size of the matrix index space.
    pub fn index_space(&self) -> u64 {
        (self.q() as u64).pow((self.n * self.n) as u32)
    }
    pub fn unipotent_order(&self) -> u64 {
        (self.q() as u64).pow((self.n * (self.n - 1) / 2) as u32)
    }

    /// Σ e_{ij} q^{i·n+j}.
    #[inline]
    pub fn encode(&self, m: &Matrix) -> u32 {
        let q = self.q() as u64;
        let mut idx = 0u64;
        for i in (0..self.n).rev() {
            for j in (0..self.n).rev() {
                idx = idx * q + m.get(i, j) as u64;
            }
        }
        idx as u32
    }

    #[inline]
    pub fn decode(&self, idx: u32) -> Matrix {
        let q = self.q();
        let mut r = idx;
        Matrix::from_fn(self.n, |_, _| {
            let v = r % q;
            r /= q;
            v
        })
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.n)
    }

    pub fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.mul(b, &self.field)
    }

    pub fn inv(&self, a: &Matrix) -> Matrix {
        a.inverse(&self.field).expect("group element is invertible")
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        m.n() == self.n && m.is_invertible(&self.field)
    }

    /// Every element once, in index order.
    pub fn elements(&self) -> impl Iterator<Item = Matrix> + '_ {
        self.elements_in(0..self.index_space())
    }

    /// Elements whose index lies in `range`; disjoint ranges partition the group.
    pub fn elements_in(&self, range: std::ops::Range<u64>) -> impl Iterator<Item = Matrix> + '_ {
        range
            .map(move |i| self.decode(i as u32))
            .filter(move |m| m.is_invertible(&self.field))
    }

    /// Upper unitriangular matrices.
    pub fn unipotent(&self) -> Vec<Matrix> {
        let comp = Composition(vec![1; self.n]);
        self.radical(&comp)
    }

    /// N for a composition: identity diagonal blocks, arbitrary blocks above.
    pub fn radical(&self, comp: &Composition) -> Vec<Matrix> {
        let offs = comp.offsets();
        let mut slots = Vec::new();
        for (b, &o) in offs.iter().enumerate() {
            for i in o..o + comp.0[b] {
                for j in o + comp.0[b]..self.n {
                    slots.push((i, j));
                }
            }
        }
        let q = self.q() as u64;
        let count = q.pow(slots.len() as u32);
        (0..count)
            .map(|mut code| {
                let mut m = self.identity();
                for &(i, j) in &slots {
                    m.set(i, j, (code % q) as u32);
                    code /= q;
                }
                m
            })
            .collect()
    }

    pub fn levi(&self, comp: &Composition) -> Result<Vec<Matrix>> {
        let mut out = vec![Matrix::identity(self.n)];
        for (b, &o) in comp.offsets().iter().enumerate() {
            let sub = GlGroup::new(self.field.clone(), comp.0[b])?;
            let blocks: Vec<Matrix> = sub.elements().collect();
            out = out
                .iter()
                .flat_map(|m| {
                    blocks.iter().map(move |blk| {
                        let mut m2 = *m;
                        m2.put(o, o, blk);
                        m2
                    })
                })
                .collect();
        }
        Ok(out)
    }

    pub fn parabolic(&self, comp: &Composition) -> Result<Vec<Matrix>> {
        let l = self.levi(comp)?;
        let nn = self.radical(comp);
        Ok(l.iter()
            .flat_map(|a| nn.iter().map(move |b| a.mul(b, &self.field)))
            .collect())
    }

    /// {(h x; 0 1)}: last row e_n.
    pub fn mirabolic(&self) -> Result<Vec<Matrix>> {
        if self.n == 1 {
            return Ok(vec![self.identity()]);
        }
        let comp = Composition(vec![self.n - 1, 1]);
        let p = self.parabolic(&comp)?;
        Ok(p.into_iter()
            .filter(|m| m.get(self.n - 1, self.n - 1) == 1)
            .collect())
    }

    pub fn center(&self) -> Vec<Matrix> {
        self.field
            .units()
            .map(|a| Matrix::scalar(self.n, a))
            .collect()
    }

    pub fn subgroup(&self, kind: &SubgroupKind) -> Result<Vec<Matrix>> {
        let check = |c: &Composition| {
            if c.total() != self.n {
                Err(Error::CompositionMismatch {
                    parts: c.0.clone(),
                    reason: format!("expected a composition of {}", self.n),
                })
            } else {
                Ok(())
            }
        };
        match kind {
            SubgroupKind::UpperUnipotent => Ok(self.unipotent()),
            SubgroupKind::UnipotentRadical(c) => check(c).map(|_| self.radical(c)),
            SubgroupKind::Parabolic(c) => check(c).and_then(|_| self.parabolic(c)),
            SubgroupKind::Levi(c) => check(c).and_then(|_| self.levi(c)),
            SubgroupKind::Mirabolic => self.mirabolic(),
            SubgroupKind::Center => Ok(self.center()),
        }
    }

    /// Conjugation generators: transvections along a basis of F_q over F_p in
    /// every off-diagonal slot, plus diag(γ, 1, …, 1).
    pub fn generators(&self) -> Vec<Matrix> {
        let f = &self.field;
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                for k in 0..f.degree() {
                    let mut m = self.identity();
                    m.set(i, j, f.antilog(k as i64));
                    out.push(m);
                }
            }
        }
        let mut d = self.identity();
        d.set(0, 0, f.generator());
        out.push(d);
        out
    }
}

/// ψ(Σ superdiagonal) on an upper unitriangular matrix.
pub fn psi_on_u(psi: &AdditiveCharacter, u: &Matrix) -> Result<Complex64> {
    if !u.is_upper_unitriangular() {
        return Err(Error::NotUnipotent);
    }
    Ok(psi.eval(superdiag_sum(u, psi.field())))
}

pub fn superdiag_sum(u: &Matrix, f: &Field) -> u32 {
    (0..u.n().saturating_sub(1)).fold(0, |acc, i| f.add(acc, u.get(i, i + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn group(q: u32, n: usize) -> GlGroup {
        GlGroup::new(Arc::new(Field::of_order(q).unwrap()), n).unwrap()
    }

    #[test]
    fn element_counts() {
        assert_eq!(group(2, 1).elements().count(), 1);
        assert_eq!(group(3, 2).elements().count(), 48);
        assert_eq!(group(2, 3).elements().count(), 168);
        for (q, n) in [(4, 2), (5, 2), (3, 3), (2, 4)] {
            let g = group(q, n);
            assert_eq!(g.elements().count() as u64, g.order());
        }
        assert!(matches!(
            GlGroup::new(Arc::new(Field::of_order(3).unwrap()), 4),
            Err(Error::EnvelopeExceeded { .. })
        ));
        assert!(GlGroup::new(Arc::new(Field::of_order(2).unwrap()), 5).is_err());
    }

    #[test]
    fn partitioned_enumeration_is_a_partition() {
        let g = group(3, 2);
        let total = g.index_space();
        let mut all: Vec<Matrix> = Vec::new();
        for k in 0..4 {
            all.extend(g.elements_in(k * total / 4..(k + 1) * total / 4));
        }
        let direct: Vec<Matrix> = g.elements().collect();
        assert_eq!(all, direct);
    }

    #[test]
    fn encode_decode_roundtrip() {
        let g = group(5, 2);
        for m in g.elements() {
            assert_eq!(g.decode(g.encode(&m)), m);
        }
    }

    #[test]
    fn subgroup_orders() {
        let g = group(3, 2);
        assert_eq!(g.unipotent().len(), 3);
        assert_eq!(g.mirabolic().unwrap().len(), 6);
        assert_eq!(g.center().len(), 2);
        let g2 = group(2, 3);
        let c21 = Composition::new(vec![2, 1], 3).unwrap();
        assert_eq!(g2.radical(&c21).len(), 4);
        assert_eq!(g2.unipotent().len(), 8);
        assert_eq!(g2.parabolic(&c21).unwrap().len(), 6 * 4);
        assert_eq!(g2.levi(&c21).unwrap().len(), 6);
        let g3 = group(3, 3);
        let mir = g3.mirabolic().unwrap();
        assert_eq!(mir.len() as u64, gl_order(3, 2) * 9);
        assert!(mir.iter().all(|m| g3.contains(m)));
        assert!(Composition::new(vec![2, 2], 3).is_err());
        assert_eq!(Composition::all(3).len(), 4);
    }

    #[test]
    fn psi_on_u_is_a_character() {
        let g = group(3, 3);
        let psi = AdditiveCharacter::standard(g.field().clone());
        let us = g.unipotent();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        assert!((psi_on_u(&psi, &g.identity()).unwrap() - 1.0).norm() < 1e-15);
        for _ in 0..50 {
            let a = us[rng.gen_range(0..us.len())];
            let b = us[rng.gen_range(0..us.len())];
            let l = psi_on_u(&psi, &g.mul(&a, &b)).unwrap();
            let r = psi_on_u(&psi, &a).unwrap() * psi_on_u(&psi, &b).unwrap();
            assert!((l - r).norm() < 1e-12);
        }
        let mut single = g.identity();
        single.set(1, 2, 2);
        assert!((psi_on_u(&psi, &single).unwrap() - psi.eval(2)).norm() < 1e-15);
        assert_eq!(
            psi_on_u(&psi, &Matrix::diag(&[2, 1, 1])),
            Err(Error::NotUnipotent)
        );
    }
}
