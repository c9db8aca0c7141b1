//! Normalized Bessel functions of generic irreducibles, computed from characters.

use crate::algebra::{AdditiveCharacter, Elem};
use crate::chartab::{Irrep, Level};
use crate::error::{Error, Result};
use crate::glgroup::{coset_canonical_with, w_long, Matrix};
use crate::glgroup::group::superdiag_sum;
use crate::numeric::{snap, KahanSum};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// Full tables are refused above this group order.
pub const MAX_FULL_TABLE: u64 = 100_000;

/// (0 I_{n−1}; c 0).
pub fn two_block(n: usize, c: Elem) -> Matrix {
    let mut m = Matrix::zero(n);
    for i in 0..n - 1 {
        m.set(i, i + 1, 1);
    }
    m.set(n - 1, 0, c);
    m
}

/// (0 c; I_{n−1} 0).
pub fn two_block_lower(n: usize, c: Elem) -> Matrix {
    let mut m = Matrix::zero(n);
    for i in 0..n - 1 {
        m.set(i + 1, i, 1);
    }
    m.set(0, n - 1, c);
    m
}

/// (0 0 −c′; 0 I_{n−2} 0; c 0 0).
pub fn three_block(n: usize, c: Elem, c2: Elem, f: &crate::algebra::Field) -> Matrix {
    let mut m = Matrix::zero(n);
    for i in 1..n - 1 {
        m.set(i, i, 1);
    }
    m.set(0, n - 1, f.neg(c2));
    m.set(n - 1, 0, c);
    m
}

/// J_{π,ψ_a} with a memo over U_n\G cosets.
pub struct BesselEvaluator {
    level: Arc<Level>,
    irrep: Irrep,
    psi: AdditiveCharacter,
    // ψ_a^{-1} indexed by field element
    psi_inv: Vec<Complex64>,
    memo: RwLock<HashMap<u32, Complex64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BesselRow {
    pub label: String,
    pub key: String,
    pub value: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    TwoBlock,
    ThreeBlock,
    Full,
}

impl std::str::FromStr for Domain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Domain> {
        match s {
            "two_block" | "two-block" => Ok(Domain::TwoBlock),
            "three_block" | "three-block" => Ok(Domain::ThreeBlock),
            "full" => Ok(Domain::Full),
            _ => Err(Error::Config(format!(
                "unknown domain {s:?}; expected two_block, three_block or full"
            ))),
        }
    }
}

impl BesselEvaluator {
    pub fn new(level: Arc<Level>, irrep: Irrep, a: Elem) -> Result<BesselEvaluator> {
        if irrep.n != level.n() || irrep.index >= level.info.len() {
            return Err(Error::NotFound(format!("irrep {irrep}")));
        }
        if !level.info[irrep.index].is_generic() {
            return Err(Error::NotGeneric(irrep.to_string()));
        }
        if a == 0 {
            return Err(Error::PreconditionViolated("ψ_a needs a ≠ 0".into()));
        }
        let f = level.group.field().clone();
        let psi = AdditiveCharacter::new(f.clone(), a);
        let psi_inv = f.elements().map(|x| psi.eval(x).conj()).collect();
        Ok(BesselEvaluator {
            level,
            irrep,
            psi,
            psi_inv,
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn irrep(&self) -> Irrep {
        self.irrep
    }
    pub fn psi(&self) -> &AdditiveCharacter {
        &self.psi
    }
    pub fn level(&self) -> &Arc<Level> {
        &self.level
    }
    pub fn memo_len(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    /// (1/|U|) Σ_u ψ^{-1}(u) χ_π(g u).
    pub fn direct(&self, g: &Matrix) -> Complex64 {
        let l = &self.level;
        let f = l.group.field();
        let mut s = KahanSum::new();
        for (u, sd) in &l.unipotent {
            let c = l.classes.class_of(&g.mul(u, f));
            s.add(self.psi_inv[*sd as usize] * l.table.value(self.irrep.index, c));
        }
        s.value() / l.unipotent.len() as f64
    }

    /// J(g), via J(v^{-1} c) = ψ(v)^{-1} J(c).
    pub fn value(&self, g: &Matrix) -> Complex64 {
        let f = self.level.group.field();
        let (c, v) = coset_canonical_with(g, f);
        let key = self.level.group.encode(&c);
        let base = self.memo.read().unwrap().get(&key).copied();
        let base = match base {
            Some(z) => z,
            None => {
                let z = self.direct(&c);
                *self.memo.write().unwrap().entry(key).or_insert(z)
            }
        };
        self.psi_inv[superdiag_sum(&v, f) as usize] * base
    }

    /// J(w_n · ᵗg^{-1}).
    pub fn tilde(&self, g: &Matrix) -> Complex64 {
        let f = self.level.group.field();
        let n = g.n();
        let gi = g.inverse(f).expect("group element");
        self.value(&w_long(n).mul(&gi.transpose(), f))
    }

    pub fn table(&self, domain: Domain) -> Result<Vec<BesselRow>> {
        let l = &self.level;
        let f = l.group.field();
        let n = l.n();
        let row = |label: String, g: Matrix| {
            let key = crate::glgroup::coset_canonical(&g, f).display();
            BesselRow {
                label,
                key,
                value: snap(self.value(&g)),
            }
        };
        match domain {
            Domain::TwoBlock => {
                if n < 2 {
                    return Err(Error::PreconditionViolated("two-block values need n ≥ 2".into()));
                }
                Ok(f.units().map(|c| row(format!("c={c}"), two_block(n, c))).collect())
            }
            Domain::ThreeBlock => {
                if n < 3 {
                    return Err(Error::PreconditionViolated("three-block values need n ≥ 3".into()));
                }
                let mut out = Vec::new();
                for c in f.units() {
                    for c2 in f.units() {
                        out.push(row(format!("c={c},c'={c2}"), three_block(n, c, c2, f)));
                    }
                }
                Ok(out)
            }
            Domain::Full => {
                if l.group.order() > MAX_FULL_TABLE {
                    return Err(Error::EnvelopeExceeded {
                        n,
                        q: l.group.q(),
                        reason: format!("full Bessel tables need |G| ≤ {MAX_FULL_TABLE}"),
                    });
                }
                Ok(l.transversal.iter().map(|g| row(g.display(), *g)).collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::{shared, Catalog};
    use crate::numeric::complex_rank;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    fn evaluators(c: &Catalog, n: usize) -> Vec<Arc<BesselEvaluator>> {
        c.generic(n).into_iter().map(|p| c.bessel(p, 1).unwrap()).collect()
    }

    #[test]
    fn normalization_and_gl1() {
        let c = shared(5, 1).unwrap();
        for p in c.irreps(1) {
            let e = c.bessel(p, 1).unwrap();
            for x in c.field().units() {
                let want = c.character(p)[c.level(1).unwrap().classes.class_of(&Matrix::scalar(1, x))];
                assert!(close(e.value(&Matrix::scalar(1, x)), want));
            }
        }
        for (q, n) in [(3, 2), (2, 3), (3, 3), (2, 4)] {
            let c = shared(q, n).unwrap();
            for e in evaluators(&c, n) {
                assert!((e.value(&Matrix::identity(n)) - 1.0).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn non_generic_is_refused() {
        let c = shared(3, 2).unwrap();
        let l = c.level(2).unwrap();
        let i = (0..l.info.len()).find(|&i| !l.info[i].is_generic()).unwrap();
        assert!(matches!(c.bessel(Irrep::new(2, i), 1), Err(Error::NotGeneric(_))));
    }

    #[test]
    fn two_sided_equivariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (q, n) in [(3, 2), (2, 3), (3, 3)] {
            let c = shared(q, n).unwrap();
            let l = c.level(n).unwrap().clone();
            let f = l.group.field().clone();
            for e in evaluators(&c, n) {
                for _ in 0..50 {
                    let g = l.transversal[rng.gen_range(0..l.transversal.len())];
                    let (u1, s1) = l.unipotent[rng.gen_range(0..l.unipotent.len())];
                    let (u2, s2) = l.unipotent[rng.gen_range(0..l.unipotent.len())];
                    let lhs = e.value(&u1.mul(&g, &f).mul(&u2, &f));
                    let rhs = e.psi().eval(s1) * e.psi().eval(s2) * e.value(&g);
                    assert!(close(lhs, rhs));
                    assert!(close(e.value(&g), e.direct(&g)));
                }
            }
        }
    }

    #[test]
    fn inverse_is_conjugate_and_dual() {
        let c = shared(3, 2).unwrap();
        let l = c.level(2).unwrap();
        let f = l.group.field().clone();
        for p in c.generic(2) {
            let e = c.bessel(p, 1).unwrap();
            let dual = c.bessel(c.dual(p), f.neg(1)).unwrap();
            for g in l.group.elements() {
                let gi = g.inverse(&f).unwrap();
                assert!(close(e.value(&gi), e.value(&g).conj()));
                assert!(close(e.value(&gi), dual.value(&g)));
            }
        }
        // J(g^{-1}) = J̃(g·w_n), sampled on GL_3(F_2)
        let c = shared(2, 3).unwrap();
        let l = c.level(3).unwrap().clone();
        let f = l.group.field().clone();
        let w = w_long(3);
        let elems: Vec<Matrix> = l.group.elements().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in c.generic(3) {
            let e = c.bessel(p, 1).unwrap();
            for _ in 0..100 {
                let g = elems[rng.gen_range(0..elems.len())];
                let gi = g.inverse(&f).unwrap();
                assert!(close(e.value(&gi), e.tilde(&g.mul(&w, &f))));
            }
        }
    }

    #[test]
    fn mirabolic_vanishing_for_cuspidals() {
        for (q, n) in [(3, 2), (2, 3)] {
            let c = shared(q, n).unwrap();
            let l = c.level(n).unwrap();
            let mir = l.group.mirabolic().unwrap();
            for p in c.cuspidal(n) {
                let e = c.bessel(p, 1).unwrap();
                for g in &mir {
                    if !g.is_upper_unitriangular() {
                        assert!(e.value(g).norm() < 1e-9, "{}", g.display());
                    }
                }
            }
        }
    }

    #[test]
    fn translates_span_the_model() {
        let c = shared(3, 2).unwrap();
        let l = c.level(2).unwrap();
        let f = l.group.field().clone();
        for p in c.cuspidal(2) {
            let e = c.bessel(p, 1).unwrap();
            let rows: Vec<Vec<Complex64>> = l
                .transversal
                .iter()
                .map(|x| l.transversal.iter().map(|g| e.value(&g.mul(x, &f))).collect())
                .collect();
            assert_eq!(complex_rank(&rows, 1e-8) as u64, c.info(p).dim);
        }
    }

    #[test]
    fn tables() {
        let c = shared(3, 2).unwrap();
        let p = c.generic(2)[0];
        let e = c.bessel(p, 1).unwrap();
        assert_eq!(e.table(Domain::TwoBlock).unwrap().len(), 2);
        let full = e.table(Domain::Full).unwrap();
        let l = c.level(2).unwrap();
        assert_eq!(full.len(), l.transversal.len());
        for (row, g) in full.iter().zip(&l.transversal) {
            assert!(close(row.value, snap(e.direct(g))));
        }
        assert!(e.table(Domain::ThreeBlock).is_err());
    }
}
