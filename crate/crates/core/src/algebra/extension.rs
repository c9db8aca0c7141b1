//! Extensions F_{q^n} ⊇ F_q with an explicit embedding of the base.

use super::field::{Elem, Field, MAX_FIELD_SIZE};
use crate::error::{Error, Result};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct ExtensionField {
    base: Arc<Field>,
    n: u32,
    big: Arc<Field>,
    embed: Vec<Elem>,
    project: Vec<Elem>,
}

const NOT_IN_BASE: Elem = Elem::MAX;

impl ExtensionField {
    pub fn new(base: Arc<Field>, n: u32) -> Result<ExtensionField> {
        let q = base.order() as u64;
        let size = q.checked_pow(n).unwrap_or(u64::MAX);
        if size > MAX_FIELD_SIZE {
            return Err(Error::TooLarge(size));
        }
        if n == 1 {
            let embed: Vec<Elem> = base.elements().collect();
            return Ok(ExtensionField {
                big: base.clone(),
                project: embed.clone(),
                embed,
                base,
                n,
            });
        }
        let big = Arc::new(Field::new(base.p(), base.degree() * n)?);
        let big_order = big.order() as u64;
        // image of the base generator: a root of the base modulus among the
        // generators of the subfield of order q
        let step = ((big_order - 1) / (q - 1)) as i64;
        let root = (1..q as i64)
            .filter(|t| crate::numeric::gcd(*t as u64, q - 1) == 1)
            .map(|t| big.antilog(t * step))
            .find(|&b| {
                let mut acc = 0;
                for &c in base.modulus().iter().rev() {
                    acc = big.add(big.mul(acc, b), c);
                }
                acc == 0
            })
            .expect("base modulus has a root in the extension");
        let mut embed = vec![0; q as usize];
        let mut project = vec![NOT_IN_BASE; big_order as usize];
        project[0] = 0;
        for a in base.units() {
            let la = base.log(a).unwrap() as i64;
            let b = big.pow(root, la);
            embed[a as usize] = b;
            project[b as usize] = a;
        }
        Ok(ExtensionField {
            base,
            n,
            big,
            embed,
            project,
        })
    }

    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }
    /// The field F_{q^n} itself.
    pub fn field(&self) -> &Arc<Field> {
        &self.big
    }
    pub fn degree(&self) -> u32 {
        self.n
    }
    pub fn order(&self) -> u32 {
        self.big.order()
    }
    pub fn embed(&self, a: Elem) -> Elem {
        self.embed[a as usize]
    }
    /// Inverse of [`embed`](Self::embed) on its image.
    pub fn project(&self, x: Elem) -> Option<Elem> {
        let v = self.project[x as usize];
        (v != NOT_IN_BASE).then_some(v)
    }
    /// x ↦ x^q.
    pub fn frobenius(&self, x: Elem) -> Elem {
        self.big.pow(x, self.base.order() as i64)
    }
    pub fn conjugates(&self, x: Elem) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.n as usize);
        let mut y = x;
        for _ in 0..self.n {
            out.push(y);
            y = self.frobenius(y);
        }
        out
    }
    pub fn norm(&self, x: Elem) -> Elem {
        if x == 0 {
            return 0;
        }
        let e = (self.big.order() as i64 - 1) / (self.base.order() as i64 - 1);
        self.project(self.big.pow(x, e)).expect("norm lies in the base")
    }
    pub fn trace(&self, x: Elem) -> Elem {
        let t = self.big.sum(self.conjugates(x));
        self.project(t).expect("trace lies in the base")
    }
    pub fn norm_trace(&self, x: Elem) -> (Elem, Elem) {
        (self.norm(x), self.trace(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(p: u32, f: u32, n: u32) -> ExtensionField {
        ExtensionField::new(Arc::new(Field::new(p, f).unwrap()), n).unwrap()
    }

    #[test]
    fn degree_one_is_the_base() {
        let e = ext(3, 1, 1);
        assert_eq!(e.order(), 3);
        assert_eq!(e.norm(2), 2);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        for (p, f, n) in [(2, 1, 2), (3, 1, 2), (2, 2, 2), (3, 2, 2), (2, 1, 4), (5, 1, 3)] {
            let e = ext(p, f, n);
            let (b, big) = (e.base().clone(), e.field().clone());
            for x in b.elements() {
                for y in b.elements() {
                    assert_eq!(e.embed(b.add(x, y)), big.add(e.embed(x), e.embed(y)));
                    assert_eq!(e.embed(b.mul(x, y)), big.mul(e.embed(x), e.embed(y)));
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_base() {
        for (p, n) in [(2, 2), (3, 2), (2, 3)] {
            let e = ext(p, 1, n);
            let fixed: Vec<_> = e.field().elements().filter(|&x| e.frobenius(x) == x).collect();
            assert_eq!(fixed.len() as u32, e.base().order());
            assert!(fixed.iter().all(|&x| e.project(x).is_some()));
            for x in e.field().elements() {
                let mut y = x;
                for _ in 0..n {
                    y = e.frobenius(y);
                }
                assert_eq!(y, x);
            }
        }
        // F_4: Frobenius swaps the two non-base elements
        let e = ext(2, 1, 2);
        let moved: Vec<_> = e.field().elements().filter(|&x| e.frobenius(x) != x).collect();
        assert_eq!(moved.len(), 2);
        assert_eq!(e.frobenius(moved[0]), moved[1]);
    }

    #[test]
    fn norm_trace_against_conjugates() {
        let e = ext(3, 1, 2);
        let big = e.field().clone();
        for x in big.elements() {
            let c = e.conjugates(x);
            let prod = c.iter().fold(1, |a, &y| big.mul(a, y));
            let sum = c.iter().fold(0, |a, &y| big.add(a, y));
            assert_eq!(e.embed(e.norm(x)), prod);
            assert_eq!(e.embed(e.trace(x)), sum);
        }
        assert_eq!(e.norm_trace(0), (0, 0));
        let b = e.base().clone();
        for a in b.elements() {
            assert_eq!(e.norm(e.embed(a)), b.mul(a, a));
            assert_eq!(e.trace(e.embed(a)), b.add(a, a));
        }
    }

    #[test]
    fn trace_transitivity_in_tower() {
        // F_16 ⊇ F_4 ⊇ F_2
        let f2 = Arc::new(Field::new(2, 1).unwrap());
        let top = ExtensionField::new(f2.clone(), 4).unwrap();
        let f4 = Arc::new(Field::new(2, 2).unwrap());
        let mid = ExtensionField::new(f4.clone(), 2).unwrap();
        let low = ExtensionField::new(f2, 2).unwrap();
        assert_eq!(**top.field(), **mid.field());
        assert_eq!(**low.field(), *f4);
        for x in top.field().elements() {
            let via = low.trace(mid.trace(x));
            assert_eq!(top.trace(x), via);
            let via_n = low.norm(mid.norm(x));
            assert_eq!(top.norm(x), via_n);
        }
    }

}
