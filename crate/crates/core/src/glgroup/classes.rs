//! Conjugacy classes of GL_n(F_q) and their rational-canonical labels.

use super::group::GlGroup;
use super::matrix::Matrix;
use crate::algebra::poly::poly_order;
use crate::algebra::{Field, IrreducibleSieve, Poly};
use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

/// Multiset of (irreducible monic f ≠ x, partition), sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassLabel(pub Vec<(Poly, Vec<u32>)>);

impl Ord for ClassLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            let c = poly_order(&a.0, &b.0).then_with(|| a.1.cmp(&b.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for ClassLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(p, lam)| {
                let l: Vec<String> = lam.iter().map(|x| x.to_string()).collect();
                format!("({})^[{}]", p.display(), l.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl ClassLabel {
    /// Regular elliptic: a single irreducible factor of full degree.
    pub fn elliptic_poly(&self, n: usize) -> Option<&Poly> {
        match self.0.as_slice() {
            [(p, lam)] if p.degree() == Some(n) && lam == &vec![1] => Some(p),
            _ => None,
        }
    }
}

/// f(g) by Horner.
pub fn eval_poly_at(p: &Poly, g: &Matrix, f: &Field) -> Matrix {
    let n = g.n();
    let mut acc = Matrix::zero(n);
    for &c in p.coeffs().iter().rev() {
        acc = acc.mul(g, f).add(&Matrix::scalar(n, c), f);
    }
    acc
}

/// Rational canonical label of g; the sieve must cover degree ⌊n/2⌋.
pub fn class_label_with(g: &Matrix, f: &Field, sieve: &IrreducibleSieve) -> ClassLabel {
    let n = g.n();
    let cp = Poly::new(g.char_poly(f));
    let factors = sieve.factor(f, &cp).expect("characteristic polynomial is monic");
    let mut parts = Vec::new();
    for (p, mult) in factors {
        let d = p.degree().unwrap();
        let fg = eval_poly_at(&p, g, f);
        let mut nullity = vec![0usize];
        let mut power = Matrix::identity(n);
        for _ in 0..mult {
            power = power.mul(&fg, f);
            nullity.push(n - power.rank(f));
        }
        // b_k = number of Jordan blocks of size ≥ k
        let b: Vec<usize> = (1..=mult as usize)
            .map(|k| (nullity[k] - nullity[k - 1]) / d)
            .collect();
        let mut lam = Vec::new();
        for k in (1..=mult as usize).rev() {
            let exact = b[k - 1] - b.get(k).copied().unwrap_or(0);
            lam.extend(std::iter::repeat_n(k as u32, exact));
        }
        parts.push((p, lam));
    }
    ClassLabel(parts)
}

pub fn class_label(g: &Matrix, f: &Field) -> ClassLabel {
    class_label_with(g, f, &IrreducibleSieve::new(f, g.n() / 2))
}

#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub label: ClassLabel,
    pub rep: Matrix,
    pub size: u64,
    pub order: u32,
}

/// Classes sorted by label, with a dense element→class map.
pub struct ClassData {
    group: Arc<GlGroup>,
    class_of: Vec<u16>,
    classes: Vec<ClassInfo>,
    inverse: Vec<usize>,
    exponent: u64,
}

const SINGULAR: u16 = u16::MAX;

impl ClassData {
    pub fn build(group: Arc<GlGroup>) -> Result<ClassData> {
        let f = group.field().clone();
        let space = group.index_space() as usize;
        let gens: Vec<(Matrix, Matrix)> = group
            .generators()
            .into_iter()
            .map(|s| (s, group.inv(&s)))
            .collect();
        let mut tmp = vec![u32::MAX; space];
        let mut reps: Vec<(Matrix, u64)> = Vec::new();
        let mut queue = VecDeque::new();
        for idx in 0..space as u32 {
            if tmp[idx as usize] != u32::MAX {
                continue;
            }
            let m = group.decode(idx);
            if !m.is_invertible(&f) {
                continue;
            }
            let cid = reps.len() as u32;
            tmp[idx as usize] = cid;
            queue.push_back(m);
            let mut size = 0u64;
            while let Some(x) = queue.pop_front() {
                size += 1;
                for (s, si) in &gens {
                    let y = s.mul(&x, &f).mul(si, &f);
                    let yi = group.encode(&y) as usize;
                    if tmp[yi] == u32::MAX {
                        tmp[yi] = cid;
                        queue.push_back(y);
                    }
                }
            }
            reps.push((m, size));
        }
        let sieve = IrreducibleSieve::new(&f, group.n() / 2);
        let mut infos: Vec<(usize, ClassInfo)> = reps
            .iter()
            .enumerate()
            .map(|(i, &(rep, size))| {
                let label = class_label_with(&rep, &f, &sieve);
                let order = element_order(&rep, &f);
                (i, ClassInfo { label, rep, size, order })
            })
            .collect();
        infos.sort_by(|a, b| a.1.label.cmp(&b.1.label));
        for w in infos.windows(2) {
            assert_ne!(w[0].1.label, w[1].1.label, "distinct classes share a label");
        }
        let mut renumber = vec![0u16; infos.len()];
        for (new, (old, _)) in infos.iter().enumerate() {
            renumber[*old] = new as u16;
        }
        let class_of: Vec<u16> = tmp
            .iter()
            .map(|&c| if c == u32::MAX { SINGULAR } else { renumber[c as usize] })
            .collect();
        let classes: Vec<ClassInfo> = infos.into_iter().map(|(_, c)| c).collect();
        let mut data = ClassData {
            group,
            class_of,
            classes,
            inverse: vec![],
            exponent: 1,
        };
        data.inverse = (0..data.classes.len())
            .map(|c| {
                let r = data.classes[c].rep;
                data.class_of(&data.group.inv(&r))
            })
            .collect();
        data.exponent = data.classes.iter().fold(1u64, |acc, c| {
            let o = c.order as u64;
            acc / crate::numeric::gcd(acc, o) * o
        });
        Ok(data)
    }

    pub fn group(&self) -> &Arc<GlGroup> {
        &self.group
    }
    pub fn len(&self) -> usize {
        self.classes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }
    pub fn info(&self, c: usize) -> &ClassInfo {
        &self.classes[c]
    }
    #[inline]
    pub fn class_of_index(&self, idx: u32) -> usize {
        let c = self.class_of[idx as usize];
        debug_assert!(c != SINGULAR);
        c as usize
    }
    #[inline]
    pub fn class_of(&self, g: &Matrix) -> usize {
        self.class_of_index(self.group.encode(g))
    }
    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse[c]
    }
    /// Class of g^k for g in class c.
    pub fn power_class(&self, c: usize, k: u64) -> usize {
        let f = self.group.field();
        self.class_of(&self.classes[c].rep.pow(k, f))
    }
    pub fn identity_class(&self) -> usize {
        self.class_of(&self.group.identity())
    }
    /// lcm of element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }
    pub fn find_label(&self, label: &ClassLabel) -> Option<usize> {
        self.classes.binary_search_by(|c| c.label.cmp(label)).ok()
    }
    /// Element indices of each class.
    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.classes.len()];
        for (i, &c) in self.class_of.iter().enumerate() {
            if c != SINGULAR {
                out[c as usize].push(i as u32);
            }
        }
        out
    }
}

pub fn element_order(g: &Matrix, f: &Field) -> u32 {
    let id = Matrix::identity(g.n());
    let mut x = *g;
    let mut k = 1;
    while x != id {
        x = x.mul(g, f);
        k += 1;
    }
    k
}

/// Number of conjugacy classes of GL_n(F_q), by the generating function
/// ∏_{k≥1} (1 − x^k)/(1 − q x^k).
pub fn class_count_formula(q: u64, n: usize) -> u64 {
    // coefficients of ∏_{k=1}^n (1 − x^k)/(1 − q x^k) up to x^n
    let mut c = vec![0i128; n + 1];
    c[0] = 1;
    for k in 1..=n {
        // multiply by 1/(1 − q x^k)
        for i in k..=n {
            c[i] += q as i128 * c[i - k];
        }
        // multiply by (1 − x^k)
        for i in (k..=n).rev() {
            c[i] -= c[i - k];
        }
    }
    c[n] as u64
}
