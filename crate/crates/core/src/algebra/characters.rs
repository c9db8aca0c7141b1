//! Additive and multiplicative characters, Frobenius orbits, Gauss sums.

use super::extension::ExtensionField;
use super::field::{Elem, Field};
use crate::numeric::{ksum, mobius, root_of_unity, divisors};
use num_complex::Complex64;
use std::sync::Arc;

/// ψ_a(x) = exp(2πi·Tr_{F_q/F_p}(a·x)/p).
#[derive(Clone, Debug)]
pub struct AdditiveCharacter {
    field: Arc<Field>,
    a: Elem,
}

impl AdditiveCharacter {
    pub fn new(field: Arc<Field>, a: Elem) -> Self {
        assert!(a < field.order());
        AdditiveCharacter { field, a }
    }
    /// The default character ψ_1.
    pub fn standard(field: Arc<Field>) -> Self {
        Self::new(field, 1)
    }
    pub fn twist(&self) -> Elem {
        self.a
    }
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn is_trivial(&self) -> bool {
        self.a == 0
    }
    /// ψ^{-1} = ψ_{−a}.
    pub fn inverse(&self) -> Self {
        Self::new(self.field.clone(), self.field.neg(self.a))
    }
    /// x ↦ ψ(bx).
    pub fn scaled(&self, b: Elem) -> Self {
        Self::new(self.field.clone(), self.field.mul(self.a, b))
    }
    pub fn eval(&self, x: Elem) -> Complex64 {
        let t = self.field.absolute_trace(self.field.mul(self.a, x));
        root_of_unity(t as i64, self.field.p() as u64)
    }
}

/// α_k(g^j) = ζ_{Q−1}^{kj} on F_Q^× for the fixed generator g; α(0) = 0.
#[derive(Clone, Debug)]
pub struct MultChar {
    field: Arc<Field>,
    k: u64,
}

impl MultChar {
    pub fn new(field: Arc<Field>, k: i64) -> Self {
        let m = (field.order() - 1) as i64;
        MultChar {
            k: k.rem_euclid(m) as u64,
            field,
        }
    }
    pub fn index(&self) -> u64 {
        self.k
    }
    pub fn modulus(&self) -> u64 {
        (self.field.order() - 1) as u64
    }
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn is_trivial(&self) -> bool {
        self.k == 0
    }
    pub fn inverse(&self) -> Self {
        Self::new(self.field.clone(), -(self.k as i64))
    }
    pub fn eval(&self, x: Elem) -> Complex64 {
        match self.field.log(x) {
            None => Complex64::new(0.0, 0.0),
            Some(j) => root_of_unity((self.k * j as u64 % self.modulus()) as i64, self.modulus()),
        }
    }
}

/// Characters of F_Q^× for Q = field order, by index.
pub fn all_mult_chars(field: &Arc<Field>) -> Vec<MultChar> {
    (0..field.order() as i64 - 1)
        .map(|k| MultChar::new(field.clone(), k))
        .collect()
}

/// An orbit {k, kq, kq², …} mod q^n − 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct FrobeniusOrbit {
    pub degree: u32,
    pub modulus: u64,
    /// Sorted members; the first is the canonical representative.
    pub members: Vec<u64>,
}

impl FrobeniusOrbit {
    pub fn of(k: u64, q: u64, degree: u32) -> Self {
        let modulus = q.pow(degree) - 1;
        let mut members = Vec::new();
        let mut x = k % modulus;
        loop {
            if members.contains(&x) {
                break;
            }
            members.push(x);
            x = x * q % modulus;
        }
        members.sort();
        FrobeniusOrbit {
            degree,
            modulus,
            members,
        }
    }
    pub fn representative(&self) -> u64 {
        self.members[0]
    }
    pub fn is_regular(&self) -> bool {
        self.members.len() as u32 == self.degree
    }
    pub fn tag(&self) -> String {
        let m: Vec<String> = self.members.iter().map(|k| k.to_string()).collect();
        format!("{}/{}:{{{}}}", self.degree, self.modulus, m.join(","))
    }
}

/// All orbits on the character indices of F_{q^n}^×, sorted by representative.
pub fn frobenius_orbits(ext: &ExtensionField) -> Vec<FrobeniusOrbit> {
    let q = ext.base().order() as u64;
    let n = ext.degree();
    let modulus = q.pow(n) - 1;
    let mut seen = vec![false; modulus as usize];
    let mut out = Vec::new();
    for k in 0..modulus {
        if seen[k as usize] {
            continue;
        }
        let o = FrobeniusOrbit::of(k, q, n);
        for &m in &o.members {
            seen[m as usize] = true;
        }
        out.push(o);
    }
    out
}

/// (1/n) Σ_{d|n} μ(d)(q^{n/d} − 1), the number of regular orbits.
pub fn regular_orbit_count(q: u64, n: u32) -> u64 {
    let s: i64 = divisors(n as u64)
        .into_iter()
        .map(|d| mobius(d) * (q.pow(n / d as u32) as i64 - 1))
        .sum();
    (s / n as i64) as u64
}

/// Σ_{ξ∈F_{q^n}^×} α^{-1}(ξ) χ^{-1}(N ξ) ψ(Tr ξ).
pub fn gauss_sum(
    ext: &ExtensionField,
    alpha: &MultChar,
    chi: &MultChar,
    psi: &AdditiveCharacter,
) -> Complex64 {
    let (ai, ci) = (alpha.inverse(), chi.inverse());
    ksum(ext.field().units().map(|x| {
        let (n, t) = ext.norm_trace(x);
        ai.eval(x) * ci.eval(n) * psi.eval(t)
    }))
}
