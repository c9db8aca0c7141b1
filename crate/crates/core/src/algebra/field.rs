//! Finite fields F_q with log/antilog tables.
//!
//! An element is stored as the integer Σ c_i p^i of its coordinates in the
//! power basis 1, x, …, x^{f−1} of F_p[x]/(modulus). The prime subfield is
//! therefore 0..p, and the generator is the class of x.

use super::conway;
use crate::error::{Error, Result};
use crate::numeric::is_prime;

/// Largest field (and extension) the engine builds.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;
const ADD_TABLE_LIMIT: u32 = 256;

pub type Elem = u32;

#[derive(Clone)]
pub struct Field {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
    neg: Vec<u32>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}(modulus {:?})", self.q, self.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl Field {
    /// F_{p^f} with the shipped Conway polynomial, or the smallest primitive
    /// polynomial when the table has no entry.
    pub fn new(p: u32, f: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        if f == 0 {
            return Err(Error::Config("field degree must be positive".into()));
        }
        let size = (p as u64).checked_pow(f).unwrap_or(u64::MAX);
        if size > MAX_FIELD_SIZE {
            return Err(Error::TooLarge(size));
        }
        let modulus = match conway::conway_polynomial(p, f) {
            Some(m) => m,
            None => conway::smallest_primitive(p, f),
        };
        Field::with_modulus(p, modulus)
    }

    /// F_q from its cardinality.
    pub fn of_order(q: u32) -> Result<Field> {
        match crate::numeric::prime_power(q as u64) {
            Some((p, f)) => Field::new(p as u32, f),
            None => Err(Error::NonPrime(q as u64)),
        }
    }

    /// Build from an explicit monic modulus (low-to-high over F_p); it must be primitive.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        let f = modulus.len() as u32 - 1;
        if f == 0 || *modulus.last().unwrap() != 1 {
            return Err(Error::NotMonic);
        }
        let size = (p as u64).pow(f);
        if size > MAX_FIELD_SIZE {
            return Err(Error::TooLarge(size));
        }
        let q = size as u32;
        let pw: Vec<u32> = (0..f).map(|i| p.pow(i)).collect();
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut digits = vec![0u32; f as usize];
        digits[0] = 1;
        for i in 0..q - 1 {
            let v: u32 = digits.iter().zip(&pw).map(|(d, w)| d * w).sum();
            if log[v as usize] != u32::MAX {
                return Err(Error::PreconditionViolated(format!(
                    "modulus {modulus:?} is not primitive over F_{p}"
                )));
            }
            log[v as usize] = i;
            exp.push(v);
            // multiply by x
            let top = digits[f as usize - 1];
            for k in (1..f as usize).rev() {
                digits[k] = digits[k - 1];
            }
            digits[0] = 0;
            for k in 0..f as usize {
                digits[k] = (digits[k] + (p - modulus[k] % p) * top) % p;
            }
        }
        let mut field = Field {
            p,
            f,
            q,
            modulus,
            exp,
            log,
            add_table: None,
            neg: Vec::new(),
        };
        field.neg = (0..q).map(|a| field.digit_neg(a)).collect();
        if q <= ADD_TABLE_LIMIT {
            let mut t = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = field.digit_add(a, b);
                }
            }
            field.add_table = Some(t);
        }
        Ok(field)
    }

    fn digit_add(&self, mut a: u32, mut b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.f == 1 {
            return (a + b) % self.p;
        }
        let (mut out, mut w) = (0, 1);
        for _ in 0..self.f {
            out += ((a % self.p + b % self.p) % self.p) * w;
            a /= self.p;
            b /= self.p;
            w *= self.p;
        }
        out
    }

    fn digit_neg(&self, mut a: u32) -> u32 {
        let (mut out, mut w) = (0, 1);
        for _ in 0..self.f {
            out += ((self.p - a % self.p) % self.p) * w;
            a /= self.p;
            w *= self.p;
        }
        out
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.f
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn generator(&self) -> Elem {
        self.exp[1 % self.exp.len()]
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.add_table {
            Some(t) => t[(a * self.q + b) as usize],
            None => self.digit_add(a, b),
        }
    }
    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] + self.log[b as usize];
        let m = self.q - 1;
        self.exp[(if s >= m { s - m } else { s }) as usize]
    }
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let m = self.q - 1;
        Some(self.exp[((m - self.log[a as usize]) % m) as usize])
    }
    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }
    /// a^e, negative exponents allowed for a ≠ 0; 0^0 = 1.
    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let m = (self.q - 1) as i64;
        let k = ((self.log[a as usize] as i64) * e.rem_euclid(m)).rem_euclid(m);
        self.exp[k as usize]
    }
    /// Discrete log w.r.t. the generator.
    pub fn log(&self, a: Elem) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.log[a as usize])
        }
    }
    /// g^i for the fixed generator g.
    pub fn antilog(&self, i: i64) -> Elem {
        self.exp[i.rem_euclid((self.q - 1) as i64) as usize]
    }
    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, i: i64) -> Elem {
        i.rem_euclid(self.p as i64) as u32
    }
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as i64)
    }
    /// Tr_{F_q/F_p}(a), as an integer in 0..p.
    pub fn absolute_trace(&self, a: Elem) -> u32 {
        let mut t = 0;
        let mut x = a;
        for _ in 0..self.f {
            t = self.add(t, x);
            x = self.frobenius(x);
        }
        debug_assert!(t < self.p);
        t
    }
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        0..self.q
    }
    pub fn units(&self) -> impl Iterator<Item = Elem> + Clone {
        1..self.q
    }
    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(0, |acc, x| self.add(acc, x))
    }
}
