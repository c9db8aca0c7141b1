//! Burnside–Dixon character tables over F_ℓ, lifted to cyclotomic data.

use super::modular as md;
use crate::error::{Error, Result};
use crate::glgroup::ClassData;
use crate::numeric::root_of_unity;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Σ_k mult[k]·ζ_order^k, where mult[k] is the multiplicity of the
/// eigenvalue ζ_order^k of ρ(g).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExactValue {
    pub order: u32,
    pub mult: Vec<i64>,
}

impl ExactValue {
    pub fn to_complex(&self) -> Complex64 {
        let mut s = crate::numeric::KahanSum::new();
        for (k, &m) in self.mult.iter().enumerate() {
            if m != 0 {
                s.add(root_of_unity(k as i64, self.order as u64) * m as f64);
            }
        }
        s.value()
    }

    pub fn conj(&self) -> ExactValue {
        let o = self.order as usize;
        ExactValue {
            order: self.order,
            mult: (0..o).map(|k| self.mult[(o - k) % o]).collect(),
        }
    }

    /// (order, exponent, coefficient) for the nonzero coefficients.
    pub fn triples(&self) -> Vec<(u32, u32, i64)> {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(k, &m)| (self.order, k as u32, m))
            .collect()
    }

    pub fn from_triples(order: u32, triples: &[(u32, u32, i64)]) -> ExactValue {
        let mut mult = vec![0; order as usize];
        for &(o, k, m) in triples {
            assert_eq!(o, order);
            mult[k as usize] += m;
        }
        ExactValue { order, mult }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactCharacter {
    pub dim: u64,
    pub values: Vec<ExactValue>,
}

pub struct DixonResult {
    pub ell: u64,
    pub characters: Vec<ExactCharacter>,
}

/// Sorted subspace basis in reduced form: basis[i][pivots[j]] = δ_ij.
struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn from_vectors(mut vs: Vec<Vec<u64>>, l: u64) -> Subspace {
        let k = vs.first().map_or(0, |v| v.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..k {
            let Some(p) = (r..vs.len()).find(|&i| vs[i][c] != 0) else {
                continue;
            };
            vs.swap(p, r);
            let iv = md::inv(vs[r][c], l);
            for x in vs[r].iter_mut() {
                *x = md::mul(*x, iv, l);
            }
            for i in 0..vs.len() {
                if i != r && vs[i][c] != 0 {
                    let s = vs[i][c];
                    for cc in 0..k {
                        let v = md::mul(s, vs[r][cc], l);
                        vs[i][cc] = md::sub(vs[i][cc], v, l);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        vs.truncate(r);
        Subspace { basis: vs, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Split by the eigenspaces of M restricted here.
    fn split(&self, m: &[Vec<u64>], l: u64) -> Result<Vec<Subspace>> {
        let d = self.dim();
        let k = m.len();
        // M·b_i expressed in the basis: read off pivot coordinates
        let images: Vec<Vec<u64>> = self
            .basis
            .iter()
            .map(|b| {
                (0..k)
                    .map(|r| (0..k).fold(0, |acc, c| md::add(acc, md::mul(m[r][c], b[c], l), l)))
                    .collect()
            })
            .collect();
        let r: Vec<Vec<u64>> = (0..d)
            .map(|i| (0..d).map(|j| images[j][self.pivots[i]]).collect())
            .collect();
        let cp = md::char_poly(r.clone(), l);
        let roots = md::roots(&cp, l);
        if roots.len() == 1 {
            return Ok(vec![Subspace {
                basis: self.basis.clone(),
                pivots: self.pivots.clone(),
            }]);
        }
        let mut out = Vec::new();
        let mut total = 0;
        for lam in roots {
            let mut a = r.clone();
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = md::sub(row[i], lam, l);
            }
            let ker = md::kernel(a, l);
            total += ker.len();
            let vecs: Vec<Vec<u64>> = ker
                .iter()
                .map(|y| {
                    (0..k)
                        .map(|c| {
                            (0..d).fold(0, |acc, i| md::add(acc, md::mul(y[i], self.basis[i][c], l), l))
                        })
                        .collect()
                })
                .collect();
            out.push(Subspace::from_vectors(vecs, l));
        }
        if total != d {
            return Err(Error::DixonFailure(format!(
                "class matrix not diagonalizable on a {d}-dimensional subspace"
            )));
        }
        Ok(out)
    }
}

/// a_{jkl} = #{x ∈ C_j : x^{-1} z_l ∈ C_k}, indexed [k][l], mod ℓ.
fn class_matrix(classes: &ClassData, members: &[Vec<u32>], j: usize, l: u64) -> Vec<Vec<u64>> {
    let g = classes.group();
    let f = g.field();
    let k = classes.len();
    let jinv = classes.inverse_class(j);
    let xs: Vec<_> = members[jinv].iter().map(|&i| g.decode(i)).collect();
    let mut m = vec![vec![0u64; k]; k];
    for (lc, info) in classes.classes().iter().enumerate() {
        for x in &xs {
            let kc = classes.class_of(&x.mul(&info.rep, f));
            m[kc][lc] += 1;
        }
    }
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v %= l;
        }
    }
    m
}

pub fn dixon(classes: &ClassData) -> Result<DixonResult> {
    let k = classes.len();
    let order = classes.group().order();
    let e = classes.exponent();
    let bound = 2 * ((order as f64).sqrt().ceil() as u64);
    let l = md::dixon_prime(e, bound);
    let members = classes.members();
    let id = classes.identity_class();

    let mut spaces = vec![Subspace::from_vectors(
        (0..k)
            .map(|i| (0..k).map(|j| (i == j) as u64).collect())
            .collect(),
        l,
    )];
    let mut order_idx: Vec<usize> = (0..k).collect();
    order_idx.sort_by_key(|&c| (classes.info(c).size, c));
    for &j in &order_idx {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        if classes.info(j).size == 1 && j == id {
            continue;
        }
        let m = class_matrix(classes, &members, j, l);
        let mut next = Vec::new();
        for s in &spaces {
            if s.dim() == 1 {
                next.push(Subspace {
                    basis: s.basis.clone(),
                    pivots: s.pivots.clone(),
                });
            } else {
                next.extend(s.split(&m, l)?);
            }
        }
        spaces = next;
    }
    if !spaces.iter().all(|s| s.dim() == 1) {
        return Err(Error::DixonFailure("class matrices did not separate the characters".into()));
    }

    // power maps: class of g^t for the representative g of each class
    let g = classes.group();
    let f = g.field();
    let powers: Vec<Vec<usize>> = classes
        .classes()
        .iter()
        .map(|c| {
            let mut x = g.identity();
            (0..c.order)
                .map(|_| {
                    let cls = classes.class_of(&x);
                    x = x.mul(&c.rep, f);
                    cls
                })
                .collect()
        })
        .collect();
    let z_e = md::pow(md::primitive_root(l), (l - 1) / e, l);
    let order_mod = order % l;

    let mut characters = Vec::with_capacity(k);
    for s in &spaces {
        let v0 = &s.basis[0];
        let norm = md::inv(v0[id], l);
        let w: Vec<u64> = v0.iter().map(|&x| md::mul(x, norm, l)).collect();
        // χ(1)^2 = |G| / Σ_c ω_c ω_{c*} / |C_c|
        let mut sum = 0u64;
        for c in 0..k {
            let t = md::mul(w[c], w[classes.inverse_class(c)], l);
            sum = md::add(sum, md::mul(t, md::inv(classes.info(c).size % l, l), l), l);
        }
        let d2 = md::mul(order_mod, md::inv(sum, l), l);
        let dim = (1..=(order as f64).sqrt() as u64 + 1)
            .find(|&d| md::mul(d, d, l) == d2)
            .ok_or_else(|| Error::DixonFailure("no integral degree".into()))?;
        let chi_mod: Vec<u64> = (0..k)
            .map(|c| md::mul(md::mul(dim, w[c], l), md::inv(classes.info(c).size % l, l), l))
            .collect();
        let mut values = Vec::with_capacity(k);
        for c in 0..k {
            let o = classes.info(c).order as u64;
            let z_o = md::pow(z_e, e / o, l);
            let o_inv = md::inv(o % l, l);
            let mut mult = Vec::with_capacity(o as usize);
            for kk in 0..o {
                let mut acc = 0;
                for t in 0..o {
                    let zt = md::pow(z_o, (o - (kk * t) % o) % o, l);
                    acc = md::add(acc, md::mul(chi_mod[powers[c][t as usize]], zt, l), l);
                }
                let m = md::centered(md::mul(acc, o_inv, l), l);
                if m < 0 {
                    return Err(Error::DixonFailure("negative eigenvalue multiplicity".into()));
                }
                mult.push(m);
            }
            if mult.iter().sum::<i64>() != dim as i64 {
                return Err(Error::DixonFailure("multiplicities do not sum to the degree".into()));
            }
            values.push(ExactValue { order: o as u32, mult });
        }
        characters.push(ExactCharacter { dim, values });
    }
    let dims2: u64 = characters.iter().map(|c| c.dim * c.dim).sum();
    if dims2 != order {
        return Err(Error::DixonFailure(format!("Σ dim² = {dims2} ≠ |G| = {order}")));
    }
    Ok(DixonResult { ell: l, characters })
}
