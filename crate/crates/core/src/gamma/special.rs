//! Gauss-sum products and special values of Bessel functions.

use super::verify::{Tally, VerdictReport};
use super::{GammaValue, Method};
use crate::algebra::{AdditiveCharacter, Elem, MultChar};
use crate::bessel::{three_block, two_block, two_block_lower};
use crate::chartab::{Catalog, Irrep};
use crate::error::{Error, Result};
use crate::glgroup::Matrix;
use crate::numeric::{KahanSum, TOL_IDENTITY};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

/// Exhaustive identity checks run over all of G up to this order.
pub const EXHAUSTIVE_LIMIT: u64 = 10_000;

fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// H(y) = Σ_{∏N(ξ_j) = y} ∏ α_j^{-1}(ξ_j) ψ(Tr ξ_j), indexed by log y.
fn norm_profile(cat: &Catalog, pi: Irrep, a: Elem) -> Result<Vec<Complex64>> {
    let f = cat.field().clone();
    let q1 = (cat.q() - 1) as usize;
    let psi = AdditiveCharacter::new(f.clone(), a);
    let mut h = vec![Complex64::new(0.0, 0.0); q1];
    h[0] = Complex64::new(1.0, 0.0);
    for &part in cat.support(pi) {
        let orbit = cat
            .info(part)
            .orbit
            .as_ref()
            .ok_or_else(|| Error::OrbitUnidentified(part.to_string()))?;
        let ext = cat.level(part.n)?.ext.clone();
        let alpha = MultChar::new(ext.field().clone(), orbit.representative() as i64).inverse();
        let mut fj = vec![KahanSum::new(); q1];
        for xi in ext.field().units() {
            let (nm, tr) = ext.norm_trace(xi);
            fj[f.log(nm).unwrap() as usize].add(alpha.eval(xi) * psi.eval(tr));
        }
        let mut next = vec![KahanSum::new(); q1];
        for (i, hi) in h.iter().enumerate() {
            for (j, fv) in fj.iter().enumerate() {
                next[(i + j) % q1].add(hi * fv.value());
            }
        }
        h = next.iter().map(|s| s.value()).collect();
    }
    Ok(h)
}

/// γ_ψ(π×χ) as the Gauss-sum product over the cuspidal support of π.
pub fn kondo_gamma_gl1(cat: &Catalog, pi: Irrep, chi: Irrep, a: Elem) -> Result<GammaValue> {
    if chi.n != 1 {
        return Err(Error::PreconditionViolated(format!("{chi} is not a character of GL_1")));
    }
    if !cat.info(pi).is_generic() {
        return Err(Error::NotGeneric(pi.to_string()));
    }
    let f = cat.field().clone();
    let n = pi.n;
    let r = cat.support(pi).len();
    let h = norm_profile(cat, pi, a)?;
    let shift = if n.is_multiple_of(2) { 1 } else { f.neg(1) };
    let s: Complex64 = crate::numeric::ksum(
        h.iter()
            .enumerate()
            .map(|(j, v)| v * cat.gl1_value(chi, f.mul(shift, f.antilog(j as i64)))),
    );
    Ok(GammaValue {
        value: sign(n + r) * s,
        method: Method::KondoProduct,
        pi,
        sigma: chi,
        psi_a: a,
    })
}

/// J_π((0 I_{n−1}; c 0)) as an exotic Kloosterman sum.
pub fn two_block_special_value(cat: &Catalog, pi: Irrep, c: Elem, a: Elem) -> Result<Complex64> {
    let n = pi.n;
    if n < 2 {
        return Err(Error::PreconditionViolated("two-block values need n > 1".into()));
    }
    if c == 0 {
        return Err(Error::PreconditionViolated("c must be nonzero".into()));
    }
    if !cat.info(pi).is_generic() {
        return Err(Error::NotGeneric(pi.to_string()));
    }
    let f = cat.field().clone();
    let r = cat.support(pi).len();
    let h = norm_profile(cat, pi, a)?;
    let target = f.mul(if n % 2 == 1 { 1 } else { f.neg(1) }, f.inv(c).unwrap());
    let q = cat.q() as f64;
    Ok(sign(n + r) * q.powi(1 - n as i32) * h[f.log(target).unwrap() as usize])
}

/// Σ_s J(0 I; s^{-1}c 0) J(0 sc′; I 0) (ψ(s) − 1) + δ_{cc′,1} q^{2−n}.
pub fn three_block_special_value(cat: &Catalog, pi: Irrep, c: Elem, c2: Elem, a: Elem) -> Result<Complex64> {
    let (s, _) = three_block_sums(cat, pi, c, c2, a)?;
    Ok(s)
}

/// The variant Σ_s J(0 I; s^{-1}c 0) J(0 sc′; I 0) ψ(s), valid when no GL_1
/// character lies in the cuspidal support.
pub fn three_block_simple(cat: &Catalog, pi: Irrep, c: Elem, c2: Elem, a: Elem) -> Result<Complex64> {
    let (_, s) = three_block_sums(cat, pi, c, c2, a)?;
    Ok(s)
}

fn three_block_sums(cat: &Catalog, pi: Irrep, c: Elem, c2: Elem, a: Elem) -> Result<(Complex64, Complex64)> {
    let n = pi.n;
    if n < 3 {
        return Err(Error::PreconditionViolated("three-block values need n ≥ 3".into()));
    }
    let f = cat.field().clone();
    let j = cat.bessel(pi, a)?;
    let mut full = KahanSum::new();
    let mut simple = KahanSum::new();
    for s in f.units() {
        let x = j.value(&two_block(n, f.mul(f.inv(s).unwrap(), c))) * j.value(&two_block_lower(n, f.mul(s, c2)));
        let p = j.psi().eval(s);
        full.add(x * (p - 1.0));
        simple.add(x * p);
    }
    let delta = if f.mul(c, c2) == 1 {
        (cat.q() as f64).powi(2 - n as i32)
    } else {
        0.0
    };
    Ok((full.value() + delta, simple.value()))
}

/// Direct value at (0 0 −c′; 0 I 0; c 0 0).
pub fn three_block_direct(cat: &Catalog, pi: Irrep, c: Elem, c2: Elem, a: Elem) -> Result<Complex64> {
    let j = cat.bessel(pi, a)?;
    Ok(j.value(&three_block(pi.n, c, c2, cat.field())))
}

/// Residual of J(g) J(0 I; c 0) = q^{−(n−1)} Σ_x ψ(−x_{n−1}) J(g (I x; 0 1) (0 I; c 0)).
pub fn fourier_bessel_identity_check(cat: &Catalog, pi: Irrep, c: Elem, a: Elem) -> Result<VerdictReport> {
    let start = Instant::now();
    let n = pi.n;
    if n < 2 {
        return Err(Error::PreconditionViolated("needs n ≥ 2".into()));
    }
    let tally = fourier_bessel_tally(cat, pi, c, a)?;
    Ok(tally.report("prop.fourier_bessel", vec![(n, cat.q())], a, TOL_IDENTITY, start, Vec::new()))
}

pub(crate) fn fourier_bessel_tally(cat: &Catalog, pi: Irrep, c: Elem, a: Elem) -> Result<Tally> {
    let n = pi.n;
    let f = cat.field().clone();
    let level = cat.level(n)?;
    let j = cat.bessel(pi, a)?;
    let w = two_block(n, c);
    let jw = j.value(&w);
    let qq = cat.q() as u64;
    let xs = qq.pow(n as u32 - 1);
    let mut shifts = Vec::with_capacity(xs as usize);
    for code in 0..xs {
        let mut u = Matrix::identity(n);
        let mut k = code;
        for i in 0..n - 1 {
            u.set(i, n - 1, (k % qq) as Elem);
            k /= qq;
        }
        let weight = j.psi().eval(f.neg(u.get(n - 2, n - 1)));
        shifts.push((u.mul(&w, &f), weight));
    }
    let scale = (cat.q() as f64).powi(1 - n as i32);
    let gs: Vec<Matrix> = if level.group.order() <= EXHAUSTIVE_LIMIT {
        level.group.elements().collect()
    } else {
        let all: Vec<Matrix> = level.group.elements().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0xb355e1 ^ qq);
        (0..200).map(|_| all[rng.gen_range(0..all.len())]).collect()
    };
    let mut tally = Tally::default();
    for g in &gs {
        let mut s = KahanSum::new();
        for (m, wt) in &shifts {
            s.add(*wt * j.value(&g.mul(m, &f)));
        }
        let res = (j.value(g) * jw - scale * s.value()).norm();
        tally.record(res, || format!("{pi} c={c} g={}", g.display()));
    }
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::shared;
    use crate::gamma::shahidi_gamma;

    #[test]
    fn kondo_matches_bessel_gamma() {
        for (q, n) in [(3, 1), (5, 1), (3, 2), (2, 3)] {
            let c = shared(q, n).unwrap();
            for pi in c.generic(n) {
                for chi in c.irreps(1) {
                    let k = kondo_gamma_gl1(&c, pi, chi, 1).unwrap().value;
                    let s = shahidi_gamma(&c, pi, chi, 1).unwrap().value;
                    assert!((k - s).norm() < 1e-7, "q={q} {pi} {chi}: {k} vs {s}");
                }
            }
        }
    }

    #[test]
    fn two_block_matches_direct() {
        for (q, n) in [(3, 2), (5, 2), (2, 3)] {
            let c = shared(q, n).unwrap();
            for pi in c.generic(n) {
                let j = c.bessel(pi, 1).unwrap();
                for x in c.field().units() {
                    let v = two_block_special_value(&c, pi, x, 1).unwrap();
                    assert!((v - j.value(&two_block(n, x))).norm() < 1e-7);
                }
            }
        }
    }

    #[test]
    fn three_block_matches_direct() {
        let c = shared(2, 3).unwrap();
        for pi in c.generic(3) {
            let v = three_block_special_value(&c, pi, 1, 1, 1).unwrap();
            let d = three_block_direct(&c, pi, 1, 1, 1).unwrap();
            assert!((v - d).norm() < 1e-7);
        }
    }

    #[test]
    fn fourier_bessel_gl2_f3() {
        let c = shared(3, 2).unwrap();
        for pi in c.generic(2) {
            for x in c.field().units() {
                let r = fourier_bessel_identity_check(&c, pi, x, 1).unwrap();
                assert!(r.max_residual < 1e-8);
                assert_eq!(r.instances, 48);
            }
        }
    }
}
