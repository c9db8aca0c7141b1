//! Rankin–Selberg gamma factors and their functional equations.

use super::verify::{Tally, VerdictReport};
use super::{GammaValue, Method};
use crate::algebra::{AdditiveCharacter, Elem, Field};
use crate::bessel::BesselEvaluator;
use crate::chartab::{Catalog, Irrep};
use crate::error::{Error, Result};
use crate::glgroup::{w_long, Matrix};
use crate::numeric::{complex_rank, KahanSum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use std::time::Instant;

use super::shahidi::antidiag_embed;

/// γ_RS(π×σ, ψ_a) from Bessel sums.
pub fn jpss_gamma(cat: &Catalog, pi: Irrep, sigma: Irrep, a: Elem) -> Result<GammaValue> {
    let (n, m) = (pi.n, sigma.n);
    if n < m {
        return Err(Error::PreconditionViolated(format!("Rankin–Selberg gamma needs n ≥ m, got {n} < {m}")));
    }
    if !cat.info(pi).cuspidal {
        return Err(Error::PreconditionViolated(format!("{pi} is not cuspidal")));
    }
    if n == m && !cat.info(sigma).cuspidal {
        return Err(Error::PreconditionViolated(format!("{sigma} is not cuspidal and n = m")));
    }
    let f = cat.field().clone();
    let jp = cat.bessel(pi, a)?;
    let js = cat.bessel(sigma, f.neg(a))?;
    let mut s = KahanSum::new();
    if n > m {
        for h in &cat.level(m)?.transversal {
            s.add(jp.value(&antidiag_embed(h, n)) * js.value(h));
        }
    } else {
        for g in &cat.level(n)?.transversal {
            let gi = g.inverse(&f).unwrap();
            s.add(jp.value(g) * js.value(g) * jp.psi().eval(gi.get(n - 1, 0)));
        }
    }
    Ok(GammaValue {
        value: s.value(),
        method: Method::JpssBessel,
        pi,
        sigma,
        psi_a: a,
    })
}

/// W(g) = J(g·x).
#[derive(Clone)]
pub struct WhittakerFunction {
    pub bessel: Arc<BesselEvaluator>,
    pub translate: Matrix,
}

impl WhittakerFunction {
    pub fn new(bessel: Arc<BesselEvaluator>, translate: Matrix) -> Self {
        WhittakerFunction { bessel, translate }
    }
    pub fn eval(&self, g: &Matrix) -> Complex64 {
        let f = self.bessel.level().group.field();
        self.bessel.value(&g.mul(&self.translate, f))
    }
    /// W̃(g) = W(w_n ᵗg^{-1}).
    pub fn tilde(&self, g: &Matrix) -> Complex64 {
        let f = self.bessel.level().group.field();
        let gi = g.inverse(f).expect("group element");
        self.eval(&w_long(g.n()).mul(&gi.transpose(), f))
    }
}

/// Right translates of J that span the Whittaker model, added while the rank grows.
pub fn spanning_translates(bessel: &Arc<BesselEvaluator>) -> Vec<WhittakerFunction> {
    let level = bessel.level();
    let f = level.group.field();
    let dim = level.info[bessel.irrep().index].dim as usize;
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    let mut out = Vec::new();
    for x in &level.transversal {
        let row: Vec<Complex64> = level.transversal.iter().map(|g| bessel.value(&g.mul(x, f))).collect();
        rows.push(row);
        if complex_rank(&rows, 1e-8) == rows.len() {
            out.push(WhittakerFunction::new(bessel.clone(), *x));
            if out.len() == dim {
                break;
            }
        } else {
            rows.pop();
        }
    }
    out
}

/// (h 0 0; x I_k 0; 0 0 I_{j+1}) with k = n−m−j−1.
fn zj_argument(h: &Matrix, x_code: u64, n: usize, j: usize, f: &Field) -> Matrix {
    let m = h.n();
    let k = n - m - j - 1;
    let q = f.order() as u64;
    let mut g = Matrix::identity(n);
    g.put(0, 0, h);
    let mut c = x_code;
    for r in 0..k {
        for col in 0..m {
            g.set(m + r, col, (c % q) as Elem);
            c /= q;
        }
    }
    g
}

/// Z_j(W, W′) = Σ_{h∈U_m\GL_m} Σ_{x∈M_{(n−m−j−1)×m}} W(h; x I; I) W′(h).
pub fn zj_sum(
    cat: &Catalog,
    n: usize,
    m: usize,
    j: usize,
    w: impl Fn(&Matrix) -> Complex64,
    w2: impl Fn(&Matrix) -> Complex64,
) -> Result<Complex64> {
    if j + m + 1 > n {
        return Err(Error::PreconditionViolated(format!("Z_j needs j ≤ n−m−1, got j={j}")));
    }
    let f = cat.field().clone();
    let xs = (cat.q() as u64).pow(((n - m - j - 1) * m) as u32);
    let mut s = KahanSum::new();
    for h in &cat.level(m)?.transversal {
        let wh = w2(h);
        if wh == Complex64::new(0.0, 0.0) {
            continue;
        }
        for code in 0..xs {
            s.add(w(&zj_argument(h, code, n, j, &f)) * wh);
        }
    }
    Ok(s.value())
}

/// Residuals of q^{mj} γ Z_j(W,W′;ψ) = Z_{n−m−j−1}(π̌(I_m ⊕ w_{n−m})W̃, W̃′; ψ^{-1}).
pub fn check_fe_n_gt_m(cat: &Catalog, pi: Irrep, sigma: Irrep, a: Elem) -> Result<VerdictReport> {
    let start = Instant::now();
    let (n, m) = (pi.n, sigma.n);
    if n <= m || !cat.info(pi).cuspidal {
        return Err(Error::PreconditionViolated("the Z_j equation needs π cuspidal and n > m".into()));
    }
    let f = cat.field().clone();
    let q = cat.q() as f64;
    let gamma = jpss_gamma(cat, pi, sigma, a)?.value;
    let ws = spanning_translates(&cat.bessel(pi, a)?);
    let ws2 = spanning_translates(&cat.bessel(sigma, f.neg(a))?);
    let mut k = Matrix::zero(n);
    k.put(0, 0, &Matrix::identity(m));
    k.put(m, m, &w_long(n - m));
    let mut tally = Tally::default();
    let mut best: Option<(f64, Complex64)> = None;
    for w in &ws {
        for w2 in &ws2 {
            for j in 0..n - m {
                let lhs = zj_sum(cat, n, m, j, |g| w.eval(g), |h| w2.eval(h))?;
                let rhs = zj_sum(cat, n, m, n - m - j - 1, |g| w.tilde(&g.mul(&k, &f)), |h| w2.tilde(h))?;
                let res = (q.powi((m * j) as i32) * gamma * lhs - rhs).norm();
                tally.record(res, || format!("{pi}×{sigma} j={j} W·{} W′·{}", w.translate.display(), w2.translate.display()));
                if j == 0 && best.is_none_or(|(b, _)| lhs.norm() > b) {
                    best = Some((lhs.norm(), rhs / lhs));
                }
            }
        }
    }
    let mut notes = Vec::new();
    if let Some((size, g0)) = best {
        if size > 1e-6 {
            let res = (g0 - gamma).norm();
            tally.record(res, || format!("{pi}×{sigma} γ from j=0"));
            notes.push(format!("γ from j=0: {:.9}{:+.9}i", g0.re, g0.im));
        }
    }
    Ok(tally.report("thm.fe_n_gt_m", vec![(n, cat.q())], a, crate::numeric::TOL_IDENTITY, start, notes))
}

/// A function on F_q^n; index Σ v_i q^i.
#[derive(Clone, Debug, PartialEq)]
pub struct SchwartzFunction {
    pub n: usize,
    pub q: u32,
    pub values: Vec<Complex64>,
}

impl SchwartzFunction {
    pub fn zero(n: usize, q: u32) -> Self {
        SchwartzFunction {
            n,
            q,
            values: vec![Complex64::new(0.0, 0.0); (q as usize).pow(n as u32)],
        }
    }
    pub fn delta(n: usize, q: u32, v: usize) -> Self {
        let mut s = Self::zero(n, q);
        s.values[v] = Complex64::new(1.0, 0.0);
        s
    }
    pub fn index(&self, v: &[Elem]) -> usize {
        v.iter().rev().fold(0, |acc, &x| acc * self.q as usize + x as usize)
    }
    pub fn vector(&self, idx: usize) -> Vec<Elem> {
        let mut v = Vec::with_capacity(self.n);
        let mut c = idx;
        for _ in 0..self.n {
            v.push((c % self.q as usize) as Elem);
            c /= self.q as usize;
        }
        v
    }
    pub fn at(&self, v: &[Elem]) -> Complex64 {
        self.values[self.index(v)]
    }
}

/// F_ψφ(y) = Σ_x φ(x) ψ(⟨x, y⟩).
pub fn fourier_transform(phi: &SchwartzFunction, psi: &AdditiveCharacter) -> SchwartzFunction {
    let f = psi.field();
    let mut out = SchwartzFunction::zero(phi.n, phi.q);
    let vecs: Vec<Vec<Elem>> = (0..phi.values.len()).map(|i| phi.vector(i)).collect();
    for (yi, y) in vecs.iter().enumerate() {
        let mut s = KahanSum::new();
        for (xi, x) in vecs.iter().enumerate() {
            if phi.values[xi] != Complex64::new(0.0, 0.0) {
                let dot = x.iter().zip(y).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                s.add(phi.values[xi] * psi.eval(dot));
            }
        }
        out.values[yi] = s.value();
    }
    out
}

/// Z(W, W′, φ) = Σ_{g∈U_n\GL_n} W(g) W′(g) φ(e_n g).
pub fn z_sum(
    cat: &Catalog,
    n: usize,
    w: impl Fn(&Matrix) -> Complex64,
    w2: impl Fn(&Matrix) -> Complex64,
    phi: &SchwartzFunction,
) -> Result<Complex64> {
    let mut s = KahanSum::new();
    for g in &cat.level(n)?.transversal {
        let row: Vec<Elem> = (0..n).map(|j| g.get(n - 1, j)).collect();
        let p = phi.at(&row);
        if p != Complex64::new(0.0, 0.0) {
            s.add(w(g) * w2(g) * p);
        }
    }
    Ok(s.value())
}

/// Residuals of Z(W̃, W̃′, F_ψφ; ψ^{-1}) = γ Z(W, W′, φ; ψ), over φ(0) = 0 and,
/// when π ≇ σ̌, over all φ; plus Fourier inversion and the size of γ.
pub fn check_fe_n_eq_m(cat: &Catalog, pi: Irrep, sigma: Irrep, a: Elem) -> Result<VerdictReport> {
    let start = Instant::now();
    let n = pi.n;
    if sigma.n != n || !cat.info(pi).cuspidal || !cat.info(sigma).cuspidal {
        return Err(Error::PreconditionViolated("the n = m equation needs cuspidal π, σ of equal size".into()));
    }
    let f = cat.field().clone();
    let q = cat.q();
    let psi = AdditiveCharacter::new(f.clone(), a);
    let gamma = jpss_gamma(cat, pi, sigma, a)?.value;
    let ws = spanning_translates(&cat.bessel(pi, a)?);
    let ws2 = spanning_translates(&cat.bessel(sigma, f.neg(a))?);
    let dual_pair = cat.dual(sigma) == pi;
    let size = (q as usize).pow(n as u32);
    let phis: Vec<usize> = if dual_pair { (1..size).collect() } else { (0..size).collect() };
    let mut tally = Tally::default();
    for w in &ws {
        for w2 in &ws2 {
            for &v in &phis {
                let phi = SchwartzFunction::delta(n, q, v);
                let fphi = fourier_transform(&phi, &psi);
                let lhs = z_sum(cat, n, |g| w.tilde(g), |g| w2.tilde(g), &fphi)?;
                let rhs = gamma * z_sum(cat, n, |g| w.eval(g), |g| w2.eval(g), &phi)?;
                tally.record((lhs - rhs).norm(), || format!("{pi}×{sigma} φ=δ_{v}"));
            }
            let d0 = SchwartzFunction::delta(n, q, 0);
            tally.record(z_sum(cat, n, |g| w.eval(g), |g| w2.eval(g), &d0)?.norm(), || "Z(δ_0)".into());
        }
    }
    // Fourier inversion on a few pseudo-random φ
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (q as u64) << 8 ^ n as u64);
    for _ in 0..4 {
        let mut phi = SchwartzFunction::zero(n, q);
        for v in phi.values.iter_mut() {
            *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let back = fourier_transform(&fourier_transform(&phi, &psi), &psi.inverse());
        let res = back
            .values
            .iter()
            .zip(&phi.values)
            .map(|(b, p)| (b - p * size as f64).norm())
            .fold(0.0, f64::max);
        tally.record(res, || "Fourier inversion".into());
    }
    let expected = if dual_pair { 1.0 } else { (q as f64).powf(n as f64 / 2.0) };
    tally.record((gamma.norm() - expected).abs(), || format!("|γ({pi}×{sigma})|"));
    if dual_pair {
        tally.record((gamma + 1.0).norm(), || format!("γ({pi}×{sigma}) = −1"));
    }
    Ok(tally.report("thm.fe_n_eq_m", vec![(n, q)], a, crate::numeric::TOL_IDENTITY, start, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::shared;

    #[test]
    fn appendix_value_gl2_f3() {
        let c = shared(3, 2).unwrap();
        for p in c.cuspidal(2) {
            let g = jpss_gamma(&c, p, c.dual(p), 1).unwrap();
            assert!((g.value + 1.0).norm() < 1e-7, "{}", g.value);
        }
    }

    #[test]
    fn preconditions() {
        let c = shared(3, 2).unwrap();
        let nc = c.generic(2).into_iter().find(|&p| !c.info(p).cuspidal).unwrap();
        let chi = c.irreps(1)[0];
        assert!(matches!(jpss_gamma(&c, nc, chi, 1), Err(Error::PreconditionViolated(_))));
        assert!(matches!(jpss_gamma(&c, chi, nc, 1), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn fourier_basics() {
        let f = Arc::new(Field::of_order(3).unwrap());
        let psi = AdditiveCharacter::standard(f);
        let d0 = SchwartzFunction::delta(2, 3, 0);
        let t = fourier_transform(&d0, &psi);
        assert!(t.values.iter().all(|v| (v - 1.0).norm() < 1e-12));
        let phi = SchwartzFunction::delta(2, 3, 5);
        assert_eq!(phi.vector(5), vec![2, 1]);
        assert_eq!(phi.index(&[2, 1]), 5);
    }

    #[test]
    fn zj_is_bilinear() {
        let c = shared(3, 2).unwrap();
        let f = c.field().clone();
        let p = c.cuspidal(2)[0];
        let chi = c.irreps(1)[1];
        let ws = spanning_translates(&c.bessel(p, 1).unwrap());
        let w2 = WhittakerFunction::new(c.bessel(chi, f.neg(1)).unwrap(), Matrix::identity(1));
        let a = zj_sum(&c, 2, 1, 0, |g| ws[0].eval(g), |h| w2.eval(h)).unwrap();
        let b = zj_sum(&c, 2, 1, 0, |g| ws[1].eval(g), |h| w2.eval(h)).unwrap();
        let s = zj_sum(&c, 2, 1, 0, |g| 2.0 * ws[0].eval(g) - ws[1].eval(g), |h| w2.eval(h)).unwrap();
        assert!((s - (2.0 * a - b)).norm() < 1e-9);
    }

    #[test]
    fn functional_equations_small() {
        let c = shared(3, 2).unwrap();
        for p in c.cuspidal(2) {
            for chi in c.irreps(1) {
                let r = check_fe_n_gt_m(&c, p, chi, 1).unwrap();
                assert!(r.pass, "{r:?}");
            }
            for s in c.cuspidal(2) {
                let r = check_fe_n_eq_m(&c, p, s, 1).unwrap();
                assert!(r.pass, "{r:?}");
            }
        }
    }
}
