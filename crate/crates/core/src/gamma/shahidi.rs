//! Shahidi gamma factors: closed-form Bessel sums and the intertwining oracle.

use super::{GammaValue, Method};
use crate::algebra::Elem;
use crate::chartab::{Catalog, Irrep};
use crate::error::{Error, Result};
use crate::glgroup::{levi_parts, pwu_decompose, Matrix};
use crate::glgroup::group::superdiag_sum;
use crate::numeric::KahanSum;
use num_complex::Complex64;

/// Oracle sums over q^{nm} matrices are refused above this.
pub const MAX_ORACLE_TERMS: u64 = 1_000_000;

/// (0 I_{n−m}; x 0) for x ∈ GL_m.
pub fn antidiag_embed(x: &Matrix, n: usize) -> Matrix {
    let m = x.n();
    let mut g = Matrix::zero(n);
    for i in 0..n - m {
        g.set(i, m + i, 1);
    }
    g.put(n - m, 0, x);
    g
}

/// γ_ψ(π×σ) for ψ = ψ_a, by the three-case Bessel sums.
pub fn shahidi_gamma(cat: &Catalog, pi: Irrep, sigma: Irrep, a: Elem) -> Result<GammaValue> {
    let f = cat.field().clone();
    let q = cat.q() as f64;
    let (n, m) = (pi.n, sigma.n);
    let jp = cat.bessel(pi, a)?;
    let js = cat.bessel(sigma, a)?;
    let minus_one = f.neg(1);
    let mut s = KahanSum::new();
    let value = if n > m {
        for x in &cat.level(m)?.transversal {
            let xi = x.inverse(&f).unwrap();
            s.add(jp.value(&antidiag_embed(x, n)) * js.value(&xi));
        }
        let e = (m * (2 * n - m - 1)) as i32 / 2;
        q.powi(e) * cat.central_character(sigma, minus_one) * s.value()
    } else if n == m {
        for x in &cat.level(n)?.transversal {
            let xi = x.inverse(&f).unwrap();
            // ψ of (I x^{-1}; 0 I) sees only the corner entry of x^{-1}
            let corner = jp.psi().eval(xi.get(n - 1, 0));
            s.add(corner * jp.value(x) * js.value(&xi));
        }
        let e = (n * (n - 1)) as i32 / 2;
        q.powi(e) * cat.central_character(sigma, minus_one) * s.value()
    } else {
        for x in &cat.level(n)?.transversal {
            let y = antidiag_embed(x, m).inverse(&f).unwrap();
            s.add(jp.value(x) * js.value(&y));
        }
        let e = (n * (2 * m - n - 1)) as i32 / 2;
        q.powi(e) * cat.central_character(pi, minus_one) * s.value()
    };
    Ok(GammaValue {
        value,
        method: Method::ShahidiBessel,
        pi,
        sigma,
        psi_a: a,
    })
}

/// γ̃ = q^{−nm/2} γ.
pub fn normalized_gamma(cat: &Catalog, pi: Irrep, sigma: Irrep, a: Elem) -> Result<GammaValue> {
    let mut g = shahidi_gamma(cat, pi, sigma, a)?;
    g.value /= (cat.q() as f64).powf((pi.n * sigma.n) as f64 / 2.0);
    Ok(g)
}

/// Σ_{A ∈ M_{n×m}} of the (I, I) coordinate of f_{σ,π}((I_m 0; A I_n)),
/// decomposing each argument as p·w_{n,m}·u with no case analysis.
pub fn gamma_intertwining_oracle(cat: &Catalog, pi: Irrep, sigma: Irrep, a: Elem) -> Result<GammaValue> {
    let f = cat.field().clone();
    let (n, m) = (pi.n, sigma.n);
    let terms = oracle_terms(cat.q(), n, m)?;
    let jp = cat.bessel(pi, a)?;
    let js = cat.bessel(sigma, a)?;
    let qq = cat.q() as u64;
    let mut s = KahanSum::new();
    for code in 0..terms {
        let mut g = Matrix::identity(n + m);
        let mut c = code;
        for i in 0..n {
            for j in 0..m {
                g.set(m + i, j, (c % qq) as Elem);
                c /= qq;
            }
        }
        if let Some((p, u)) = pwu_decompose(&g, m, n, &f) {
            let (p1, p2) = levi_parts(&p, m, n);
            let psi_u = jp.psi().eval(superdiag_sum(&u, &f));
            s.add(psi_u * js.value(&p1) * jp.value(&p2));
        }
    }
    Ok(GammaValue {
        value: s.value(),
        method: Method::IntertwiningOracle,
        pi,
        sigma,
        psi_a: a,
    })
}

pub fn oracle_terms(q: u32, n: usize, m: usize) -> Result<u64> {
    let terms = (q as u64).checked_pow((n * m) as u32).unwrap_or(u64::MAX);
    if terms > MAX_ORACLE_TERMS {
        return Err(Error::EnvelopeExceeded {
            n: n + m,
            q,
            reason: format!("the oracle sums q^(nm) = {terms} terms, limit {MAX_ORACLE_TERMS}"),
        });
    }
    Ok(terms)
}

/// The generic constituent (with multiplicity one) of a Whittaker-type class function.
pub fn generic_constituent(cat: &Catalog, n: usize, f: &[Complex64]) -> Result<Irrep> {
    let level = cat.level(n)?;
    let mult = level.table.decompose(f)?;
    let gens: Vec<usize> = (0..mult.len())
        .filter(|&i| mult[i] != 0 && level.info[i].is_generic())
        .collect();
    match gens.as_slice() {
        [i] if mult[*i] == 1 => Ok(Irrep::new(n, *i)),
        _ => Err(Error::PreconditionViolated(format!(
            "class function is not of Whittaker type (generic constituents {gens:?})"
        ))),
    }
}
