//! The theorem registry: exhaustive checks with structured reports.

use super::jpss::{check_fe_n_eq_m, check_fe_n_gt_m, jpss_gamma};
use super::shahidi::{gamma_intertwining_oracle, generic_constituent, normalized_gamma, oracle_terms, shahidi_gamma};
use super::special::{
    fourier_bessel_tally, kondo_gamma_gl1, three_block_direct, three_block_simple, three_block_special_value,
    two_block_special_value, EXHAUSTIVE_LIMIT,
};
use crate::algebra::{regular_orbit_count, Elem};
use crate::bessel::two_block;
use crate::chartab::{shared, Catalog, Irrep};
use crate::error::{Error, Result};
use crate::glgroup::Matrix;
use crate::numeric::{TOL_IDENTITY, TOL_LOG, TOL_ZERO};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub theorem: String,
    pub scope: Vec<(usize, u32)>,
    pub psi_a: Elem,
    pub instances: u64,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Kept out of serialized output so reports are byte-stable.
    #[serde(skip_serializing, default)]
    pub wall_ms: u64,
    pub worst: Option<String>,
    pub notes: Vec<String>,
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scope: Vec<String> = self.scope.iter().map(|(n, q)| format!("({n},{q})")).collect();
        write!(
            f,
            "{:<28} {} scope={} instances={} max_residual={:.3e} tol={:.0e}",
            self.theorem,
            if self.pass { "PASS" } else { "FAIL" },
            scope.join(","),
            self.instances,
            self.max_residual,
            self.tolerance
        )?;
        if let Some(w) = &self.worst {
            write!(f, " worst=[{w}]")?;
        }
        for n in &self.notes {
            write!(f, "\n    {n}")?;
        }
        Ok(())
    }
}

/// Running maximum of residuals, keeping the label of the worst instance.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub instances: u64,
    pub max_residual: f64,
    pub worst: Option<String>,
    pub witnesses: u64,
    pub notes: Vec<String>,
}

impl Tally {
    pub fn record(&mut self, res: f64, label: impl FnOnce() -> String) {
        self.instances += 1;
        let res = if res.is_nan() { f64::INFINITY } else { res };
        if res > self.max_residual || self.worst.is_none() {
            if res > self.max_residual {
                self.max_residual = res;
            }
            self.worst = Some(label());
        }
    }

    /// Appends `other`; ties keep the earlier instance.
    pub fn merge(&mut self, other: Tally) {
        if other.instances > 0 && (self.instances == 0 || other.max_residual > self.max_residual) {
            self.max_residual = other.max_residual;
            self.worst = other.worst;
        }
        self.instances += other.instances;
        self.witnesses += other.witnesses;
        self.notes.extend(other.notes);
    }

    pub fn absorb(&mut self, r: &VerdictReport) {
        self.merge(Tally {
            instances: r.instances,
            max_residual: r.max_residual,
            worst: r.worst.clone(),
            witnesses: 0,
            notes: r.notes.clone(),
        });
    }

    pub fn report(
        self,
        id: &str,
        scope: Vec<(usize, u32)>,
        a: Elem,
        tol: f64,
        start: Instant,
        mut notes: Vec<String>,
    ) -> VerdictReport {
        let mut all = self.notes;
        all.append(&mut notes);
        VerdictReport {
            theorem: id.to_string(),
            scope,
            psi_a: a,
            instances: self.instances,
            max_residual: self.max_residual,
            tolerance: tol,
            pass: self.max_residual < tol,
            wall_ms: start.elapsed().as_millis() as u64,
            worst: self.worst,
            notes: all,
        }
    }
}

/// One (n, q) scope point with its catalog.
pub struct Ctx {
    pub cat: Arc<Catalog>,
    pub n: usize,
    pub q: u32,
    pub a: Elem,
}

pub struct TheoremSpec {
    pub id: &'static str,
    pub aliases: &'static [&'static str],
    pub statement: &'static str,
    pub default_scope: &'static [(usize, u32)],
    pub tolerance: f64,
    /// Also requires at least one counterexample witness across the scope.
    pub needs_witness: bool,
    run: fn(&Ctx) -> Result<Tally>,
}

#[derive(Clone, Debug, Default)]
pub struct Scope {
    pub pairs: Vec<(usize, u32)>,
    pub psi_a: Option<Elem>,
    pub tolerance: Option<f64>,
    pub jobs: Option<usize>,
}

impl Scope {
    pub fn new(pairs: Vec<(usize, u32)>) -> Scope {
        Scope {
            pairs,
            ..Scope::default()
        }
    }
}

const BINARY_TOL: f64 = 0.5;

static REGISTRY: &[TheoremSpec] = &[
    TheoremSpec {
        id: "thm.appendix_minus_one",
        aliases: &["appendix_gamma_pi_pidual"],
        statement: "γ_RS(π×π̌) = −1 for cuspidal π of GL_n",
        default_scope: &[(2, 2), (2, 3), (2, 4), (2, 5), (2, 7), (3, 2), (3, 3), (3, 4), (4, 2)],
        tolerance: TOL_IDENTITY,
        needs_witness: false,
        run: run_appendix,
    },
    TheoremSpec {
        id: "thm.multiplicativity",
        aliases: &["multiplicativity"],
        statement: "γ(π×τ) = γ(π×σ1)γ(π×σ2), τ the generic constituent of σ1∘σ2, sizes ≤ n",
        default_scope: &[(3, 2), (3, 3), (3, 4), (4, 2)],
        tolerance: TOL_IDENTITY,
        needs_witness: false,
        run: run_multiplicativity,
    },
    TheoremSpec {
        id: "cor.full_multiplicativity",
        aliases: &["full_multiplicativity"],
        statement: "γ̃(π×σ) = ∏ γ̃(π_i×σ_j) over cuspidal supports, sizes ≤ n",
        default_scope: &[(3, 2), (3, 3), (3, 4), (4, 2)],
        tolerance: TOL_IDENTITY,
        needs_witness: false,
        run: run_full_multiplicativity,
    },
    TheoremSpec {
        id: "thm.change_of_psi",
        aliases: &["change_of_psi"],
        statement: "γ_{ψ_ab}(π×σ) = ω_π(b)^m ω_σ(b)^{−n} γ_{ψ_a}(π×σ) for all b, sizes ≤ n",
        default_scope: &[(2, 3), (2, 4), (2, 5), (3, 2)],
        tolerance: TOL_IDENTITY,
        needs_witness: false,
        run: run_change_of_psi,
    },
    TheoremSpec {
        id: "thm.contragredient",
        aliases: &["involution"],
        statement: "γ_ψ(π×σ) = γ_{ψ^{-1}}(σ̌×π̌) for all ψ, sizes ≤ n",
        default_scope: &[(2, 3), (2, 4), (2, 5), (3, 2)],
        tolerance: TOL_IDENTITY,
        needs_witness: false,
        run: run_involution,
    },
    TheoremSpec {
        id: "cor.contragredient",
        aliases: &["relation_with_contragredient"],
        statement: "γ_ψ(π×σ) = γ_ψ(σ̌×π̌) ω_π(−1)^m ω_σ(−1)^n for all ψ, sizes ≤ n",
        default_scope: &[(2, 3), (2, 4), (2, 5), (3, 2)],
        tolerance: TOL_IDENTITY,
        needs_witness: false,
        run: run_contragredient,
    },
    TheoremSpec {
        id: "prop.cuspidal_sizes",
        aliases: &["cuspidal_sizes"],
        statement: "log_q|γ̃(π×σ)| = −n/2 if n = m and π ≅ σ, else 0, for cuspidal π, σ of sizes ≤ n",
        default_scope: &[(2, 5), (3, 2), (3, 3), (3, 4), (4, 2)],
        tolerance: TOL_LOG,
        needs_witness: false,
        run: run_cuspidal_sizes,
    },
    TheoremSpec {
        id: "thm.support_abs",
        aliases: &["support_abs"],
        statement: "log_q|γ̃(π×σ)| = −d_π(σ)m/2 for generic π, cuspidal σ, sizes ≤ n",
        default_scope: &[(2, 5), (3, 2), (3, 3), (3, 4), (4, 2)],
        tolerance: TOL_LOG,
        needs_witness: false,
        run: run_support_abs,
    },
    TheoremSpec {
        id: "thm.abs_converse",
        aliases: &["abs_value_converse"],
        statement: "π ↦ (|γ̃(π×σ)|)_{σ cuspidal, m ≤ n} is injective on generics of size ≤ n (residual: colliding pairs)",
        default_scope: &[(2, 5), (3, 3), (3, 4), (4, 2)],
        tolerance: BINARY_TOL,
        needs_witness: false,
        run: run_abs_converse,
    },
    TheoremSpec {
        id: "thm.improved_converse",
        aliases: &["improved_converse"],
        statement: "generic π1, π2 of GL_n with equal central character and equal γ̃ against cuspidal σ, m ≤ n/2, are equal (residual: violating pairs)",
        default_scope: &[(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4), (4, 2)],
        tolerance: BINARY_TOL,
        needs_witness: false,
        run: run_improved_converse,
    },
    TheoremSpec {
        id: "cor.jpss_bridge",
        aliases: &["jpss_bridge"],
        statement: "γ(π×σ) = q^{m(2n−m−1)/2} ω_σ(−1) γ_RS(π×σ̌) for cuspidal π, sizes ≤ n",
        default_scope: &[(2, 3), (2, 5), (3, 2), (3, 3), (3, 4), (4, 2)],
        tolerance: TOL_IDENTITY,
        needs_witness: false,
        run: run_jpss_bridge,
    },
    TheoremSpec {
        id: "cor.rs_size",
        aliases: &["rs_size"],
        statement: "|γ_RS(π×σ)| = q^{−m(n−m−1)/2} (n > m), q^{n/2} or γ_RS = −1 (n = m); conj γ_RS(π×σ,ψ) = γ_RS(π̌×σ̌,ψ^{-1})",
        default_scope: &[(2, 3), (2, 5), (3, 2), (3, 3), (3, 4), (4, 2)],
        tolerance: TOL_IDENTITY,
        needs_witness: false,
        run: run_rs_size,
    },
    TheoremSpec {
        id: "thm.oracle",
        aliases: &["oracle"],
        statement: "three-case Bessel sums equal the intertwining oracle on generic pairs of sizes ≤ n with q^{nm} ≤ 10^5",
        default_scope: &[(1, 2), (1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)],
        tolerance: TOL_IDENTITY,
        needs_witness: false,
        run: run_oracle,
    },
    TheoremSpec {
        id: "thm.nonvanishing",
        aliases: &["nonvanishing"],
        statement: "γ(π×σ) ≠ 0 on generic pairs of sizes ≤ n (residual: vanishing instances)",
        default_scope: &[(2, 3), (2, 5), (3, 2), (3, 3), (3, 4), (4, 2)],
        tolerance: BINARY_TOL,
        needs_witness: false,
        run: run_nonvanishing,
    },
    TheoremSpec {
        id: "thm.kondo",
        aliases: &["kondo"],
        statement: "Gauss-sum product over the cuspidal support equals γ(π×χ) for generic π of GL_n",
        default_scope: &[(2, 3), (2, 4), (2, 5), (2, 7), (3, 2), (3, 3), (3, 4), (4, 2)],
        tolerance: TOL_IDENTITY,
        needs_witness: false,
        run: run_kondo,
    },
    TheoremSpec {
        id: "thm.two_block",
        aliases: &["two_block"],
        statement: "J_π(0 I; c 0) equals the exotic Kloosterman sum for generic π of GL_n",
        default_scope: &[(2, 3), (2, 4), (2, 5), (2, 7), (3, 2), (3, 3), (3, 4), (4, 2)],
        tolerance: TOL_IDENTITY,
        needs_witness: false,
        run: run_two_block,
    },
    TheoremSpec {
        id: "thm.three_block",
        aliases: &["three_block"],
        statement: "J_π at (0 0 −c′; 0 I 0; c 0 0) equals the two-block convolution with its δ term",
        default_scope: &[(3, 2), (3, 3), (3, 4), (4, 2)],
        tolerance: TOL_IDENTITY,
        needs_witness: false,
        run: run_three_block,
    },
    TheoremSpec {
        id: "rem.three_block_simple",
        aliases: &["three_block_simple"],
        statement: "the simpler three-block formula holds when no GL_1 factor is in the support and fails for some π with one",
        default_scope: &[(3, 2), (3, 3), (3, 4), (4, 2)],
        tolerance: TOL_IDENTITY,
        needs_witness: true,
        run: run_three_block_simple,
    },
    TheoremSpec {
        id: "prop.fourier_bessel",
        aliases: &["fourier_bessel"],
        statement: "J(g)J(0 I; c 0) = q^{−(n−1)} Σ_x ψ(−x_{n−1}) J(g (I x; 0 1)(0 I; c 0))",
        default_scope: &[(2, 3), (2, 5), (3, 2), (3, 3), (4, 2)],
        tolerance: TOL_IDENTITY,
        needs_witness: false,
        run: run_fourier_bessel,
    },
    TheoremSpec {
        id: "thm.fe_n_gt_m",
        aliases: &["fe_n_gt_m"],
        statement: "q^{mj}γ Z_j(W,W′) = Z_{n−m−j−1}(π̌(I_m⊕w)W̃, W̃′) for cuspidal π of GL_n, all m < n, all j",
        default_scope: &[(2, 3), (2, 5), (3, 2), (3, 3), (4, 2)],
        tolerance: TOL_IDENTITY,
        needs_witness: false,
        run: run_fe_n_gt_m,
    },
    TheoremSpec {
        id: "thm.fe_n_eq_m",
        aliases: &["fe_n_eq_m"],
        statement: "Z(W̃,W̃′,F_ψφ;ψ^{-1}) = γ Z(W,W′,φ;ψ) for cuspidal π, σ of GL_n",
        default_scope: &[(2, 3), (2, 5), (3, 2)],
        tolerance: TOL_IDENTITY,
        needs_witness: false,
        run: run_fe_n_eq_m,
    },
    TheoremSpec {
        id: "struct.tables",
        aliases: &["tables"],
        statement: "orthogonality, Σ dim² = |G|, Whittaker multiplicity ≤ 1, cuspidal count = regular orbits",
        default_scope: &[(1, 5), (2, 2), (2, 3), (2, 4), (2, 5), (2, 7), (2, 8), (2, 9), (3, 2), (3, 3), (3, 4), (3, 5), (4, 2)],
        tolerance: TOL_ZERO,
        needs_witness: false,
        run: run_tables,
    },
    TheoremSpec {
        id: "struct.bessel",
        aliases: &["bessel_identities"],
        statement: "J(I) = 1, equivariance, J(g^{-1}) = conj J(g) = J_{π̌,ψ^{-1}}(g), mirabolic vanishing for cuspidals",
        default_scope: &[(2, 2), (2, 3), (2, 4), (2, 5), (2, 7), (2, 8), (2, 9), (3, 2), (3, 3), (3, 4), (4, 2)],
        tolerance: TOL_ZERO,
        needs_witness: false,
        run: run_bessel_identities,
    },
];

pub fn registry() -> &'static [TheoremSpec] {
    REGISTRY
}

pub fn find(id: &str) -> Result<&'static TheoremSpec> {
    REGISTRY
        .iter()
        .find(|t| t.id == id || t.aliases.contains(&id))
        .ok_or_else(|| Error::UnknownTheorem(id.to_string()))
}

/// Runs a registry entry over the scope (its default scope when empty).
pub fn verify(id: &str, scope: &Scope) -> Result<VerdictReport> {
    let spec = find(id)?;
    let pairs = if scope.pairs.is_empty() {
        spec.default_scope.to_vec()
    } else {
        scope.pairs.clone()
    };
    let a = scope.psi_a.unwrap_or(1);
    let start = Instant::now();
    let body = || -> Result<Tally> {
        let mut total = Tally::default();
        for &(n, q) in &pairs {
            if n == 0 {
                return Err(Error::Config("n must be positive".into()));
            }
            if a == 0 || a >= q {
                return Err(Error::Config(format!("ψ twist a = {a} is not a unit of F_{q}")));
            }
            let cat = shared(q, n)?;
            let t = (spec.run)(&Ctx { cat, n, q, a })?;
            total.merge(t);
        }
        Ok(total)
    };
    let tally = match scope.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(body)?,
        None => body()?,
    };
    let witnesses = tally.witnesses;
    let tol = scope.tolerance.unwrap_or(spec.tolerance);
    let mut report = tally.report(spec.id, pairs, a, tol, start, Vec::new());
    if spec.needs_witness {
        report.notes.push(format!("counterexample witnesses: {witnesses}"));
        if witnesses == 0 {
            report.pass = false;
        }
    }
    Ok(report)
}

/// Per-item tallies in parallel, merged in item order.
fn fan<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) -> Result<()> + Sync) -> Result<Tally> {
    let parts: Vec<Result<Tally>> = items
        .par_iter()
        .map(|it| {
            let mut t = Tally::default();
            f(it, &mut t)?;
            Ok(t)
        })
        .collect();
    let mut out = Tally::default();
    for p in parts {
        out.merge(p?);
    }
    Ok(out)
}

fn generic_upto(cat: &Catalog, n: usize) -> Vec<Irrep> {
    (1..=n).flat_map(|k| cat.generic(k)).collect()
}

fn cuspidal_upto(cat: &Catalog, n: usize) -> Vec<Irrep> {
    (1..=n).flat_map(|k| cat.cuspidal(k)).collect()
}

fn pairs_of(a: &[Irrep], b: &[Irrep]) -> Vec<(Irrep, Irrep)> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect()
}

fn log_q(z: Complex64, q: u32) -> f64 {
    z.norm().ln() / (q as f64).ln()
}

fn powc(z: Complex64, e: i64) -> Complex64 {
    z.powi(e as i32)
}

fn run_appendix(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    fan(&c.cuspidal(ctx.n), |&pi, t| {
        let g = jpss_gamma(c, pi, c.dual(pi), ctx.a)?.value;
        t.record((g + 1.0).norm(), || format!("q={} {pi} γ={g:.9}", ctx.q));
        Ok(())
    })
}

fn run_multiplicativity(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let mut sigmas = Vec::new();
    for (m1, m2) in [(1, 1), (1, 2), (2, 1)] {
        if m1 + m2 > ctx.n {
            continue;
        }
        for s1 in c.generic(m1) {
            for s2 in c.generic(m2) {
                let ind = c.induce_irreps(&[s1, s2])?;
                sigmas.push((s1, s2, generic_constituent(c, m1 + m2, &ind)?));
            }
        }
    }
    let pis = generic_upto(c, ctx.n);
    let items: Vec<(Irrep, (Irrep, Irrep, Irrep))> =
        pis.iter().flat_map(|&p| sigmas.iter().map(move |&s| (p, s))).collect();
    fan(&items, |&(pi, (s1, s2, tau)), t| {
        let lhs = shahidi_gamma(c, pi, tau, ctx.a)?.value;
        let rhs = shahidi_gamma(c, pi, s1, ctx.a)?.value * shahidi_gamma(c, pi, s2, ctx.a)?.value;
        t.record((lhs - rhs).norm(), || format!("q={} {pi}×({s1}∘{s2} → {tau})", ctx.q));
        Ok(())
    })
}

fn run_full_multiplicativity(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let g = generic_upto(c, ctx.n);
    fan(&pairs_of(&g, &g), |&(pi, sigma), t| {
        let lhs = normalized_gamma(c, pi, sigma, ctx.a)?.value;
        let mut rhs = Complex64::new(1.0, 0.0);
        for &p in c.support(pi) {
            for &s in c.support(sigma) {
                rhs *= normalized_gamma(c, p, s, ctx.a)?.value;
            }
        }
        t.record((lhs - rhs).norm(), || format!("q={} {pi}×{sigma}", ctx.q));
        Ok(())
    })
}

fn run_change_of_psi(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let f = c.field().clone();
    let g = generic_upto(c, ctx.n);
    fan(&pairs_of(&g, &g), |&(pi, sigma), t| {
        let base = shahidi_gamma(c, pi, sigma, ctx.a)?.value;
        for b in f.units() {
            let lhs = shahidi_gamma(c, pi, sigma, f.mul(ctx.a, b))?.value;
            let rhs = powc(c.central_character(pi, b), sigma.n as i64)
                * powc(c.central_character(sigma, b), -(pi.n as i64))
                * base;
            t.record((lhs - rhs).norm(), || format!("q={} {pi}×{sigma} b={b}", ctx.q));
        }
        Ok(())
    })
}

fn run_involution(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let f = c.field().clone();
    let g = generic_upto(c, ctx.n);
    fan(&pairs_of(&g, &g), |&(pi, sigma), t| {
        for a in f.units() {
            let lhs = shahidi_gamma(c, pi, sigma, a)?.value;
            let rhs = shahidi_gamma(c, c.dual(sigma), c.dual(pi), f.neg(a))?.value;
            t.record((lhs - rhs).norm(), || format!("q={} {pi}×{sigma} a={a}", ctx.q));
        }
        Ok(())
    })
}

fn run_contragredient(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let f = c.field().clone();
    let m1 = f.neg(1);
    let g = generic_upto(c, ctx.n);
    fan(&pairs_of(&g, &g), |&(pi, sigma), t| {
        for a in f.units() {
            let lhs = shahidi_gamma(c, pi, sigma, a)?.value;
            let rhs = shahidi_gamma(c, c.dual(sigma), c.dual(pi), a)?.value
                * powc(c.central_character(pi, m1), sigma.n as i64)
                * powc(c.central_character(sigma, m1), pi.n as i64);
            t.record((lhs - rhs).norm(), || format!("q={} {pi}×{sigma} a={a}", ctx.q));
        }
        Ok(())
    })
}

/// Expected log_q|γ̃(π×σ)| for cuspidal π, σ.
pub fn cuspidal_size_exponent(pi: Irrep, sigma: Irrep) -> f64 {
    if pi == sigma {
        -(pi.n as f64) / 2.0
    } else {
        0.0
    }
}

fn run_cuspidal_sizes(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let cusp = cuspidal_upto(c, ctx.n);
    let items = pairs_of(&cusp, &cusp);
    let logs: Vec<Result<f64>> = items
        .par_iter()
        .map(|&(p, s)| Ok(log_q(normalized_gamma(c, p, s, ctx.a)?.value, ctx.q)))
        .collect();
    let mut t = Tally::default();
    let mut dual_mismatch = 0;
    for (&(pi, sigma), l) in items.iter().zip(logs) {
        let l = l?;
        t.record((l - cuspidal_size_exponent(pi, sigma)).abs(), || {
            format!("q={} {pi}×{sigma} log_q|γ̃|={l:.6}", ctx.q)
        });
        let dual_rule = if c.dual(pi) == sigma { -(pi.n as f64) / 2.0 } else { 0.0 };
        if (l - dual_rule).abs() > TOL_LOG {
            dual_mismatch += 1;
        }
    }
    t.notes.push(format!(
        "q={} n≤{}: the rule keyed on σ ≅ π̌ disagrees on {dual_mismatch} of {} pairs",
        ctx.q,
        ctx.n,
        items.len()
    ));
    Ok(t)
}

fn run_support_abs(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let items = pairs_of(&generic_upto(c, ctx.n), &cuspidal_upto(c, ctx.n));
    fan(&items, |&(pi, sigma), t| {
        let d = c.support(pi).iter().filter(|&&s| s == sigma).count();
        let want = -((d * sigma.n) as f64) / 2.0;
        let l = log_q(normalized_gamma(c, pi, sigma, ctx.a)?.value, ctx.q);
        t.record((l - want).abs(), || format!("q={} {pi}×{sigma} d={d} log_q|γ̃|={l:.6}", ctx.q));
        Ok(())
    })
}

fn abs_profile(c: &Catalog, pi: Irrep, sigmas: &[Irrep], a: Elem) -> Result<Vec<f64>> {
    sigmas
        .iter()
        .map(|&s| Ok(log_q(normalized_gamma(c, pi, s, a)?.value, c.q())))
        .collect()
}

fn run_abs_converse(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let pis = generic_upto(c, ctx.n);
    let sigmas = cuspidal_upto(c, ctx.n);
    let profiles: Vec<Vec<f64>> = pis
        .par_iter()
        .map(|&p| abs_profile(c, p, &sigmas, ctx.a))
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    for i in 0..pis.len() {
        for j in i + 1..pis.len() {
            let same = profiles[i].iter().zip(&profiles[j]).all(|(x, y)| (x - y).abs() < TOL_LOG);
            t.record(if same { 1.0 } else { 0.0 }, || format!("q={} {} vs {}", ctx.q, pis[i], pis[j]));
        }
    }
    Ok(t)
}

fn run_improved_converse(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let pis = c.generic(ctx.n);
    let sigmas: Vec<Irrep> = (1..=ctx.n / 2).flat_map(|m| c.cuspidal(m)).collect();
    let profiles: Vec<Vec<Complex64>> = pis
        .par_iter()
        .map(|&p| sigmas.iter().map(|&s| Ok(normalized_gamma(c, p, s, ctx.a)?.value)).collect())
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    for i in 0..pis.len() {
        for j in i + 1..pis.len() {
            if c.info(pis[i]).central != c.info(pis[j]).central {
                continue;
            }
            let same = profiles[i].iter().zip(&profiles[j]).all(|(x, y)| (x - y).norm() < TOL_IDENTITY);
            t.record(if same { 1.0 } else { 0.0 }, || format!("q={} {} vs {}", ctx.q, pis[i], pis[j]));
        }
    }
    Ok(t)
}

/// (π cuspidal of size k ≤ n, σ generic of size < k or cuspidal of size k).
fn rs_domain(c: &Catalog, n: usize) -> Vec<(Irrep, Irrep)> {
    let mut out = Vec::new();
    for k in 1..=n {
        for pi in c.cuspidal(k) {
            for l in 1..=k {
                let ss = if l < k { c.generic(l) } else { c.cuspidal(l) };
                out.extend(ss.into_iter().map(|s| (pi, s)));
            }
        }
    }
    out
}

fn run_jpss_bridge(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let f = c.field().clone();
    fan(&rs_domain(c, ctx.n), |&(pi, sigma), t| {
        let (n, m) = (pi.n as i32, sigma.n as i32);
        let lhs = shahidi_gamma(c, pi, sigma, ctx.a)?.value;
        let rs = jpss_gamma(c, pi, c.dual(sigma), ctx.a)?.value;
        let rhs = (ctx.q as f64).powi(m * (2 * n - m - 1) / 2) * c.central_character(sigma, f.neg(1)) * rs;
        t.record((lhs - rhs).norm(), || format!("q={} {pi}×{sigma}", ctx.q));
        Ok(())
    })
}

fn run_rs_size(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let f = c.field().clone();
    let q = ctx.q as f64;
    fan(&rs_domain(c, ctx.n), |&(pi, sigma), t| {
        let (n, m) = (pi.n as f64, sigma.n as f64);
        let g = jpss_gamma(c, pi, sigma, ctx.a)?.value;
        let label = || format!("q={} {pi}×{sigma} |γ_RS|={:.9}", ctx.q, g.norm());
        if pi.n > sigma.n {
            t.record((g.norm() - q.powf(-m * (n - m - 1.0) / 2.0)).abs(), label);
        } else if c.dual(sigma) == pi {
            t.record((g + 1.0).norm(), label);
        } else {
            t.record((g.norm() - q.powf(n / 2.0)).abs(), label);
        }
        let h = jpss_gamma(c, c.dual(pi), c.dual(sigma), f.neg(ctx.a))?.value;
        t.record((g.conj() - h).norm(), || format!("q={} {pi}×{sigma} conjugation", ctx.q));
        Ok(())
    })
}

/// Largest oracle sum the registry runs.
pub const ORACLE_SCOPE_TERMS: u64 = 100_000;

fn run_oracle(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let g = generic_upto(c, ctx.n);
    let items: Vec<(Irrep, Irrep)> = pairs_of(&g, &g)
        .into_iter()
        .filter(|(p, s)| oracle_terms(ctx.q, p.n, s.n).is_ok_and(|t| t <= ORACLE_SCOPE_TERMS))
        .collect();
    fan(&items, |&(pi, sigma), t| {
        let s = shahidi_gamma(c, pi, sigma, ctx.a)?.value;
        let o = gamma_intertwining_oracle(c, pi, sigma, ctx.a)?.value;
        t.record((s - o).norm(), || format!("q={} {pi}×{sigma}", ctx.q));
        Ok(())
    })
}

fn run_nonvanishing(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let g = generic_upto(c, ctx.n);
    fan(&pairs_of(&g, &g), |&(pi, sigma), t| {
        let v = shahidi_gamma(c, pi, sigma, ctx.a)?.value;
        t.record(if v.norm() < TOL_ZERO { 1.0 } else { 0.0 }, || format!("q={} {pi}×{sigma}", ctx.q));
        Ok(())
    })
}

fn run_kondo(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    fan(&pairs_of(&c.generic(ctx.n), &c.irreps(1)), |&(pi, chi), t| {
        let k = kondo_gamma_gl1(c, pi, chi, ctx.a)?.value;
        let s = shahidi_gamma(c, pi, chi, ctx.a)?.value;
        t.record((k - s).norm(), || format!("q={} {pi}×{chi}", ctx.q));
        Ok(())
    })
}

fn run_two_block(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let f = c.field().clone();
    fan(&c.generic(ctx.n), |&pi, t| {
        let j = c.bessel(pi, ctx.a)?;
        for x in f.units() {
            let v = two_block_special_value(c, pi, x, ctx.a)?;
            t.record((v - j.value(&two_block(ctx.n, x))).norm(), || format!("q={} {pi} c={x}", ctx.q));
        }
        Ok(())
    })
}

fn unit_pairs(c: &Catalog) -> Vec<(Elem, Elem)> {
    let f = c.field();
    f.units().flat_map(|x| f.units().map(move |y| (x, y))).collect()
}

fn run_three_block(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let cc = unit_pairs(c);
    fan(&c.generic(ctx.n), |&pi, t| {
        for &(x, y) in &cc {
            let v = three_block_special_value(c, pi, x, y, ctx.a)?;
            let d = three_block_direct(c, pi, x, y, ctx.a)?;
            t.record((v - d).norm(), || format!("q={} {pi} c={x} c′={y}", ctx.q));
        }
        Ok(())
    })
}

fn run_three_block_simple(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let cc = unit_pairs(c);
    let mut t = fan(&c.generic(ctx.n), |&pi, t| {
        let has_gl1 = c.support(pi).iter().any(|s| s.n == 1);
        let mut worst = 0f64;
        for &(x, y) in &cc {
            let v = three_block_simple(c, pi, x, y, ctx.a)?;
            let d = three_block_direct(c, pi, x, y, ctx.a)?;
            worst = worst.max((v - d).norm());
        }
        if has_gl1 {
            if worst > TOL_IDENTITY {
                t.witnesses += 1;
            } else {
                t.notes.push(format!("q={} {pi} has a GL_1 factor but the simpler formula holds", ctx.q));
            }
        } else {
            t.record(worst, || format!("q={} {pi}", ctx.q));
        }
        Ok(())
    })?;
    let with_gl1 = c
        .generic(ctx.n)
        .into_iter()
        .filter(|&p| c.support(p).iter().any(|s| s.n == 1))
        .count();
    t.notes.push(format!(
        "q={}: fails on {} of {with_gl1} generic π with a GL_1 factor",
        ctx.q, t.witnesses
    ));
    Ok(t)
}

fn run_fourier_bessel(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let f = c.field().clone();
    let jobs: Vec<(Irrep, Elem)> = c
        .generic(ctx.n)
        .into_iter()
        .flat_map(|p| f.units().map(move |x| (p, x)))
        .collect();
    fan(&jobs, |&(pi, x), t| {
        t.merge(fourier_bessel_tally(c, pi, x, ctx.a)?);
        Ok(())
    })
}

fn run_fe_n_gt_m(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let sigmas: Vec<Irrep> = (1..ctx.n).flat_map(|m| c.generic(m)).collect();
    fan(&pairs_of(&c.cuspidal(ctx.n), &sigmas), |&(pi, sigma), t| {
        let mut r = check_fe_n_gt_m(c, pi, sigma, ctx.a)?;
        r.notes.clear();
        t.absorb(&r);
        Ok(())
    })
}

fn run_fe_n_eq_m(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let cusp = c.cuspidal(ctx.n);
    fan(&pairs_of(&cusp, &cusp), |&(pi, sigma), t| {
        t.absorb(&check_fe_n_eq_m(c, pi, sigma, ctx.a)?);
        Ok(())
    })
}

fn run_tables(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let level = c.level(ctx.n)?;
    let mut t = Tally::default();
    let (row, col) = level.table.orthogonality_residuals();
    t.record(row, || format!("q={} n={} row orthogonality", ctx.q, ctx.n));
    t.record(col, || format!("q={} n={} column orthogonality", ctx.q, ctx.n));
    let sum: u64 = level.info.iter().map(|i| i.dim * i.dim).sum();
    t.record(sum.abs_diff(level.group.order()) as f64, || format!("q={} n={} Σ dim²", ctx.q, ctx.n));
    let bad = level.info.iter().filter(|i| i.whittaker > 1).count();
    t.record(bad as f64, || format!("q={} n={} Whittaker multiplicity", ctx.q, ctx.n));
    let cusp = level.cuspidal().len() as u64;
    let orbits = regular_orbit_count(ctx.q as u64, ctx.n as u32);
    t.record(cusp.abs_diff(orbits) as f64, || format!("q={} n={} cuspidal count {cusp} vs {orbits}", ctx.q, ctx.n));
    Ok(t)
}

fn run_bessel_identities(ctx: &Ctx) -> Result<Tally> {
    let c = &ctx.cat;
    let n = ctx.n;
    let level = c.level(n)?.clone();
    let f = c.field().clone();
    let elems: Vec<Matrix> = if level.group.order() <= EXHAUSTIVE_LIMIT * 3 {
        level.group.elements().collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.q as u64 * 31 + n as u64);
        let all: Vec<Matrix> = level.group.elements().collect();
        (0..5000).map(|_| all[rng.gen_range(0..all.len())]).collect()
    };
    let mirabolic = level.group.mirabolic()?;
    fan(&c.generic(n), |&pi, t| {
        let j = c.bessel(pi, ctx.a)?;
        let dual = c.bessel(c.dual(pi), f.neg(ctx.a))?;
        t.record((j.value(&Matrix::identity(n)) - 1.0).norm(), || format!("q={} {pi} J(I)", ctx.q));
        let mut rng = ChaCha8Rng::seed_from_u64(pi.index as u64);
        for g in &elems {
            let v = j.value(g);
            t.record((v - j.direct(g)).norm(), || format!("q={} {pi} g={} canonical form", ctx.q, g.display()));
            let gi = g.inverse(&f).unwrap();
            let vi = j.value(&gi);
            t.record((vi - v.conj()).norm(), || format!("q={} {pi} g={} conjugation", ctx.q, g.display()));
            t.record((vi - dual.value(g)).norm(), || format!("q={} {pi} g={} contragredient", ctx.q, g.display()));
            let (u1, s1) = level.unipotent[rng.gen_range(0..level.unipotent.len())];
            let (u2, s2) = level.unipotent[rng.gen_range(0..level.unipotent.len())];
            let lhs = j.direct(&u1.mul(g, &f).mul(&u2, &f));
            t.record((lhs - j.psi().eval(f.add(s1, s2)) * v).norm(), || {
                format!("q={} {pi} g={} equivariance", ctx.q, g.display())
            });
        }
        if c.info(pi).cuspidal && n > 1 {
            for p in mirabolic.iter().filter(|p| !p.is_upper_unitriangular()) {
                t.record(j.value(p).norm(), || format!("q={} {pi} p={} mirabolic", ctx.q, p.display()));
            }
        }
        Ok(())
    })
}
