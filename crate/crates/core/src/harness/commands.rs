//! The operations behind each CLI subcommand; each returns a [`Table`].

use super::cache::FileStore;
use super::config::{check_envelope, RunConfig};
use super::report::{fmt_f, GammaRow, Table};
use crate::algebra::Elem;
use crate::bessel::{two_block, Domain};
use crate::chartab::{shared, shared_with, Catalog, Irrep};
use crate::error::{Error, Result};
use crate::gamma::shahidi::{oracle_terms, MAX_ORACLE_TERMS};
use crate::gamma::verify::{registry, verify, Scope, VerdictReport};
use crate::gamma::{gamma_intertwining_oracle, jpss_gamma, shahidi_gamma, two_block_special_value, Method};
use crate::numeric::snap;
use num_complex::Complex64;
use std::str::FromStr;
use std::sync::Arc;

/// Which irreducibles of a level a command covers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Selector {
    All,
    #[default]
    Generic,
    Cuspidal,
    /// Table indices.
    Indices(Vec<usize>),
    /// Generic irreps whose cuspidal support has exactly these orbit tags.
    Orbits(Vec<String>),
}

impl FromStr for Selector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Selector> {
        let s = s.trim();
        match s {
            "all" => return Ok(Selector::All),
            "generic" => return Ok(Selector::Generic),
            "cuspidal" => return Ok(Selector::Cuspidal),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("orbit=") {
            let mut tags: Vec<String> = rest.split('+').map(|t| t.trim().to_string()).collect();
            tags.sort();
            return Ok(Selector::Orbits(tags));
        }
        s.split(',')
            .map(|p| {
                let p = p.trim();
                let idx = p.rsplit(':').next().unwrap_or(p);
                idx.parse::<usize>()
                    .map_err(|_| Error::Config(format!("bad selector item {p:?}: use all, generic, cuspidal, orbit=TAG or indices")))
            })
            .collect::<Result<_>>()
            .map(Selector::Indices)
    }
}

impl Selector {
    pub fn select(&self, cat: &Catalog, n: usize) -> Result<Vec<Irrep>> {
        let out = match self {
            Selector::All => cat.irreps(n),
            Selector::Generic => cat.generic(n),
            Selector::Cuspidal => cat.cuspidal(n),
            Selector::Indices(ix) => {
                let k = cat.irreps(n).len();
                ix.iter()
                    .map(|&i| {
                        if i < k {
                            Ok(Irrep::new(n, i))
                        } else {
                            Err(Error::NotFound(format!("GL_{n} has {k} irreducibles, no index {i}")))
                        }
                    })
                    .collect::<Result<_>>()?
            }
            Selector::Orbits(tags) => cat
                .generic(n)
                .into_iter()
                .filter(|&p| support_tags(cat, p) == *tags)
                .collect(),
        };
        Ok(out)
    }
}

fn support_tags(cat: &Catalog, pi: Irrep) -> Vec<String> {
    let mut t: Vec<String> = cat
        .support(pi)
        .iter()
        .map(|&s| cat.info(s).orbit.as_ref().map_or_else(|| s.to_string(), |o| o.tag()))
        .collect();
    t.sort();
    t
}

/// Parses "n:q,n:q,…" into scope pairs.
pub fn parse_scope(s: &str) -> Result<Vec<(usize, u32)>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (n, q) = p
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::Config(format!("scope item {p:?} is not of the form n:q")))?;
            let n = n.parse().map_err(|_| Error::Config(format!("bad n in {p:?}")))?;
            let q = q.parse().map_err(|_| Error::Config(format!("bad q in {p:?}")))?;
            check_envelope(q, n)?;
            Ok((n, q))
        })
        .collect()
}

fn catalog(cfg: &RunConfig) -> Result<Arc<Catalog>> {
    cfg.validate()?;
    match &cfg.cache_dir {
        Some(dir) => {
            let store = FileStore::new(dir)?;
            shared_with(cfg.q, cfg.max_n(), Some(&store))
        }
        None => shared(cfg.q, cfg.max_n()),
    }
}

/// Compact text for a cyclotomic value.
pub fn fmt_c(z: Complex64) -> String {
    let z = snap(z);
    let num = |x: f64| {
        if x == x.round() {
            format!("{}", x as i64)
        } else {
            format!("{x:.6}")
        }
    };
    match (z.re == 0.0, z.im == 0.0) {
        (_, true) => num(z.re),
        (true, false) => format!("{}i", num(z.im)),
        _ => format!("{}{}{}i", num(z.re), if z.im < 0.0 { "-" } else { "+" }, num(z.im.abs())),
    }
}

/// Character table: one row per irreducible, one column per class.
pub fn cmd_table(cfg: &RunConfig) -> Result<Table> {
    let cat = catalog(cfg)?;
    let level = cat.level(cfg.n)?;
    let mut cols = vec!["irrep".to_string(), "dim".to_string()];
    cols.extend(level.classes.classes().iter().map(|c| format!("{}[{}]", c.label, c.size)));
    let mut t = Table::new(cols);
    for pi in cat.irreps(cfg.n) {
        let mut row = vec![pi.to_string(), cat.info(pi).dim.to_string()];
        row.extend(cat.character(pi).iter().map(|&z| fmt_c(z)));
        t.push(row);
    }
    Ok(t)
}

/// Irreducibles with their metadata.
pub fn cmd_reps(cfg: &RunConfig) -> Result<Table> {
    let cat = catalog(cfg)?;
    let mut t = Table::new(["id", "dim", "generic", "cuspidal", "central", "dual", "orbit", "support"]);
    for pi in cat.irreps(cfg.n) {
        let info = cat.info(pi);
        let support: Vec<String> = cat.support(pi).iter().map(|s| s.to_string()).collect();
        t.push(vec![
            pi.to_string(),
            info.dim.to_string(),
            info.is_generic().to_string(),
            info.cuspidal.to_string(),
            info.central.to_string(),
            cat.dual(pi).to_string(),
            info.orbit.as_ref().map_or_else(String::new, |o| o.tag()),
            support.join(" "),
        ]);
    }
    Ok(t)
}

pub fn cmd_bessel(cfg: &RunConfig, sel: &Selector, domain: Domain) -> Result<Table> {
    let cat = catalog(cfg)?;
    let mut t = Table::new(["pi_id", "psi_a", "point", "coset", "re", "im", "abs"]);
    for pi in sel.select(&cat, cfg.n)? {
        if !cat.info(pi).is_generic() {
            if matches!(sel, Selector::Indices(_)) {
                return Err(Error::NotGeneric(pi.to_string()));
            }
            continue;
        }
        let j = cat.bessel(pi, cfg.psi_a)?;
        for r in j.table(domain)? {
            t.push(vec![
                pi.to_string(),
                cfg.psi_a.to_string(),
                r.label,
                r.key,
                fmt_f(r.value.re),
                fmt_f(r.value.im),
                fmt_f(r.value.norm()),
            ]);
        }
    }
    Ok(t)
}

/// Rows of γ_ψ(π×σ) by the Bessel sums, each cross-checked by an independent path.
pub fn gamma_rows(cfg: &RunConfig, pi_sel: &Selector, sigma_sel: &Selector) -> Result<Vec<GammaRow>> {
    let m = cfg.m.ok_or_else(|| Error::Config("gamma needs --m".into()))?;
    let cat = catalog(cfg)?;
    let f = cat.field().clone();
    let a = cfg.psi_a;
    let pis: Vec<Irrep> = pi_sel.select(&cat, cfg.n)?.into_iter().filter(|&p| cat.info(p).is_generic()).collect();
    let sigmas: Vec<Irrep> = sigma_sel.select(&cat, m)?.into_iter().filter(|&s| cat.info(s).is_generic()).collect();
    let oracle_ok = oracle_terms(cfg.q, cfg.n, m).is_ok_and(|t| t <= MAX_ORACLE_TERMS / 10);
    let mut rows = Vec::new();
    for &pi in &pis {
        for &sigma in &sigmas {
            let g = shahidi_gamma(&cat, pi, sigma, a)?.value;
            let cross = if oracle_ok {
                let o = gamma_intertwining_oracle(&cat, pi, sigma, a)?.value;
                format!("{} delta={:.1e}", Method::IntertwiningOracle, (g - o).norm())
            } else if cat.info(pi).cuspidal && (cfg.n > m || (cfg.n == m && cat.info(sigma).cuspidal)) {
                let (n, m) = (cfg.n as i32, m as i32);
                let rs = jpss_gamma(&cat, pi, cat.dual(sigma), a)?.value;
                let b = (cfg.q as f64).powi(m * (2 * n - m - 1) / 2) * cat.central_character(sigma, f.neg(1)) * rs;
                format!("{} delta={:.1e}", Method::JpssBessel, (g - b).norm())
            } else {
                "unchecked".to_string()
            };
            let g = snap(g);
            rows.push(GammaRow {
                q: cfg.q,
                n: cfg.n,
                m,
                pi_id: pi.to_string(),
                sigma_id: sigma.to_string(),
                psi_a: a,
                method: Method::ShahidiBessel.to_string(),
                re: g.re,
                im: g.im,
                abs: g.norm(),
                provenance: cross,
            });
        }
    }
    Ok(rows)
}

pub fn cmd_gamma(cfg: &RunConfig, pi_sel: &Selector, sigma_sel: &Selector) -> Result<Table> {
    let mut t = Table::new(GammaRow::COLUMNS);
    for r in gamma_rows(cfg, pi_sel, sigma_sel)? {
        t.push(r.cells());
    }
    Ok(t)
}

/// Runs the named registry entries ("all" for every one) over `pairs`
/// (each theorem's default scope when empty).
pub fn cmd_verify(ids: &[String], pairs: &[(usize, u32)], cfg: &RunConfig) -> Result<Vec<VerdictReport>> {
    if cfg.jobs == Some(0) {
        return Err(Error::Config("--jobs must be at least 1".into()));
    }
    let ids: Vec<String> = if ids.iter().any(|i| i == "all") {
        registry().iter().map(|t| t.id.to_string()).collect()
    } else {
        ids.to_vec()
    };
    if ids.is_empty() {
        return Err(Error::Config("name at least one theorem id, or all".into()));
    }
    for id in &ids {
        crate::gamma::verify::find(id)?;
    }
    if let Some(dir) = &cfg.cache_dir {
        crate::chartab::set_default_store(Some(Arc::new(FileStore::new(dir)?)));
    }
    let scope = Scope {
        pairs: pairs.to_vec(),
        psi_a: Some(cfg.psi_a),
        tolerance: cfg.tolerance,
        jobs: cfg.jobs,
    };
    ids.iter().map(|id| verify(id, &scope)).collect()
}

pub fn verdict_table(reports: &[VerdictReport]) -> Table {
    let mut t = Table::new(["theorem", "pass", "scope", "psi_a", "instances", "max_residual", "tolerance", "worst"]);
    for r in reports {
        let scope: Vec<String> = r.scope.iter().map(|(n, q)| format!("{n}:{q}")).collect();
        t.push(vec![
            r.theorem.clone(),
            r.pass.to_string(),
            scope.join(" "),
            r.psi_a.to_string(),
            r.instances.to_string(),
            format!("{:.3e}", r.max_residual),
            format!("{:.0e}", r.tolerance),
            r.worst.clone().unwrap_or_default(),
        ]);
    }
    t
}

/// c values: "all", a list "1,2", or an inclusive range "1..4".
pub fn parse_elems(s: &str, q: u32) -> Result<Vec<Elem>> {
    let all: Vec<Elem> = (1..q).collect();
    let s = s.trim();
    let v: Vec<Elem> = if s == "all" {
        all
    } else if let Some((lo, hi)) = s.split_once("..") {
        let lo: Elem = lo.trim().parse().map_err(|_| Error::Config(format!("bad range {s:?}")))?;
        let hi: Elem = hi.trim().parse().map_err(|_| Error::Config(format!("bad range {s:?}")))?;
        (lo..=hi).collect()
    } else {
        s.split(',')
            .map(|p| p.trim().parse().map_err(|_| Error::Config(format!("bad element {p:?}"))))
            .collect::<Result<_>>()?
    };
    if let Some(bad) = v.iter().find(|&&c| c == 0 || c >= q) {
        return Err(Error::Config(format!("{bad} is not a nonzero element of F_{q}")));
    }
    Ok(v)
}

/// Exotic Kloosterman sums against direct values J_π(0 I; c 0).
pub fn cmd_kloosterman(cfg: &RunConfig, sel: &Selector, cs: &[Elem]) -> Result<Table> {
    let cat = catalog(cfg)?;
    if cfg.n < 2 {
        return Err(Error::PreconditionViolated("Kloosterman values need n ≥ 2".into()));
    }
    let mut t = Table::new(["q", "n", "pi_id", "support", "c", "re", "im", "abs", "direct_re", "direct_im", "delta"]);
    for pi in sel.select(&cat, cfg.n)? {
        if !cat.info(pi).is_generic() {
            continue;
        }
        let j = cat.bessel(pi, cfg.psi_a)?;
        for &c in cs {
            let k = two_block_special_value(&cat, pi, c, cfg.psi_a)?;
            let d = j.value(&two_block(cfg.n, c));
            t.push(vec![
                cfg.q.to_string(),
                cfg.n.to_string(),
                pi.to_string(),
                support_tags(&cat, pi).join("+"),
                c.to_string(),
                fmt_f(snap(k).re),
                fmt_f(snap(k).im),
                fmt_f(k.norm()),
                fmt_f(snap(d).re),
                fmt_f(snap(d).im),
                format!("{:.1e}", (k - d).norm()),
            ]);
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reps_gl2_f3() {
        let t = cmd_reps(&RunConfig::new(3, 2)).unwrap();
        assert_eq!(t.len(), 8);
        assert_eq!(t.column("generic").unwrap().iter().filter(|&&g| g == "true").count(), 6);
        assert_eq!(t.column("cuspidal").unwrap().iter().filter(|&&g| g == "true").count(), 3);
    }

    #[test]
    fn gamma_table_shape() {
        let mut cfg = RunConfig::new(3, 2);
        cfg.m = Some(1);
        let t = cmd_gamma(&cfg, &Selector::Generic, &Selector::Generic).unwrap();
        assert_eq!(t.len(), 12);
        for p in t.column("provenance").unwrap() {
            let delta: f64 = p.rsplit('=').next().unwrap().parse().unwrap();
            assert!(delta < 1e-7, "{p}");
        }
    }

    #[test]
    fn selectors_and_scopes() {
        assert_eq!("2:3,2:4".parse::<Selector>().unwrap(), Selector::Indices(vec![3, 4]));
        assert_eq!("cuspidal".parse::<Selector>().unwrap(), Selector::Cuspidal);
        assert!("x".parse::<Selector>().is_err());
        assert_eq!(parse_scope("2:3,3:2").unwrap(), vec![(2, 3), (3, 2)]);
        assert!(parse_scope("4:3").is_err());
        assert_eq!(parse_elems("1..3", 5).unwrap(), vec![1, 2, 3]);
        assert!(parse_elems("0", 5).is_err());
        let cat = shared(3, 2).unwrap();
        let cusp = cat.cuspidal(2);
        let tag = cat.info(cusp[0]).orbit.as_ref().unwrap().tag();
        let sel: Selector = format!("orbit={tag}").parse().unwrap();
        assert_eq!(sel.select(&cat, 2).unwrap(), vec![cusp[0]]);
    }

    #[test]
    fn kloosterman_matches_direct() {
        let t = cmd_kloosterman(&RunConfig::new(5, 2), &Selector::Generic, &parse_elems("all", 5).unwrap()).unwrap();
        assert_eq!(t.len(), 20 * 4);
        assert!(t.column("delta").unwrap().iter().all(|d| d.parse::<f64>().unwrap() < 1e-7));
    }
}
