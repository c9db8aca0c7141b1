//! All generic-representation data for GL_1, …, GL_N over one field.

use super::induction::LeviAggregate;
use super::table::CharacterTable;
use super::ExactCharacter;
use crate::algebra::{AdditiveCharacter, Elem, ExtensionField, Field, FrobeniusOrbit, MultChar};
use crate::algebra::frobenius_orbits;
use crate::error::{Error, Result};
use crate::glgroup::{coset_reps_u, ClassData, Composition, GlGroup, Matrix};
use crate::glgroup::group::superdiag_sum;
use crate::numeric::{as_integer, root_of_unity, KahanSum, TOL_ZERO};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, RwLock};

/// An irreducible representation of GL_n(F_q): row `index` of the level-n table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Irrep {
    pub n: usize,
    pub index: usize,
}

impl Irrep {
    pub fn new(n: usize, index: usize) -> Irrep {
        Irrep { n, index }
    }
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.n, self.index)
    }
}

impl std::str::FromStr for Irrep {
    type Err = Error;
    fn from_str(s: &str) -> Result<Irrep> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("irrep id {s:?} is not of the form n:index")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("bad irrep id {s:?}")))
        };
        Ok(Irrep::new(parse(a)?, parse(b)?))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrrepInfo {
    pub dim: u64,
    pub whittaker: u32,
    pub cuspidal: bool,
    /// ω(γ^j) = exp(2πi·central·j/(q−1)) for the field generator γ.
    pub central: u32,
    pub dual: usize,
    pub orbit: Option<FrobeniusOrbit>,
    /// Cuspidal support, sorted.
    pub support: Vec<Irrep>,
}

impl IrrepInfo {
    pub fn is_generic(&self) -> bool {
        self.whittaker >= 1
    }
}

/// Serializable part of a level, for the on-disk cache.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelSnapshot {
    pub q: u32,
    pub n: usize,
    pub modulus: Vec<u32>,
    pub labels: Vec<String>,
    pub ell: u64,
    pub characters: Vec<ExactCharacter>,
    pub info: Vec<IrrepInfo>,
}

pub trait LevelStore: Sync {
    fn load(&self, q: u32, n: usize, modulus: &[u32]) -> Option<LevelSnapshot>;
    fn save(&self, snapshot: &LevelSnapshot) -> Result<()>;
}

pub struct Level {
    pub group: Arc<GlGroup>,
    pub classes: Arc<ClassData>,
    pub table: Arc<CharacterTable>,
    pub info: Vec<IrrepInfo>,
    /// U_n\GL_n transversal.
    pub transversal: Vec<Matrix>,
    /// U_n with the superdiagonal sum of each element.
    pub unipotent: Vec<(Matrix, Elem)>,
    pub ext: Arc<ExtensionField>,
    generic_by_support: HashMap<Vec<Irrep>, usize>,
    aggregates: Mutex<HashMap<Composition, Arc<LeviAggregate>>>,
}

impl Level {
    pub fn n(&self) -> usize {
        self.group.n()
    }
    pub fn generic(&self) -> Vec<usize> {
        (0..self.info.len()).filter(|&i| self.info[i].is_generic()).collect()
    }
    pub fn cuspidal(&self) -> Vec<usize> {
        (0..self.info.len()).filter(|&i| self.info[i].cuspidal).collect()
    }
    pub fn snapshot(&self) -> LevelSnapshot {
        LevelSnapshot {
            q: self.group.q(),
            n: self.n(),
            modulus: self.group.field().modulus().to_vec(),
            labels: self.classes.classes().iter().map(|c| c.label.to_string()).collect(),
            ell: self.table.ell(),
            characters: (0..self.table.len()).map(|i| self.table.exact(i).clone()).collect(),
            info: self.info.clone(),
        }
    }
}

pub struct Catalog {
    field: Arc<Field>,
    levels: Vec<Arc<Level>>,
    bessel: Mutex<HashMap<(Irrep, Elem), Arc<crate::bessel::BesselEvaluator>>>,
}

impl Catalog {
    pub fn build(field: Arc<Field>, max_n: usize) -> Result<Catalog> {
        Catalog::build_with(field, max_n, None)
    }

    pub fn build_with(field: Arc<Field>, max_n: usize, store: Option<&dyn LevelStore>) -> Result<Catalog> {
        let mut cat = Catalog {
            field: field.clone(),
            levels: Vec::new(),
            bessel: Mutex::new(HashMap::new()),
        };
        for n in 1..=max_n {
            let level = cat.build_level(n, store)?;
            cat.levels.push(Arc::new(level));
        }
        Ok(cat)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn q(&self) -> u32 {
        self.field.order()
    }
    pub fn max_n(&self) -> usize {
        self.levels.len()
    }
    pub fn level(&self, n: usize) -> Result<&Arc<Level>> {
        self.levels.get(n.wrapping_sub(1)).ok_or_else(|| {
            Error::PreconditionViolated(format!("catalog covers n ≤ {}, asked for {n}", self.max_n()))
        })
    }
    pub fn info(&self, pi: Irrep) -> &IrrepInfo {
        &self.levels[pi.n - 1].info[pi.index]
    }
    pub fn irreps(&self, n: usize) -> Vec<Irrep> {
        (0..self.levels[n - 1].info.len()).map(|i| Irrep::new(n, i)).collect()
    }
    pub fn generic(&self, n: usize) -> Vec<Irrep> {
        self.levels[n - 1].generic().into_iter().map(|i| Irrep::new(n, i)).collect()
    }
    pub fn cuspidal(&self, n: usize) -> Vec<Irrep> {
        self.levels[n - 1].cuspidal().into_iter().map(|i| Irrep::new(n, i)).collect()
    }
    pub fn dual(&self, pi: Irrep) -> Irrep {
        Irrep::new(pi.n, self.info(pi).dual)
    }
    /// ω_π(a).
    pub fn central_character(&self, pi: Irrep, a: Elem) -> Complex64 {
        let j = self.field.log(a).expect("central character needs a ≠ 0") as i64;
        root_of_unity(self.info(pi).central as i64 * j, (self.q() - 1) as u64)
    }
    pub fn support(&self, pi: Irrep) -> &[Irrep] {
        &self.info(pi).support
    }
    /// The generic irreducible with the given cuspidal support.
    pub fn generic_of_support(&self, support: &[Irrep]) -> Result<Irrep> {
        let mut s = support.to_vec();
        s.sort();
        let n: usize = s.iter().map(|p| p.n).sum();
        let level = self.level(n)?;
        level
            .generic_by_support
            .get(&s)
            .map(|&i| Irrep::new(n, i))
            .ok_or_else(|| Error::NotFound(format!("no generic irrep with support {s:?}")))
    }
    /// χ(x) for a character χ of GL_1.
    pub fn gl1_value(&self, chi: Irrep, x: Elem) -> Complex64 {
        let level = &self.levels[0];
        level.table.value(chi.index, level.classes.class_of(&Matrix::scalar(1, x)))
    }
    pub fn character(&self, pi: Irrep) -> &[Complex64] {
        self.levels[pi.n - 1].table.row(pi.index)
    }

    /// Ind from the standard parabolic of class functions on the blocks.
    pub fn induce(&self, comp: &Composition, fs: &[&[Complex64]]) -> Result<Vec<Complex64>> {
        let level = self.level(comp.total())?;
        let agg = self.aggregate(comp)?;
        agg.induce(&level.classes, fs)
    }

    pub fn induce_irreps(&self, irreps: &[Irrep]) -> Result<Vec<Complex64>> {
        let comp = Composition::new(irreps.iter().map(|p| p.n).collect(), irreps.iter().map(|p| p.n).sum())?;
        let fs: Vec<&[Complex64]> = irreps.iter().map(|&p| self.character(p)).collect();
        self.induce(&comp, &fs)
    }

    fn aggregate(&self, comp: &Composition) -> Result<Arc<LeviAggregate>> {
        let level = self.level(comp.total())?;
        if let Some(a) = level.aggregates.lock().unwrap().get(comp) {
            return Ok(a.clone());
        }
        let blocks: Vec<&ClassData> = comp
            .parts()
            .iter()
            .map(|&k| self.level(k).map(|l| &*l.classes))
            .collect::<Result<_>>()?;
        let agg = Arc::new(LeviAggregate::build(&level.classes, comp, &blocks)?);
        level.aggregates.lock().unwrap().insert(comp.clone(), agg.clone());
        Ok(agg)
    }

    /// Bessel evaluator of a generic π for ψ_a, shared and memoized.
    pub fn bessel(&self, pi: Irrep, a: Elem) -> Result<Arc<crate::bessel::BesselEvaluator>> {
        let key = (pi, a);
        if let Some(e) = self.bessel.lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let level = self.level(pi.n)?.clone();
        let e = Arc::new(crate::bessel::BesselEvaluator::new(level, pi, a)?);
        Ok(self.bessel.lock().unwrap().entry(key).or_insert(e).clone())
    }

    fn build_level(&self, n: usize, store: Option<&dyn LevelStore>) -> Result<Level> {
        let f = self.field.clone();
        let group = Arc::new(GlGroup::new(f.clone(), n)?);
        let classes = Arc::new(ClassData::build(group.clone())?);
        let ext = Arc::new(ExtensionField::new(f.clone(), n as u32)?);
        let psi = AdditiveCharacter::standard(f.clone());
        let unipotent: Vec<(Matrix, Elem)> = group
            .unipotent()
            .into_iter()
            .map(|u| {
                let s = superdiag_sum(&u, &f);
                (u, s)
            })
            .collect();
        let transversal = coset_reps_u(&group);
        let labels: Vec<String> = classes.classes().iter().map(|c| c.label.to_string()).collect();

        let cached = store
            .and_then(|s| s.load(f.order(), n, f.modulus()))
            .filter(|snap| snap.labels == labels && snap.characters.len() == classes.len());
        let from_cache = cached.is_some();
        let (table, info) = match cached {
            Some(snap) => {
                let table = CharacterTable::from_exact(classes.clone(), snap.ell, snap.characters);
                (Arc::new(table), Some(snap.info))
            }
            None => (Arc::new(CharacterTable::build(classes.clone())?), None),
        };
        let mut level = Level {
            group,
            classes,
            table,
            info: Vec::new(),
            transversal,
            unipotent,
            ext,
            generic_by_support: HashMap::new(),
            aggregates: Mutex::new(HashMap::new()),
        };
        match info {
            Some(info) => level.info = info,
            None => {
                level.info = basic_info(&level, &psi)?;
                identify_orbits(&mut level)?;
            }
        }
        // supports need the finished lower levels
        let support_map = self.compute_supports(&level)?;
        if from_cache {
            for (i, s) in support_map.0.iter().enumerate() {
                if level.info[i].support != *s {
                    return Err(Error::Cache(format!("stale support data for GL_{n}")));
                }
            }
        } else {
            for (i, s) in support_map.0.into_iter().enumerate() {
                level.info[i].support = s;
            }
        }
        level.generic_by_support = support_map.1;
        if let (Some(store), false) = (store, from_cache) {
            store.save(&level.snapshot())?;
        }
        Ok(level)
    }

    /// Supports of every irrep of `level` and the generic irrep of each support.
    #[allow(clippy::type_complexity)]
    fn compute_supports(&self, level: &Level) -> Result<(Vec<Vec<Irrep>>, HashMap<Vec<Irrep>, usize>)> {
        let n = level.n();
        let k = level.info.len();
        let mut support: Vec<Option<Vec<Irrep>>> = vec![None; k];
        let mut generic = HashMap::new();
        let mut cusp: Vec<Irrep> = Vec::new();
        for m in 1..n {
            cusp.extend(self.levels[m - 1].cuspidal().into_iter().map(|i| Irrep::new(m, i)));
        }
        let own: Vec<Irrep> = level.cuspidal().into_iter().map(|i| Irrep::new(n, i)).collect();
        for &c in &own {
            support[c.index] = Some(vec![c]);
            generic.insert(vec![c], c.index);
        }
        let mut multisets = Vec::new();
        cuspidal_multisets(&cusp, n, 0, &mut Vec::new(), &mut multisets);
        for s in multisets {
            if s.len() < 2 {
                continue;
            }
            let comp = Composition::new(s.iter().map(|p| p.n).collect(), n)?;
            let fs: Vec<&[Complex64]> = s
                .iter()
                .map(|p| self.levels[p.n - 1].table.row(p.index))
                .collect();
            let agg = self.aggregate_at(level, &comp)?;
            let ind = agg.induce(&level.classes, &fs)?;
            let mult = level.table.decompose(&ind)?;
            let mut gens = Vec::new();
            for (i, &m) in mult.iter().enumerate() {
                if m < 0 {
                    return Err(Error::NonIntegral(m as f64));
                }
                if m == 0 {
                    continue;
                }
                if let Some(prev) = &support[i] {
                    return Err(Error::PreconditionViolated(format!(
                        "irrep {n}:{i} lies in inductions of both {prev:?} and {s:?}"
                    )));
                }
                support[i] = Some(s.clone());
                if level.info[i].is_generic() {
                    gens.push((i, m));
                }
            }
            match gens.as_slice() {
                [(i, 1)] => {
                    generic.insert(s.clone(), *i);
                }
                _ => {
                    return Err(Error::PreconditionViolated(format!(
                        "induction of {s:?} has generic constituents {gens:?}"
                    )))
                }
            }
        }
        let support = support
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::NotFound(format!("cuspidal support of {n}:{i}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok((support, generic))
    }

    fn aggregate_at(&self, level: &Level, comp: &Composition) -> Result<Arc<LeviAggregate>> {
        if let Some(a) = level.aggregates.lock().unwrap().get(comp) {
            return Ok(a.clone());
        }
        let blocks: Vec<&ClassData> = comp
            .parts()
            .iter()
            .map(|&k| &*self.levels[k - 1].classes)
            .collect();
        let agg = Arc::new(LeviAggregate::build(&level.classes, comp, &blocks)?);
        level.aggregates.lock().unwrap().insert(comp.clone(), agg.clone());
        Ok(agg)
    }
}

/// Sorted multisets of cuspidals (from `cusp`, sorted) with sizes summing to n.
fn cuspidal_multisets(cusp: &[Irrep], rest: usize, start: usize, cur: &mut Vec<Irrep>, out: &mut Vec<Vec<Irrep>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for i in start..cusp.len() {
        if cusp[i].n <= rest {
            cur.push(cusp[i]);
            cuspidal_multisets(cusp, rest - cusp[i].n, i, cur, out);
            cur.pop();
        }
    }
}

/// dim Hom_{U}(π, ψ) = (1/|U|) Σ_u χ(u) conj ψ(u).
pub fn whittaker_multiplicity(level: &Level, i: usize, psi: &AdditiveCharacter) -> Result<u32> {
    let mut s = KahanSum::new();
    for (u, sd) in &level.unipotent {
        let c = level.classes.class_of(u);
        s.add(level.table.value(i, c) * psi.eval(*sd).conj());
    }
    let z = s.value() / level.unipotent.len() as f64;
    match as_integer(z) {
        Some(m) if m >= 0 => Ok(m as u32),
        _ => Err(Error::NonIntegral(z.re)),
    }
}

/// Dimension of the N-fixed vectors for a unipotent radical N.
pub fn radical_invariants(level: &Level, i: usize, comp: &Composition) -> Result<u32> {
    let radical = level.group.radical(comp);
    let s: Complex64 = crate::numeric::ksum(
        radical.iter().map(|u| level.table.value(i, level.classes.class_of(u))),
    );
    let z = s / radical.len() as f64;
    match as_integer(z) {
        Some(m) if m >= 0 => Ok(m as u32),
        _ => Err(Error::NonIntegral(z.re)),
    }
}

fn basic_info(level: &Level, psi: &AdditiveCharacter) -> Result<Vec<IrrepInfo>> {
    let n = level.n();
    let f = level.group.field();
    let q1 = (f.order() - 1) as u64;
    let proper: Vec<Composition> = Composition::all(n).into_iter().filter(|c| c.is_proper()).collect();
    let gamma_class = level.classes.class_of(&Matrix::scalar(n, f.generator()));
    let mut out = Vec::new();
    for i in 0..level.table.len() {
        let dim = level.table.dim(i);
        let whittaker = whittaker_multiplicity(level, i, psi)?;
        let mut cuspidal = true;
        for c in &proper {
            if radical_invariants(level, i, c)? != 0 {
                cuspidal = false;
                break;
            }
        }
        let omega = level.table.value(i, gamma_class) / dim as f64;
        let ang = omega.arg() / (2.0 * std::f64::consts::PI) * q1 as f64;
        let central = (ang.round() as i64).rem_euclid(q1 as i64) as u32;
        // ω must be the character a ↦ exp(2πi c log a/(q−1)) on every scalar
        for a in f.units() {
            let c = level.classes.class_of(&Matrix::scalar(n, a));
            let want = root_of_unity(central as i64 * f.log(a).unwrap() as i64, q1);
            if (level.table.value(i, c) / dim as f64 - want).norm() > TOL_ZERO {
                return Err(Error::PreconditionViolated(format!("central character of {n}:{i}")));
            }
        }
        out.push(IrrepInfo {
            dim,
            whittaker,
            cuspidal,
            central,
            dual: level.table.dual(i),
            orbit: None,
            support: Vec::new(),
        });
    }
    Ok(out)
}

/// Match each cuspidal with the regular Frobenius orbit whose Green value
/// (−1)^{n−1} Σ_{i<n} α(ξ^{q^i}) agrees on every regular elliptic class.
fn identify_orbits(level: &mut Level) -> Result<()> {
    let n = level.n();
    let ext = level.ext.clone();
    let big = ext.field().clone();
    // eigenvalue ξ of each elliptic class
    let mut elliptic = Vec::new();
    for (c, info) in level.classes.classes().iter().enumerate() {
        if let Some(p) = info.label.elliptic_poly(n) {
            let xi = big
                .units()
                .find(|&x| {
                    p.coeffs()
                        .iter()
                        .rev()
                        .fold(0, |acc, &co| big.add(big.mul(acc, x), ext.embed(co)))
                        == 0
                })
                .expect("irreducible polynomial splits in the extension");
            elliptic.push((c, xi));
        }
    }
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let orbits: Vec<FrobeniusOrbit> = frobenius_orbits(&ext).into_iter().filter(|o| o.is_regular()).collect();
    let predicted: Vec<Vec<Complex64>> = orbits
        .iter()
        .map(|o| {
            let alpha = MultChar::new(big.clone(), o.representative() as i64);
            elliptic
                .iter()
                .map(|&(_, xi)| {
                    let s: Complex64 = ext.conjugates(xi).into_iter().map(|y| alpha.eval(y)).sum();
                    s * sign
                })
                .collect()
        })
        .collect();
    let mut used = vec![false; orbits.len()];
    for i in 0..level.info.len() {
        if !level.info[i].cuspidal {
            continue;
        }
        let matches: Vec<usize> = (0..orbits.len())
            .filter(|&o| {
                elliptic.iter().enumerate().all(|(k, &(c, _))| {
                    (level.table.value(i, c) - predicted[o][k]).norm() < TOL_ZERO
                })
            })
            .collect();
        match matches.as_slice() {
            [] => return Err(Error::OrbitUnidentified(format!("{n}:{i}"))),
            [o] => {
                if used[*o] {
                    return Err(Error::Ambiguous(format!("orbit {} matched twice", orbits[*o].tag())));
                }
                used[*o] = true;
                level.info[i].orbit = Some(orbits[*o].clone());
            }
            _ => return Err(Error::Ambiguous(format!("{n}:{i}"))),
        }
    }
    Ok(())
}

static DEFAULT_STORE: RwLock<Option<Arc<dyn LevelStore + Send>>> = RwLock::new(None);

/// Store used by [`shared`] for levels it has to build.
pub fn set_default_store(store: Option<Arc<dyn LevelStore + Send>>) {
    *DEFAULT_STORE.write().unwrap() = store;
}

/// Shared catalogs keyed by q, grown on demand.
pub fn shared(q: u32, max_n: usize) -> Result<Arc<Catalog>> {
    let store = DEFAULT_STORE.read().unwrap().clone();
    shared_with(q, max_n, store.as_deref().map(|s| s as &dyn LevelStore))
}

pub fn shared_with(q: u32, max_n: usize, store: Option<&dyn LevelStore>) -> Result<Arc<Catalog>> {
    static CACHE: Mutex<Vec<Arc<Catalog>>> = Mutex::new(Vec::new());
    {
        let cache = CACHE.lock().unwrap();
        if let Some(c) = cache.iter().find(|c| c.q() == q && c.max_n() >= max_n) {
            return Ok(c.clone());
        }
    }
    let field = Arc::new(Field::of_order(q)?);
    let cat = Arc::new(Catalog::build_with(field, max_n, store)?);
    let mut cache = CACHE.lock().unwrap();
    cache.retain(|c| !(c.q() == q && c.max_n() <= max_n));
    cache.push(cat.clone());
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::regular_orbit_count;

    fn cat(q: u32, n: usize) -> Arc<Catalog> {
        shared(q, n).unwrap()
    }

    #[test]
    fn gl2_f3_classification() {
        let c = cat(3, 2);
        let l = c.level(2).unwrap();
        assert_eq!(l.generic().len(), 6);
        let cusp = l.cuspidal();
        assert_eq!(cusp.len(), 3);
        assert!(cusp.iter().all(|&i| l.info[i].dim == 2));
        for i in 0..l.info.len() {
            assert!(l.info[i].whittaker <= 1);
            if l.info[i].dim == 1 {
                assert_eq!(l.info[i].whittaker, 0);
            }
        }
        // Steinberg-type (dim q) is not cuspidal
        assert!((0..l.info.len()).any(|i| l.info[i].dim == 3 && !l.info[i].cuspidal));
        assert!(c.cuspidal(1).len() == 2);
    }

    #[test]
    fn whittaker_independent_of_twist() {
        let c = cat(3, 3);
        let l = c.level(3).unwrap();
        for a in 1..3 {
            let psi = AdditiveCharacter::new(c.field().clone(), a);
            for i in 0..l.info.len() {
                assert_eq!(whittaker_multiplicity(l, i, &psi).unwrap(), l.info[i].whittaker);
            }
        }
    }

    #[test]
    fn gelfand_graev_count() {
        // Σ_π mult·dim = [G:U]
        for (q, n) in [(3, 2), (2, 3), (3, 3)] {
            let c = cat(q, n);
            let l = c.level(n).unwrap();
            let s: u64 = l.info.iter().map(|i| i.whittaker as u64 * i.dim).sum();
            assert_eq!(s, l.group.order() / l.group.unipotent_order());
            // generic count q^n − q^{n−1}
            assert_eq!(l.generic().len() as u64, (q as u64).pow(n as u32) - (q as u64).pow(n as u32 - 1));
        }
    }

    #[test]
    fn cuspidal_counts_match_regular_orbits() {
        for (q, n) in [(2, 3), (3, 3), (4, 2), (5, 2), (2, 4)] {
            let c = cat(q, n);
            for k in 1..=n {
                assert_eq!(c.cuspidal(k).len() as u64, regular_orbit_count(q as u64, k as u32));
            }
        }
    }

    #[test]
    fn supports_roundtrip_and_examples() {
        let c = cat(3, 2);
        let l2 = c.level(2).unwrap();
        let dim4 = (0..l2.info.len()).find(|&i| l2.info[i].dim == 4).unwrap();
        let s = c.support(Irrep::new(2, dim4));
        assert_eq!(s.len(), 2);
        assert_ne!(s[0], s[1]);
        assert!(s.iter().all(|p| p.n == 1));
        // {1, 1} gives the Steinberg-type dim-3 irrep
        let triv = (0..2).find(|&i| c.info(Irrep::new(1, i)).central == 0).unwrap();
        let st = c.generic_of_support(&[Irrep::new(1, triv), Irrep::new(1, triv)]).unwrap();
        assert_eq!(c.info(st).dim, 3);
        for (q, n) in [(3, 3), (2, 3), (2, 4)] {
            let c = cat(q, n);
            for k in 1..=n {
                for pi in c.generic(k) {
                    assert_eq!(c.generic_of_support(c.support(pi)).unwrap(), pi);
                }
            }
        }
    }

    #[test]
    fn induction_degrees_and_irreducibility() {
        let c = cat(3, 2);
        let chars = c.irreps(1);
        let ind = c.induce_irreps(&[chars[0], chars[1]]).unwrap();
        let l2 = c.level(2).unwrap();
        let id = l2.classes.identity_class();
        assert!((ind[id].re - 4.0).abs() < 1e-9);
        assert!((l2.table.inner(&ind, &ind).re - 1.0).abs() < 1e-9);
        // Whittaker multiplicity of an induced representation is 1
        for a in &chars {
            for b in &chars {
                let ind = c.induce_irreps(&[*a, *b]).unwrap();
                let mult = l2.table.decompose(&ind).unwrap();
                let w: i64 = mult.iter().enumerate().map(|(i, m)| m * l2.info[i].whittaker as i64).sum();
                assert_eq!(w, 1);
            }
        }
    }

    #[test]
    fn induction_is_associative() {
        let c = cat(2, 3);
        let one = c.irreps(1)[0];
        let inner = c.induce_irreps(&[one, one]).unwrap();
        let lhs = c
            .induce(&Composition::new(vec![2, 1], 3).unwrap(), &[&inner, c.character(one)])
            .unwrap();
        let rhs = c.induce_irreps(&[one, one, one]).unwrap();
        for (x, y) in lhs.iter().zip(&rhs) {
            assert!((x - y).norm() < 1e-9);
        }
        let c = cat(3, 3);
        let g1 = c.irreps(1);
        let inner = c.induce_irreps(&[g1[0], g1[1]]).unwrap();
        let lhs = c
            .induce(&Composition::new(vec![2, 1], 3).unwrap(), &[&inner, c.character(g1[1])])
            .unwrap();
        let rhs = c.induce_irreps(&[g1[0], g1[1], g1[1]]).unwrap();
        for (x, y) in lhs.iter().zip(&rhs) {
            assert!((x - y).norm() < 1e-9);
        }
    }

    #[test]
    fn central_characters_of_linear_characters() {
        let c = cat(5, 2);
        let f = c.field().clone();
        for chi in c.irreps(1) {
            // χ∘det restricted to scalars is a ↦ χ(a)^2
            let l2 = c.level(2).unwrap();
            let row: Vec<Complex64> = l2
                .classes
                .classes()
                .iter()
                .map(|cl| {
                    let d = cl.rep.det(&f);
                    c.character(chi)[c.level(1).unwrap().classes.class_of(&Matrix::scalar(1, d))]
                })
                .collect();
            let idx = (0..l2.info.len())
                .find(|&i| l2.info[i].dim == 1 && (0..row.len()).all(|k| (l2.table.value(i, k) - row[k]).norm() < 1e-9))
                .unwrap();
            for a in f.units() {
                let want = c.central_character(chi, a).powi(2);
                assert!((c.central_character(Irrep::new(2, idx), a) - want).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn orbit_bijection_gl2_f3() {
        let c = cat(3, 2);
        let tags: std::collections::HashSet<_> = c
            .cuspidal(2)
            .into_iter()
            .map(|p| c.info(p).orbit.clone().unwrap())
            .collect();
        assert_eq!(tags.len(), 3);
        for p in c.irreps(1) {
            assert_eq!(c.info(p).orbit.as_ref().unwrap().members.len(), 1);
        }
    }

    #[test]
    fn support_uniqueness_gl3_f2() {
        // every irrep lies in the induction of exactly one cuspidal multiset
        let c = cat(2, 3);
        let mut cusp = Vec::new();
        for k in 1..=3 {
            cusp.extend(c.cuspidal(k));
        }
        let mut sets = Vec::new();
        cuspidal_multisets(&cusp, 3, 0, &mut Vec::new(), &mut sets);
        let l3 = c.level(3).unwrap();
        for pi in c.generic(3) {
            let hits = sets
                .iter()
                .filter(|s| {
                    let ind = if s.len() == 1 {
                        c.character(s[0]).to_vec()
                    } else {
                        c.induce_irreps(s).unwrap()
                    };
                    l3.table.inner(&ind, c.character(pi)).norm() > 0.5
                })
                .count();
            assert_eq!(hits, 1);
        }
    }
}
