//! Parabolic induction of class functions from Levi subgroups.

use crate::error::{Error, Result};
use crate::glgroup::{ClassData, Composition};
use num_complex::Complex64;
use std::collections::HashMap;

/// Counts of P-elements by (G-class, classes of the diagonal blocks).
pub struct LeviAggregate {
    pub comp: Composition,
    pub parabolic_order: u64,
    pub entries: Vec<(usize, Vec<usize>, u64)>,
}

impl LeviAggregate {
    /// `blocks[j]` must hold the classes of GL_{n_j}.
    pub fn build(whole: &ClassData, comp: &Composition, blocks: &[&ClassData]) -> Result<Self> {
        let g = whole.group();
        let f = g.field();
        if comp.total() != g.n() || blocks.len() != comp.parts().len() {
            return Err(Error::CompositionMismatch {
                parts: comp.parts().to_vec(),
                reason: format!("expected {} blocks summing to {}", blocks.len(), g.n()),
            });
        }
        let radical = g.radical(comp);
        let offs = comp.offsets();
        // Levi elements as tuples of block classes
        let mut levi: Vec<(crate::glgroup::Matrix, Vec<usize>)> =
            vec![(g.identity(), Vec::new())];
        for (b, cd) in blocks.iter().enumerate() {
            let sub = cd.group();
            if sub.n() != comp.parts()[b] {
                return Err(Error::CompositionMismatch {
                    parts: comp.parts().to_vec(),
                    reason: format!("block {b} has size {}", sub.n()),
                });
            }
            let els: Vec<_> = sub.elements().map(|m| (m, cd.class_of(&m))).collect();
            let o = offs[b];
            levi = levi
                .iter()
                .flat_map(|(m, cls)| {
                    els.iter().map(move |(blk, c)| {
                        let mut m2 = *m;
                        m2.put(o, o, blk);
                        let mut cls2 = cls.clone();
                        cls2.push(*c);
                        (m2, cls2)
                    })
                })
                .collect();
        }
        let mut counts: HashMap<(usize, Vec<usize>), u64> = HashMap::new();
        for (l, cls) in &levi {
            for u in &radical {
                let y = l.mul(u, f);
                *counts.entry((whole.class_of(&y), cls.clone())).or_default() += 1;
            }
        }
        let mut entries: Vec<_> = counts.into_iter().map(|((c, b), n)| (c, b, n)).collect();
        entries.sort();
        Ok(LeviAggregate {
            comp: comp.clone(),
            parabolic_order: (levi.len() * radical.len()) as u64,
            entries,
        })
    }

    /// Ind_P^G of the inflation of f_1 ⊗ ⋯ ⊗ f_r.
    pub fn induce(&self, whole: &ClassData, fs: &[&[Complex64]]) -> Result<Vec<Complex64>> {
        if fs.len() != self.comp.parts().len() {
            return Err(Error::CompositionMismatch {
                parts: self.comp.parts().to_vec(),
                reason: format!("{} class functions supplied", fs.len()),
            });
        }
        let mut acc = vec![crate::numeric::KahanSum::new(); whole.len()];
        for (c, blocks, count) in &self.entries {
            let mut v = Complex64::new(*count as f64, 0.0);
            for (j, &b) in blocks.iter().enumerate() {
                v *= fs[j][b];
            }
            acc[*c].add(v);
        }
        let index = whole.group().order() as f64 / self.parabolic_order as f64;
        Ok(acc
            .iter()
            .enumerate()
            .map(|(c, s)| s.value() * index / whole.info(c).size as f64)
            .collect())
    }
}
