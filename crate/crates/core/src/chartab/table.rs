//! Character tables with exact data and complex lifts.

use super::dixon::{dixon, ExactCharacter};
use crate::error::{Error, Result};
use crate::glgroup::ClassData;
use crate::numeric::{as_integer, KahanSum};
use num_complex::Complex64;
use std::sync::Arc;

/// Refuse Dixon beyond this many classes.
pub const MAX_CLASSES: usize = 256;

pub struct CharacterTable {
    classes: Arc<ClassData>,
    ell: u64,
    rows: Vec<ExactCharacter>,
    values: Vec<Vec<Complex64>>,
}

/// A class function, one value per class in table column order.
pub type ClassFunction = Vec<Complex64>;

impl CharacterTable {
    pub fn build(classes: Arc<ClassData>) -> Result<CharacterTable> {
        if classes.len() > MAX_CLASSES {
            let g = classes.group();
            return Err(Error::EnvelopeExceeded {
                n: g.n(),
                q: g.q(),
                reason: format!("{} classes exceed the table limit {MAX_CLASSES}", classes.len()),
            });
        }
        let res = dixon(&classes)?;
        Ok(CharacterTable::from_exact(classes, res.ell, res.characters))
    }

    /// Rows are sorted by (dim, exact value data).
    pub fn from_exact(classes: Arc<ClassData>, ell: u64, mut rows: Vec<ExactCharacter>) -> Self {
        rows.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.values.cmp(&b.values)));
        let values = rows
            .iter()
            .map(|r| r.values.iter().map(|v| v.to_complex()).collect())
            .collect();
        CharacterTable {
            classes,
            ell,
            rows,
            values,
        }
    }

    pub fn classes(&self) -> &Arc<ClassData> {
        &self.classes
    }
    pub fn ell(&self) -> u64 {
        self.ell
    }
    pub fn len(&self) -> usize {
        self.rows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn exact(&self, i: usize) -> &ExactCharacter {
        &self.rows[i]
    }
    pub fn dim(&self, i: usize) -> u64 {
        self.rows[i].dim
    }
    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.values[i]
    }
    #[inline]
    pub fn value(&self, i: usize, class: usize) -> Complex64 {
        self.values[i][class]
    }

    /// (1/|G|) Σ_C |C| a(C) conj(b(C)).
    pub fn inner(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        let mut s = KahanSum::new();
        for (c, info) in self.classes.classes().iter().enumerate() {
            s.add(a[c] * b[c].conj() * info.size as f64);
        }
        s.value() / self.classes.group().order() as f64
    }

    /// Multiplicity of each irreducible in a class function.
    pub fn decompose(&self, f: &[Complex64]) -> Result<Vec<i64>> {
        (0..self.len())
            .map(|i| {
                let z = self.inner(f, self.row(i));
                as_integer(z).ok_or(Error::NonIntegral(z.re))
            })
            .collect()
    }

    /// Index of the row with complex-conjugate values.
    pub fn dual(&self, i: usize) -> usize {
        let target: Vec<_> = self.rows[i].values.iter().map(|v| v.conj()).collect();
        self.rows
            .iter()
            .position(|r| r.dim == self.rows[i].dim && r.values == target)
            .expect("the conjugate of an irreducible character is irreducible")
    }

    /// max |⟨χ_i, χ_j⟩ − δ_ij| over rows, and the same for columns.
    pub fn orthogonality_residuals(&self) -> (f64, f64) {
        let k = self.len();
        let mut row_res = 0f64;
        for i in 0..k {
            for j in 0..k {
                let z = self.inner(self.row(i), self.row(j));
                let d = if i == j { 1.0 } else { 0.0 };
                row_res = row_res.max((z - d).norm());
            }
        }
        let order = self.classes.group().order() as f64;
        let mut col_res = 0f64;
        for a in 0..k {
            for b in 0..k {
                let mut s = KahanSum::new();
                for i in 0..k {
                    s.add(self.values[i][a] * self.values[i][b].conj());
                }
                let expect = if a == b {
                    order / self.classes.info(a).size as f64
                } else {
                    0.0
                };
                col_res = col_res.max((s.value() - expect).norm() / order.sqrt());
            }
        }
        (row_res, col_res)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::glgroup::GlGroup;

    fn table(q: u32, n: usize) -> CharacterTable {
        let g = Arc::new(GlGroup::new(Arc::new(Field::of_order(q).unwrap()), n).unwrap());
        CharacterTable::build(Arc::new(ClassData::build(g).unwrap())).unwrap()
    }

    #[test]
    fn gl1_and_gl2_tables() {
        let t = table(3, 1);
        assert_eq!(t.len(), 2);
        assert!((0..2).all(|i| t.dim(i) == 1));
        let t = table(3, 2);
        let dims: Vec<u64> = (0..t.len()).map(|i| t.dim(i)).collect();
        assert_eq!(dims, vec![1, 1, 2, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn gl2_dimension_counts_for_general_q() {
        let t = table(2, 2);
        assert_eq!((0..t.len()).map(|i| t.dim(i)).collect::<Vec<_>>(), vec![1, 1, 2]);
        for q in [3u64, 4, 5, 7] {
            let t = table(q as u32, 2);
            let count = |d: u64| (0..t.len()).filter(|&i| t.dim(i) == d).count() as u64;
            assert_eq!(count(1), q - 1);
            assert_eq!(count(q), q - 1);
            assert_eq!(count(q + 1), (q - 1) * (q - 2) / 2);
            assert_eq!(count(q - 1), q * (q - 1) / 2);
        }
    }

    #[test]
    fn orthogonality_and_degrees() {
        for (q, n) in [(2, 2), (3, 2), (5, 2), (2, 3), (3, 3), (2, 4), (4, 2)] {
            let t = table(q, n);
            assert_eq!(t.len(), t.classes().len());
            let (r, c) = t.orthogonality_residuals();
            assert!(r < 1e-8 && c < 1e-8, "q={q} n={n}: {r} {c}");
            let s: u64 = (0..t.len()).map(|i| t.dim(i) * t.dim(i)).sum();
            assert_eq!(s, t.classes().group().order());
            for i in 0..t.len() {
                assert_eq!(t.dual(t.dual(i)), i);
            }
        }
    }

    #[test]
    fn gl3_f2_matches_centralizer_count() {
        let t = table(2, 3);
        assert_eq!(t.len(), 6);
        // Σ_χ |χ(g)|^2 = |C_G(g)| for every class
        for c in 0..t.len() {
            let s: f64 = (0..t.len()).map(|i| t.value(i, c).norm_sqr()).sum();
            let cent = t.classes().group().order() / t.classes().info(c).size;
            assert!((s - cent as f64).abs() < 1e-8);
        }
    }
}
