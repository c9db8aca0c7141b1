//! Fixtures shared by the benchmarks.

use glq_core::chartab::{shared, Catalog, Irrep};
use std::sync::Arc;

pub fn catalog(q: u32, n: usize) -> Arc<Catalog> {
    shared(q, n).expect("catalog inside the envelope")
}

/// First cuspidal of GL_n, falling back to the first generic.
pub fn sample_generic(cat: &Catalog, n: usize) -> Irrep {
    cat.cuspidal(n).into_iter().next().unwrap_or_else(|| cat.generic(n)[0])
}
