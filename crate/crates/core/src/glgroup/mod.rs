//! Matrices, GL_n(F_q), its subgroups, classes, cosets and Weyl elements.

pub mod bruhat;
pub mod classes;
pub mod cosets;
pub mod group;
pub mod matrix;
pub mod weyl;

pub use bruhat::{levi_parts, pwu_decompose};
pub use classes::{class_label, ClassData, ClassInfo, ClassLabel};
pub use cosets::{coset_canonical, coset_canonical_with, coset_reps_u};
pub use group::{gl_order, psi_on_u, Composition, GlGroup, SubgroupKind, MAX_N, MAX_ORDER};
pub use matrix::Matrix;
pub use weyl::{w_long, w_nm};
