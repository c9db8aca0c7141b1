//! Gamma factors and the identities relating them to Bessel functions.

pub mod jpss;
pub mod shahidi;
pub mod special;
pub mod verify;

use crate::algebra::Elem;
use crate::chartab::Irrep;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

pub use jpss::{
    check_fe_n_eq_m, check_fe_n_gt_m, fourier_transform, jpss_gamma, spanning_translates, z_sum, zj_sum,
    SchwartzFunction, WhittakerFunction,
};
pub use shahidi::{gamma_intertwining_oracle, normalized_gamma, shahidi_gamma};
pub use special::{
    fourier_bessel_identity_check, kondo_gamma_gl1, three_block_simple, three_block_special_value,
    two_block_special_value,
};
pub use verify::{registry, verify, Scope, TheoremSpec, VerdictReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ShahidiBessel,
    JpssBessel,
    IntertwiningOracle,
    KondoProduct,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ShahidiBessel => "shahidi_bessel",
            Method::JpssBessel => "jpss_bessel",
            Method::IntertwiningOracle => "intertwining_oracle",
            Method::KondoProduct => "kondo_product",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaValue {
    pub value: Complex64,
    pub method: Method,
    pub pi: Irrep,
    pub sigma: Irrep,
    pub psi_a: Elem,
}

impl GammaValue {
    pub fn abs(&self) -> f64 {
        self.value.norm()
    }
}
