//! Representation theory of GL_n(F_q) at desk scale: exact character tables,
//! Bessel functions of generic representations, Shahidi and Rankin–Selberg
//! gamma factors, and a registry of exhaustive identity checks.

pub mod algebra;
pub mod bessel;
pub mod chartab;
pub mod error;
pub mod gamma;
pub mod glgroup;
pub mod harness;
pub mod numeric;

pub use error::{Error, Result};
