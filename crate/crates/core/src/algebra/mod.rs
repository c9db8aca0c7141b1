//! Finite fields, extensions, characters and polynomials.

pub mod characters;
pub mod conway;
pub mod extension;
pub mod field;
pub mod poly;

pub use characters::{
    all_mult_chars, frobenius_orbits, gauss_sum, regular_orbit_count, AdditiveCharacter,
    FrobeniusOrbit, MultChar,
};
pub use extension::ExtensionField;
pub use field::{Elem, Field, MAX_FIELD_SIZE};
pub use poly::{factor_poly, IrreducibleSieve, Poly};
