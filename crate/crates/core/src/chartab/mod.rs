//! Character tables (Burnside–Dixon) and per-irreducible metadata.

pub mod dixon;
pub mod modular;
pub mod table;

pub use dixon::{ExactCharacter, ExactValue};
pub use table::{CharacterTable, ClassFunction, MAX_CLASSES};
pub mod catalog;
pub mod induction;

pub use catalog::{set_default_store, shared, shared_with, Catalog, Irrep, IrrepInfo, Level, LevelSnapshot, LevelStore};
