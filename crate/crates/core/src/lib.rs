//! Translations between intuitionistic propositional logic (IP) and the
//! epistemic logic EP (S4), decision procedures for both, finite Heyting
//! algebras, and executable checks of the translation results.

pub mod algebra;
pub mod error;
pub mod harness;
pub mod prover;
pub mod registry;
pub mod syntax;
pub mod translate;
