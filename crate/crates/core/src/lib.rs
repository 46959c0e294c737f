//! Exact symbolic engine for generalized q-deformed oscillator algebras,
//! their braided tensor products and braided Hopf algebra structures.

pub mod coeffield;
pub mod error;
pub mod fockrep;
pub mod hopfstruct;
pub mod braidtensor;
pub mod oscalg;
pub mod solvesearch;

pub use error::{Error, Result};
