//! Finite posets, distributive lattices and Hibi-type binomial ideals.

pub mod error;
pub mod gb;
pub mod grid;
pub mod harness;
pub mod hibi;
pub mod lattice;
pub mod poset;

pub use error::{Error, Result};
