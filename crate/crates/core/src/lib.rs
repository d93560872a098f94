//! Exact computations with fusion rings of loop groups.
//!
//! Weights are in Dynkin coordinates with Bourbaki node numbering; the affine node is
//! `0`. For `G2`, coordinate 1 is the short fundamental weight and coordinate 2 the long one.

pub mod cli;
pub mod error;
pub mod lie_core;
pub mod fusion_oracle;
pub mod groebner;
pub mod twisted_modules;
pub mod rep_ring;
pub mod resolution;

pub use error::{Error, Result};
