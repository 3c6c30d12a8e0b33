//! Exact center-of-mass expansions in powers of `r/s`, the Jacobsthal
//! families they generate, and verification of their identities.

pub mod catalog;
pub mod cli;
pub mod engine;
pub mod error;
pub mod identities;
pub mod numerics;
pub mod sequences;
pub mod simulator;

pub use error::{Error, Result};
