//! Numerical verification of the caloron correspondence and the string class
//! of `LG⋊S¹`-bundles.
//!
//! Every identity is checked on pullbacks to finite-dimensional probe charts:
//! a smooth family `[0,1]^d → state space` sampled on a tensor grid, where
//! exterior derivatives are finite differences and the loop parameter is
//! handled spectrally.

pub mod bundle;
pub mod caloron;
pub mod error;
pub mod fields;
pub mod forms;
pub mod gerbe;
pub mod lie;
pub mod loops;
pub mod probes;
pub mod spectral;
pub mod string;

pub use error::{Error, Result};
