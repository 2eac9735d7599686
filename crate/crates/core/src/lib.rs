//! Numerical and exact-arithmetic tools for log-correlated structures in random
//! matrix theory and number theory: compact-group spectra, characteristic
//! polynomial fields, moments of moments, branching random walks and
//! prime-sum models of the zeta function.

pub mod branching;
pub mod charpoly;
pub mod closed_forms;
pub mod ensembles;
pub mod error;
pub mod mom;
pub mod number_models;
pub mod poly;
pub mod rng;
pub mod special;
pub mod stats;
pub mod symfunc;

pub use error::{Error, Result};
