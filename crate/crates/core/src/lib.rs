//! Combinatorics of bi-free probability and the central limit theorem for
//! tensor products of free variables.
//!
//! Every exact quantity is a [`rational::Rational`]. The only floating point
//! lives in [`matrix_model`], which checks the exact predictions against a
//! Monte Carlo realization with random Hermitian matrices.

pub mod bichromatic;
pub mod cumulants;
pub mod error;
pub mod limit_law;
pub mod matrix_model;
pub mod meanders;
pub mod partitions;
pub mod rational;
pub mod tensor_clt;

pub use error::{Error, Result};
pub use partitions::SetPartition;
