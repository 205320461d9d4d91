//! Gaussian generating functionals stored as drift and Gram data.

mod consistency;
mod datum;
pub mod examples;
mod solve;
pub mod wick;

pub use consistency::{check_classical, check_consistency, check_drift, ConsistencyReport, Violation};
pub use datum::{DatumBuilder, GaussianDatum};
pub use solve::{is_antisymmetric_space, solve_gaussian_space, BasisElement, SolutionSpace};
