//! Symbolic engine for Gaussian generating functionals on Hopf *-algebra
//! presentations of compact quantum groups.

pub mod cli;
pub mod error;
pub mod exact;
pub mod freestar;
pub mod gaussian;
pub mod groups;
pub mod hopf;
pub mod ideals;
pub mod semigroup;

pub use error::{Error, Result};
