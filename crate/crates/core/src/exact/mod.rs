//! Exact complex-rational arithmetic and linear algebra.

pub mod field;
pub mod matrix;
pub mod scalar;
pub mod snf;
pub mod sparse;

pub use field::Field;
pub use matrix::{PsdVerdict, RowEchelon, ScalarMatrix};
pub use scalar::{rat, rat_to_f64, ParseScalarError, Scalar};
pub use snf::{hermite_rows, integer_kernel, smith_normal_form, IntMatrix, Smith};
pub use sparse::{Echelon, SparseVec};
