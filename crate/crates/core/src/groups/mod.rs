//! Finitely presented groups and their class-2 torsion-free quotients.

mod central;
pub mod class2;
pub mod fp;
mod lattice;

pub use central::{central_gaussian, CentralGaussian, PositivityCheck};
pub use class2::{
    class2_quotient, gaussian_part_dual, omega_matrix, torsion_free_reduce, Bracket, Class2Quotient, GeneratorImage,
    Layer, Malcev,
};
pub use fp::{FpGroup, Letter};
