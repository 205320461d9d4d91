//! Degree-bounded ideal computations: `K_n` spans and membership, `K_∞`
//! probes, the filtration property and the Kac ideal.

mod kac;
mod kn;
mod quotient;
mod truncation;
pub mod xcoords;

pub use kac::{kac_generators, s_squared, scaling_action, scaling_table, KacGenerator, ScalingEntry};
pub use kn::{
    centered, filtration_probe, kinfty_probe, kn_span, membership, o2plus_descent_check, uncenter, ChainEvidence,
    ChainReport, FiltrationElement, FiltrationReport, KnSpan, MembershipReport, O2DescentReport, Verdict,
};
pub use quotient::{BoundedQuotient, RelationSpan};
pub use truncation::Truncation;

#[cfg(test)]
mod tests;
