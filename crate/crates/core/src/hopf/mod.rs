//! Hopf *-algebra presentations, the built-in catalogue and axiom probes.

pub mod catalogue;
pub mod presentation;
pub mod probe;

pub use catalogue::{from_spec, group_algebra, group_element, o_n_plus, o_n_star, o_n_twisted, su_q2, u_n_plus};
pub use presentation::{q_ratio, Corepresentation, HopfPresentation, StructureKind, StructureValue};
pub use probe::{default_samples, hopf_axiom_probe, AxiomFailure, AxiomReport};
