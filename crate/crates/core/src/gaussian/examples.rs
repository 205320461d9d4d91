//! Named functionals on `ℂ[ℤ]` used by the command line and the tests.

use std::sync::Arc;

use super::{DatumBuilder, GaussianDatum};
use crate::exact::Scalar;
use crate::groups::FpGroup;
use crate::hopf::{group_algebra, HopfPresentation};

pub fn integers() -> Arc<HopfPresentation> {
    Arc::new(group_algebra(&FpGroup::integers()).expect("catalogue entry"))
}

/// Heat semigroup: `η(u) = 1 = −η(u⁻¹)`, `φ(u) = φ(u⁻¹) = −1/2`, so `φ(uᵏ) = −k²/2`.
pub fn heat() -> GaussianDatum {
    scaled_heat("heat", Scalar::one())
}

/// Heat data multiplied by `−1`; not conditionally positive.
pub fn negated_heat() -> GaussianDatum {
    scaled_heat("negated_heat", -Scalar::one())
}

fn scaled_heat(name: &str, s: Scalar) -> GaussianDatum {
    let p = integers();
    let (u, v) = (p.gen("u").unwrap(), p.gen("u^-1").unwrap());
    let half = &Scalar::ratio(-1, 2) * &s;
    DatumBuilder::new(name, p)
        .drift(u, half.clone())
        .drift(v, half)
        .gram(u, u, s.clone())
        .gram(v, v, s.clone())
        .gram(u, v, -s)
        .build()
        .expect("shapes match")
}

/// Rotation drift `φ(u) = i`, `φ(u⁻¹) = −i`, zero Gram.
pub fn rotation() -> GaussianDatum {
    let p = integers();
    let (u, v) = (p.gen("u").unwrap(), p.gen("u^-1").unwrap());
    DatumBuilder::new("rotation", p).drift(u, Scalar::i()).drift(v, -Scalar::i()).build().expect("shapes match")
}

pub fn by_name(name: &str) -> Option<GaussianDatum> {
    match name {
        "heat" => Some(heat()),
        "negated_heat" => Some(negated_heat()),
        "rotation" => Some(rotation()),
        _ => None,
    }
}

pub const NAMES: &[&str] = &["heat", "negated_heat", "rotation"];
