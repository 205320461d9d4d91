use serde::Serialize;

use super::GaussianDatum;
use crate::error::Result;
use crate::freestar::NCPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub constraint: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub passed: bool,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl ConsistencyReport {
    fn push(&mut self, ok: bool, constraint: impl FnOnce() -> String, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(Violation { constraint: constraint(), detail: detail() });
        }
    }
}

/// Verifies that the datum defines a Gaussian functional on the quotient:
/// hermitian drift, hermitian PSD Gram, `η(r) = 0`, and `φ(r) = φ(g r) = φ(r g) = 0`
/// for every relation `r` and generator `g`.
pub fn check_consistency(d: &GaussianDatum) -> Result<ConsistencyReport> {
    let p = d.presentation.clone();
    let mut rep = ConsistencyReport { passed: true, checked: 0, violations: Vec::new() };
    for g in p.alphabet.ids() {
        let lhs = d.wick_eval(&p.star_table[g as usize])?;
        let rhs = d.drift()[g as usize].conj();
        rep.push(
            lhs == rhs,
            || format!("hermitian drift at {}", p.symbol(g)),
            || format!("φ(g*) = {lhs}, conj φ(g) = {rhs}"),
        );
    }
    let gram = d.gram();
    let hermitian = gram.is_hermitian();
    rep.push(hermitian, || "Gram matrix is hermitian".into(), || "G != G*".into());
    if hermitian {
        let v = gram.psd_check()?;
        rep.push(
            v.is_psd(),
            || "Gram matrix is positive semidefinite".into(),
            || match &v {
                crate::exact::PsdVerdict::Indefinite { witness, value } => {
                    let w: Vec<String> = witness.iter().map(|x| x.to_string()).collect();
                    format!("witness ({}) gives {}", w.join(", "), value)
                }
                _ => String::new(),
            },
        );
    }
    for (k, r) in p.relations.iter().enumerate() {
        let label = || format!("relation #{} `{}`", k + 1, p.render(r));
        let c = d.eta_coefficients(r)?;
        let col: Vec<_> = (0..d.ngens())
            .map(|a| c.iter().map(|(b, x)| &gram[(a, *b as usize)] * x).sum::<crate::exact::Scalar>())
            .collect();
        rep.push(
            col.iter().all(|x| x.is_zero()),
            || format!("η vanishes on {}", label()),
            || {
                let coeffs: Vec<String> = c.iter().map(|(g, x)| format!("{}·η({})", x, p.symbol(*g))).collect();
                format!("η(r) = {} has nonzero norm", coeffs.join(" + "))
            },
        );
        let v = d.wick_eval(r)?;
        rep.push(v.is_zero(), || format!("φ vanishes on {}", label()), || format!("φ(r) = {v}"));
        for g in p.alphabet.ids() {
            let gp = NCPoly::gen(g);
            for (side, x) in [("g·r", &gp * r), ("r·g", r * &gp)] {
                let v = d.wick_eval(&x)?;
                rep.push(
                    v.is_zero(),
                    || format!("φ({side}) = 0 for g = {} on {}", p.symbol(g), label()),
                    || format!("value {v}"),
                );
            }
        }
    }
    rep.passed = rep.violations.is_empty();
    Ok(rep)
}

/// Drift: zero Gram and a consistent datum, equivalently `φ` vanishes on `K₂`.
pub fn check_drift(d: &GaussianDatum) -> Result<bool> {
    Ok(d.gram().is_zero() && check_consistency(d)?.passed)
}

/// Classical data: `⟨η(x*), η(y)⟩ = ⟨η(y*), η(x)⟩` for all generators.
pub fn check_classical(d: &GaussianDatum) -> bool {
    let n = d.ngens() as u32;
    (0..n).all(|x| (x..n).all(|y| d.star_pairing(x, y) == d.star_pairing(y, x)))
}
