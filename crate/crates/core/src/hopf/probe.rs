//! Sample-based check of the Hopf *-algebra axioms against a presentation,
//! modulo the relation span at a bounded degree.

use std::sync::Arc;

use serde::Serialize;

use super::HopfPresentation;
use crate::error::{Error, Result};
use crate::freestar::{NCPoly, Tensor, Word};
use crate::ideals::BoundedQuotient;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub subject: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub degree: usize,
    pub samples: Vec<String>,
    pub checked: usize,
    pub passed: bool,
    pub failures: Vec<AxiomFailure>,
    /// Checks that could not be decided at this degree.
    pub warnings: Vec<String>,
}

struct Probe<'a> {
    p: &'a HopfPresentation,
    q: BoundedQuotient,
    report: AxiomReport,
}

impl Probe<'_> {
    fn record(&mut self, ok: Result<bool>, axiom: &str, subject: &str, detail: impl FnOnce() -> String) {
        self.report.checked += 1;
        match ok {
            Ok(true) => {}
            Ok(false) => self.report.failures.push(AxiomFailure {
                axiom: axiom.into(),
                subject: subject.into(),
                detail: detail(),
            }),
            Err(e) => self.report.warnings.push(format!("{axiom} on {subject}: {e}")),
        }
    }

    fn zero_mod_relations(&self, x: &NCPoly) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        self.q.in_relation_span(x)
    }

    /// `t ∈ R ⊗ A + A ⊗ R`: both legs reduced to normal forms, the result must vanish.
    fn tensor_zero_mod_relations(&self, t: &Tensor) -> Result<bool> {
        let mut acc = Tensor::zero(2);
        for (legs, c) in t.terms() {
            let a = self.q.normal_form(&NCPoly::word(legs[0].clone()))?;
            let b = self.q.normal_form(&NCPoly::word(legs[1].clone()))?;
            acc = &acc + &Tensor::product_of(&[a, b]).scale(c);
        }
        Ok(acc.is_zero())
    }

    fn counit_side(&self, t: &Tensor, leg: usize) -> NCPoly {
        let mut out = NCPoly::zero();
        for (legs, c) in t.terms() {
            let e = self.p.counit_word(&legs[leg]);
            out = &out + &NCPoly::word(legs[1 - leg].clone()).scale(&(c * &e));
        }
        out
    }

    fn antipode_side(&self, t: &Tensor, leg: usize) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (legs, c) in t.terms() {
            let s = self.p.antipode(&NCPoly::word(legs[leg].clone()))?;
            let other = NCPoly::word(legs[1 - leg].clone());
            let prod = if leg == 0 { &s * &other } else { &other * &s };
            out = &out + &prod.scale(c);
        }
        Ok(out)
    }

    fn sample(&mut self, w: &Word) -> Result<()> {
        let x = NCPoly::word(w.clone());
        let label = self.p.render_word(w);
        let d = self.p.coproduct(&x)?;
        for (leg, name) in [(0, "(ε⊗id)Δ = id"), (1, "(id⊗ε)Δ = id")] {
            let diff = &self.counit_side(&d, leg) - &x;
            let ok = self.zero_mod_relations(&diff);
            self.record(ok, name, &label, || format!("difference {}", self.p.render(&diff)));
        }
        let left = self.p.iterated_coproduct_left(&x, 3)?;
        let right = self.p.iterated_coproduct(&x, 3)?;
        let ok = left == right;
        self.record(Ok(ok), "coassociativity", &label, || {
            format!("(Δ⊗id)Δ - (id⊗Δ)Δ = {}", self.p.render_tensor(&(&left - &right)))
        });
        let unit = NCPoly::constant(self.p.counit_word(w));
        for (leg, name) in [(0, "m(S⊗id)Δ = ε1"), (1, "m(id⊗S)Δ = ε1")] {
            let diff = &self.antipode_side(&d, leg)? - &unit;
            let ok = self.zero_mod_relations(&diff);
            self.record(ok, name, &label, || format!("difference {}", self.p.render(&diff)));
        }
        Ok(())
    }

    fn relation(&mut self, k: usize) -> Result<()> {
        let r = self.p.relations[k].clone();
        let label = format!("relation #{} `{}`", k + 1, self.p.render(&r));
        let e = self.p.counit(&r)?;
        self.record(Ok(e.is_zero()), "ε(r) = 0", &label, || format!("ε(r) = {e}"));
        let d = self.p.coproduct(&r)?;
        let ok = self.tensor_zero_mod_relations(&d);
        self.record(ok, "Δ(r) ∈ R⊗A + A⊗R", &label, || "coproduct leaves the Hopf ideal".into());
        // one-sided at a bounded degree: a miss is only reported as uncertified
        for (name, x) in [("S(r) ∈ R", self.p.antipode(&r)?), ("r* ∈ R", self.p.star(&r)?)] {
            self.report.checked += 1;
            match self.zero_mod_relations(&x) {
                Ok(true) => {}
                Ok(false) => self
                    .report
                    .warnings
                    .push(format!("{name} on {label}: not certified at degree {}", self.report.degree)),
                Err(e) => self.report.warnings.push(format!("{name} on {label}: {e}")),
            }
        }
        Ok(())
    }
}

/// Degree needed to decide every check on `samples` exactly at the bound.
fn required_degree(p: &HopfPresentation, samples: &[Word]) -> usize {
    let ids = || p.alphabet.ids().map(|g| g as usize);
    let leg = ids()
        .flat_map(|g| p.coproduct_table[g].terms().flat_map(|(legs, _)| legs.iter().map(Word::len)).collect::<Vec<_>>())
        .max()
        .unwrap_or(1)
        .max(1);
    let anti = ids().map(|g| p.antipode_table[g].degree()).max().unwrap_or(1).max(1);
    let mut d = p.max_relation_degree();
    for g in ids() {
        d = d
            .max(p.antipode_table[g].degree() * p.max_relation_degree())
            .max(p.star_table[g].degree() * p.max_relation_degree());
    }
    for w in samples {
        d = d.max(w.len() * leg * (anti + 1));
    }
    d
}

/// Runs the axiom checks on each sample word and on every relation. Failures
/// name the offending word; checks that overflow the degree bound become
/// warnings. Only a basis-cap overflow is returned as an error.
pub fn hopf_axiom_probe(p: Arc<HopfPresentation>, samples: &[Word], degree: Option<usize>) -> Result<AxiomReport> {
    let degree = degree.unwrap_or_else(|| required_degree(&p, samples));
    let q = BoundedQuotient::new(p.clone(), degree)?;
    if let Err(e @ Error::CapExceeded { .. }) = q.relation_span() {
        return Err(e);
    }
    let mut probe = Probe {
        p: &p,
        q,
        report: AxiomReport {
            degree,
            samples: samples.iter().map(|w| p.render_word(w)).collect(),
            checked: 0,
            passed: true,
            failures: Vec::new(),
            warnings: Vec::new(),
        },
    };
    for w in samples {
        probe.sample(w)?;
    }
    for k in 0..p.relations.len() {
        probe.relation(k)?;
    }
    let mut report = probe.report;
    report.passed = report.failures.is_empty();
    Ok(report)
}

/// Generators plus all products of two generators: the default sample set.
pub fn default_samples(p: &HopfPresentation) -> Vec<Word> {
    let ids: Vec<u32> = p.alphabet.ids().collect();
    let mut out: Vec<Word> = ids.iter().map(|&g| Word(vec![g])).collect();
    for &a in &ids {
        for &b in &ids {
            out.push(Word(vec![a, b]));
        }
    }
    out
}
