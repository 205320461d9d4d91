use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::quotient::BoundedQuotient;
use super::truncation::Truncation;
use super::xcoords::{from_x, to_x};
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::freestar::{NCPoly, Tensor, Word};
use crate::hopf::HopfPresentation;

/// `K_n` inside a bounded quotient.
#[derive(Clone, Debug)]
pub struct KnSpan {
    pub n: usize,
    pub degree: usize,
    pub presentation: Arc<HopfPresentation>,
    truncation: Arc<Truncation>,
    /// Dimension of the span of centered products of total degree at most `d`,
    /// when the bounded quotient fits under the cap.
    pub bounded_dimension: Option<usize>,
    pub warnings: Vec<String>,
}

impl KnSpan {
    /// `dim A/K_n`, exact.
    pub fn codimension(&self) -> usize {
        self.truncation.quotient_dimension()
    }

    pub fn contains(&self, x: &NCPoly) -> bool {
        self.truncation.contains(&self.presentation, x)
    }
}

pub fn kn_span(q: &BoundedQuotient, n: usize) -> Result<KnSpan> {
    if n == 0 {
        return Err(Error::InvalidInput("K_n needs n >= 1".into()));
    }
    let mut warnings = Vec::new();
    if n > q.degree {
        warnings.push(format!(
            "n = {n} exceeds the degree bound {}: every spanning product has degree >= n, so the bounded span is empty",
            q.degree
        ));
    }
    let bounded_dimension = match q.relation_span() {
        Ok(s) => Some(s.kn_dimension(n)),
        Err(Error::CapExceeded { required, cap }) => {
            warnings.push(format!("bounded span not materialized: {required} words exceed the cap {cap}"));
            None
        }
        Err(e) => return Err(e),
    };
    Ok(KnSpan {
        n,
        degree: q.degree,
        presentation: q.presentation.clone(),
        truncation: q.truncation(n)?,
        bounded_dimension,
        warnings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedIn,
    NotInSpanAtBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    pub verdict: Verdict,
    pub n: usize,
    pub degree: usize,
    /// The truncation `A/K_n` separates `x` from `K_n`.
    pub separated_in_truncation: bool,
    pub note: String,
}

/// One-sided membership test. `certified_in` is a theorem about the ideal;
/// the negative verdict is reported as inconclusive, with a note when the
/// finite truncation `A/K_n` actually separates `x`.
pub fn membership(s: &KnSpan, x: &NCPoly) -> MembershipReport {
    if s.contains(x) {
        MembershipReport {
            verdict: Verdict::CertifiedIn,
            n: s.n,
            degree: s.degree,
            separated_in_truncation: false,
            note: format!("x reduces to 0 in the truncation A/K_{}", s.n),
        }
    } else {
        MembershipReport {
            verdict: Verdict::NotInSpanAtBound,
            n: s.n,
            degree: s.degree,
            separated_in_truncation: true,
            note: format!(
                "not certified: x has a nonzero image in the truncation A/K_{} (dimension {}); no representation was found",
                s.n,
                s.codimension()
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainEvidence {
    StrongConnectednessEvidence,
    TotalDisconnectionEvidence,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub degree: usize,
    /// Bounded dimensions of the `K_n` spans, `n = 1..=n_max`.
    pub chain: Vec<usize>,
    /// Exact `dim A/K_n`, `n = 1..=n_max`.
    pub quotient_dimensions: Vec<usize>,
    pub stabilized: bool,
    pub evidence: ChainEvidence,
    pub note: String,
}

/// Dimensions along `K₁ ⊇ K₂ ⊇ … ⊇ K_{n_max}` at the degree bound.
/// Stabilization is evidence about `K_∞`, never a proof.
pub fn kinfty_probe(q: &BoundedQuotient, n_max: usize) -> Result<ChainReport> {
    if n_max == 0 || n_max > q.degree {
        return Err(Error::InvalidInput(format!("n_max must lie in 1..={}", q.degree)));
    }
    let span = q.relation_span()?;
    let chain: Vec<usize> = (1..=n_max).map(|n| span.kn_dimension(n)).collect();
    let quotient_dimensions =
        (1..=n_max).map(|n| q.truncation(n).map(|t| t.quotient_dimension())).collect::<Result<Vec<_>>>()?;
    let stabilized = n_max >= 2 && chain[n_max - 1] == chain[n_max - 2];
    let last = *chain.last().unwrap();
    let evidence = match (stabilized, last) {
        (true, 0) => ChainEvidence::StrongConnectednessEvidence,
        (true, l) if l == chain[0] => ChainEvidence::TotalDisconnectionEvidence,
        _ => ChainEvidence::Inconclusive,
    };
    let note = match evidence {
        ChainEvidence::StrongConnectednessEvidence => "chain stabilized at the zero subspace at this bound",
        ChainEvidence::TotalDisconnectionEvidence => "chain stabilized at the K_1 span at this bound",
        ChainEvidence::Inconclusive => "chain has not stabilized at this bound",
    };
    Ok(ChainReport {
        degree: q.degree,
        chain,
        quotient_dimensions,
        stabilized,
        evidence,
        note: format!("{note}; bounded computations are evidence only"),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationElement {
    pub element: String,
    pub passed: bool,
    /// Terms `a ⊗ b` of the coproduct without a certificate, rendered.
    pub uncertified: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub n: usize,
    pub degree: usize,
    /// `Δ(K_n) ⊆ Σ_ℓ K_ℓ ⊗ K_{n−ℓ}` on every spanning element.
    pub passed: bool,
    /// `Δ(K_n) ⊆ K_{n/2} ⊗ A + A ⊗ K_{n/2}`, for even `n`.
    pub half_split_passed: Option<bool>,
    pub elements: Vec<FiltrationElement>,
}

/// Largest `k ≤ cap` with the centered word in `K_k`, memoized.
struct Levels<'q> {
    q: &'q BoundedQuotient,
    cap: usize,
    memo: HashMap<Word, usize>,
}

impl Levels<'_> {
    fn level(&mut self, w: &Word) -> Result<usize> {
        if let Some(&l) = self.memo.get(w) {
            return Ok(l);
        }
        let mut l = w.len().min(self.cap);
        let x = [(w.clone(), Scalar::one())].into_iter().collect();
        while l < self.cap && self.q.truncation(l + 1)?.contains_x(&x) {
            l += 1;
        }
        self.memo.insert(w.clone(), l);
        Ok(l)
    }
}

/// `Δ(X_g)` in centered coordinates on both legs.
fn centered_coproducts(p: &HopfPresentation) -> Vec<Tensor> {
    p.alphabet
        .ids()
        .map(|g| {
            let mut t = Tensor::zero(2);
            for (legs, c) in p.coproduct_table[g as usize].terms() {
                let a = to_x(p, &NCPoly::word(legs[0].clone()), usize::MAX);
                let b = to_x(p, &NCPoly::word(legs[1].clone()), usize::MAX);
                for (wa, ca) in &a {
                    for (wb, cb) in &b {
                        t.add_term(vec![wa.clone(), wb.clone()], &(c * ca) * cb);
                    }
                }
            }
            t.add_term(vec![Word::unit(), Word::unit()], -p.counit_table[g as usize].clone());
            t
        })
        .collect()
}

/// Expands `Δ` on the spanning elements of `K_n` (centered words of length
/// `n..=d`) and certifies every term `X_a ⊗ X_b` through the `K` levels of its legs.
pub fn filtration_probe(q: &BoundedQuotient, n: usize) -> Result<FiltrationReport> {
    if n == 0 || n > q.degree {
        return Err(Error::InvalidInput(format!("n must lie in 1..={}", q.degree)));
    }
    let p = q.presentation.clone();
    let dx = centered_coproducts(&p);
    let mut levels = Levels { q, cap: n, memo: HashMap::new() };
    let half = (n % 2 == 0).then_some(n / 2);
    let mut elements = Vec::new();
    let mut half_ok = true;
    for len in n..=q.degree {
        for w in Word::all_of_length(p.ngens() as u32, len) {
            let t = w.letters().iter().fold(Tensor::one(2), |acc, &g| &acc * &dx[g as usize]);
            let mut uncertified = Vec::new();
            for (legs, c) in t.terms() {
                let (la, lb) = (levels.level(&legs[0])?, levels.level(&legs[1])?);
                if la + lb < n {
                    uncertified.push(format!(
                        "{} * X[{}] (x) X[{}]",
                        c,
                        p.render_word(&legs[0]),
                        p.render_word(&legs[1])
                    ));
                }
                if let Some(k) = half {
                    half_ok &= la >= k || lb >= k;
                }
            }
            elements.push(FiltrationElement {
                element: format!("X[{}]", p.render_word(&w)),
                passed: uncertified.is_empty(),
                uncertified,
            });
        }
    }
    Ok(FiltrationReport {
        n,
        degree: q.degree,
        passed: elements.iter().all(|e| e.passed),
        half_split_passed: half.map(|_| half_ok),
        elements,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct O2DescentReport {
    pub degree: usize,
    pub n_max: usize,
    /// `γ + ¼(γ(β+β*) + (β+β*)γ) ∈ R_d`.
    pub rewriting_identity: bool,
    /// `β + β* + β*β + γ*γ ∈ R_d`, so `β + β* ∈ K₂`.
    pub k2_identity: bool,
    /// The identity as printed with a plus sign, `β + β* − (β*β + γ*γ) ∈ R_d`.
    pub printed_sign_identity: bool,
    /// `γ ∈ K_n` proved by induction for these `n`.
    pub certified: Vec<usize>,
    /// Independent check in the truncations `A/K_n`.
    pub truncation_agrees: Vec<bool>,
    pub certified_all: bool,
}

/// Follows the descent argument for `γ ∈ K_∞` on `O₂⁺ = SU_{−1}(2)`.
pub fn o2plus_descent_check(q: &BoundedQuotient, n_max: usize) -> Result<O2DescentReport> {
    let p = q.presentation.clone();
    if !p.name.starts_with("su_q2") || p.params.get("q").map(String::as_str) != Some("-1") {
        return Err(Error::WrongPresentation(format!("expected su_q2(q = -1), got {}", p.name)));
    }
    let g = NCPoly::gen(p.gen("gamma")?);
    let gs = NCPoly::gen(p.gen("gamma*")?);
    let beta = &NCPoly::gen(p.gen("alpha")?) - &NCPoly::one();
    let beta_s = &NCPoly::gen(p.gen("alpha*")?) - &NCPoly::one();
    let s = &beta + &beta_s;
    let quarter = NCPoly::constant(Scalar::ratio(1, 4));
    let rewriting = &g + &(&quarter * &(&(&g * &s) + &(&s * &g)));
    let k2_sum = &(&beta_s * &beta) + &(&gs * &g);
    let rewriting_identity = q.in_relation_span(&rewriting)?;
    let k2_identity = q.in_relation_span(&(&s + &k2_sum))?;
    let printed_sign_identity = q.in_relation_span(&(&s - &k2_sum))?;
    // γ ∈ K₁ since ε(γ) = 0; if γ ∈ K_n then γ = −¼(γ(β+β*) + (β+β*)γ) ∈ K_{n+2}
    let base = p.counit(&g)?.is_zero();
    let certified: Vec<usize> =
        if base && rewriting_identity && k2_identity { (1..=n_max).collect() } else { Vec::new() };
    let truncation_agrees =
        (1..=n_max).map(|n| q.truncation(n).map(|t| t.contains(&p, &g))).collect::<Result<Vec<_>>>()?;
    Ok(O2DescentReport {
        degree: q.degree,
        n_max,
        rewriting_identity,
        k2_identity,
        printed_sign_identity,
        certified_all: certified.len() == n_max,
        certified,
        truncation_agrees,
    })
}

/// The centered polynomial `x − ε(x)` as an ordinary polynomial.
pub fn centered(p: &HopfPresentation, x: &NCPoly) -> Result<NCPoly> {
    Ok(x - &NCPoly::constant(p.counit(x)?))
}

/// Converts a centered-coordinate polynomial back to generators.
pub fn uncenter(p: &HopfPresentation, x: &NCPoly) -> NCPoly {
    from_x(p, x)
}
