use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::truncation::Truncation;
use super::xcoords::{basis_cap, to_x, WordSpace};
use crate::error::{Error, Result};
use crate::exact::{Echelon, Scalar, SparseVec};
use crate::freestar::{NCPoly, Word};
use crate::hopf::HopfPresentation;

/// `R_d = span{x·r·y : deg ≤ d}` in centered coordinates.
#[derive(Debug)]
pub struct RelationSpan {
    pub space: WordSpace,
    pub echelon: Echelon<Scalar>,
}

impl RelationSpan {
    fn build(p: &HopfPresentation, d: usize, cap: usize) -> Result<Self> {
        let space = WordSpace::new(p.ngens(), d, cap)?;
        let mut echelon = Echelon::new();
        for r in &p.relations {
            let deg = r.degree();
            if deg > d {
                continue;
            }
            let rx = to_x(p, r, d);
            let slack = d - deg;
            let mults = Word::all_up_to(p.ngens() as u32, slack);
            for a in &mults {
                for b in mults.iter().filter(|b| a.len() + b.len() <= slack) {
                    let row: SparseVec<Scalar> = rx
                        .iter()
                        .map(|(w, c)| (space.index(&a.concat(w).concat(b)).expect("within degree"), c.clone()))
                        .collect();
                    echelon.insert(row);
                }
            }
        }
        Ok(RelationSpan { space, echelon })
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Dimension of the image of `K_n ∩ deg ≤ d`: the words of X-length in
    /// `n..=d` plus the part of `R_d` they absorb.
    pub fn kn_dimension(&self, n: usize) -> usize {
        let long = self.space.count_of_length(n, self.space.max_len());
        let mut proj = Echelon::<Scalar>::new();
        for (_, row) in self.echelon.rows() {
            let short: SparseVec<Scalar> =
                row.iter().filter(|(k, _)| self.space.word(**k).len() < n).map(|(k, c)| (*k, c.clone())).collect();
            if !short.is_empty() {
                proj.insert(short);
            }
        }
        long + proj.rank() - self.rank()
    }
}

/// Degree-bounded view of a presented algebra. The relation span is built on
/// first use, so cheap queries (exact `K_n` membership through truncations)
/// work even when the full word basis is beyond the cap.
pub struct BoundedQuotient {
    pub presentation: Arc<HopfPresentation>,
    pub degree: usize,
    pub cap: usize,
    span: OnceLock<std::result::Result<Arc<RelationSpan>, Error>>,
    truncations: Mutex<HashMap<usize, Arc<Truncation>>>,
}

impl std::fmt::Debug for BoundedQuotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BoundedQuotient")
            .field("presentation", &self.presentation.name)
            .field("degree", &self.degree)
            .field("cap", &self.cap)
            .finish()
    }
}

impl BoundedQuotient {
    pub fn new(p: Arc<HopfPresentation>, degree: usize) -> Result<Self> {
        Self::with_cap(p, degree, basis_cap())
    }

    pub fn with_cap(p: Arc<HopfPresentation>, degree: usize, cap: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("degree bound must be at least 1".into()));
        }
        Ok(BoundedQuotient {
            presentation: p,
            degree,
            cap,
            span: OnceLock::new(),
            truncations: Mutex::new(HashMap::new()),
        })
    }

    /// Builds the quotient eagerly, failing if the word basis exceeds the cap.
    pub fn build(p: Arc<HopfPresentation>, degree: usize) -> Result<Self> {
        let q = Self::new(p, degree)?;
        q.relation_span()?;
        Ok(q)
    }

    pub fn relation_span(&self) -> Result<Arc<RelationSpan>> {
        self.span.get_or_init(|| RelationSpan::build(&self.presentation, self.degree, self.cap).map(Arc::new)).clone()
    }

    pub fn word_count(&self) -> usize {
        super::xcoords::count_words(self.presentation.ngens(), self.degree)
    }

    pub fn dimension(&self) -> Result<usize> {
        let s = self.relation_span()?;
        Ok(s.space.len() - s.rank())
    }

    fn check_degree(&self, x: &NCPoly) -> Result<()> {
        if x.degree() > self.degree {
            return Err(Error::DegreeOverflow { degree: x.degree(), bound: self.degree });
        }
        Ok(())
    }

    pub fn coordinates(&self, x: &NCPoly) -> Result<SparseVec<Scalar>> {
        self.check_degree(x)?;
        let s = self.relation_span()?;
        Ok(s.space.vector(&to_x(&self.presentation, x, self.degree)))
    }

    /// `x ∈ R_d`.
    pub fn in_relation_span(&self, x: &NCPoly) -> Result<bool> {
        let v = self.coordinates(x)?;
        Ok(self.relation_span()?.echelon.contains(v))
    }

    /// Canonical representative modulo `R_d`, in centered words.
    pub fn normal_form(&self, x: &NCPoly) -> Result<NCPoly> {
        let v = self.coordinates(x)?;
        let s = self.relation_span()?;
        Ok(s.space.poly(&s.echelon.reduce(v)))
    }

    /// The exact truncation `A/K_n`, cached.
    pub fn truncation(&self, n: usize) -> Result<Arc<Truncation>> {
        if let Some(t) = self.truncations.lock().unwrap().get(&n) {
            return Ok(t.clone());
        }
        let t = Arc::new(Truncation::build(&self.presentation, n, self.cap)?);
        self.truncations.lock().unwrap().insert(n, t.clone());
        Ok(t)
    }
}
