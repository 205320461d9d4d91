use std::collections::{BTreeMap, VecDeque};

use super::xcoords::{to_x, WordSpace};
use crate::error::{Error, Result};
use crate::exact::{Echelon, Scalar};
use crate::freestar::{NCPoly, Word};
use crate::hopf::HopfPresentation;

/// The image of the relation ideal in `ℂ⟨X⟩/(X)ⁿ`.
///
/// `K_n` of the quotient algebra is the image of `(X)ⁿ`, so `x ∈ K_n` exactly
/// when the truncation of `x` lies in this image. The image is computed by
/// closing the truncated relations under left and right multiplication by
/// the `X_g`, which terminates because the truncated algebra is finite
/// dimensional.
#[derive(Debug)]
pub struct Truncation {
    pub n: usize,
    space: WordSpace,
    ideal: Echelon<Scalar>,
}

impl Truncation {
    pub fn build(p: &HopfPresentation, n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("K_n needs n >= 1".into()));
        }
        let space = WordSpace::new(p.ngens(), n - 1, cap)?;
        let mut ideal = Echelon::new();
        let mut queue: VecDeque<_> = p.relations.iter().map(|r| space.vector(&to_x(p, r, n - 1))).collect();
        while let Some(v) = queue.pop_front() {
            if v.is_empty() || ideal.insert_reduced(v.clone()).is_none() {
                continue;
            }
            for g in p.alphabet.ids() {
                queue.push_back(space.multiply(&v, g, true));
                queue.push_back(space.multiply(&v, g, false));
            }
        }
        Ok(Truncation { n, space, ideal })
    }

    /// `dim A/K_n`.
    pub fn quotient_dimension(&self) -> usize {
        self.space.len() - self.ideal.rank()
    }

    pub fn contains(&self, p: &HopfPresentation, x: &NCPoly) -> bool {
        self.contains_x(&to_x(p, x, self.n - 1))
    }

    pub fn contains_x(&self, x: &BTreeMap<Word, Scalar>) -> bool {
        self.ideal.contains(self.space.vector(x))
    }

    /// Normal form of `x` modulo `K_n`, as an X-polynomial in short words.
    pub fn normal_form(&self, p: &HopfPresentation, x: &NCPoly) -> NCPoly {
        self.space.poly(&self.ideal.reduce(self.space.vector(&to_x(p, x, self.n - 1))))
    }
}
