use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::freestar::{NCPoly, Word};
use crate::gaussian::GaussianDatum;
use crate::hopf::HopfPresentation;

/// A linear functional on the free algebra over a presentation.
#[derive(Clone, Debug)]
pub enum Functional {
    /// Evaluated through the Wick formula; explicit drifts are data with zero Gram.
    Gaussian(Arc<GaussianDatum>),
    /// Values on a finite set of words; any other word is an error.
    Table {
        presentation: Arc<HopfPresentation>,
        values: BTreeMap<Word, Scalar>,
    },
    Counit(Arc<HopfPresentation>),
}

impl Functional {
    pub fn gaussian(d: GaussianDatum) -> Self {
        Functional::Gaussian(Arc::new(d))
    }

    pub fn presentation(&self) -> &Arc<HopfPresentation> {
        match self {
            Functional::Gaussian(d) => &d.presentation,
            Functional::Table { presentation, .. } | Functional::Counit(presentation) => presentation,
        }
    }

    pub fn eval_word(&self, w: &Word) -> Result<Scalar> {
        match self {
            Functional::Gaussian(d) => d.wick_eval(&NCPoly::word(w.clone())),
            Functional::Table { presentation, values } => values
                .get(w)
                .cloned()
                .ok_or_else(|| Error::InvalidInput(format!("no table value for `{}`", presentation.render_word(w)))),
            Functional::Counit(p) => Ok(p.counit_word(w)),
        }
    }

    pub fn eval(&self, x: &NCPoly) -> Result<Scalar> {
        x.terms().map(|(w, c)| Ok(&self.eval_word(w)? * c)).sum()
    }
}
