use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::freestar::{self, text, Alphabet, Decoration, GeneratorSymbol, NCPoly, Tensor, Word};

/// Matrix corepresentation `u = (u_ij)` with the diagonal of its `Q` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corepresentation {
    pub coeffs: Vec<Vec<NCPoly>>,
    pub q_eigenvalues: Vec<BigRational>,
}

impl Corepresentation {
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// `Σ q_i = Σ 1/q_i`.
    pub fn trace_balanced(&self) -> bool {
        let s: BigRational = self.q_eigenvalues.iter().cloned().sum();
        let t: BigRational = self.q_eigenvalues.iter().map(|q| q.recip()).sum();
        s == t
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        if self.coeffs.iter().any(|r| r.len() != n) || self.q_eigenvalues.len() != n {
            return Err(Error::InvalidInput("corepresentation is not square".into()));
        }
        if self.q_eigenvalues.iter().any(|q| !q.is_positive()) {
            return Err(Error::InvalidInput("Q eigenvalues must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    Counit,
    Coproduct,
    Antipode,
    Star,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureValue {
    Scalar(Scalar),
    Tensor(Tensor),
    Poly(NCPoly),
}

/// A Hopf *-algebra given by generators, structure tables and relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfPresentation {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub alphabet: Alphabet,
    pub star_table: Vec<NCPoly>,
    pub counit_table: Vec<Scalar>,
    pub coproduct_table: Vec<Tensor>,
    pub antipode_table: Vec<NCPoly>,
    pub relations: Vec<NCPoly>,
    pub corep: Option<Corepresentation>,
    /// The catalogue knows a normal form for this algebra.
    pub trusted_normal_form: bool,
    pub notes: Vec<String>,
}

impl HopfPresentation {
    /// Empty tables over the given generators; every table entry defaults to
    /// the trivial choice (`g* = g`, `ε = 0`, `Δ g = 0`, `S g = 0`).
    pub fn new(name: impl Into<String>, alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        HopfPresentation {
            name: name.into(),
            params: BTreeMap::new(),
            star_table: (0..n as u32).map(NCPoly::gen).collect(),
            counit_table: vec![Scalar::zero(); n],
            coproduct_table: vec![Tensor::zero(2); n],
            antipode_table: vec![NCPoly::zero(); n],
            relations: Vec::new(),
            corep: None,
            trusted_normal_form: false,
            notes: Vec::new(),
            alphabet,
        }
    }

    pub fn ngens(&self) -> usize {
        self.alphabet.len()
    }

    pub fn gen(&self, text: &str) -> Result<u32> {
        self.alphabet.by_name(text)
    }

    pub fn symbol(&self, g: u32) -> &GeneratorSymbol {
        self.alphabet.symbol(g)
    }

    fn check(&self, g: u32) -> Result<usize> {
        if (g as usize) < self.ngens() {
            Ok(g as usize)
        } else {
            Err(Error::UnknownGenerator(format!("#{g}")))
        }
    }

    /// Symbol lookup with fallbacks: `g*` through the star table and `g^-1`
    /// through the antipode, when those are not generators themselves.
    pub fn resolve(&self, s: &GeneratorSymbol) -> Option<NCPoly> {
        if let Some(g) = self.alphabet.lookup(s) {
            return Some(NCPoly::gen(g));
        }
        let base = self.alphabet.lookup(&s.undecorated())? as usize;
        match s.decoration {
            Decoration::Star => Some(self.star_table[base].clone()),
            Decoration::Inverse => Some(self.antipode_table[base].clone()),
            Decoration::None => None,
        }
    }

    pub fn parse_poly(&self, src: &str) -> Result<NCPoly> {
        let mut cur = text::Cursor::new(src);
        let p = text::parse_poly(&mut cur, &|s| self.resolve(s))?;
        if !cur.at_end() {
            return Err(cur.expected(&["+", "-", "."]));
        }
        Ok(p)
    }

    pub fn render(&self, p: &NCPoly) -> String {
        text::render_poly(&self.alphabet, p)
    }

    pub fn render_word(&self, w: &Word) -> String {
        text::render_word(&self.alphabet, w)
    }

    pub fn render_tensor(&self, t: &Tensor) -> String {
        text::render_tensor(&self.alphabet, t)
    }

    pub fn counit_word(&self, w: &Word) -> Scalar {
        let mut acc = Scalar::one();
        for &g in w.letters() {
            let e = &self.counit_table[g as usize];
            if e.is_zero() {
                return Scalar::zero();
            }
            acc = &acc * e;
        }
        acc
    }

    pub fn counit(&self, x: &NCPoly) -> Result<Scalar> {
        freestar::extend_hom(x, Scalar::zero(), Scalar::one(), |g| Ok(self.counit_table[self.check(g)?].clone()))
    }

    pub fn coproduct(&self, x: &NCPoly) -> Result<Tensor> {
        freestar::extend_hom(x, Tensor::zero(2), Tensor::one(2), |g| Ok(self.coproduct_table[self.check(g)?].clone()))
    }

    pub fn coproduct_word(&self, w: &Word) -> Tensor {
        w.letters().iter().fold(Tensor::one(2), |acc, &g| &acc * &self.coproduct_table[g as usize])
    }

    pub fn antipode(&self, x: &NCPoly) -> Result<NCPoly> {
        freestar::extend_antihom(x, NCPoly::zero(), NCPoly::one(), |g| Ok(self.antipode_table[self.check(g)?].clone()))
    }

    pub fn star(&self, x: &NCPoly) -> Result<NCPoly> {
        freestar::star(x, |g| Ok(self.star_table[self.check(g)?].clone()))
    }

    pub fn structure_map(&self, kind: StructureKind, x: &NCPoly) -> Result<StructureValue> {
        Ok(match kind {
            StructureKind::Counit => StructureValue::Scalar(self.counit(x)?),
            StructureKind::Coproduct => StructureValue::Tensor(self.coproduct(x)?),
            StructureKind::Antipode => StructureValue::Poly(self.antipode(x)?),
            StructureKind::Star => StructureValue::Poly(self.star(x)?),
        })
    }

    /// `Δ^{(n)}`: the `n`-fold coproduct, always expanding the last leg.
    pub fn iterated_coproduct(&self, x: &NCPoly, n: usize) -> Result<Tensor> {
        if n == 0 {
            return Err(Error::InvalidInput("iterated coproduct needs n >= 1".into()));
        }
        let mut t = Tensor::product_of(std::slice::from_ref(x));
        for _ in 1..n {
            let last = t.arity() - 1;
            t = t.expand_leg(last, |w| self.coproduct_word(w));
        }
        Ok(t)
    }

    /// Same as [`iterated_coproduct`](Self::iterated_coproduct) but expanding the first leg.
    pub fn iterated_coproduct_left(&self, x: &NCPoly, n: usize) -> Result<Tensor> {
        if n == 0 {
            return Err(Error::InvalidInput("iterated coproduct needs n >= 1".into()));
        }
        let mut t = Tensor::product_of(std::slice::from_ref(x));
        for _ in 1..n {
            t = t.expand_leg(0, |w| self.coproduct_word(w));
        }
        Ok(t)
    }

    /// `star(g)` as a linear combination of generators, when it is one.
    pub fn star_linear(&self, g: u32) -> Option<Vec<(u32, Scalar)>> {
        let p = &self.star_table[g as usize];
        p.terms().map(|(w, c)| (w.len() == 1).then(|| (w.letters()[0], c.clone()))).collect()
    }

    pub fn max_relation_degree(&self) -> usize {
        self.relations.iter().map(NCPoly::degree).max().unwrap_or(0)
    }

    /// Relations whose counit is not zero.
    pub fn counit_violations(&self) -> Vec<usize> {
        self.relations
            .iter()
            .enumerate()
            .filter(|(_, r)| !self.counit(r).map(|e| e.is_zero()).unwrap_or(false))
            .map(|(i, _)| i)
            .collect()
    }

    /// Checks table sizes and that the star table is an involution on the free algebra.
    pub fn validate(&self) -> Result<()> {
        let n = self.ngens();
        if self.star_table.len() != n
            || self.counit_table.len() != n
            || self.coproduct_table.len() != n
            || self.antipode_table.len() != n
        {
            return Err(Error::InvalidInput("structure tables do not cover the generators".into()));
        }
        for g in self.alphabet.ids() {
            let back = self.star(&self.star_table[g as usize])?;
            if back != NCPoly::gen(g) {
                return Err(Error::InvalidInput(format!("star table is not an involution at `{}`", self.symbol(g))));
            }
        }
        if let Some(c) = &self.corep {
            c.validate()?;
        }
        Ok(())
    }
}

pub fn q_ratio(c: &Corepresentation, i: usize, j: usize) -> BigRational {
    &c.q_eigenvalues[i] / &c.q_eigenvalues[j]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> HopfPresentation {
        let a = Alphabet::from_symbols([GeneratorSymbol::plain("g"), GeneratorSymbol::plain("g").inverse()]).unwrap();
        let mut p = HopfPresentation::new("Z", a);
        p.star_table = vec![NCPoly::gen(1), NCPoly::gen(0)];
        p.counit_table = vec![Scalar::one(), Scalar::one()];
        p.coproduct_table = (0..2).map(|g| Tensor::product_of(&[NCPoly::gen(g), NCPoly::gen(g)])).collect();
        p.antipode_table = vec![NCPoly::gen(1), NCPoly::gen(0)];
        p
    }

    #[test]
    fn group_like_coproduct() {
        let p = tiny();
        p.validate().unwrap();
        let g = NCPoly::gen(0);
        assert_eq!(p.coproduct(&g).unwrap(), Tensor::product_of(&[g.clone(), g.clone()]));
        let t3 = p.iterated_coproduct(&g, 3).unwrap();
        assert_eq!(t3, Tensor::product_of(&[g.clone(), g.clone(), g.clone()]));
        assert_eq!(p.iterated_coproduct(&g, 1).unwrap().arity(), 1);
    }

    #[test]
    fn resolve_fallbacks() {
        let p = tiny();
        assert_eq!(p.parse_poly("g*").unwrap(), NCPoly::gen(1));
        assert_eq!(p.parse_poly("g^-1.g").unwrap(), NCPoly::word(Word(vec![1, 0])));
        assert!(p.parse_poly("h").is_err());
    }
}
