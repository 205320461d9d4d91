use std::collections::BTreeMap;
use std::sync::Arc;

use super::wick::{self, GaussianTables, RecursiveWick};
use crate::error::{Error, Result};
use crate::exact::{Scalar, ScalarMatrix};
use crate::freestar::{derivation_coefficients, NCPoly};
use crate::hopf::HopfPresentation;

/// A Gaussian generating functional stored as finite data: the drift `φ(g)`
/// and the Gram matrix `G[a][b] = ⟨η(a), η(b)⟩` over the generators.
///
/// `G` is the Gram matrix of the cocycle values themselves, so it is
/// hermitian and positive semidefinite for genuine data. The pairing
/// `⟨η(a*), η(b)⟩` needed by the coboundary identity is derived from it
/// through the star table.
#[derive(Clone, Debug)]
pub struct GaussianDatum {
    pub name: String,
    pub presentation: Arc<HopfPresentation>,
    drift: Vec<Scalar>,
    gram: ScalarMatrix,
    /// `η(star(g))` as coefficients on the `η(h)`.
    eta_star: Vec<BTreeMap<u32, Scalar>>,
    /// `φ(ab)` on generator pairs.
    pairs: Vec<Vec<Scalar>>,
}

impl PartialEq for GaussianDatum {
    fn eq(&self, o: &Self) -> bool {
        self.name == o.name && *self.presentation == *o.presentation && self.drift == o.drift && self.gram == o.gram
    }
}

impl GaussianDatum {
    pub fn new(
        name: impl Into<String>,
        p: Arc<HopfPresentation>,
        drift: Vec<Scalar>,
        gram: ScalarMatrix,
    ) -> Result<Self> {
        let n = p.ngens();
        if drift.len() != n || gram.rows() != n || gram.cols() != n {
            return Err(Error::InvalidInput(format!("datum must have {n} drift values and an {n}x{n} Gram matrix")));
        }
        let eta_star = p
            .star_table
            .iter()
            .map(|s| derivation_coefficients(s, |g| Ok(p.counit_table[g as usize].clone())))
            .collect::<Result<Vec<_>>>()?;
        let mut d = GaussianDatum { name: name.into(), presentation: p, drift, gram, eta_star, pairs: Vec::new() };
        d.pairs = (0..n as u32).map(|a| (0..n as u32).map(|b| d.compute_pair(a, b)).collect()).collect();
        Ok(d)
    }

    pub fn zero(p: Arc<HopfPresentation>) -> Self {
        let n = p.ngens();
        Self::new("zero", p, vec![Scalar::zero(); n], ScalarMatrix::zeros(n, n)).expect("shapes match")
    }

    pub fn drift(&self) -> &[Scalar] {
        &self.drift
    }

    pub fn gram(&self) -> &ScalarMatrix {
        &self.gram
    }

    pub fn ngens(&self) -> usize {
        self.drift.len()
    }

    /// `⟨η(a*), η(b)⟩`.
    pub fn star_pairing(&self, a: u32, b: u32) -> Scalar {
        self.eta_star[a as usize].iter().map(|(c, l)| &l.conj() * &self.gram[(*c as usize, b as usize)]).sum()
    }

    fn compute_pair(&self, a: u32, b: u32) -> Scalar {
        let p = &self.presentation;
        let (ea, eb) = (&p.counit_table[a as usize], &p.counit_table[b as usize]);
        &(&(ea * &self.drift[b as usize]) + &(&self.drift[a as usize] * eb)) + &self.star_pairing(a, b)
    }

    /// `φ(ab) = ε(a)φ(b) + φ(a)ε(b) + ⟨η(a*), η(b)⟩`.
    pub fn pair_value(&self, a: u32, b: u32) -> Result<Scalar> {
        let n = self.ngens() as u32;
        if a >= n || b >= n {
            return Err(Error::UnknownGenerator(format!("#{}", a.max(b))));
        }
        Ok(self.pairs[a as usize][b as usize].clone())
    }

    fn check_poly(&self, x: &NCPoly) -> Result<()> {
        let n = self.ngens() as u32;
        match x.terms().flat_map(|(w, _)| w.letters().iter().copied()).find(|&g| g >= n) {
            Some(g) => Err(Error::UnknownGenerator(format!("#{g}"))),
            None => Ok(()),
        }
    }

    /// Closed-form Wick evaluation.
    pub fn wick_eval(&self, x: &NCPoly) -> Result<Scalar> {
        self.check_poly(x)?;
        Ok(wick::wick_poly(self, x))
    }

    /// Recursive three-point evaluation; an independent oracle for [`wick_eval`](Self::wick_eval).
    pub fn wick_eval_recursive(&self, x: &NCPoly) -> Result<Scalar> {
        self.check_poly(x)?;
        Ok(RecursiveWick::new(self).poly(x))
    }

    /// Coefficients of `η(x)` on the generator values `η(g)`.
    pub fn eta_coefficients(&self, x: &NCPoly) -> Result<BTreeMap<u32, Scalar>> {
        let p = &self.presentation;
        derivation_coefficients(x, |g| {
            p.counit_table.get(g as usize).cloned().ok_or_else(|| Error::UnknownGenerator(format!("#{g}")))
        })
    }

    /// `⟨η(x), η(y)⟩`.
    pub fn eta_inner(&self, x: &NCPoly, y: &NCPoly) -> Result<Scalar> {
        let cx = self.eta_coefficients(x)?;
        let cy = self.eta_coefficients(y)?;
        let mut s = Scalar::zero();
        for (a, u) in &cx {
            for (b, v) in &cy {
                s += &(&u.conj() * v) * &self.gram[(*a as usize, *b as usize)];
            }
        }
        Ok(s)
    }

    /// The `gaussian … { … }` text block.
    pub fn render(&self, algebra_name: &str) -> String {
        let p = &self.presentation;
        let mut out = format!("gaussian {} on {} {{\n", self.name, algebra_name);
        for (g, d) in self.drift.iter().enumerate() {
            if !d.is_zero() {
                out.push_str(&format!("  drift {} = {};\n", p.symbol(g as u32), d));
            }
        }
        for a in 0..self.ngens() {
            for b in a..self.ngens() {
                let v = &self.gram[(a, b)];
                if !v.is_zero() {
                    out.push_str(&format!("  gram ({}, {}) = {};\n", p.symbol(a as u32), p.symbol(b as u32), v));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

impl GaussianTables<Scalar> for GaussianDatum {
    fn eps(&self, g: u32) -> &Scalar {
        &self.presentation.counit_table[g as usize]
    }
    fn drift(&self, g: u32) -> Scalar {
        self.drift[g as usize].clone()
    }
    fn pair(&self, a: u32, b: u32) -> Scalar {
        self.pairs[a as usize][b as usize].clone()
    }
}

/// Builder used by the text format: `gram (a,b) = z` sets `G[a][b] = z` and
/// `G[b][a] = conj z`.
#[derive(Clone, Debug)]
pub struct DatumBuilder {
    pub name: String,
    pub presentation: Arc<HopfPresentation>,
    pub drift: Vec<Scalar>,
    pub gram: ScalarMatrix,
}

impl DatumBuilder {
    pub fn new(name: impl Into<String>, p: Arc<HopfPresentation>) -> Self {
        let n = p.ngens();
        DatumBuilder {
            name: name.into(),
            presentation: p,
            drift: vec![Scalar::zero(); n],
            gram: ScalarMatrix::zeros(n, n),
        }
    }

    pub fn drift(mut self, g: u32, v: Scalar) -> Self {
        self.drift[g as usize] = v;
        self
    }

    pub fn gram(mut self, a: u32, b: u32, v: Scalar) -> Self {
        self.gram[(b as usize, a as usize)] = v.conj();
        self.gram[(a as usize, b as usize)] = v;
        self
    }

    pub fn build(self) -> Result<GaussianDatum> {
        GaussianDatum::new(self.name, self.presentation, self.drift, self.gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freestar::Word;
    use crate::gaussian::examples;

    #[test]
    fn heat_pair_and_powers() {
        let d = examples::heat();
        let p = d.presentation.clone();
        let u = p.gen("u").unwrap();
        assert_eq!(d.pair_value(u, u).unwrap(), Scalar::from_int(-2));
        let u3 = NCPoly::word(Word(vec![u; 3]));
        assert_eq!(d.wick_eval(&u3).unwrap(), Scalar::ratio(-9, 2));
        let u4 = NCPoly::word(Word(vec![u; 4]));
        assert_eq!(d.wick_eval(&u4).unwrap(), Scalar::from_int(-8));
        assert_eq!(d.wick_eval_recursive(&u4).unwrap(), Scalar::from_int(-8));
        assert_eq!(d.wick_eval(&NCPoly::one()).unwrap(), Scalar::zero());
    }

    #[test]
    fn o2_plus_gram_term() {
        let p = Arc::new(crate::hopf::o_n_plus(2).unwrap());
        let u12 = p.gen("u(1,2)").unwrap();
        let d = DatumBuilder::new("d", p).gram(u12, u12, Scalar::one()).build().unwrap();
        assert_eq!(d.pair_value(u12, u12).unwrap(), Scalar::one());
    }

    #[test]
    fn zero_datum_pairs_vanish() {
        let d = GaussianDatum::zero(Arc::new(crate::hopf::su_q2(&crate::exact::rat(1, 2)).unwrap()));
        assert_eq!(d.pair_value(0, 2).unwrap(), Scalar::zero());
        assert!(d.pair_value(0, 9).is_err());
    }
}
