use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::Word;
use crate::exact::Scalar;

/// Targets of multiplicative extensions: anything with a product, a sum and a
/// scalar action.
pub trait Ring: Clone {
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
}

impl Ring for Scalar {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: &Scalar) -> Self {
        self * c
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Noncommutative polynomial: finite map word → nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Word::unit(), c)
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn gen(g: u32) -> Self {
        Self::word(Word::letter(g))
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        add_into(&mut self.terms, w, c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Largest word length; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Word::len)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NCPoly { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Linear extension of a word map.
    pub fn map_words(&self, mut f: impl FnMut(&Word) -> NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out = &out + &f(w).scale(c);
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }
}

impl Ring for NCPoly {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: &Scalar) -> Self {
        NCPoly::scale(self, c)
    }
}

impl Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn add(self, o: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn sub(self, o: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Mul<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn mul(self, o: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&-Scalar::one())
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(NCPoly);
owned_ops!(Tensor);

/// Finite sum of elementary tensors `w₁ ⊗ … ⊗ w_k` of fixed arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    arity: usize,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl Tensor {
    pub fn zero(arity: usize) -> Self {
        Tensor { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::elementary(vec![Word::unit(); arity], Scalar::one())
    }

    pub fn elementary(legs: Vec<Word>, c: Scalar) -> Self {
        let mut t = Self::zero(legs.len());
        t.add_term(legs, c);
        t
    }

    /// `p₁ ⊗ … ⊗ p_k`.
    pub fn product_of(legs: &[NCPoly]) -> Self {
        let mut acc = Tensor::one(0);
        for p in legs {
            let mut next = Tensor::zero(acc.arity + 1);
            for (ws, c) in &acc.terms {
                for (w, x) in p.terms() {
                    let mut k = ws.clone();
                    k.push(w.clone());
                    next.add_term(k, c * x);
                }
            }
            acc = next;
        }
        acc
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, legs: Vec<Word>, c: Scalar) {
        assert_eq!(legs.len(), self.arity, "tensor arity mismatch");
        add_into(&mut self.terms, legs, c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, legs: &[Word]) -> Scalar {
        self.terms.get(legs).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Tensor::zero(self.arity);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x * c);
        }
        out
    }

    /// Applies a linear map to leg `leg`, which becomes `f`'s output tensor legs.
    pub fn expand_leg(&self, leg: usize, mut f: impl FnMut(&Word) -> Tensor) -> Tensor {
        let mut out: Option<Tensor> = None;
        for (ws, c) in &self.terms {
            let img = f(&ws[leg]);
            let acc = out.get_or_insert_with(|| Tensor::zero(self.arity - 1 + img.arity));
            for (iw, x) in img.terms {
                let mut k: Vec<Word> = ws[..leg].to_vec();
                k.extend(iw);
                k.extend_from_slice(&ws[leg + 1..]);
                acc.add_term(k, c * &x);
            }
        }
        out.unwrap_or_else(|| Tensor::zero(self.arity))
    }

    /// Applies a scalar-valued functional to every leg and multiplies the results.
    pub fn contract(&self, mut f: impl FnMut(usize, &Word) -> Scalar) -> Scalar {
        let mut total = Scalar::zero();
        for (ws, c) in &self.terms {
            let mut v = c.clone();
            for (i, w) in ws.iter().enumerate() {
                if v.is_zero() {
                    break;
                }
                v = &v * &f(i, w);
            }
            total += v;
        }
        total
    }

    /// Multiplies all legs together.
    pub fn multiply_legs(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (ws, c) in &self.terms {
            let w = ws.iter().fold(Word::unit(), |a, b| a.concat(b));
            out.add_term(w, c.clone());
        }
        out
    }

    /// Largest total word length over terms.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|ws| ws.iter().map(Word::len).sum()).max().unwrap_or(0)
    }
}

impl Ring for Tensor {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: &Scalar) -> Self {
        Tensor::scale(self, c)
    }
}

impl Add<&Tensor> for &Tensor {
    type Output = Tensor;
    fn add(self, o: &Tensor) -> Tensor {
        assert_eq!(self.arity, o.arity, "tensor arity mismatch");
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Tensor> for &Tensor {
    type Output = Tensor;
    fn sub(self, o: &Tensor) -> Tensor {
        self + &(-o)
    }
}

/// Componentwise product `(a⊗b)(c⊗d) = ac⊗bd`.
impl Mul<&Tensor> for &Tensor {
    type Output = Tensor;
    fn mul(self, o: &Tensor) -> Tensor {
        assert_eq!(self.arity, o.arity, "tensor arity mismatch");
        let mut out = Tensor::zero(self.arity);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let k = a.iter().zip(b).map(|(u, v)| u.concat(v)).collect();
                out.add_term(k, x * y);
            }
        }
        out
    }
}

impl Neg for &Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        self.scale(&-Scalar::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: u32) -> NCPoly {
        NCPoly::gen(i)
    }

    #[test]
    fn multiply_examples() {
        let (a, b) = (g(0), g(1));
        assert_eq!(&NCPoly::one() * &a, a);
        let lhs = &(&a + &b) * &(&a - &b);
        let expect = NCPoly::from_terms([
            (Word(vec![0, 0]), Scalar::one()),
            (Word(vec![0, 1]), -Scalar::one()),
            (Word(vec![1, 0]), Scalar::one()),
            (Word(vec![1, 1]), -Scalar::one()),
        ]);
        assert_eq!(lhs, expect);
        let one = NCPoly::one();
        let centered = &(&g(0) - &one) * &(&g(1) - &one);
        let expect = &(&(&(&g(0) * &g(1)) - &g(0)) - &g(1)) + &one;
        assert_eq!(centered, expect);
    }

    #[test]
    fn tensor_product_is_componentwise() {
        let t = Tensor::product_of(&[g(0), g(1)]);
        let sq = &t * &t;
        assert_eq!(sq, Tensor::elementary(vec![Word(vec![0, 0]), Word(vec![1, 1])], Scalar::one()));
        assert_eq!(sq.multiply_legs(), NCPoly::word(Word(vec![0, 0, 1, 1])));
    }

    #[test]
    fn zero_coefficients_vanish() {
        let p = &g(0) - &g(0);
        assert!(p.is_zero());
        assert_eq!(p.degree(), 0);
    }
}
