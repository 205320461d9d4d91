//! Wick evaluation, generic over the value type so the solver can run the
//! same formulas on linear forms in unknown data.

use std::collections::{BTreeMap, HashMap};

use crate::exact::Scalar;
use crate::freestar::{NCPoly, Word};

/// Values a Gaussian functional can take: scalars, or linear forms in unknowns.
pub trait WickValue: Clone {
    fn zero() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
    fn is_zero(&self) -> bool;
}

impl WickValue for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn scale(&self, c: &Scalar) -> Self {
        self * c
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

/// Complex-linear combination of real unknowns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinForm(pub BTreeMap<usize, Scalar>);

impl LinForm {
    pub fn var(k: usize, c: Scalar) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(k, c);
        }
        LinForm(m)
    }

    pub fn conj(&self) -> Self {
        LinForm(self.0.iter().map(|(k, c)| (*k, c.conj())).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        self.0.iter().map(|(k, c)| c * &x[*k]).sum()
    }
}

impl WickValue for LinForm {
    fn zero() -> Self {
        LinForm::default()
    }
    fn add(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, c) in &o.0 {
            let e = m.entry(*k).or_default();
            *e += c;
            if e.is_zero() {
                m.remove(k);
            }
        }
        LinForm(m)
    }
    fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return LinForm::default();
        }
        LinForm(self.0.iter().map(|(k, x)| (*k, x * c)).collect())
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// The ingredients of a Gaussian functional on generators.
pub trait GaussianTables<V: WickValue> {
    fn eps(&self, g: u32) -> &Scalar;
    /// `φ(g)`.
    fn drift(&self, g: u32) -> V;
    /// `φ(ab)` for generators `a`, `b`.
    fn pair(&self, a: u32, b: u32) -> V;
}

/// Counit of all letters except those at the excluded positions.
struct RestCounit {
    eps: Vec<Scalar>,
    zeros: usize,
    nonzero_product: Scalar,
}

impl RestCounit {
    fn new(eps: Vec<Scalar>) -> Self {
        let zeros = eps.iter().filter(|e| e.is_zero()).count();
        let nonzero_product = eps.iter().filter(|e| !e.is_zero()).cloned().product();
        RestCounit { eps, zeros, nonzero_product }
    }

    fn without(&self, skip: &[usize]) -> Scalar {
        let skipped_zeros = skip.iter().filter(|&&i| self.eps[i].is_zero()).count();
        if self.zeros > skipped_zeros {
            return Scalar::zero();
        }
        let mut v = self.nonzero_product.clone();
        for &i in skip {
            if !self.eps[i].is_zero() {
                v = &v / &self.eps[i];
            }
        }
        v
    }
}

/// Closed form: `φ(a₁⋯aₙ) = Σ_{j<k} φ(a_j a_k) ε(rest) − (n−2) Σ_j φ(a_j) ε(rest)`.
pub fn wick_word<V: WickValue>(t: &impl GaussianTables<V>, w: &Word) -> V {
    let l = w.letters();
    match l.len() {
        0 => V::zero(),
        1 => t.drift(l[0]),
        2 => t.pair(l[0], l[1]),
        n => {
            let rest = RestCounit::new(l.iter().map(|&g| t.eps(g).clone()).collect());
            let mut acc = V::zero();
            for j in 0..n {
                for k in j + 1..n {
                    let e = rest.without(&[j, k]);
                    if !e.is_zero() {
                        acc = acc.add(&t.pair(l[j], l[k]).scale(&e));
                    }
                }
            }
            let m = Scalar::from_int(-(n as i64 - 2));
            for j in 0..n {
                let e = rest.without(&[j]);
                if !e.is_zero() {
                    acc = acc.add(&t.drift(l[j]).scale(&(&e * &m)));
                }
            }
            acc
        }
    }
}

pub fn wick_poly<V: WickValue>(t: &impl GaussianTables<V>, x: &NCPoly) -> V {
    let mut acc = V::zero();
    for (w, c) in x.terms() {
        acc = acc.add(&wick_word(t, w).scale(c));
    }
    acc
}

/// Independent evaluation through the three-point identity
/// `φ(abc) = φ(ab)ε(c) + φ(ac)ε(b) + φ(bc)ε(a) − φ(a)ε(bc) − φ(b)ε(ac) − φ(c)ε(ab)`,
/// collapsing the last two letters with `a` the remaining prefix.
pub struct RecursiveWick<'t, T> {
    tables: &'t T,
    memo: HashMap<Word, Scalar>,
}

impl<'t, T: GaussianTables<Scalar>> RecursiveWick<'t, T> {
    pub fn new(tables: &'t T) -> Self {
        RecursiveWick { tables, memo: HashMap::new() }
    }

    fn eps_word(&self, w: &[u32]) -> Scalar {
        w.iter().map(|&g| self.tables.eps(g).clone()).product()
    }

    pub fn word(&mut self, w: &Word) -> Scalar {
        let l = w.letters();
        match l.len() {
            0 => return Scalar::zero(),
            1 => return self.tables.drift(l[0]),
            2 => return self.tables.pair(l[0], l[1]),
            _ => {}
        }
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let n = l.len();
        let (a, b, c) = (&l[..n - 2], l[n - 2], l[n - 1]);
        let (eb, ec) = (self.tables.eps(b).clone(), self.tables.eps(c).clone());
        let ea = self.eps_word(a);
        let ab = Word([a, &[b]].concat());
        let ac = Word([a, &[c]].concat());
        let mut v = &self.word(&ab) * &ec;
        v += &self.word(&ac) * &eb;
        v += &self.tables.pair(b, c) * &ea;
        v -= &(&self.word(&Word(a.to_vec())) * &(&eb * &ec));
        v -= &(&self.tables.drift(b) * &(&ea * &ec));
        v -= &(&self.tables.drift(c) * &(&ea * &eb));
        self.memo.insert(w.clone(), v.clone());
        v
    }

    pub fn poly(&mut self, x: &NCPoly) -> Scalar {
        x.terms().map(|(w, c)| &self.word(w) * c).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One letter with ε = 1, φ(u) = d and φ(uu) = p.
    struct One {
        e: Scalar,
        d: Scalar,
        p: Scalar,
    }

    impl GaussianTables<Scalar> for One {
        fn eps(&self, _: u32) -> &Scalar {
            &self.e
        }
        fn drift(&self, _: u32) -> Scalar {
            self.d.clone()
        }
        fn pair(&self, _: u32, _: u32) -> Scalar {
            self.p.clone()
        }
    }

    #[test]
    fn powers_of_one_letter() {
        // heat datum on ℤ: φ(u) = −1/2, φ(u²) = −2, so φ(uⁿ) = −n²/2
        let t = One { e: Scalar::one(), d: Scalar::ratio(-1, 2), p: Scalar::from_int(-2) };
        let mut rec = RecursiveWick::new(&t);
        for n in 0..8usize {
            let w = Word(vec![0; n]);
            let expect = Scalar::ratio(-((n * n) as i64), 2);
            assert_eq!(wick_word(&t, &w), expect);
            assert_eq!(rec.word(&w), expect);
        }
    }

    #[test]
    fn zero_counit_kills_long_words() {
        let t = One { e: Scalar::zero(), d: Scalar::one(), p: Scalar::one() };
        assert_eq!(wick_word(&t, &Word(vec![0, 0, 0])), Scalar::zero());
        assert_eq!(RecursiveWick::new(&t).word(&Word(vec![0, 0, 0])), Scalar::zero());
    }
}
