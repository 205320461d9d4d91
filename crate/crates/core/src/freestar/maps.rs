//! Extensions of generator tables to whole polynomials.

use std::collections::BTreeMap;

use super::{NCPoly, Ring, Word};
use crate::error::Result;
use crate::exact::Scalar;

/// How a generator table extends to words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionMode {
    Homomorphic,
    Antihomomorphic,
}

fn extend_word<T: Ring>(w: &Word, one: &T, mode: ExtensionMode, table: &mut impl FnMut(u32) -> Result<T>) -> Result<T> {
    let mut acc = one.clone();
    let letters: Box<dyn Iterator<Item = &u32>> = match mode {
        ExtensionMode::Homomorphic => Box::new(w.letters().iter()),
        ExtensionMode::Antihomomorphic => Box::new(w.letters().iter().rev()),
    };
    for &g in letters {
        acc = acc.mul(&table(g)?);
    }
    Ok(acc)
}

/// Linear extension of a multiplicative (or order-reversing) generator table.
/// `zero` and `one` are the additive and multiplicative units of the target.
pub fn extend<T: Ring>(
    p: &NCPoly,
    zero: T,
    one: T,
    mode: ExtensionMode,
    mut table: impl FnMut(u32) -> Result<T>,
) -> Result<T> {
    let mut out = zero;
    for (w, c) in p.terms() {
        out = out.add(&extend_word(w, &one, mode, &mut table)?.scale(c));
    }
    Ok(out)
}

pub fn extend_hom<T: Ring>(p: &NCPoly, zero: T, one: T, table: impl FnMut(u32) -> Result<T>) -> Result<T> {
    extend(p, zero, one, ExtensionMode::Homomorphic, table)
}

pub fn extend_antihom<T: Ring>(p: &NCPoly, zero: T, one: T, table: impl FnMut(u32) -> Result<T>) -> Result<T> {
    extend(p, zero, one, ExtensionMode::Antihomomorphic, table)
}

/// Antilinear, antimultiplicative extension of a star table.
pub fn star(p: &NCPoly, mut table: impl FnMut(u32) -> Result<NCPoly>) -> Result<NCPoly> {
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        let img = extend_word(w, &NCPoly::one(), ExtensionMode::Antihomomorphic, &mut table)?;
        out = &out + &img.scale(&c.conj());
    }
    Ok(out)
}

/// Leibniz extension at a character: `η(w) = Σ_k ε(w₁…w_{k−1}) η(w_k) ε(w_{k+1}…)`.
///
/// Returned as coefficients on the generator values `η(g)`; combine them with
/// any vector representation of `η`.
pub fn derivation_coefficients(
    p: &NCPoly,
    mut eps: impl FnMut(u32) -> Result<Scalar>,
) -> Result<BTreeMap<u32, Scalar>> {
    let mut out: BTreeMap<u32, Scalar> = BTreeMap::new();
    for (w, c) in p.terms() {
        let e: Vec<Scalar> = w.letters().iter().map(|&g| eps(g)).collect::<Result<_>>()?;
        let n = e.len();
        // prefix[k] = ε(w₁…w_k), suffix[k] = ε(w_{k+1}…w_n)
        let mut prefix = vec![Scalar::one(); n + 1];
        let mut suffix = vec![Scalar::one(); n + 1];
        for k in 0..n {
            prefix[k + 1] = &prefix[k] * &e[k];
            suffix[n - k - 1] = &suffix[n - k] * &e[n - k - 1];
        }
        for (k, &g) in w.letters().iter().enumerate() {
            let weight = &(&prefix[k] * &suffix[k + 1]) * c;
            if !weight.is_zero() {
                *out.entry(g).or_default() += weight;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Derivation-at-ε with scalar-valued `η`.
pub fn derivation(
    p: &NCPoly,
    eps: impl FnMut(u32) -> Result<Scalar>,
    mut eta: impl FnMut(u32) -> Result<Scalar>,
) -> Result<Scalar> {
    let mut total = Scalar::zero();
    for (g, c) in derivation_coefficients(p, eps)? {
        total += &c * &eta(g)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn ok<T>(x: T) -> Result<T> {
        Ok(x)
    }

    #[test]
    fn counit_is_multiplicative() {
        // ε(α)=1, ε(γ)=0 on the word αγ
        let p = NCPoly::word(Word(vec![0, 1]));
        let e = extend_hom(&p, Scalar::zero(), Scalar::one(), |g| ok(Scalar::from_int(if g == 0 { 1 } else { 0 })));
        assert_eq!(e.unwrap(), Scalar::zero());
    }

    #[test]
    fn leibniz_on_cube() {
        let p = NCPoly::word(Word(vec![0, 0, 0]));
        let v = derivation(&p, |_| ok(Scalar::one()), |_| ok(Scalar::one())).unwrap();
        assert_eq!(v, Scalar::from_int(3));
    }

    #[test]
    fn antipode_reverses() {
        // S(g) = g⁻¹ (letter 2), S(h) = h⁻¹ (letter 3)
        let p = NCPoly::word(Word(vec![0, 1]));
        let s = extend_antihom(&p, NCPoly::zero(), NCPoly::one(), |g| ok(NCPoly::gen(g + 2))).unwrap();
        assert_eq!(s, NCPoly::word(Word(vec![3, 2])));
    }

    #[test]
    fn star_is_antilinear() {
        // a, b self-adjoint
        let p = NCPoly::term(Word(vec![0, 1]), Scalar::i());
        let s = star(&p, |g| ok(NCPoly::gen(g))).unwrap();
        assert_eq!(s, NCPoly::term(Word(vec![1, 0]), -Scalar::i()));
    }

    #[test]
    fn missing_entry_is_an_error() {
        let p = NCPoly::gen(7);
        let r =
            extend_hom(&p, Scalar::zero(), Scalar::one(), |g| Err::<Scalar, _>(Error::UnknownGenerator(g.to_string())));
        assert!(r.is_err());
    }
}
