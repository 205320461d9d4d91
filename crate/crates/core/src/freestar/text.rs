//! Text form of polynomials and tensors, and the character cursor shared with
//! the command-line grammar.
//!
//! Letters are joined with `.`, coefficients precede words with `*`, tensor
//! legs are separated by `(x)`. A `*` written directly after a generator
//! (no space) is the star decoration; `g^-1` names the inverse generator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Alphabet, Decoration, GeneratorSymbol, NCPoly, Tensor, Word};
use crate::error::{Error, Result};
use crate::exact::Scalar;

pub struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn set_pos(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn line_col(&self, pos: usize) -> (usize, usize) {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, col)
    }

    pub fn error_at(&self, pos: usize, msg: impl Into<String>) -> Error {
        let (line, col) = self.line_col(pos);
        Error::Parse { line, col, msg: msg.into() }
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        self.error_at(self.pos, msg)
    }

    pub fn expected(&self, what: &[&str]) -> Error {
        let found = match self.peek_raw() {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        };
        let list: Vec<String> = what.iter().map(|w| format!("`{w}`")).collect();
        self.error(format!("expected one of {}, found {found}", list.join(", ")))
    }

    /// Skips whitespace and `#` or `//` line comments.
    pub fn skip_ws(&mut self) {
        loop {
            let r = self.rest();
            let trimmed = r.trim_start();
            self.pos += r.len() - trimmed.len();
            if trimmed.starts_with('#') || trimmed.starts_with("//") {
                self.pos += trimmed.find('\n').unwrap_or(trimmed.len());
            } else {
                break;
            }
        }
    }

    pub fn peek_raw(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek_raw()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    /// Consumes `lit` after whitespace if present.
    pub fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.expected(&[lit]))
        }
    }

    /// Consumes keyword `kw` only when it is not the prefix of a longer identifier.
    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let r = self.rest();
        if r.starts_with(kw) && !r[kw.len()..].starts_with(is_ident_char) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    pub fn peek_ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let r = self.rest();
        if !r.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
            return None;
        }
        let end = r.find(|c: char| !is_ident_char(c)).unwrap_or(r.len());
        Some(&r[..end])
    }

    pub fn ident(&mut self) -> Result<String> {
        match self.peek_ident() {
            Some(s) => {
                self.pos += s.len();
                Ok(s.to_string())
            }
            None => Err(self.expected(&["identifier"])),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let r = self.rest();
        let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
        if end == 0 {
            return None;
        }
        self.pos += end;
        Some(&r[..end])
    }

    pub fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat("-");
        self.skip_ws();
        let d = self.digits().ok_or_else(|| self.expected(&["integer"]))?;
        let v: i64 = d.parse().map_err(|_| self.error_at(start, "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    /// Unsigned `n` or `n/d`, no whitespace inside.
    fn unsigned_rational(&mut self) -> Option<BigRational> {
        let start = self.pos;
        let n: BigInt = self.digits()?.parse().ok()?;
        if self.rest().starts_with('/') && self.rest()[1..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
            let d: BigInt = self.digits()?.parse().ok()?;
            if d.is_zero() {
                self.pos = start;
                return None;
            }
            return Some(BigRational::new(n, d));
        }
        Some(BigRational::from_integer(n))
    }

    pub fn rational(&mut self) -> Result<BigRational> {
        self.skip_ws();
        let neg = self.eat("-");
        self.skip_ws();
        let r = self.unsigned_rational().ok_or_else(|| self.expected(&["rational"]))?;
        Ok(if neg { -r } else { r })
    }

    /// Unsigned literal: `3/4`, `3/4i`, `i`.
    fn scalar_literal(&mut self) -> Option<Scalar> {
        if let Some(r) = self.unsigned_rational() {
            if self.rest().starts_with('i') && !self.rest()[1..].starts_with(is_ident_char) {
                self.pos += 1;
                return Some(Scalar::new(BigRational::zero(), r));
            }
            return Some(Scalar::real(r));
        }
        if self.rest().starts_with('i') && !self.rest()[1..].starts_with(is_ident_char) {
            self.pos += 1;
            return Some(Scalar::i());
        }
        None
    }

    /// A scalar: `-3/4`, `1/2i`, `(1/2 + 3/4i)`, `(1 - i)`.
    pub fn scalar(&mut self) -> Result<Scalar> {
        let start = self.pos;
        let p = parse_poly(self, &|_| None)?;
        if p.degree() > 0 {
            return Err(self.error_at(start, "expected a scalar"));
        }
        Ok(p.coeff(&Word::unit()))
    }

    /// A generator symbol: `name`, `name(i,j)`, optionally followed (without
    /// space) by `*` or `^-1`.
    pub fn symbol(&mut self) -> Result<GeneratorSymbol> {
        let name = self.ident()?;
        let mut s = GeneratorSymbol::plain(name);
        if self.rest().starts_with('(') && !self.rest().starts_with("(x)") {
            self.pos += 1;
            loop {
                s.indices.push(self.integer()?);
                if self.eat(")") {
                    break;
                }
                if !self.eat(",") {
                    return Err(self.expected(&[",", ")"]));
                }
            }
        }
        if self.rest().starts_with('*') {
            self.pos += 1;
            s.decoration = Decoration::Star;
        } else if self.rest().starts_with("^-1") && !self.rest()[3..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 3;
            s.decoration = Decoration::Inverse;
        }
        Ok(s)
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Maps a symbol to its polynomial value, or `None` when unknown.
pub type Resolver<'r> = dyn Fn(&GeneratorSymbol) -> Option<NCPoly> + 'r;

pub fn alphabet_resolver(a: &Alphabet) -> impl Fn(&GeneratorSymbol) -> Option<NCPoly> + '_ {
    move |s| a.lookup(s).map(NCPoly::gen)
}

enum Atom {
    Value(NCPoly),
    Symbol(GeneratorSymbol, usize),
}

fn resolve(cur: &Cursor, r: &Resolver, s: &GeneratorSymbol, at: usize) -> Result<NCPoly> {
    r(s).ok_or_else(|| {
        let (line, col) = cur.line_col(at);
        Error::Parse { line, col, msg: format!("unknown generator `{s}`") }
    })
}

fn atom(cur: &mut Cursor, r: &Resolver) -> Result<Atom> {
    cur.skip_ws();
    let at = cur.pos();
    if let Some(s) = cur.scalar_literal() {
        return Ok(Atom::Value(NCPoly::constant(s)));
    }
    if cur.rest().starts_with('(') {
        cur.bump();
        let p = parse_poly(cur, r)?;
        cur.expect(")")?;
        return Ok(Atom::Value(p));
    }
    if cur.peek_ident().is_some() {
        return Ok(Atom::Symbol(cur.symbol()?, at));
    }
    Err(cur.expected(&["scalar", "generator", "("]))
}

fn factor(cur: &mut Cursor, r: &Resolver) -> Result<NCPoly> {
    let a = atom(cur, r)?;
    let save = cur.pos();
    if cur.eat("^") {
        let k = cur.integer()?;
        if k < 0 {
            return match a {
                Atom::Symbol(s, at) if s.decoration == Decoration::None => {
                    Ok(resolve(cur, r, &s.inverse(), at)?.pow(k.unsigned_abs() as u32))
                }
                _ => Err(cur.error_at(save, "negative exponent needs a plain generator")),
            };
        }
        let base = match a {
            Atom::Value(p) => p,
            Atom::Symbol(s, at) => resolve(cur, r, &s, at)?,
        };
        return Ok(base.pow(k as u32));
    }
    match a {
        Atom::Value(p) => Ok(p),
        Atom::Symbol(s, at) => resolve(cur, r, &s, at),
    }
}

fn product(cur: &mut Cursor, r: &Resolver) -> Result<NCPoly> {
    let mut acc = factor(cur, r)?;
    loop {
        cur.skip_ws();
        let rest = cur.rest();
        if rest.starts_with('.') || (rest.starts_with('*') && !rest.starts_with("**")) {
            cur.bump();
            acc = &acc * &factor(cur, r)?;
        } else {
            return Ok(acc);
        }
    }
}

fn leading_sign(cur: &mut Cursor) -> Scalar {
    if cur.eat("-") {
        -Scalar::one()
    } else {
        cur.eat("+");
        Scalar::one()
    }
}

fn next_sign(cur: &mut Cursor) -> Option<Scalar> {
    if cur.eat("+") {
        Some(Scalar::one())
    } else if cur.rest().starts_with("->") {
        None
    } else if cur.eat("-") {
        Some(-Scalar::one())
    } else {
        None
    }
}

pub fn parse_poly(cur: &mut Cursor, r: &Resolver) -> Result<NCPoly> {
    let mut sign = leading_sign(cur);
    let mut acc = NCPoly::zero();
    loop {
        acc = &acc + &product(cur, r)?.scale(&sign);
        match next_sign(cur) {
            Some(s) => sign = s,
            None => return Ok(acc),
        }
    }
}

/// Sum of `p₁ (x) … (x) p_k` terms; every term must have the same number of legs.
pub fn parse_tensor(cur: &mut Cursor, r: &Resolver) -> Result<Tensor> {
    let mut sign = leading_sign(cur);
    let mut acc: Option<Tensor> = None;
    loop {
        let start = cur.pos();
        let mut legs = vec![product(cur, r)?];
        while cur.eat("(x)") {
            legs.push(product(cur, r)?);
        }
        let t = Tensor::product_of(&legs).scale(&sign);
        match &acc {
            Some(a) if a.arity() != t.arity() => {
                return Err(cur.error_at(start, format!("tensor term has {} legs, expected {}", t.arity(), a.arity())))
            }
            Some(a) => acc = Some(a + &t),
            None => acc = Some(t),
        }
        match next_sign(cur) {
            Some(s) => sign = s,
            None => return Ok(acc.unwrap()),
        }
    }
}

/// Parses a complete string as a polynomial over `a`.
pub fn poly_from_str(a: &Alphabet, text: &str) -> Result<NCPoly> {
    let mut cur = Cursor::new(text);
    let p = parse_poly(&mut cur, &alphabet_resolver(a))?;
    if !cur.at_end() {
        return Err(cur.expected(&["+", "-", "."]));
    }
    Ok(p)
}

pub fn tensor_from_str(a: &Alphabet, text: &str) -> Result<Tensor> {
    let mut cur = Cursor::new(text);
    let t = parse_tensor(&mut cur, &alphabet_resolver(a))?;
    if !cur.at_end() {
        return Err(cur.expected(&["+", "-", "(x)"]));
    }
    Ok(t)
}

pub fn render_word(a: &Alphabet, w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = w.letters().iter().map(|&g| a.symbol(g).to_string()).collect();
    parts.join(".")
}

fn is_negative(c: &Scalar) -> bool {
    c.re.is_negative() || (c.re.is_zero() && c.im.is_negative())
}

fn join_terms(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (neg, body)) in parts.into_iter().enumerate() {
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

fn weighted(c: &Scalar, body: String, unit: bool) -> (bool, String) {
    let neg = is_negative(c);
    let mag = if neg { -c } else { c.clone() };
    let text = if unit {
        mag.to_string()
    } else if mag.is_one() {
        body
    } else {
        format!("{mag}*{body}")
    };
    (neg, text)
}

/// Canonical text, highest terms first, e.g. `(1/2 + 3/4i)*a.g.b + 1`.
pub fn render_poly(a: &Alphabet, p: &NCPoly) -> String {
    join_terms(p.terms().rev().map(|(w, c)| weighted(c, render_word(a, w), w.is_empty())).collect())
}

pub fn render_tensor(a: &Alphabet, t: &Tensor) -> String {
    let mut terms: Vec<_> = t.terms().collect();
    terms.reverse();
    join_terms(
        terms
            .into_iter()
            .map(|(legs, c)| {
                let body: Vec<String> = legs.iter().map(|w| render_word(a, w)).collect();
                weighted(c, body.join(" (x) "), false)
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn alphabet() -> Alphabet {
        Alphabet::from_symbols([
            GeneratorSymbol::plain("a"),
            GeneratorSymbol::plain("a").starred(),
            GeneratorSymbol::indexed("u", &[1, 2]),
            GeneratorSymbol::plain("g").inverse(),
            GeneratorSymbol::plain("g"),
        ])
        .unwrap()
    }

    #[test]
    fn documented_rendering() {
        let a = alphabet();
        let p = poly_from_str(&a, "(1/2 + 3/4i)*a.g.a* + 1").unwrap();
        assert_eq!(render_poly(&a, &p), "(1/2 + 3/4i)*a.g.a* + 1");
        let q = poly_from_str(&a, "-1/2i * u(1,2) - g^-1.g^2 + 0").unwrap();
        assert_eq!(render_poly(&a, &q), "-g^-1.g.g - 1/2i*u(1,2)");
        assert_eq!(render_poly(&a, &NCPoly::zero()), "0");
    }

    #[test]
    fn exponents_and_inverses() {
        let a = alphabet();
        assert_eq!(poly_from_str(&a, "g^-2").unwrap(), NCPoly::word(Word(vec![3, 3])));
        assert_eq!(poly_from_str(&a, "g^0").unwrap(), NCPoly::one());
        assert_eq!(poly_from_str(&a, "(a + 1)^2").unwrap(), poly_from_str(&a, "a.a + 2*a + 1").unwrap());
    }

    #[test]
    fn tensors() {
        let a = alphabet();
        let t = tensor_from_str(&a, "a (x) a - 2*a* (x) u(1,2)").unwrap();
        assert_eq!(t.arity(), 2);
        assert_eq!(render_tensor(&a, &t), "-2*a* (x) u(1,2) + a (x) a");
        assert!(tensor_from_str(&a, "a (x) a + a").is_err());
    }

    #[test]
    fn errors_carry_position() {
        let a = alphabet();
        match poly_from_str(&a, "a +\n  zz") {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!((line, col), (2, 3));
                assert!(msg.contains("zz"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn scalars() {
        let mut c = Cursor::new("(1 - i)");
        assert_eq!(c.scalar().unwrap(), Scalar::complex((1, 1), (-1, 1)));
        let mut c = Cursor::new("-3/4");
        assert_eq!(c.scalar().unwrap(), Scalar::ratio(-3, 4));
    }

    fn poly_strategy() -> impl Strategy<Value = NCPoly> {
        let term = (prop::collection::vec(0u32..5, 0..4), -3i64..4, 1i64..3, -2i64..3)
            .prop_map(|(w, n, d, im)| (Word(w), Scalar::complex((n, d), (im, 1))));
        prop::collection::vec(term, 0..6).prop_map(NCPoly::from_terms)
    }

    proptest! {
        #[test]
        fn parse_print_round_trip(p in poly_strategy()) {
            let a = alphabet();
            let text = render_poly(&a, &p);
            prop_assert_eq!(poly_from_str(&a, &text).unwrap(), p);
        }
    }
}
