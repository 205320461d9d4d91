use std::fmt;

use crate::error::{Error, Result};
use crate::freestar::text::Cursor;

/// Letter `k > 0` is generator `k-1`, `-k` its inverse.
pub type Letter = i32;

/// Freely reduces a word.
pub fn free_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| -l).collect()
}

/// `[a,b] = a b a⁻¹ b⁻¹`.
pub fn commutator(a: &[Letter], b: &[Letter]) -> Vec<Letter> {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w.extend(invert(a));
    w.extend(invert(b));
    free_reduce(&w)
}

/// Finitely presented group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpGroup {
    pub name: String,
    pub names: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
}

impl FpGroup {
    pub fn new(name: impl Into<String>, names: Vec<String>, relators: Vec<Vec<Letter>>) -> Result<Self> {
        let n = names.len() as i32;
        if relators.iter().flatten().any(|&l| l == 0 || l.abs() > n) {
            return Err(Error::InvalidInput("relator uses an undeclared generator".into()));
        }
        let relators = relators.iter().map(|r| free_reduce(r)).filter(|r| !r.is_empty()).collect();
        Ok(FpGroup { name: name.into(), names, relators })
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn free(n: usize) -> Self {
        FpGroup { name: format!("F{n}"), names: numbered(n), relators: Vec::new() }
    }

    pub fn free_abelian(n: usize) -> Self {
        let mut rels = Vec::new();
        for i in 1..=n as i32 {
            for j in i + 1..=n as i32 {
                rels.push(commutator(&[i], &[j]));
            }
        }
        FpGroup { name: format!("Z^{n}"), names: numbered(n), relators: rels }
    }

    pub fn integers() -> Self {
        FpGroup { name: "Z".into(), names: vec!["u".into()], relators: Vec::new() }
    }

    pub fn cyclic(k: usize) -> Self {
        FpGroup { name: format!("Z{k}"), names: vec!["g".into()], relators: vec![vec![1; k]] }
    }

    /// Discrete Heisenberg group on `g1, g2` and the central `g3 = [g1, g2]`.
    pub fn heisenberg() -> Self {
        let c = commutator(&[1], &[2]);
        let mut r1 = c.clone();
        r1.push(-3);
        FpGroup {
            name: "H3".into(),
            names: numbered(3),
            relators: vec![r1, commutator(&[1], &[3]), commutator(&[2], &[3])],
        }
    }

    fn shifted(&self, by: i32) -> Vec<Vec<Letter>> {
        self.relators.iter().map(|r| r.iter().map(|&l| l.signum() * (l.abs() + by)).collect()).collect()
    }

    pub fn free_product(a: &FpGroup, b: &FpGroup) -> Self {
        let n = a.ngens() + b.ngens();
        let mut rels = a.relators.clone();
        rels.extend(b.shifted(a.ngens() as i32));
        FpGroup { name: format!("{}*{}", a.name, b.name), names: numbered(n), relators: rels }
    }

    pub fn direct_product(a: &FpGroup, b: &FpGroup) -> Self {
        let mut g = Self::free_product(a, b);
        for i in 1..=a.ngens() as i32 {
            for j in 1..=b.ngens() as i32 {
                g.relators.push(commutator(&[i], &[j + a.ngens() as i32]));
            }
        }
        g.name = format!("{}x{}", a.name, b.name);
        g
    }

    /// Catalogue names: `Z`, `Zk`, `Fn`, `Z^n`, `H3`, combined with `*` (free
    /// product) and `x` (direct product), left to right, with parentheses.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let mut cur = Cursor::new(spec);
        let g = spec_product(&mut cur)?;
        if !cur.at_end() {
            return Err(cur.expected(&["*", "x"]));
        }
        Ok(FpGroup { name: spec.trim().to_string(), ..g })
    }

    pub fn render_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = w
            .iter()
            .map(|&l| {
                let n = &self.names[(l.unsigned_abs() - 1) as usize];
                if l > 0 {
                    n.clone()
                } else {
                    format!("{n}^-1")
                }
            })
            .collect();
        parts.join("*")
    }

    /// Parses `g1*g2^-1*[g1,g2]^2`, or `1` for the empty word.
    pub fn parse_word(&self, cur: &mut Cursor) -> Result<Vec<Letter>> {
        if cur.eat("1") {
            return Ok(Vec::new());
        }
        let mut w = self.parse_factor(cur)?;
        while cur.eat("*") {
            w.extend(self.parse_factor(cur)?);
        }
        Ok(free_reduce(&w))
    }

    fn parse_factor(&self, cur: &mut Cursor) -> Result<Vec<Letter>> {
        let base = if cur.eat("[") {
            let a = self.parse_word(cur)?;
            cur.expect(",")?;
            let b = self.parse_word(cur)?;
            cur.expect("]")?;
            commutator(&a, &b)
        } else {
            let at = cur.pos();
            let name = cur.ident()?;
            let k = self
                .names
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| cur.error_at(at, format!("unknown generator `{name}`")))?;
            vec![k as i32 + 1]
        };
        if cur.rest().starts_with('^') {
            cur.bump();
            let e = cur.integer()?;
            let unit = if e < 0 { invert(&base) } else { base };
            return Ok(unit.repeat(e.unsigned_abs() as usize));
        }
        Ok(base)
    }

    /// Parses `group F2 { gens g1, g2; rels; }`; relators are words separated by commas.
    pub fn parse_block(cur: &mut Cursor) -> Result<Self> {
        if !cur.eat_keyword("group") {
            return Err(cur.expected(&["group"]));
        }
        let name = cur.ident()?;
        cur.expect("{")?;
        if !cur.eat_keyword("gens") {
            return Err(cur.expected(&["gens"]));
        }
        let mut names = Vec::new();
        if !cur.eat(";") {
            loop {
                let at = cur.pos();
                let n = cur.ident()?;
                if names.contains(&n) {
                    return Err(cur.error_at(at, format!("generator `{n}` declared twice")));
                }
                names.push(n);
                if cur.eat(";") {
                    break;
                }
                if !cur.eat(",") {
                    return Err(cur.expected(&[",", ";"]));
                }
            }
        }
        let mut g = FpGroup { name, names, relators: Vec::new() };
        if cur.eat_keyword("rels") && !cur.eat(";") {
            loop {
                let r = g.parse_word(cur)?;
                if !r.is_empty() {
                    g.relators.push(r);
                }
                if cur.eat(";") {
                    break;
                }
                if !cur.eat(",") {
                    return Err(cur.expected(&[",", ";", "*"]));
                }
            }
        }
        cur.expect("}")?;
        Ok(g)
    }

    pub fn parse(src: &str) -> Result<Self> {
        let mut cur = Cursor::new(src);
        let g = Self::parse_block(&mut cur)?;
        if !cur.at_end() {
            return Err(cur.expected(&["end of input"]));
        }
        Ok(g)
    }

    pub fn parse_relator(&self, src: &str) -> Result<Vec<Letter>> {
        let mut cur = Cursor::new(src);
        let w = self.parse_word(&mut cur)?;
        if !cur.at_end() {
            return Err(cur.expected(&["*"]));
        }
        Ok(w)
    }
}

impl fmt::Display for FpGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.render_word(r)).collect();
        write!(f, "group {} {{ gens {}; rels {}; }}", self.name, self.names.join(", "), rels.join(", "))
    }
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("g{i}")).collect()
}

fn spec_product(cur: &mut Cursor) -> Result<FpGroup> {
    let mut g = spec_factor(cur)?;
    loop {
        if cur.eat("*") {
            g = FpGroup::free_product(&g, &spec_factor(cur)?);
        } else if cur.eat_keyword("x") {
            g = FpGroup::direct_product(&g, &spec_factor(cur)?);
        } else if cur.peek_ident().is_some_and(|s| s.starts_with('x')) {
            // `ZxZ3` lexes as one identifier after `Z`
            cur.bump();
            g = FpGroup::direct_product(&g, &spec_factor(cur)?);
        } else {
            return Ok(g);
        }
    }
}

fn spec_factor(cur: &mut Cursor) -> Result<FpGroup> {
    if cur.eat("(") {
        let g = spec_product(cur)?;
        cur.expect(")")?;
        return Ok(g);
    }
    cur.skip_ws();
    let at = cur.pos();
    let rest = cur.rest();
    let lead: String = rest.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
    let bad = |cur: &Cursor| cur.error_at(at, "expected a group name: Z, Zk, Fn, Z^n, H3");
    let (kind, tail_start) = match () {
        _ if rest.starts_with("H3") => ("H3", 2),
        _ if lead.starts_with('F') => ("F", 1),
        _ if lead.starts_with('Z') => ("Z", 1),
        _ => return Err(bad(cur)),
    };
    cur.set_pos(at + tail_start);
    if kind == "H3" {
        return Ok(FpGroup::heisenberg());
    }
    let power = kind == "Z" && cur.rest().starts_with('^');
    if power {
        cur.bump();
    }
    let digits: String = cur.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
    cur.set_pos(cur.pos() + digits.len());
    let k: Option<usize> = if digits.is_empty() { None } else { digits.parse().ok() };
    match (kind, power, k) {
        ("Z", false, None) => Ok(FpGroup::integers()),
        ("Z", false, Some(k)) if k >= 1 => Ok(FpGroup::cyclic(k)),
        ("Z", true, Some(n)) => Ok(FpGroup::free_abelian(n)),
        ("F", _, Some(n)) => Ok(FpGroup::free(n)),
        _ => Err(bad(cur)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(commutator(&[1], &[2]), vec![1, 2, -1, -2]);
    }

    #[test]
    fn specs() {
        assert_eq!(FpGroup::from_spec("F2").unwrap().ngens(), 2);
        assert_eq!(FpGroup::from_spec("Z").unwrap().names, vec!["u"]);
        assert_eq!(FpGroup::from_spec("Z4").unwrap().relators, vec![vec![1, 1, 1, 1]]);
        let d = FpGroup::from_spec("Z2*Z2").unwrap();
        assert_eq!(d.relators, vec![vec![1, 1], vec![2, 2]]);
        let p = FpGroup::from_spec("ZxZ3").unwrap();
        assert_eq!(p.ngens(), 2);
        assert_eq!(p.relators.len(), 2);
        assert_eq!(FpGroup::from_spec("Z^3").unwrap().relators.len(), 3);
        assert_eq!(FpGroup::from_spec("H3").unwrap().ngens(), 3);
        assert!(FpGroup::from_spec("Q8").is_err());
    }

    #[test]
    fn relator_text() {
        let g = FpGroup::free(2);
        let r = g.parse_relator("g1*g2*g1^-1*g2^-1").unwrap();
        assert_eq!(r, commutator(&[1], &[2]));
        assert_eq!(g.parse_relator("[g1,g2]^-1").unwrap(), commutator(&[2], &[1]));
        assert_eq!(g.render_word(&r), "g1*g2*g1^-1*g2^-1");
    }

    #[test]
    fn block_round_trip() {
        let g = FpGroup::parse("group D { gens a, b; rels a^2, b*b, ; }");
        assert!(g.is_err());
        let g = FpGroup::parse("group D { gens a, b; rels a^2, b*b; }").unwrap();
        assert_eq!(g.relators, vec![vec![1, 1], vec![2, 2]]);
        assert_eq!(FpGroup::parse(&g.to_string()).unwrap(), g);
        let f = FpGroup::parse("group F2 { gens g1, g2; rels; }").unwrap();
        assert_eq!(f, FpGroup::free(2));
        let e = FpGroup::parse("group F { gens g1; rels g2; }").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e}");
    }
}
