//! The `.hga` workspace format: algebras, groups, Gaussian functionals and
//! corepresentations, with a printer whose output parses back to the same
//! objects.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::freestar::text::{parse_poly, parse_tensor, Cursor};
use crate::freestar::{Alphabet, NCPoly, Tensor, Word};
use crate::gaussian::{DatumBuilder, GaussianDatum};
use crate::groups::class2::malcev_of;
use crate::groups::{class2_quotient, torsion_free_reduce, Class2Quotient, FpGroup};
use crate::hopf::{self, hopf_axiom_probe, Corepresentation, HopfPresentation};

/// Limits shared by every command of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    /// Degree bound for the quotient engine; `None` lets each command pick.
    pub degree: Option<usize>,
    /// Truncation order of `exp_⋆`.
    pub order: usize,
    pub tolerance: f64,
    pub max_basis: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { degree: None, order: 30, tolerance: 1e-9, max_basis: crate::ideals::xcoords::basis_cap() }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.degree == Some(0) {
            return Err(Error::ParameterRange("degree must be at least 1".into()));
        }
        if self.order == 0 {
            return Err(Error::ParameterRange("order must be at least 1".into()));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::ParameterRange("tolerance must be a positive number".into()));
        }
        if self.max_basis == 0 {
            return Err(Error::ParameterRange("basis cap must be positive".into()));
        }
        Ok(())
    }
}

/// Argument of a catalogue call, kept as written for printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Param(String, String),
    Ref(String),
    Call(CatalogueCall),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogueCall {
    pub name: String,
    pub args: Vec<Arg>,
}

impl std::fmt::Display for CatalogueCall {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let args: Vec<String> = self
            .args
            .iter()
            .map(|a| match a {
                Arg::Param(k, v) => format!("{k} = {v}"),
                Arg::Ref(r) => r.clone(),
                Arg::Call(c) => c.to_string(),
            })
            .collect();
        write!(f, "{}({})", self.name, args.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraDef {
    Call(CatalogueCall),
    Body,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraEntry {
    pub presentation: Arc<HopfPresentation>,
    pub def: AlgebraDef,
    /// Findings of the axiom probe run at load time.
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOp {
    Class2Quotient,
    TorsionFreeReduce,
}

impl GroupOp {
    fn keyword(self) -> &'static str {
        match self {
            GroupOp::Class2Quotient => "class2_quotient",
            GroupOp::TorsionFreeReduce => "torsion_free_reduce",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupEntry {
    Presented(FpGroup),
    Quotient { op: GroupOp, arg: String, quotient: Box<Class2Quotient> },
}

impl GroupEntry {
    /// The group as a finite presentation. A class-2 quotient is presented
    /// through its Mal'cev basis, which needs it to be torsion-free.
    pub fn presentation(&self) -> Result<FpGroup> {
        match self {
            GroupEntry::Presented(g) => Ok(g.clone()),
            GroupEntry::Quotient { quotient, .. } => malcev_of(quotient).map(|m| m.group),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FunctionalEntry {
    pub algebra: String,
    pub datum: Arc<GaussianDatum>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorepEntry {
    pub algebra: String,
    pub corep: Corepresentation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Algebra,
    Group,
    Functional,
    Corep,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Workspace {
    pub algebras: BTreeMap<String, AlgebraEntry>,
    pub groups: BTreeMap<String, GroupEntry>,
    pub functionals: BTreeMap<String, FunctionalEntry>,
    pub coreps: BTreeMap<String, CorepEntry>,
    pub config: Config,
    order: Vec<(Kind, String)>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(src: &str) -> Result<Self> {
        let mut ws = Workspace::new();
        ws.load(src)?;
        Ok(ws)
    }

    /// Adds the items of `src`; names must not clash with earlier items of the same kind.
    pub fn load(&mut self, src: &str) -> Result<()> {
        let mut cur = Cursor::new(src);
        while !cur.at_end() {
            self.item(&mut cur)?;
        }
        Ok(())
    }

    /// Probe warnings of every algebra, prefixed with its name.
    pub fn warnings(&self) -> Vec<String> {
        self.order
            .iter()
            .filter(|(k, _)| *k == Kind::Algebra)
            .flat_map(|(_, n)| self.algebras[n].warnings.iter().map(move |w| format!("algebra {n}: {w}")))
            .collect()
    }

    /// Every item, in declaration order, in the input syntax.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (kind, name) in &self.order {
            match kind {
                Kind::Algebra => out.push_str(&render_algebra(name, &self.algebras[name])),
                Kind::Group => match &self.groups[name] {
                    GroupEntry::Presented(g) => {
                        let _ = writeln!(out, "{g}");
                    }
                    GroupEntry::Quotient { op, arg, .. } => {
                        let _ = writeln!(out, "group {name} = {}({arg});", op.keyword());
                    }
                },
                Kind::Functional => {
                    let f = &self.functionals[name];
                    out.push_str(&f.datum.render(&f.algebra));
                }
                Kind::Corep => {
                    out.push_str(&render_corep(name, &self.coreps[name], &self.algebras[&self.coreps[name].algebra]))
                }
            }
        }
        out
    }

    fn declare(&mut self, cur: &Cursor, at: usize, kind: Kind, name: &str) -> Result<()> {
        let taken = match kind {
            Kind::Algebra => self.algebras.contains_key(name),
            Kind::Group => self.groups.contains_key(name),
            Kind::Functional => self.functionals.contains_key(name),
            Kind::Corep => self.coreps.contains_key(name),
        };
        if taken {
            return Err(cur.error_at(at, format!("`{name}` is already declared")));
        }
        self.order.push((kind, name.to_string()));
        Ok(())
    }

    fn item(&mut self, cur: &mut Cursor) -> Result<()> {
        let start = cur.pos();
        if cur.eat_keyword("algebra") {
            let at = mark(cur);
            let name = cur.ident()?;
            cur.expect("=")?;
            let entry = if cur.eat("{") {
                let p = self.body(cur, &name)?;
                let warnings = probe_warnings(&p);
                AlgebraEntry { presentation: Arc::new(p), def: AlgebraDef::Body, warnings }
            } else {
                let (call, p) = self.call(cur)?;
                AlgebraEntry { presentation: Arc::new(p), def: AlgebraDef::Call(call), warnings: Vec::new() }
            };
            cur.expect(";")?;
            self.declare(cur, at, Kind::Algebra, &name)?;
            self.algebras.insert(name, entry);
        } else if cur.peek_ident() == Some("group") {
            cur.eat_keyword("group");
            let at = mark(cur);
            let name = cur.ident()?;
            let entry = if cur.eat("=") {
                let op_at = mark(cur);
                let op =
                    match cur.ident()?.as_str() {
                        "class2_quotient" => GroupOp::Class2Quotient,
                        "torsion_free_reduce" => GroupOp::TorsionFreeReduce,
                        other => return Err(cur.error_at(
                            op_at,
                            format!(
                                "unknown group operation `{other}`; expected class2_quotient or torsion_free_reduce"
                            ),
                        )),
                    };
                cur.expect("(")?;
                let (arg, g) = self.group_arg(cur)?;
                cur.expect(")")?;
                cur.expect(";")?;
                let q = class2_quotient(&g).and_then(|q| match op {
                    GroupOp::Class2Quotient => Ok(q),
                    GroupOp::TorsionFreeReduce => torsion_free_reduce(&q),
                });
                let mut q = q.map_err(|e| cur.error_at(op_at, e.to_string()))?;
                q.group = name.clone();
                GroupEntry::Quotient { op, arg, quotient: Box::new(q) }
            } else {
                cur.set_pos(start);
                let g = FpGroup::parse_block(cur)?;
                cur.eat(";");
                GroupEntry::Presented(g)
            };
            self.declare(cur, at, Kind::Group, &name)?;
            self.groups.insert(name, entry);
        } else if cur.eat_keyword("gaussian") {
            let at = mark(cur);
            let name = cur.ident()?;
            let (alg, p) = self.on_algebra(cur)?;
            let mut b = DatumBuilder::new(name.clone(), p.clone());
            cur.expect("{")?;
            while !cur.eat("}") {
                if cur.eat_keyword("drift") {
                    let g = gen_id(cur, &p)?;
                    cur.expect("=")?;
                    b = b.drift(g, cur.scalar()?);
                } else if cur.eat_keyword("gram") {
                    cur.expect("(")?;
                    let a = gen_id(cur, &p)?;
                    cur.expect(",")?;
                    let c = gen_id(cur, &p)?;
                    cur.expect(")")?;
                    cur.expect("=")?;
                    b = b.gram(a, c, cur.scalar()?);
                } else {
                    return Err(cur.expected(&["drift", "gram", "}"]));
                }
                cur.expect(";")?;
            }
            cur.eat(";");
            let datum = b.build().map_err(|e| cur.error_at(at, e.to_string()))?;
            self.declare(cur, at, Kind::Functional, &name)?;
            self.functionals.insert(name, FunctionalEntry { algebra: alg, datum: Arc::new(datum) });
        } else if cur.eat_keyword("corep") {
            let at = mark(cur);
            let name = cur.ident()?;
            let (alg, p) = self.on_algebra(cur)?;
            let resolve = |s: &crate::freestar::GeneratorSymbol| p.resolve(s);
            let (mut coeffs, mut q) = (Vec::new(), None);
            cur.expect("{")?;
            while !cur.eat("}") {
                if cur.eat_keyword("row") {
                    let mut row = vec![parse_poly(cur, &resolve)?];
                    while cur.eat(",") {
                        row.push(parse_poly(cur, &resolve)?);
                    }
                    coeffs.push(row);
                } else if cur.eat_keyword("q") {
                    let mut v = vec![cur.rational()?];
                    while cur.eat(",") {
                        v.push(cur.rational()?);
                    }
                    q = Some(v);
                } else {
                    return Err(cur.expected(&["row", "q", "}"]));
                }
                cur.expect(";")?;
            }
            cur.eat(";");
            let n = coeffs.len();
            let corep = Corepresentation {
                coeffs,
                q_eigenvalues: q.unwrap_or_else(|| vec![BigRational::from_integer(1.into()); n]),
            };
            corep.validate().map_err(|e| cur.error_at(at, e.to_string()))?;
            self.declare(cur, at, Kind::Corep, &name)?;
            self.coreps.insert(name, CorepEntry { algebra: alg, corep });
        } else {
            return Err(cur.expected(&["algebra", "group", "gaussian", "corep"]));
        }
        Ok(())
    }

    /// `on NAME` naming a declared algebra.
    fn on_algebra(&self, cur: &mut Cursor) -> Result<(String, Arc<HopfPresentation>)> {
        if !cur.eat_keyword("on") {
            return Err(cur.expected(&["on"]));
        }
        let at = mark(cur);
        let alg = cur.ident()?;
        match self.algebras.get(&alg) {
            Some(a) => Ok((alg, a.presentation.clone())),
            None => Err(cur.error_at(at, format!("unknown reference `{alg}`"))),
        }
    }

    /// A declared group name or a built-in group spec such as `Z2*Z2`.
    fn group_arg(&self, cur: &mut Cursor) -> Result<(String, FpGroup)> {
        let at = mark(cur);
        let rest = cur.rest();
        let end = rest.find([',', ')', ';']).unwrap_or(rest.len());
        let text = rest[..end].trim().to_string();
        let g = match self.groups.get(&text) {
            Some(entry) => entry.presentation().map_err(|e| cur.error_at(at, e.to_string()))?,
            None => FpGroup::from_spec(&text).map_err(|_| cur.error_at(at, format!("unknown reference `{text}`")))?,
        };
        cur.set_pos(at + end);
        Ok((text, g))
    }

    fn call(&self, cur: &mut Cursor) -> Result<(CatalogueCall, HopfPresentation)> {
        let at = mark(cur);
        let name = cur.ident()?;
        cur.expect("(")?;
        let mut args = Vec::new();
        let p = match name.as_str() {
            "su_q2" => {
                let q = param(cur, &["q"], &mut args, |c| c.rational())?;
                hopf::su_q2(&q)
            }
            "o_n_plus" | "u_n_plus" | "o_n_star" | "o_n_twisted" => {
                let n = param(cur, &["N", "n"], &mut args, |c| c.integer())?;
                if n < 1 {
                    return Err(cur.error_at(at, "parameter out of range: N must be at least 1"));
                }
                let n = n as usize;
                match name.as_str() {
                    "o_n_plus" => hopf::o_n_plus(n),
                    "u_n_plus" => hopf::u_n_plus(n),
                    "o_n_star" => hopf::o_n_star(n),
                    _ => hopf::o_n_twisted(n),
                }
            }
            "group_algebra" => {
                let (text, g) = self.group_arg(cur)?;
                args.push(Arg::Ref(text));
                hopf::group_algebra(&g)
            }
            "free_product" => {
                let a = self.algebra_arg(cur, &mut args)?;
                cur.expect(",")?;
                let b = self.algebra_arg(cur, &mut args)?;
                hopf::catalogue::free_product(&a, &b)
            }
            other => {
                return Err(cur.error_at(
                    at,
                    format!(
                        "unknown catalogue entry `{other}`; expected one of {}",
                        hopf::catalogue::CATALOGUE_NAMES.join(", ")
                    ),
                ))
            }
        };
        cur.expect(")")?;
        let p = p.map_err(|e| cur.error_at(at, e.to_string()))?;
        Ok((CatalogueCall { name, args }, p))
    }

    fn algebra_arg(&self, cur: &mut Cursor, args: &mut Vec<Arg>) -> Result<HopfPresentation> {
        let at = mark(cur);
        let name = cur.ident()?;
        if cur.peek() == Some('(') {
            cur.set_pos(at);
            let (call, p) = self.call(cur)?;
            args.push(Arg::Call(call));
            return Ok(p);
        }
        match self.algebras.get(&name) {
            Some(a) => {
                args.push(Arg::Ref(name));
                Ok((*a.presentation).clone())
            }
            None => Err(cur.error_at(at, format!("unknown reference `{name}`"))),
        }
    }

    /// `gens ...; star/counit/coproduct/antipode/rel statements }`.
    fn body(&self, cur: &mut Cursor, name: &str) -> Result<HopfPresentation> {
        let start = cur.pos();
        if !cur.eat_keyword("gens") {
            return Err(cur.expected(&["gens"]));
        }
        let mut alphabet = Alphabet::new();
        loop {
            let at = mark(cur);
            let s = cur.symbol()?;
            alphabet.push(s).map_err(|e| cur.error_at(at, e.to_string()))?;
            if cur.eat(";") {
                break;
            }
            if !cur.eat(",") {
                return Err(cur.expected(&[",", ";"]));
            }
        }
        let mut p = HopfPresentation::new(name, alphabet);
        while !cur.eat("}") {
            let kw = ["star", "counit", "coproduct", "antipode", "rel"].into_iter().find(|k| cur.eat_keyword(k));
            let Some(kw) = kw else {
                return Err(cur.expected(&["star", "counit", "coproduct", "antipode", "rel", "}"]));
            };
            if kw == "rel" {
                let r = parse_poly(cur, &|s| p.resolve(s))?;
                p.relations.push(r);
            } else {
                let g = gen_id(cur, &p)? as usize;
                cur.expect("=")?;
                match kw {
                    "counit" => p.counit_table[g] = cur.scalar()?,
                    "coproduct" => {
                        let at = mark(cur);
                        let t = parse_tensor(cur, &|s| p.resolve(s))?;
                        p.coproduct_table[g] = if t.is_zero() {
                            Tensor::zero(2)
                        } else if t.arity() == 2 {
                            t
                        } else {
                            return Err(cur.error_at(at, "a coproduct needs two tensor legs"));
                        };
                    }
                    "star" => p.star_table[g] = parse_poly(cur, &|s| p.resolve(s))?,
                    _ => p.antipode_table[g] = parse_poly(cur, &|s| p.resolve(s))?,
                }
            }
            cur.expect(";")?;
        }
        p.validate().map_err(|e| cur.error_at(start, e.to_string()))?;
        Ok(p)
    }
}

/// `key = value`, appending the argument as written.
fn param<T: ToString>(
    cur: &mut Cursor,
    keys: &[&str],
    args: &mut Vec<Arg>,
    value: impl FnOnce(&mut Cursor) -> Result<T>,
) -> Result<T> {
    let at = mark(cur);
    let key = cur.ident()?;
    if !keys.contains(&key.as_str()) {
        return Err(cur.error_at(at, format!("unknown parameter `{key}`; expected {}", keys[0])));
    }
    cur.expect("=")?;
    let v = value(cur)?;
    args.push(Arg::Param(keys[0].to_string(), v.to_string()));
    Ok(v)
}

/// Position of the next token.
fn mark(cur: &mut Cursor) -> usize {
    cur.skip_ws();
    cur.pos()
}

fn gen_id(cur: &mut Cursor, p: &HopfPresentation) -> Result<u32> {
    let at = mark(cur);
    let s = cur.symbol()?;
    p.alphabet.lookup(&s).ok_or_else(|| cur.error_at(at, format!("unknown generator `{s}`")))
}

fn probe_warnings(p: &HopfPresentation) -> Vec<String> {
    let p = Arc::new(p.clone());
    let samples: Vec<Word> = p.alphabet.ids().map(|g| Word(vec![g])).collect();
    match hopf_axiom_probe(p, &samples, None) {
        Ok(r) => r
            .failures
            .iter()
            .map(|f| format!("axiom {} fails on {}: {}", f.axiom, f.subject, f.detail))
            .chain(r.warnings)
            .collect(),
        Err(e) => vec![format!("axiom probe skipped: {e}")],
    }
}

fn render_algebra(name: &str, a: &AlgebraEntry) -> String {
    let p = &a.presentation;
    match &a.def {
        AlgebraDef::Call(c) => format!("algebra {name} = {c};\n"),
        AlgebraDef::Body => {
            let gens: Vec<String> = p.alphabet.symbols().iter().map(|s| s.to_string()).collect();
            let mut out = format!("algebra {name} = {{\n  gens {};\n", gens.join(", "));
            for g in p.alphabet.ids() {
                let (s, i) = (p.symbol(g), g as usize);
                let _ = writeln!(out, "  star {s} = {};", p.render(&p.star_table[i]));
                let _ = writeln!(out, "  counit {s} = {};", p.counit_table[i]);
                let _ = writeln!(out, "  coproduct {s} = {};", p.render_tensor(&p.coproduct_table[i]));
                let _ = writeln!(out, "  antipode {s} = {};", p.render(&p.antipode_table[i]));
            }
            for r in &p.relations {
                let _ = writeln!(out, "  rel {};", p.render(r));
            }
            out.push_str("};\n");
            out
        }
    }
}

fn render_corep(name: &str, c: &CorepEntry, a: &AlgebraEntry) -> String {
    let p = &a.presentation;
    let mut out = format!("corep {name} on {} {{\n", c.algebra);
    for row in &c.corep.coeffs {
        let cells: Vec<String> = row.iter().map(|x| p.render(x)).collect();
        let _ = writeln!(out, "  row {};", cells.join(", "));
    }
    let q: Vec<String> = c.corep.q_eigenvalues.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "  q {};\n}}", q.join(", "));
    out
}

/// An algebra by workspace name or catalogue reference (`su_q2:1/2`).
pub fn resolve_algebra(ws: &Workspace, name: &str) -> Result<Arc<HopfPresentation>> {
    if let Some(a) = ws.algebras.get(name) {
        return Ok(a.presentation.clone());
    }
    if name.contains(':') {
        return hopf::from_spec(name).map(Arc::new);
    }
    Err(Error::UnknownReference(name.to_string()))
}

/// A group by workspace name or built-in spec (`F2`, `Z2*Z2`, `H3`).
pub fn resolve_group(ws: &Workspace, name: &str) -> Result<FpGroup> {
    match ws.groups.get(name) {
        Some(GroupEntry::Presented(g)) => Ok(g.clone()),
        Some(e @ GroupEntry::Quotient { .. }) => e.presentation(),
        None => FpGroup::from_spec(name).map_err(|_| Error::UnknownReference(name.to_string())),
    }
}

/// A functional by workspace name or built-in example (`heat`, `rotation`).
pub fn resolve_functional(ws: &Workspace, name: &str) -> Result<Arc<GaussianDatum>> {
    if let Some(f) = ws.functionals.get(name) {
        return Ok(f.datum.clone());
    }
    crate::gaussian::examples::by_name(name).map(Arc::new).ok_or_else(|| Error::UnknownReference(name.to_string()))
}

/// Parses a polynomial in the generators of `p`; `g^k`, `g^-1` and `g*` are sugar.
pub fn parse_poly_in(p: &HopfPresentation, src: &str) -> Result<NCPoly> {
    p.parse_poly(src)
}
