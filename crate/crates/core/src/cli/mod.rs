//! The `hgauss` command line: workspace loading, one subcommand per engine
//! operation, and deterministic text or JSON reports.
//!
//! Exit codes: 0 when the command completed (verdicts live in the report),
//! 1 on usage, parse or input errors, 2 when a resource cap was hit.

pub mod dsl;

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::freestar::{Cursor, NCPoly, Word};
use crate::gaussian::{check_classical, check_consistency, check_drift, solve_gaussian_space, GaussianDatum};
use crate::groups::{central_gaussian, class2_quotient, torsion_free_reduce, Letter};
use crate::hopf::{
    default_samples, hopf_axiom_probe, Corepresentation, HopfPresentation, StructureKind, StructureValue,
};
use crate::ideals::{
    filtration_probe, kac_generators, kinfty_probe, kn_span, membership, o2plus_descent_check, s_squared,
    scaling_table, BoundedQuotient,
};
use crate::semigroup::{exp_state, state_positivity_probe, word_family, ExpConfig, Functional};
pub use dsl::{Config, Workspace};

#[derive(Parser, Debug)]
#[command(name = "hgauss", version, about = "Gaussian generating functionals on Hopf *-algebra presentations")]
pub struct Cli {
    /// `.hga` workspace files, loaded in order.
    #[arg(long, global = true)]
    pub file: Vec<PathBuf>,
    /// Emit `{command, inputs, config, result, warnings}` as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArg {
    /// Workspace algebra or catalogue reference such as `su_q2:1/2`, `o_n_plus:2`, `group:Z2`.
    #[arg(long)]
    pub algebra: String,
}

#[derive(Args, Debug, Clone)]
pub struct FunctionalArg {
    /// Workspace functional or built-in example (`heat`, `negated_heat`, `rotation`).
    #[arg(long)]
    pub functional: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    Counit,
    Coproduct,
    Antipode,
    Star,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Applies a structure map to a polynomial, or evaluates a functional on it.
    ///
    /// Exactly one of `--map` (with `--algebra`) or `--functional` is needed.
    /// Results are exact.
    Eval {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, value_enum)]
        map: Option<MapKind>,
        #[arg(long)]
        functional: Option<String>,
        /// Polynomial in the generators; `g^k`, `g^-1` and `g*` are accepted.
        #[arg(long, alias = "word")]
        poly: String,
    },
    /// Evaluates a Gaussian functional by the closed Wick formula and by the
    /// recursive three-point oracle; both are exact and must agree.
    Wick {
        #[command(flatten)]
        f: FunctionalArg,
        /// Polynomial in the generators; `g^k`, `g^-1` and `g*` are accepted.
        #[arg(long, alias = "word")]
        poly: String,
    },
    /// Checks that a datum defines a Gaussian functional on the presented
    /// algebra: hermitian drift, PSD Gram, vanishing on relations. Exact.
    CheckGaussian {
        #[command(flatten)]
        f: FunctionalArg,
    },
    /// Reports whether the functional is a drift (zero Gram matrix, so it
    /// vanishes on K₂ and exponentiates to characters).
    CheckDrift {
        #[command(flatten)]
        f: FunctionalArg,
    },
    /// Reports whether the functional factors through the abelianization
    /// (classical Gaussian).
    CheckClassical {
        #[command(flatten)]
        f: FunctionalArg,
    },
    /// Solves the linear constraints on Gaussian data over a presentation:
    /// real dimension, forced zeros of η and φ, and a basis. Exact.
    Solve {
        #[command(flatten)]
        a: AlgebraArg,
    },
    /// Evaluates the convolution exponential exp_⋆(tφ) on a polynomial by a
    /// truncated Taylor series in floating point.
    ExpState {
        #[command(flatten)]
        f: FunctionalArg,
        /// Time; a rational such as `1/2` or a decimal.
        #[arg(long, value_parser = parse_real)]
        t: f64,
        /// Polynomial in the generators; `g^k`, `g^-1` and `g*` are accepted.
        #[arg(long, alias = "word")]
        poly: String,
        /// Taylor order.
        #[arg(long, default_value_t = 30)]
        order: usize,
        /// Required change when the order is doubled.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Gram matrix [φ_t(b_i* b_j)] on all words of length at most `--degree`
    /// and its smallest eigenvalue (tolerance 1e-8).
    Positivity {
        #[command(flatten)]
        f: FunctionalArg,
        #[arg(long, value_parser = parse_real)]
        t: f64,
        /// Maximal word length of the test family.
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// Taylor order.
        #[arg(long, default_value_t = 30)]
        order: usize,
        /// Required change when the order is doubled.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// The span of K_n inside the bounded quotient of degree `--degree`, with
    /// the exact codimension of K_n.
    Kn {
        #[command(flatten)]
        a: AlgebraArg,
        /// Power of the counit kernel.
        #[arg(long)]
        n: usize,
        /// Degree bound of the quotient engine.
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Dimensions along K₁ ⊇ … ⊇ K_nmax at a degree bound. Stabilization is
    /// evidence about K_∞, never a proof.
    Kinfty {
        #[command(flatten)]
        a: AlgebraArg,
        /// Degree bound of the quotient engine.
        #[arg(long, default_value_t = 6)]
        degree: usize,
        /// Longest chain index.
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// One-sided membership test x ∈ K_n. `certified_in` is a proof; the
    /// negative verdict is inconclusive.
    Membership {
        #[command(flatten)]
        a: AlgebraArg,
        /// Power of the counit kernel.
        #[arg(long)]
        n: usize,
        /// Degree bound of the quotient engine.
        #[arg(long, default_value_t = 6)]
        degree: usize,
        /// Polynomial in the generators; `g^k`, `g^-1` and `g*` are accepted.
        #[arg(long, alias = "word")]
        poly: String,
    },
    /// Off-diagonal coefficients u_ij with q_i ≠ q_j of the fundamental
    /// corepresentation; they generate the ideal of the maximal Kac subgroup.
    KacGens {
        #[command(flatten)]
        a: AlgebraArg,
        /// Workspace corepresentation; defaults to the algebra's fundamental one.
        #[arg(long)]
        corep: Option<String>,
    },
    /// S² ratios q_i/q_j (exact) and the scaling phases (q_i/q_j)^{it} (floating point).
    Scaling {
        #[command(flatten)]
        a: AlgebraArg,
        #[arg(long)]
        corep: Option<String>,
        #[arg(long, value_parser = parse_real, default_value = "0")]
        t: f64,
    },
    /// Checks Δ(K_n) ⊆ Σ K_ℓ ⊗ K_{n−ℓ} on a spanning set of K_n at a degree bound.
    Filtration {
        #[command(flatten)]
        a: AlgebraArg,
        /// Power of the counit kernel.
        #[arg(long)]
        n: usize,
        /// Degree bound of the quotient engine.
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Follows the descent argument for γ ∈ K_n on O₂⁺ = SU_{−1}(2).
    O2plusDescent {
        #[arg(long, default_value = "su_q2:-1")]
        algebra: String,
        /// Degree bound of the quotient engine.
        #[arg(long, default_value_t = 6)]
        degree: usize,
        /// Longest chain index.
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// Class-2 quotient Γ/γ₃Γ: abelianization, commutator layer and bracket.
    Class2 {
        /// Workspace group or built-in spec (`F2`, `Z2*Z2`, `H3`, `Z^2`).
        #[arg(long)]
        group: String,
    },
    /// Maximal torsion-free class-2 quotient Γ/√γ₃Γ with its Mal'cev basis.
    TorsionFree {
        #[arg(long)]
        group: String,
    },
    /// Gaussian part of the dual of Γ: the torsion-free class-2 quotient, its
    /// group algebra, and a Gaussian functional nonzero on the center, checked
    /// for conditional positivity on words of length at most `--len`.
    GaussianPartDual {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        len: usize,
    },
    /// Samples the Hopf *-algebra axioms modulo the relations. The degree
    /// defaults to the smallest bound that decides every check.
    Axioms {
        #[command(flatten)]
        a: AlgebraArg,
        #[arg(long)]
        degree: Option<usize>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Wick { .. } => "wick",
            Command::CheckGaussian { .. } => "check-gaussian",
            Command::CheckDrift { .. } => "check-drift",
            Command::CheckClassical { .. } => "check-classical",
            Command::Solve { .. } => "solve",
            Command::ExpState { .. } => "exp-state",
            Command::Positivity { .. } => "positivity",
            Command::Kn { .. } => "kn",
            Command::Kinfty { .. } => "kinfty",
            Command::Membership { .. } => "membership",
            Command::KacGens { .. } => "kac-gens",
            Command::Scaling { .. } => "scaling",
            Command::Filtration { .. } => "filtration",
            Command::O2plusDescent { .. } => "o2plus-descent",
            Command::Class2 { .. } => "class2",
            Command::TorsionFree { .. } => "torsion-free",
            Command::GaussianPartDual { .. } => "gaussian-part-dual",
            Command::Axioms { .. } => "axioms",
        }
    }
}

/// Accepts `3/4`, `-2` or a decimal.
fn parse_real(s: &str) -> std::result::Result<f64, String> {
    let mut cur = Cursor::new(s);
    if let Ok(r) = cur.rational() {
        if cur.at_end() {
            return r.to_f64().ok_or_else(|| format!("`{s}` is out of range"));
        }
    }
    s.trim().parse::<f64>().map_err(|_| format!("`{s}` is not a number"))
}

/// A finished command.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub config: Value,
    pub result: Value,
    pub warnings: Vec<String>,
}

struct Ctx {
    ws: Workspace,
    inputs: Map<String, Value>,
    warnings: Vec<String>,
}

impl Ctx {
    fn input(&mut self, k: &str, v: impl Serialize) {
        self.inputs.insert(k.to_string(), serde_json::to_value(v).unwrap_or(Value::Null));
    }

    fn algebra(&mut self, name: &str) -> Result<Arc<HopfPresentation>> {
        self.input("algebra", name);
        dsl::resolve_algebra(&self.ws, name)
    }

    fn functional(&mut self, name: &str) -> Result<Arc<GaussianDatum>> {
        self.input("functional", name);
        dsl::resolve_functional(&self.ws, name)
    }

    fn poly(&mut self, p: &HopfPresentation, src: &str) -> Result<NCPoly> {
        self.input("poly", src);
        p.parse_poly(src)
    }

    fn quotient(&mut self, p: Arc<HopfPresentation>, degree: usize) -> Result<BoundedQuotient> {
        self.ws.config.degree = Some(degree);
        self.ws.config.validate()?;
        BoundedQuotient::new(p, degree)
    }

    fn corep(&mut self, p: &HopfPresentation, name: Option<&str>) -> Result<Corepresentation> {
        match name {
            Some(n) => {
                self.input("corep", n);
                self.ws.coreps.get(n).map(|c| c.corep.clone()).ok_or_else(|| Error::UnknownReference(n.to_string()))
            }
            None => p.corep.clone().ok_or_else(|| {
                Error::InvalidInput(format!("{} has no fundamental corepresentation; pass --corep", p.name))
            }),
        }
    }
}

fn to_json(v: impl Serialize) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn names(p: &HopfPresentation, gens: &[u32]) -> Vec<String> {
    gens.iter().map(|&g| p.symbol(g).to_string()).collect()
}

fn exp_config(order: usize, tol: f64) -> ExpConfig {
    ExpConfig { order, tolerance: tol, ..ExpConfig::default() }
}

fn execute(cmd: &Command, cx: &mut Ctx) -> Result<Value> {
    Ok(match cmd {
        Command::Eval { algebra, map, functional, poly } => match (map, functional) {
            (Some(kind), None) => {
                let name = algebra.as_deref().ok_or_else(|| Error::InvalidInput("--map needs --algebra".into()))?;
                let p = cx.algebra(name)?;
                let x = cx.poly(&p, poly)?;
                cx.input("map", format!("{kind:?}").to_lowercase());
                let kind = match kind {
                    MapKind::Counit => StructureKind::Counit,
                    MapKind::Coproduct => StructureKind::Coproduct,
                    MapKind::Antipode => StructureKind::Antipode,
                    MapKind::Star => StructureKind::Star,
                };
                let value = match p.structure_map(kind, &x)? {
                    StructureValue::Scalar(s) => s.to_string(),
                    StructureValue::Tensor(t) => p.render_tensor(&t),
                    StructureValue::Poly(y) => p.render(&y),
                };
                json!({ "value": value })
            }
            (None, Some(f)) => {
                let d = cx.functional(f)?;
                let x = cx.poly(&d.presentation, poly)?;
                json!({ "value": d.wick_eval(&x)?.to_string() })
            }
            _ => return Err(Error::InvalidInput("eval needs exactly one of --map or --functional".into())),
        },
        Command::Wick { f, poly } => {
            let d = cx.functional(&f.functional)?;
            let x = cx.poly(&d.presentation, poly)?;
            let closed = d.wick_eval(&x)?;
            let oracle = d.wick_eval_recursive(&x)?;
            json!({ "closed_form": closed.to_string(), "recursive": oracle.to_string(), "agree": closed == oracle })
        }
        Command::CheckGaussian { f } => to_json(check_consistency(&*cx.functional(&f.functional)?)?),
        Command::CheckDrift { f } => json!({ "drift": check_drift(&*cx.functional(&f.functional)?)? }),
        Command::CheckClassical { f } => json!({ "classical": check_classical(&*cx.functional(&f.functional)?) }),
        Command::Solve { a } => {
            let p = cx.algebra(&a.algebra)?;
            let s = solve_gaussian_space(p.clone())?;
            json!({
                "dimension": s.dimension,
                "eta_forced_zero": names(&p, &s.eta_forced_zero),
                "phi_forced_zero": names(&p, &s.phi_forced_zero),
                "gram_forced_real": s.gram_forced_real,
                "drift_dimension": s.drift_dimension,
                "constraints": s.constraints,
                "basis": to_json(s.describe_basis()?),
            })
        }
        Command::ExpState { f, t, poly, order, tol } => {
            let d = cx.functional(&f.functional)?;
            let x = cx.poly(&d.presentation, poly)?;
            cx.input("t", t);
            cx.ws.config.order = *order;
            cx.ws.config.tolerance = *tol;
            cx.ws.config.validate()?;
            let v = exp_state(&Functional::Gaussian(d), *t, &x, &exp_config(*order, *tol))?;
            if !v.converged {
                cx.warnings.push(format!("series did not settle within {tol} at order {order}"));
            }
            to_json(v)
        }
        Command::Positivity { f, t, degree, order, tol } => {
            let d = cx.functional(&f.functional)?;
            cx.input("t", t);
            cx.ws.config.degree = Some(*degree);
            cx.ws.config.order = *order;
            cx.ws.config.tolerance = *tol;
            cx.ws.config.validate()?;
            let family = word_family(d.presentation.ngens(), *degree);
            let labels: Vec<String> = family.iter().map(|w| d.presentation.render(w)).collect();
            let mut r =
                to_json(state_positivity_probe(&Functional::Gaussian(d), *t, &family, &exp_config(*order, *tol))?);
            r["family"] = json!(labels);
            r
        }
        Command::Kn { a, n, degree } => {
            let p = cx.algebra(&a.algebra)?;
            cx.input("n", n);
            let q = cx.quotient(p, *degree)?;
            let s = kn_span(&q, *n)?;
            cx.warnings.extend(s.warnings.iter().cloned());
            json!({
                "n": s.n,
                "degree": s.degree,
                "bounded_dimension": s.bounded_dimension,
                "codimension": s.codimension(),
            })
        }
        Command::Kinfty { a, degree, nmax } => {
            let p = cx.algebra(&a.algebra)?;
            cx.input("nmax", nmax);
            let q = cx.quotient(p, *degree)?;
            to_json(kinfty_probe(&q, *nmax)?)
        }
        Command::Membership { a, n, degree, poly } => {
            let p = cx.algebra(&a.algebra)?;
            let x = cx.poly(&p, poly)?;
            cx.input("n", n);
            let q = cx.quotient(p, *degree)?;
            let s = kn_span(&q, *n)?;
            cx.warnings.extend(s.warnings.iter().cloned());
            to_json(membership(&s, &x))
        }
        Command::KacGens { a, corep } => {
            let p = cx.algebra(&a.algebra)?;
            let c = cx.corep(&p, corep.as_deref())?;
            let gens: Vec<Value> = kac_generators(&c)
                .iter()
                .map(|k| json!({ "i": k.i + 1, "j": k.j + 1, "coefficient": p.render(&k.coefficient), "ratio": k.ratio.to_string() }))
                .collect();
            json!({ "generators": gens })
        }
        Command::Scaling { a, corep, t } => {
            let p = cx.algebra(&a.algebra)?;
            let c = cx.corep(&p, corep.as_deref())?;
            cx.input("t", t);
            let s2: Vec<Vec<String>> =
                s_squared(&c).iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            json!({ "s_squared": s2, "table": to_json(scaling_table(&c, *t)) })
        }
        Command::Filtration { a, n, degree } => {
            let p = cx.algebra(&a.algebra)?;
            cx.input("n", n);
            let q = cx.quotient(p, *degree)?;
            to_json(filtration_probe(&q, *n)?)
        }
        Command::O2plusDescent { algebra, degree, nmax } => {
            let p = cx.algebra(algebra)?;
            cx.input("nmax", nmax);
            let q = cx.quotient(p, *degree)?;
            to_json(o2plus_descent_check(&q, *nmax)?)
        }
        Command::Class2 { group } => {
            cx.input("group", group);
            to_json(class2_quotient(&dsl::resolve_group(&cx.ws, group)?)?)
        }
        Command::TorsionFree { group } => {
            cx.input("group", group);
            to_json(torsion_free_reduce(&class2_quotient(&dsl::resolve_group(&cx.ws, group)?)?)?)
        }
        Command::GaussianPartDual { group, len } => {
            cx.input("group", group);
            cx.input("len", len);
            let q = torsion_free_reduce(&class2_quotient(&dsl::resolve_group(&cx.ws, group)?)?)?;
            let cg = central_gaussian(&q)?;
            let r = cg.malcev.abelian_rank;
            let center: Vec<String> = (1..=cg.malcev.central_rank)
                .map(|k| cg.value(&[(r + k) as Letter]).map(|v| v.to_string()))
                .collect::<Result<_>>()?;
            let alg = cg.presentation();
            json!({
                "quotient": to_json(&q),
                "algebra": { "name": alg.name, "generators": alg.ngens() },
                "functional": cg.datum.render(&alg.name),
                "lambda": cg.lambda.to_string(),
                "center_values": center,
                "positivity": to_json(cg.conditional_positivity(*len)?),
            })
        }
        Command::Axioms { a, degree } => {
            let p = cx.algebra(&a.algebra)?;
            cx.ws.config.degree = *degree;
            cx.ws.config.validate()?;
            let samples: Vec<Word> = default_samples(&p);
            let r = hopf_axiom_probe(p, &samples, *degree)?;
            cx.ws.config.degree = Some(r.degree);
            cx.warnings.extend(r.warnings.iter().cloned());
            to_json(r)
        }
    })
}

/// Rounds every non-integer number to 12 significant digits.
fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(0.0);
            let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
            *v = serde_json::Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null);
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(m) => m.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Loads the workspace and runs one command.
pub fn run(cli: &Cli) -> Result<Report> {
    let mut ws = Workspace::new();
    for path in &cli.file {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        ws.load(&src)?;
    }
    let files: Vec<String> = cli.file.iter().map(|p| p.display().to_string()).collect();
    run_in(ws, &files, &cli.command)
}

/// Runs one command against an already loaded workspace; `files` is only echoed in the inputs.
pub fn run_in(ws: Workspace, files: &[String], command: &Command) -> Result<Report> {
    let mut cx = Ctx { warnings: ws.warnings(), ws, inputs: Map::new() };
    if !files.is_empty() {
        cx.input("files", files.to_vec());
    }
    let mut result = execute(command, &mut cx)?;
    round_floats(&mut result);
    let c = &cx.ws.config;
    let mut config =
        json!({ "degree": c.degree, "order": c.order, "tolerance": c.tolerance, "max_basis": c.max_basis });
    round_floats(&mut config);
    Ok(Report {
        command: command.name().to_string(),
        inputs: Value::Object(cx.inputs),
        config,
        result,
        warnings: cx.warnings,
    })
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(o) if !o.is_empty() => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    Value::Array(a) if a.iter().any(|e| e.is_object() || e.is_array()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x))),
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match x {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar_text(x))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar_text(v))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) if s.contains('\n') => format!("|\n{}", s.trim_end()),
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        let mut body = Map::new();
        for (k, v) in [("inputs", &self.inputs), ("config", &self.config), ("result", &self.result)] {
            body.insert(k.to_string(), v.clone());
        }
        render_text(&Value::Object(body), 1, &mut out);
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } | Error::DegreeOverflow { .. } => 2,
        _ => 1,
    }
}

/// Parses a full argument list, program name first; the error is clap's rendered message.
pub fn parse_args<I, T>(args: I) -> std::result::Result<Cli, String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(args).map_err(|e| e.render().to_string())
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match run(&cli) {
        Ok(r) => {
            let _ = writeln!(out, "{}", if cli.json { r.to_json() } else { r.to_text() }.trim_end());
            0
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(err, "{}", json!({ "command": cli.command.name(), "error": e.to_string() }));
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = main_with(std::iter::once("hgauss").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn json_of(args: &[&str]) -> Value {
        let mut a = args.to_vec();
        a.push("--json");
        let (code, out, err) = run_args(&a);
        assert_eq!(code, 0, "{err}");
        serde_json::from_str(&out).unwrap()
    }

    #[test]
    fn solve_su_q2() {
        let v = json_of(&["solve", "--algebra", "su_q2:1/2"]);
        assert_eq!(v["command"], "solve");
        assert_eq!(v["result"]["dimension"], 2);
        let forced = v["result"]["eta_forced_zero"].as_array().unwrap();
        assert!(forced.contains(&json!("gamma")) && forced.contains(&json!("gamma*")));
    }

    #[test]
    fn exp_state_heat() {
        let v = json_of(&["exp-state", "--functional", "heat", "--t", "1", "--word", "u^3", "--order", "30"]);
        let re = v["result"]["re"].as_f64().unwrap();
        assert!((re - (-4.5f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn json_is_deterministic() {
        let a = run_args(&["kinfty", "--algebra", "group:Z2", "--degree", "4", "--nmax", "4", "--json"]);
        let b = run_args(&["kinfty", "--algebra", "group:Z2", "--degree", "4", "--nmax", "4", "--json"]);
        assert_eq!(a.0, 0, "{}", a.2);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["solve"]).0, 1);
        assert_eq!(run_args(&["solve", "--algebra", "nothing"]).0, 1);
        assert_eq!(run_args(&["--help"]).0, 0);
        assert_eq!(exit_code(&Error::CapExceeded { required: 10, cap: 5 }), 2);
    }

    #[test]
    fn text_output_and_groups() {
        let (code, out, _) = run_args(&["class2", "--group", "F2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("class2\n"));
        let v = json_of(&["gaussian-part-dual", "--group", "Z2*Z2", "--len", "1"]);
        assert_eq!(v["result"]["algebra"]["generators"], 0);
    }

    #[test]
    fn parse_real_accepts_rationals_and_decimals() {
        assert_eq!(parse_real("1/4"), Ok(0.25));
        assert_eq!(parse_real("0.1"), Ok(0.1));
        assert!(parse_real("x").is_err());
    }
}
