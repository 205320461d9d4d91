use std::collections::HashMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use super::Functional;
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::freestar::{NCPoly, Word};

/// The right multiplication operator `ψ ↦ ψ ⋆ φ` restricted to the words
/// reachable from some seeds through left coproduct legs. Row `w` lists the
/// pairs `(w', c·φ(w''))` for the terms `c·w'⊗w''` of `Δ(w)`.
pub struct ConvolutionSystem<'f> {
    phi: &'f Functional,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    rows: Vec<Vec<(usize, Scalar)>>,
    counit: Vec<Scalar>,
    phi_cache: HashMap<Word, Scalar>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpValue {
    pub re: f64,
    pub im: f64,
    /// Magnitude of the last Taylor term of the scaled series.
    pub last_term: f64,
    pub converged: bool,
}

impl ExpValue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExpConfig {
    pub order: usize,
    /// Bound on the change when `order` is doubled.
    pub tolerance: f64,
    /// Largest connected block handled densely.
    pub max_block: usize,
}

impl Default for ExpConfig {
    fn default() -> Self {
        ExpConfig { order: 30, tolerance: 1e-9, max_block: 4096 }
    }
}

impl<'f> ConvolutionSystem<'f> {
    pub fn new<'a>(phi: &'f Functional, seeds: impl IntoIterator<Item = &'a Word>) -> Result<Self> {
        let mut s = ConvolutionSystem {
            phi,
            words: Vec::new(),
            index: HashMap::new(),
            rows: Vec::new(),
            counit: Vec::new(),
            phi_cache: HashMap::new(),
        };
        for w in seeds {
            s.intern(w)?;
        }
        Ok(s)
    }

    pub fn for_polys(phi: &'f Functional, xs: &[NCPoly]) -> Result<Self> {
        let words: Vec<Word> = xs.iter().flat_map(|x| x.terms().map(|(w, _)| w.clone())).collect();
        Self::new(phi, &words)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    fn phi_word(&mut self, w: &Word) -> Result<Scalar> {
        if let Some(v) = self.phi_cache.get(w) {
            return Ok(v.clone());
        }
        let v = self.phi.eval_word(w)?;
        self.phi_cache.insert(w.clone(), v.clone());
        Ok(v)
    }

    fn intern(&mut self, w: &Word) -> Result<usize> {
        if let Some(&k) = self.index.get(w) {
            return Ok(k);
        }
        let p = self.phi.presentation().clone();
        let mut stack = vec![w.clone()];
        let root = self.push_word(w, &p);
        while let Some(w) = stack.pop() {
            let k = self.index[&w];
            let mut acc: HashMap<Word, Scalar> = HashMap::new();
            for (legs, c) in p.coproduct_word(&w).terms() {
                let v = self.phi_word(&legs[1])?;
                if v.is_zero() {
                    continue;
                }
                *acc.entry(legs[0].clone()).or_insert_with(Scalar::zero) += &(c * &v);
            }
            let mut row = Vec::new();
            for (l, c) in acc.into_iter().filter(|(_, c)| !c.is_zero()) {
                let j = match self.index.get(&l) {
                    Some(&j) => j,
                    None => {
                        stack.push(l.clone());
                        self.push_word(&l, &p)
                    }
                };
                row.push((j, c));
            }
            row.sort_by_key(|(j, _)| *j);
            self.rows[k] = row;
        }
        Ok(root)
    }

    fn push_word(&mut self, w: &Word, p: &crate::hopf::HopfPresentation) -> usize {
        let k = self.words.len();
        self.words.push(w.clone());
        self.index.insert(w.clone(), k);
        self.rows.push(Vec::new());
        self.counit.push(p.counit_word(w));
        k
    }

    fn step(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rows.iter().map(|row| row.iter().map(|(j, c)| c * &v[*j]).sum()).collect()
    }

    /// `φ^{⋆n}` on every word of the system, for `n = 0..=max`; `φ^{⋆0} = ε`.
    pub fn powers(&self, max: usize) -> Vec<Vec<Scalar>> {
        let mut out = vec![self.counit.clone()];
        for _ in 0..max {
            let next = self.step(out.last().unwrap());
            out.push(next);
        }
        out
    }

    pub fn value(&self, v: &[Scalar], x: &NCPoly) -> Scalar {
        x.terms().map(|(w, c)| c * &v[self.index[w]]).sum()
    }

    /// Connected blocks of the operator, each sorted.
    fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, row) in self.rows.iter().enumerate() {
            for (j, _) in row {
                let (a, b) = (find(&mut parent, i), find(&mut parent, *j));
                parent[a] = b;
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// `exp_⋆(tφ)` on every word, with the last-term heuristic and a doubling check.
    pub fn exp_state(&self, t: f64, cfg: &ExpConfig) -> Result<Vec<ExpValue>> {
        if cfg.order == 0 {
            return Err(Error::InvalidInput("order must be at least 1".into()));
        }
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::ParameterRange(format!("t must be a finite nonnegative number, got {t}")));
        }
        let mut out = vec![ExpValue { re: 0.0, im: 0.0, last_term: 0.0, converged: true }; self.len()];
        for block in self.blocks() {
            if block.len() > cfg.max_block {
                return Err(Error::CapExceeded { required: block.len(), cap: cfg.max_block });
            }
            let pos: HashMap<usize, usize> = block.iter().enumerate().map(|(a, &b)| (b, a)).collect();
            let m = block.len();
            let mut a = DMatrix::<Complex64>::zeros(m, m);
            for (r, &i) in block.iter().enumerate() {
                for (j, c) in &self.rows[i] {
                    a[(r, pos[j])] = c.to_c64() * t;
                }
            }
            let eps = DVector::from_iterator(m, block.iter().map(|&i| self.counit[i].to_c64()));
            let (v1, last) = expm_apply(&a, &eps, cfg.order);
            let (v2, _) = expm_apply(&a, &eps, 2 * cfg.order);
            for (r, &i) in block.iter().enumerate() {
                let diff = (v1[r] - v2[r]).norm();
                out[i] = ExpValue {
                    re: v1[r].re,
                    im: v1[r].im,
                    last_term: last,
                    converged: diff <= cfg.tolerance * v2[r].norm().max(1.0),
                };
            }
        }
        Ok(out)
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// `exp(A)·v` by scaling and squaring with a Taylor polynomial of the given order.
fn expm_apply(a: &DMatrix<Complex64>, v: &DVector<Complex64>, order: usize) -> (DVector<Complex64>, f64) {
    let norm = (0..a.nrows()).map(|i| a.row(i).iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max);
    let mut s = 0u32;
    while norm / 2f64.powi(s as i32) > 0.5 {
        s += 1;
    }
    let scaled = a / Complex64::new(2f64.powi(s as i32), 0.0);
    let n = a.nrows();
    let mut e = DMatrix::<Complex64>::identity(n, n);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    for k in 1..=order {
        term = &scaled * &term / Complex64::new(k as f64, 0.0);
        e += &term;
    }
    let last = (0..n).map(|i| term.row(i).iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max);
    for _ in 0..s {
        e = &e * &e;
    }
    (e * v, last)
}

/// `φ^{⋆n}(x) = (φ⊗⋯⊗φ)Δ^{(n−1)}(x)`, with `φ^{⋆0} = ε`.
pub fn convolution_power(phi: &Functional, n: usize, x: &NCPoly) -> Result<Scalar> {
    let sys = ConvolutionSystem::for_polys(phi, std::slice::from_ref(x))?;
    let v = sys.powers(n).pop().unwrap();
    Ok(sys.value(&v, x))
}

/// `φ_t(x) = exp_⋆(tφ)(x)`.
pub fn exp_state(phi: &Functional, t: f64, x: &NCPoly, cfg: &ExpConfig) -> Result<ExpValue> {
    let sys = ConvolutionSystem::for_polys(phi, std::slice::from_ref(x))?;
    let vals = sys.exp_state(t, cfg)?;
    let mut re = 0.0;
    let mut im = 0.0;
    let mut last_term: f64 = 0.0;
    let mut converged = true;
    for (w, c) in x.terms() {
        let e = &vals[sys.index[w]];
        let z = c.to_c64() * e.value();
        re += z.re;
        im += z.im;
        last_term = last_term.max(e.last_term);
        converged &= e.converged;
    }
    Ok(ExpValue { re, im, last_term, converged })
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityReport {
    pub t: f64,
    /// `[φ_t(b_i* b_j)]` as `(re, im)` pairs.
    pub matrix: Vec<Vec<(f64, f64)>>,
    pub min_eigenvalue: f64,
    pub tolerance: f64,
    pub positive: bool,
    pub converged: bool,
}

pub const POSITIVITY_TOLERANCE: f64 = 1e-8;

/// Builds `[φ_t(b_i* b_j)]` and tests it for positive semidefiniteness.
pub fn state_positivity_probe(
    phi: &Functional,
    t: f64,
    family: &[NCPoly],
    cfg: &ExpConfig,
) -> Result<PositivityReport> {
    let p = phi.presentation().clone();
    let stars = family.iter().map(|b| p.star(b)).collect::<Result<Vec<_>>>()?;
    let n = family.len();
    let mut products = Vec::with_capacity(n * n);
    for s in &stars {
        for b in family {
            products.push(s * b);
        }
    }
    let sys = ConvolutionSystem::for_polys(phi, &products)?;
    let vals = sys.exp_state(t, cfg)?;
    let mut converged = true;
    let mut h = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut z = Complex64::new(0.0, 0.0);
            for (w, c) in products[i * n + j].terms() {
                let e = &vals[sys.index[w]];
                converged &= e.converged;
                z += c.to_c64() * e.value();
            }
            h[(i, j)] = z;
        }
    }
    let min_eigenvalue = min_hermitian_eigenvalue(&h);
    Ok(PositivityReport {
        t,
        matrix: (0..n).map(|i| (0..n).map(|j| (h[(i, j)].re, h[(i, j)].im)).collect()).collect(),
        min_eigenvalue,
        tolerance: POSITIVITY_TOLERANCE,
        positive: min_eigenvalue >= -POSITIVITY_TOLERANCE,
        converged,
    })
}

/// Smallest eigenvalue of the hermitian part of `h`, through the real
/// symmetric embedding `[[A, −B], [B, A]]`.
pub fn min_hermitian_eigenvalue(h: &DMatrix<Complex64>) -> f64 {
    let n = h.nrows();
    if n == 0 {
        return 0.0;
    }
    let mut r = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            r[(i, j)] = z.re;
            r[(i + n, j + n)] = z.re;
            r[(i, j + n)] = -z.im;
            r[(i + n, j)] = z.im;
        }
    }
    SymmetricEigen::new(r).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// All words of length at most `d`, the unit included.
pub fn word_family(ngens: usize, d: usize) -> Vec<NCPoly> {
    Word::all_up_to(ngens as u32, d).into_iter().map(NCPoly::word).collect()
}
