//! Linear classification of Gaussian data on a presentation.
//!
//! Every complex unknown is split into real and imaginary parts. Drift
//! unknowns come first (`2g`, `2g+1`), then the hermitian Gram matrix: one
//! real unknown per diagonal entry and a real/imaginary pair per entry above
//! the diagonal.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::wick::{wick_poly, GaussianTables, LinForm, WickValue};
use super::GaussianDatum;
use crate::error::Result;
use crate::exact::{Echelon, Scalar, ScalarMatrix, SparseVec};
use crate::freestar::{derivation_coefficients, NCPoly};
use crate::hopf::HopfPresentation;

struct Layout {
    n: usize,
}

impl Layout {
    fn nvars(&self) -> usize {
        2 * self.n + self.n * self.n
    }

    fn drift(&self, g: usize) -> (usize, usize) {
        (2 * g, 2 * g + 1)
    }

    /// Offset of the Gram block entry `(a, b)` for `a <= b`.
    fn gram_slot(&self, a: usize, b: usize) -> usize {
        debug_assert!(a <= b);
        // row a of the upper triangle starts after rows 0..a
        let before: usize = (0..a).map(|r| 1 + 2 * (self.n - r - 1)).sum();
        2 * self.n + before + if a == b { 0 } else { 1 + 2 * (b - a - 1) }
    }

    fn gram(&self, a: usize, b: usize) -> LinForm {
        if a == b {
            return LinForm::var(self.gram_slot(a, a), Scalar::one());
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let s = self.gram_slot(lo, hi);
        let im = if a < b { Scalar::i() } else { -Scalar::i() };
        LinForm::var(s, Scalar::one()).add(&LinForm::var(s + 1, im))
    }

    fn gram_vars(&self, a: usize, b: usize) -> Vec<usize> {
        if a == b {
            vec![self.gram_slot(a, a)]
        } else {
            let s = self.gram_slot(a.min(b), a.max(b));
            vec![s, s + 1]
        }
    }

    fn imaginary_gram_vars(&self) -> Vec<usize> {
        (0..self.n).flat_map(|a| (a + 1..self.n).map(move |b| (a, b))).map(|(a, b)| self.gram_slot(a, b) + 1).collect()
    }
}

struct Symbolic<'p> {
    p: &'p HopfPresentation,
    lay: Layout,
    eta_star: Vec<BTreeMap<u32, Scalar>>,
}

impl GaussianTables<LinForm> for Symbolic<'_> {
    fn eps(&self, g: u32) -> &Scalar {
        &self.p.counit_table[g as usize]
    }

    fn drift(&self, g: u32) -> LinForm {
        let (re, im) = self.lay.drift(g as usize);
        LinForm::var(re, Scalar::one()).add(&LinForm::var(im, Scalar::i()))
    }

    fn pair(&self, a: u32, b: u32) -> LinForm {
        let mut v = self.drift(b).scale(self.eps(a)).add(&self.drift(a).scale(self.eps(b)));
        for (c, l) in &self.eta_star[a as usize] {
            v = v.add(&self.lay.gram(*c as usize, b as usize).scale(&l.conj()));
        }
        v
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisElement {
    pub drift: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub gram_psd: bool,
}

/// Solution space of the linear Gaussian constraints on a presentation.
#[derive(Clone, Debug)]
pub struct SolutionSpace {
    pub presentation: Arc<HopfPresentation>,
    /// Real dimension.
    pub dimension: usize,
    pub basis: Vec<Vec<BigRational>>,
    /// Generators whose cocycle value vanishes on every solution.
    pub eta_forced_zero: Vec<u32>,
    /// Generators whose drift vanishes on every solution.
    pub phi_forced_zero: Vec<u32>,
    /// Complex basis of the vectors `(η(g))_g` allowed by the relations.
    pub cocycle_space: Vec<Vec<Scalar>>,
    /// Every solution has a real Gram matrix.
    pub gram_forced_real: bool,
    /// Real dimension of the solutions with zero Gram matrix.
    pub drift_dimension: usize,
    pub drift_basis: Vec<Vec<BigRational>>,
    pub constraints: usize,
}

impl SolutionSpace {
    fn layout(&self) -> Layout {
        Layout { n: self.presentation.ngens() }
    }

    /// The datum with the given real coordinates.
    pub fn datum_from_vector(&self, name: &str, x: &[BigRational]) -> Result<GaussianDatum> {
        let lay = self.layout();
        let n = lay.n;
        let xs: Vec<Scalar> = x.iter().cloned().map(Scalar::real).collect();
        let drift = (0..n)
            .map(|g| {
                let (re, im) = lay.drift(g);
                Scalar::new(x[re].clone(), x[im].clone())
            })
            .collect();
        let mut gram = ScalarMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                gram[(a, b)] = lay.gram(a, b).eval(&xs);
            }
        }
        GaussianDatum::new(name, self.presentation.clone(), drift, gram)
    }

    /// `Σ cₖ · basis[k]`.
    pub fn combine(&self, name: &str, coeffs: &[BigRational]) -> Result<GaussianDatum> {
        let mut x = vec![BigRational::zero(); self.layout().nvars()];
        for (c, v) in coeffs.iter().zip(&self.basis) {
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi += c * vi;
            }
        }
        self.datum_from_vector(name, &x)
    }

    pub fn basis_data(&self) -> Result<Vec<GaussianDatum>> {
        self.basis.iter().enumerate().map(|(k, v)| self.datum_from_vector(&format!("basis{}", k + 1), v)).collect()
    }

    pub fn describe_basis(&self) -> Result<Vec<BasisElement>> {
        self.basis_data()?
            .into_iter()
            .map(|d| {
                let g = d.gram();
                Ok(BasisElement {
                    drift: d.drift().iter().map(|x| x.to_string()).collect(),
                    gram: g.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
                    gram_psd: g.psd_check()?.is_psd(),
                })
            })
            .collect()
    }
}

fn push_complex(e: &mut Echelon<BigRational>, l: &LinForm) -> usize {
    let re: SparseVec<BigRational> =
        l.0.iter().filter(|(_, c)| !c.re.is_zero()).map(|(k, c)| (*k, c.re.clone())).collect();
    let im: SparseVec<BigRational> =
        l.0.iter().filter(|(_, c)| !c.im.is_zero()).map(|(k, c)| (*k, c.im.clone())).collect();
    let mut added = 0;
    for v in [re, im] {
        if !v.is_empty() {
            e.insert(v);
            added += 1;
        }
    }
    added
}

fn kernel(e: &Echelon<BigRational>, nvars: usize) -> Vec<Vec<BigRational>> {
    e.kernel_basis(nvars)
        .into_iter()
        .map(|v| {
            let mut d = vec![BigRational::zero(); nvars];
            for (k, x) in v {
                d[k] = x;
            }
            d
        })
        .collect()
}

fn all_zero(basis: &[Vec<BigRational>], vars: &[usize]) -> bool {
    basis.iter().all(|v| vars.iter().all(|&k| v[k].is_zero()))
}

/// Assembles and solves the affine constraints: hermitian drift, `η(r) = 0`
/// (as `G·c(r) = 0`), and `φ(r) = φ(g r) = φ(r g) = 0` for every relation.
/// Positivity of the Gram matrix is not imposed.
pub fn solve_gaussian_space(p: Arc<HopfPresentation>) -> Result<SolutionSpace> {
    let n = p.ngens();
    let lay = Layout { n };
    let nvars = lay.nvars();
    let eta_star = p
        .star_table
        .iter()
        .map(|s| derivation_coefficients(s, |g| Ok(p.counit_table[g as usize].clone())))
        .collect::<Result<Vec<_>>>()?;
    let sym = Symbolic { p: &p, lay: Layout { n }, eta_star };
    let mut sys = Echelon::<BigRational>::new();
    let mut constraints = 0;

    for g in 0..n {
        let lhs = wick_poly(&sym, &p.star_table[g]);
        let rhs = sym.drift(g as u32).conj();
        constraints += push_complex(&mut sys, &lhs.sub(&rhs));
    }

    let mut cocycle = Echelon::<Scalar>::new();
    for r in &p.relations {
        let c = derivation_coefficients(r, |g| Ok(p.counit_table[g as usize].clone()))?;
        if !c.is_empty() {
            cocycle.insert(c.iter().map(|(g, x)| (*g as usize, x.clone())).collect());
        }
        for a in 0..n {
            let mut row = LinForm::zero();
            for (b, x) in &c {
                row = row.add(&lay.gram(a, *b as usize).scale(x));
            }
            constraints += push_complex(&mut sys, &row);
        }
        constraints += push_complex(&mut sys, &wick_poly(&sym, r));
        for g in 0..n as u32 {
            let gp = NCPoly::gen(g);
            constraints += push_complex(&mut sys, &wick_poly(&sym, &(&gp * r)));
            constraints += push_complex(&mut sys, &wick_poly(&sym, &(r * &gp)));
        }
    }

    let basis = kernel(&sys, nvars);
    let eta_forced_zero = (0..n)
        .filter(|&g| all_zero(&basis, &(0..n).flat_map(|a| lay.gram_vars(a, g)).collect::<Vec<_>>()))
        .map(|g| g as u32)
        .collect();
    let phi_forced_zero = (0..n)
        .filter(|&g| {
            let (re, im) = lay.drift(g);
            all_zero(&basis, &[re, im])
        })
        .map(|g| g as u32)
        .collect();
    let gram_forced_real = all_zero(&basis, &lay.imaginary_gram_vars());

    let mut drift_sys = sys.clone();
    for k in 2 * n..nvars {
        drift_sys.insert(std::iter::once((k, BigRational::one())).collect());
    }
    let drift_basis = kernel(&drift_sys, nvars);

    let cocycle_space = cocycle
        .kernel_basis(n)
        .into_iter()
        .map(|v| (0..n).map(|k| v.get(&k).cloned().unwrap_or_else(Scalar::zero)).collect())
        .collect();

    Ok(SolutionSpace {
        dimension: basis.len(),
        basis,
        eta_forced_zero,
        phi_forced_zero,
        cocycle_space,
        gram_forced_real,
        drift_dimension: drift_basis.len(),
        drift_basis,
        constraints,
        presentation: p,
    })
}

/// Coordinates of the antisymmetric part: the set of index pairs `(i, j)`,
/// `i < j`, on which a cocycle-space vector over a matrix corepresentation is
/// supported, with the sign relation between `(i, j)` and `(j, i)`.
pub fn is_antisymmetric_space(space: &[Vec<Scalar>], idx: &dyn Fn(usize, usize) -> usize, dim: usize) -> bool {
    let mut support = BTreeSet::new();
    for v in space {
        for i in 0..dim {
            if !v[idx(i, i)].is_zero() {
                return false;
            }
            for j in 0..dim {
                if v[idx(i, j)] != -&v[idx(j, i)] {
                    return false;
                }
                if !v[idx(i, j)].is_zero() && i < j {
                    support.insert((i, j));
                }
            }
        }
    }
    space.len() == dim * (dim - 1) / 2 && support.len() == space.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::gaussian::check_consistency;
    use crate::hopf;

    fn names(p: &HopfPresentation, gs: &[u32]) -> Vec<String> {
        gs.iter().map(|g| p.symbol(*g).to_string()).collect()
    }

    #[test]
    fn layout_slots_are_distinct() {
        let lay = Layout { n: 4 };
        let mut seen = BTreeSet::new();
        for a in 0..4 {
            for b in a..4 {
                for v in lay.gram_vars(a, b) {
                    assert!(v >= 8 && v < lay.nvars() && seen.insert(v));
                }
            }
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn integers_space() {
        let s = solve_gaussian_space(crate::gaussian::examples::integers()).unwrap();
        // Im φ(u) and ‖η(u)‖²
        assert_eq!(s.dimension, 2);
        assert_eq!(s.drift_dimension, 1);
        assert!(s.eta_forced_zero.is_empty());
        for d in s.basis_data().unwrap() {
            assert!(check_consistency(&d).unwrap().violations.iter().all(|v| v.constraint.contains("semidefinite")));
        }
    }

    #[test]
    fn su_half_is_the_torus() {
        let p = Arc::new(hopf::su_q2(&rat(1, 2)).unwrap());
        let s = solve_gaussian_space(p.clone()).unwrap();
        assert_eq!(s.dimension, 2);
        assert_eq!(names(&p, &s.eta_forced_zero), ["gamma", "gamma*"]);
        assert_eq!(names(&p, &s.phi_forced_zero), ["gamma", "gamma*"]);
    }

    #[test]
    fn zero_generators() {
        let p = HopfPresentation::new("trivial", crate::freestar::Alphabet::new());
        let s = solve_gaussian_space(Arc::new(p)).unwrap();
        assert_eq!(s.dimension, 0);
    }

    fn idx3(i: usize, j: usize) -> usize {
        3 * i + j
    }

    #[test]
    fn o3_star_is_so3() {
        let p = Arc::new(hopf::o_n_star(3).unwrap());
        let s = solve_gaussian_space(p.clone()).unwrap();
        assert!(is_antisymmetric_space(&s.cocycle_space, &idx3, 3));
        assert!(s.gram_forced_real);
        assert_eq!(s.drift_dimension, 3);
    }

    #[test]
    fn twisted_o3_kills_off_diagonal_drift() {
        let p = Arc::new(hopf::o_n_twisted(3).unwrap());
        let s = solve_gaussian_space(p.clone()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(s.phi_forced_zero.contains(&(idx3(i, j) as u32)));
                }
            }
        }
    }
}
