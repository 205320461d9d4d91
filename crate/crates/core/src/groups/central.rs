//! A Gaussian functional on `ℂ[Λ]` that is nonzero on the center of a
//! torsion-free class-2 group `Λ`.
//!
//! Cocycles of a Gaussian functional on a group algebra are homomorphisms
//! `Λ → H`, so they vanish on `z_k`, and `φ` restricted to `√γ₂Λ` is additive.
//! The functional is carried by the abelian layer instead: with
//! `G[x_i][x_j] = λ δ_ij + i B_ij` one gets `φ([x_i, x_j]) = -2i B_ij`, and
//! choosing `B_ij = Σ_k Ω_ij,k` makes `φ(z_k) = -2i` consistent with every
//! collection rule. On an abelian layer with no commutators this is the heat
//! functional `φ(u^k) = -λ k²/2`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::class2::{malcev_of, Class2Quotient, Malcev};
use super::fp::{free_reduce, invert, Letter};
use crate::error::Result;
use crate::exact::{Scalar, ScalarMatrix};
use crate::gaussian::GaussianDatum;
use crate::hopf::{group_algebra, group_element, HopfPresentation};

#[derive(Clone, Debug)]
pub struct CentralGaussian {
    pub malcev: Malcev,
    pub datum: Arc<GaussianDatum>,
    /// Diagonal of the Gram matrix on the abelian layer.
    pub lambda: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityCheck {
    pub max_len: usize,
    pub elements: usize,
    pub psd: bool,
}

/// Builds the functional on the group algebra of the Mal'cev presentation.
/// Errors if the quotient still has torsion.
pub fn central_gaussian(c: &Class2Quotient) -> Result<CentralGaussian> {
    let m = malcev_of(c)?;
    let p = Arc::new(group_algebra(&m.group)?);
    let (r, s) = (m.abelian_rank, m.central_rank);
    let mut b = vec![vec![BigInt::zero(); r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let t: BigInt = m.omega_of(i, j).iter().sum();
            b[j][i] = -t.clone();
            b[i][j] = t;
        }
    }
    let row_sum = b.iter().map(|row| row.iter().map(|x| x.abs()).sum::<BigInt>()).max().unwrap_or_default();
    let lambda = BigRational::from_integer(BigInt::from(2) * row_sum.max(BigInt::from(1)));

    let n = p.ngens();
    let idx = |name: String| p.gen(&name);
    let mut drift = vec![Scalar::zero(); n];
    let mut gram = ScalarMatrix::zeros(n, n);
    let mut xs = Vec::with_capacity(r);
    for i in 1..=r {
        xs.push((idx(format!("x{i}"))?, idx(format!("x{i}^-1"))?));
    }
    let half = Scalar::real(-lambda.clone() / BigRational::from_integer(2.into()));
    for (i, &(x, xi)) in xs.iter().enumerate() {
        drift[x as usize] = half.clone();
        drift[xi as usize] = half.clone();
        for (j, &(y, yi)) in xs.iter().enumerate() {
            let mut v = Scalar::new(BigRational::zero(), BigRational::from_integer(b[i][j].clone()));
            if i == j {
                v = &v + &Scalar::real(lambda.clone());
            }
            gram[(x as usize, y as usize)] = v.clone();
            gram[(xi as usize, yi as usize)] = v.clone();
            gram[(x as usize, yi as usize)] = -&v;
            gram[(xi as usize, y as usize)] = -&v;
        }
    }
    for k in 1..=s {
        drift[idx(format!("z{k}"))? as usize] = Scalar::complex((0, 1), (-2, 1));
        drift[idx(format!("z{k}^-1"))? as usize] = Scalar::complex((0, 1), (2, 1));
    }
    let datum = GaussianDatum::new(format!("central({})", m.group.name), p, drift, gram)?;
    Ok(CentralGaussian { malcev: m, datum: Arc::new(datum), lambda })
}

impl CentralGaussian {
    pub fn presentation(&self) -> &Arc<HopfPresentation> {
        &self.datum.presentation
    }

    /// `φ` on a word in the Mal'cev generators (letters as in the exported group).
    pub fn value(&self, word: &[Letter]) -> Result<Scalar> {
        let x = group_element(self.presentation(), &self.malcev.group, word)?;
        self.datum.wick_eval(&x)
    }

    /// Generator ids of the letters `±1..=±n` of the Mal'cev group, indexed by `n + l`.
    fn letter_ids(&self) -> Result<Vec<u32>> {
        let g = &self.malcev.group;
        let n = g.ngens() as Letter;
        let p = self.presentation();
        (-n..=n)
            .map(|l| match l {
                0 => Ok(u32::MAX),
                l if l > 0 => p.gen(&g.names[l as usize - 1]),
                l => p.gen(&format!("{}^-1", g.names[(-l) as usize - 1])),
            })
            .collect()
    }

    /// `φ` on a word of group-likes: with `ε = 1` on every letter the Wick
    /// formula reduces to `Σ φ(l_i) + Σ_{i<j} (φ(l_i l_j) − φ(l_i) − φ(l_j))`.
    fn grouplike_value(&self, word: &[Letter], ids: &[u32], cross: &[Vec<Scalar>]) -> Scalar {
        let n = self.malcev.group.ngens() as Letter;
        let at = |l: Letter| (l + n) as usize;
        let mut v = Scalar::zero();
        for (i, &a) in word.iter().enumerate() {
            v = &v + &self.datum.drift()[ids[at(a)] as usize];
            for &b in &word[i + 1..] {
                v = &v + &cross[at(a)][at(b)];
            }
        }
        v
    }

    fn cross_table(&self, ids: &[u32]) -> Result<Vec<Vec<Scalar>>> {
        let d = &self.datum;
        ids.iter()
            .map(|&a| {
                ids.iter()
                    .map(|&b| {
                        if a == u32::MAX || b == u32::MAX {
                            return Ok(Scalar::zero());
                        }
                        let ab = d.pair_value(a, b)?;
                        Ok(&(&ab - &d.drift()[a as usize]) - &d.drift()[b as usize])
                    })
                    .collect()
            })
            .collect()
    }

    /// Freely reduced words of length at most `max_len` in the Mal'cev generators.
    pub fn words(&self, max_len: usize) -> Vec<Vec<Letter>> {
        let n = self.malcev.group.ngens() as Letter;
        let letters: Vec<Letter> = (1..=n).flat_map(|l| [l, -l]).collect();
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for &l in &letters {
                    if w.last() == Some(&-l) {
                        continue;
                    }
                    let mut v: Vec<Letter> = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Exact check that `[φ(g⁻¹h) − φ(g⁻¹) − φ(h)]` is hermitian and PSD over
    /// all freely reduced words of length at most `max_len`.
    pub fn conditional_positivity(&self, max_len: usize) -> Result<PositivityCheck> {
        let words = self.words(max_len);
        let ids = self.letter_ids()?;
        let cross = self.cross_table(&ids)?;
        let value = |w: &[Letter]| self.grouplike_value(w, &ids, &cross);
        let inv: Vec<Vec<Letter>> = words.iter().map(|w| invert(w)).collect();
        let single: Vec<Scalar> = words.iter().map(|w| value(w)).collect();
        let single_inv: Vec<Scalar> = inv.iter().map(|w| value(w)).collect();
        let k = words.len();
        let mut mat = ScalarMatrix::zeros(k, k);
        for g in 0..k {
            for h in 0..k {
                let mut w = inv[g].clone();
                w.extend_from_slice(&words[h]);
                mat[(g, h)] = &(&value(&free_reduce(&w)) - &single_inv[g]) - &single[h];
            }
        }
        let psd = mat.is_hermitian() && mat.psd_check()?.is_psd();
        Ok(PositivityCheck { max_len, elements: k, psd })
    }
}
