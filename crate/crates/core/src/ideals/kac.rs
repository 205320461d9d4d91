use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::exact::rat_to_f64;
use crate::freestar::NCPoly;
use crate::hopf::{q_ratio, Corepresentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KacGenerator {
    pub i: usize,
    pub j: usize,
    pub coefficient: NCPoly,
    pub ratio: BigRational,
}

/// The coefficients `u_ij` with `q_i ≠ q_j`; they generate the ideal of the
/// maximal Kac type quantum subgroup.
pub fn kac_generators(c: &Corepresentation) -> Vec<KacGenerator> {
    let n = c.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if c.q_eigenvalues[i] != c.q_eigenvalues[j] {
                out.push(KacGenerator { i, j, coefficient: c.coeffs[i][j].clone(), ratio: q_ratio(c, i, j) });
            }
        }
    }
    out
}

/// `S²(u_ij) = (q_i/q_j)·u_ij`.
pub fn s_squared(c: &Corepresentation) -> Vec<Vec<BigRational>> {
    let n = c.dim();
    (0..n).map(|i| (0..n).map(|j| q_ratio(c, i, j)).collect()).collect()
}

/// Phases of the scaling group, `τ_t(u_ij) = exp(−i t ln(q_i/q_j))·u_ij`.
pub fn scaling_action(c: &Corepresentation, t: f64) -> Vec<Vec<Complex64>> {
    s_squared(c)
        .iter()
        .map(|row| row.iter().map(|r| Complex64::new(0.0, -t * rat_to_f64(r).ln()).exp()).collect())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingEntry {
    pub i: usize,
    pub j: usize,
    pub s_squared: String,
    pub phase: (f64, f64),
}

pub fn scaling_table(c: &Corepresentation, t: f64) -> Vec<ScalingEntry> {
    let s2 = s_squared(c);
    let ph = scaling_action(c, t);
    let n = c.dim();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| ScalingEntry {
            i: i + 1,
            j: j + 1,
            s_squared: s2[i][j].to_string(),
            phase: (ph[i][j].re, ph[i][j].im),
        })
        .collect()
}
