//! Class-2 nilpotent quotients `Γ/γ₃Γ` and their torsion-free reductions `Γ/√γ₃Γ`.
//!
//! Elements of the free class-2 nilpotent group are `g^a · c^b` with
//! `a ∈ ℤ^n` and `b` indexed by pairs `i < j`, `c_ij = [g_i, g_j]`. With the
//! commutator `[x, y] = x y x⁻¹ y⁻¹` the collection law is
//! `(a, b)(a', b') = (a + a', b + b' + B(a, a'))`, `B(a, a')_ij = -a_j a'_i`.
//! The rational log coordinates `(a, b - B(a, a)/2)` turn this into the Lie
//! algebra with bracket `ω(x, y)_ij = x_i y_j - x_j y_i`, which is how the
//! isolator of the relator subgroup (and so the torsion-free quotient) is found.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::fp::{commutator, FpGroup, Letter};
use super::lattice::{covolume, lattice_basis, saturation, solve, to_q, to_z, unimodular_inverse, QVec};
use crate::error::{Error, Result};
#[cfg(test)]
use crate::exact::Scalar;
use crate::exact::{integer_kernel, smith_normal_form, Echelon, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Elem {
    a: Vec<BigInt>,
    b: Vec<BigInt>,
}

/// Free class-2 nilpotent group on `n` generators.
struct Free2 {
    n: usize,
}

impl Free2 {
    fn m(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    fn pair(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j);
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|i| (i + 1..self.n).map(move |j| (i, j))).collect()
    }

    fn identity(&self) -> Elem {
        Elem { a: vec![BigInt::zero(); self.n], b: vec![BigInt::zero(); self.m()] }
    }

    fn cross(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        self.pairs().into_iter().map(|(i, j)| -(&x[j] * &y[i])).collect()
    }

    fn omega(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        self.pairs().into_iter().map(|(i, j)| &x[i] * &y[j] - &x[j] * &y[i]).collect()
    }

    fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let c = self.cross(&x.a, &y.a);
        Elem {
            a: x.a.iter().zip(&y.a).map(|(p, q)| p + q).collect(),
            b: x.b.iter().zip(&y.b).zip(c).map(|((p, q), r)| p + q + r).collect(),
        }
    }

    /// `x^k = (k a, k b + k(k-1)/2 · B(a, a))`, valid for every integer `k`.
    fn pow(&self, x: &Elem, k: &BigInt) -> Elem {
        let tri: BigInt = k * (k - BigInt::one()) / BigInt::from(2);
        let c = self.cross(&x.a, &x.a);
        Elem { a: x.a.iter().map(|p| p * k).collect(), b: x.b.iter().zip(c).map(|(p, r)| p * k + &tri * r).collect() }
    }

    fn inv(&self, x: &Elem) -> Elem {
        self.pow(x, &-BigInt::one())
    }

    fn word(&self, w: &[Letter]) -> Elem {
        w.iter().fold(self.identity(), |acc, &l| {
            let mut g = self.identity();
            g.a[(l.unsigned_abs() - 1) as usize] = BigInt::from(l.signum());
            self.mul(&acc, &g)
        })
    }

    /// Central part of the log coordinates, `b - B(a, a)/2`.
    fn log_central(&self, x: &Elem) -> QVec {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let c = self.cross(&x.a, &x.a);
        x.b.iter()
            .zip(c)
            .map(|(p, r)| BigRational::from_integer(p.clone()) - BigRational::from_integer(r) * &half)
            .collect()
    }
}

/// A finitely generated abelian group `ℤ^rank ⊕ ⨁ ℤ/t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Layer {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl Layer {
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// `[left, right]` in coordinates of the commutator layer: torsion factors first, then free ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bracket {
    pub left: String,
    pub right: String,
    pub value: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorImage {
    pub generator: String,
    pub abelian: Vec<i64>,
    pub central: Vec<i64>,
}

/// Mal'cev basis `x_1..x_r, z_1..z_s` of a torsion-free class-2 group:
/// every element is `x^a z^c`, the `z_k` are central and `[x_i, x_j] = z^{Ω_ij}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Malcev {
    pub abelian_rank: usize,
    pub central_rank: usize,
    pub center_rank: usize,
    pub omega: Vec<Bracket>,
    /// Where each generator of the source group lands.
    pub generator_images: Vec<GeneratorImage>,
    pub presentation: String,
    #[serde(skip)]
    pub group: FpGroup,
    #[serde(skip)]
    omega_table: BTreeMap<(usize, usize), Vec<BigInt>>,
}

impl Malcev {
    /// `Ω_ij ∈ ℤ^s` for `i < j`.
    pub fn omega_of(&self, i: usize, j: usize) -> &[BigInt] {
        &self.omega_table[&(i, j)]
    }

    /// Isomorphism invariants: ranks plus the Smith invariants of `Ω` viewed
    /// as a map `Λ²ℤ^r → ℤ^s`.
    pub fn signature(&self) -> (usize, usize, usize, Vec<BigInt>) {
        let rows: IntMatrix = self.omega_table.values().cloned().collect();
        let inv =
            if rows.is_empty() || self.central_rank == 0 { Vec::new() } else { smith_normal_form(&rows).invariants() };
        (self.abelian_rank, self.central_rank, self.center_rank, inv)
    }
}

/// `Γ/γ₃Γ` as layered ℤ-module data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Class2Quotient {
    pub group: String,
    pub abelian: Layer,
    pub commutator: Layer,
    pub bracket: Vec<Bracket>,
    pub torsion_free: bool,
    /// Present once the quotient has been reduced; the layers then describe
    /// `Λ/√γ₂Λ` and `√γ₂Λ`, both free.
    pub malcev: Option<Malcev>,
    #[serde(skip)]
    source: FpGroup,
}

/// Relator data shared by the quotient and its reduction.
struct Relators {
    f: Free2,
    images: Vec<Elem>,
    /// Relator lattice in the abelianized layer.
    lattice: Vec<Vec<BigInt>>,
    /// Relations of the commutator layer: `M ∩ γ₂`.
    central: Vec<Vec<BigInt>>,
}

impl Relators {
    fn new(g: &FpGroup) -> Self {
        let f = Free2 { n: g.ngens() };
        let images: Vec<Elem> = g.relators.iter().map(|r| f.word(r)).collect();
        let lattice: Vec<Vec<BigInt>> = images.iter().map(|e| e.a.clone()).collect();
        let mut central = Vec::new();
        for e in &images {
            for k in 0..f.n {
                let mut unit = vec![BigInt::zero(); f.n];
                unit[k] = BigInt::one();
                central.push(f.omega(&unit, &e.a));
            }
        }
        // products of relators with trivial abelian image
        if !images.is_empty() && f.n > 0 {
            let cols: IntMatrix = (0..f.n).map(|i| images.iter().map(|e| e.a[i].clone()).collect()).collect();
            for kv in integer_kernel(&cols, images.len()) {
                let prod = images.iter().zip(&kv).fold(f.identity(), |acc, (e, k)| f.mul(&acc, &f.pow(e, k)));
                debug_assert!(prod.a.iter().all(Zero::is_zero));
                central.push(prod.b);
            }
        }
        central.retain(|v| v.iter().any(|x| !x.is_zero()));
        Relators { f, images, lattice, central }
    }

    /// `β_s`: central log coordinates of each relator.
    fn betas(&self) -> Vec<QVec> {
        self.images.iter().map(|e| self.f.log_central(e)).collect()
    }

    /// Projection `ℚ^m → ℚ^m / (ℚ·central)` onto the free columns of the echelon form.
    fn projection(&self) -> Projection {
        let mut ech: Echelon<BigRational> = Echelon::new();
        for v in &self.central {
            let sv = v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, BigRational::from_integer(x.clone())))
                .collect();
            ech.insert_reduced(sv);
        }
        let free: Vec<usize> = (0..self.f.m()).filter(|c| !ech.is_pivot(*c)).collect();
        Projection { ech, free }
    }

    /// Rational central part `b - B(a,a)/2 - Σ λ_s β_s` of `x`, whose abelian
    /// image must lie in the rational span of the relator lattice.
    fn central_residue(&self, x: &Elem, betas: &[QVec]) -> Result<QVec> {
        let mut v = self.f.log_central(x);
        if x.a.iter().any(|c| !c.is_zero()) {
            let cols: Vec<QVec> = self.lattice.iter().map(|r| to_q(r)).collect();
            let lambda = solve(&cols, &to_q(&x.a))
                .ok_or_else(|| Error::InvalidInput("element outside the rational relator span".into()))?;
            for (l, beta) in lambda.iter().zip(betas) {
                for (vi, bi) in v.iter_mut().zip(beta) {
                    *vi -= l * bi;
                }
            }
        }
        Ok(v)
    }
}

struct Projection {
    ech: Echelon<BigRational>,
    free: Vec<usize>,
}

impl Projection {
    fn apply(&self, v: &[BigRational]) -> QVec {
        let sv = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        let r = self.ech.reduce(sv);
        self.free.iter().map(|c| r.get(c).cloned().unwrap_or_else(BigRational::zero)).collect()
    }
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Unsupported(format!("integer {x} does not fit in 64 bits")))
}

fn smalls(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(small).collect()
}

/// Abelian group presented by relation rows in `ℤ^cols`, with a coordinate map.
struct Presented {
    layer: Layer,
    v: IntMatrix,
    /// Diagonal entries of the Smith form, padded with zeros to `cols`.
    diag: Vec<BigInt>,
}

impl Presented {
    fn new(rows: &[Vec<BigInt>], cols: usize) -> Result<Self> {
        let (v, diag) = if rows.is_empty() {
            (crate::exact::snf::identity(cols), vec![BigInt::zero(); cols])
        } else {
            let s = smith_normal_form(&rows.to_vec());
            let mut diag: Vec<BigInt> = s.invariants();
            diag.resize(cols, BigInt::zero());
            (s.v, diag)
        };
        let torsion = diag.iter().filter(|d| **d > BigInt::one()).map(small).collect::<Result<_>>()?;
        let rank = diag.iter().filter(|d| d.is_zero()).count();
        Ok(Presented { layer: Layer { rank, torsion }, v, diag })
    }

    /// Coordinates of `x` over the nontrivial factors: torsion entries reduced, then free ones.
    fn coords(&self, x: &[BigInt]) -> Result<Vec<i64>> {
        let y: Vec<BigInt> =
            (0..self.diag.len()).map(|j| x.iter().zip(&self.v).map(|(xi, row)| xi * &row[j]).sum()).collect();
        let mut out = Vec::new();
        for (yj, d) in y.iter().zip(&self.diag) {
            if *d > BigInt::one() {
                out.push(small(&((yj % d + d) % d))?);
            }
        }
        for (yj, d) in y.iter().zip(&self.diag) {
            if d.is_zero() {
                out.push(small(yj)?);
            }
        }
        Ok(out)
    }
}

/// `Γ/γ₃Γ` by collecting relators in the free class-2 nilpotent group.
pub fn class2_quotient(g: &FpGroup) -> Result<Class2Quotient> {
    let rel = Relators::new(g);
    let f = &rel.f;
    let ab = Presented::new(&rel.lattice, f.n)?;
    let comm = Presented::new(&rel.central, f.m())?;
    let mut bracket = Vec::new();
    for (i, j) in f.pairs() {
        let mut e = vec![BigInt::zero(); f.m()];
        e[f.pair(i, j)] = BigInt::one();
        bracket.push(Bracket { left: g.names[i].clone(), right: g.names[j].clone(), value: comm.coords(&e)? });
    }
    let torsion_free = comm.layer.is_free() && {
        let order: BigInt = ab.layer.torsion.iter().map(|&t| BigInt::from(t)).product();
        order.is_one() || isolator_index(&rel)? == BigRational::from_integer(order)
    };
    Ok(Class2Quotient {
        group: g.name.clone(),
        abelian: ab.layer,
        commutator: comm.layer,
        bracket,
        torsion_free,
        malcev: None,
        source: g.clone(),
    })
}

/// Lattice `√γ₂` of the torsion-free quotient inside `ℚ^m/(ℚ·central)`:
/// images of the basic commutators plus the residues of the saturated
/// relator lattice.
fn central_lattice(rel: &Relators, proj: &Projection, sat: &[Vec<BigInt>]) -> Result<(Vec<QVec>, Vec<QVec>)> {
    let f = &rel.f;
    let betas = rel.betas();
    let units: Vec<QVec> = (0..f.m())
        .map(|p| {
            let mut e = vec![BigRational::zero(); f.m()];
            e[p] = BigRational::one();
            proj.apply(&e)
        })
        .collect();
    let mut gens = units.clone();
    for h in sat {
        let x = Elem { a: h.clone(), b: vec![BigInt::zero(); f.m()] };
        gens.push(proj.apply(&rel.central_residue(&x, &betas)?));
    }
    Ok((lattice_basis(&units), lattice_basis(&gens)))
}

/// `[√γ₂ : image of γ₂]` in the torsion-free quotient.
fn isolator_index(rel: &Relators) -> Result<BigRational> {
    let proj = rel.projection();
    if proj.free.is_empty() {
        return Ok(BigRational::one());
    }
    let sat = saturation(&rel.lattice, rel.f.n);
    let (small, big) = central_lattice(rel, &proj, &sat)?;
    Ok(covolume(&small) / covolume(&big))
}

fn malcev(g: &FpGroup) -> Result<Malcev> {
    let rel = Relators::new(g);
    let f = &rel.f;
    let proj = rel.projection();
    let sat = saturation(&rel.lattice, f.n);
    let k = sat.len();
    let r = f.n - k;
    let s = proj.free.len();
    let (_, zbasis) = central_lattice(&rel, &proj, &sat)?;
    debug_assert_eq!(zbasis.len(), s);
    let in_z = |v: &QVec| -> Result<Vec<BigInt>> {
        if s == 0 {
            return Ok(Vec::new());
        }
        let c = solve(&zbasis, v).ok_or_else(|| Error::InvalidInput("central element outside the lattice".into()))?;
        to_z(&c).ok_or_else(|| Error::InvalidInput("non-integral Mal'cev coordinate".into()))
    };

    // complement of the saturated relator lattice: Z^n = sat ⊕ span(f_j)
    let v = if k == 0 { crate::exact::snf::identity(f.n) } else { smith_normal_form(&sat).v };
    let vinv = unimodular_inverse(&v);
    let lifts: Vec<Elem> = (k..f.n).map(|row| Elem { a: vinv[row].clone(), b: vec![BigInt::zero(); f.m()] }).collect();

    let mut omega_table = BTreeMap::new();
    for i in 0..r {
        for j in i + 1..r {
            let w = f.omega(&lifts[i].a, &lifts[j].a);
            omega_table.insert((i, j), in_z(&proj.apply(&to_q(&w)))?);
        }
    }

    let betas = rel.betas();
    let mut generator_images = Vec::new();
    for i in 0..f.n {
        let alpha: Vec<BigInt> = v[i][k..].to_vec();
        let xa = lifts.iter().zip(&alpha).fold(f.identity(), |acc, (x, e)| f.mul(&acc, &f.pow(x, e)));
        let gi = f.word(&[i as Letter + 1]);
        let y = f.mul(&f.inv(&xa), &gi);
        let central = in_z(&proj.apply(&rel.central_residue(&y, &betas)?))?;
        generator_images.push(GeneratorImage {
            generator: g.names[i].clone(),
            abelian: smalls(&alpha)?,
            central: smalls(&central)?,
        });
    }

    // center: x^a z^c with Ω(a, ·) = 0
    let mut form: IntMatrix = Vec::new();
    for j in 0..r {
        for t in 0..s {
            form.push(
                (0..r)
                    .map(|i| match i.cmp(&j) {
                        std::cmp::Ordering::Less => omega_table[&(i, j)][t].clone(),
                        std::cmp::Ordering::Greater => -omega_table[&(j, i)][t].clone(),
                        std::cmp::Ordering::Equal => BigInt::zero(),
                    })
                    .collect(),
            );
        }
    }
    let center_abelian = if r == 0 { 0 } else { integer_kernel(&form, r).len() };

    let group = malcev_group(g, r, s, &omega_table)?;
    let omega = omega_table
        .iter()
        .map(|(&(i, j), w)| {
            Ok(Bracket { left: format!("x{}", i + 1), right: format!("x{}", j + 1), value: smalls(w)? })
        })
        .collect::<Result<_>>()?;
    Ok(Malcev {
        abelian_rank: r,
        central_rank: s,
        center_rank: center_abelian + s,
        omega,
        generator_images,
        presentation: group.to_string(),
        group,
        omega_table,
    })
}

/// Collection rules of the Mal'cev basis as a group presentation.
fn malcev_group(g: &FpGroup, r: usize, s: usize, omega: &BTreeMap<(usize, usize), Vec<BigInt>>) -> Result<FpGroup> {
    let mut names: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
    names.extend((1..=s).map(|k| format!("z{k}")));
    let x = |i: usize| i as Letter + 1;
    let z = |k: usize| (r + k) as Letter + 1;
    let mut rels = Vec::new();
    for (&(i, j), w) in omega {
        let mut rel = commutator(&[x(i)], &[x(j)]);
        for (k, e) in w.iter().enumerate() {
            let e = small(e)?;
            let letter = if e > 0 { -z(k) } else { z(k) };
            rel.extend(std::iter::repeat_n(letter, e.unsigned_abs() as usize));
        }
        rels.push(rel);
    }
    for k in 0..s {
        for i in 0..r {
            rels.push(commutator(&[x(i)], &[z(k)]));
        }
        for l in k + 1..s {
            rels.push(commutator(&[z(k)], &[z(l)]));
        }
    }
    FpGroup::new(format!("{}/sqrt(gamma3)", g.name), names, rels)
}

impl Class2Quotient {
    /// The presentation this quotient was computed from.
    pub fn source(&self) -> &FpGroup {
        &self.source
    }

    pub fn ngens(&self) -> usize {
        self.source.ngens()
    }
}

/// `Γ/√γ₃Γ`: kills all torsion of the class-2 quotient. The result carries its
/// Mal'cev basis and the images of the original generators.
pub fn torsion_free_reduce(c: &Class2Quotient) -> Result<Class2Quotient> {
    let m = malcev(&c.source)?;
    let group = m.group.clone();
    let bracket = m.omega.clone();
    Ok(Class2Quotient {
        group: group.name.clone(),
        abelian: Layer { rank: m.abelian_rank, torsion: Vec::new() },
        commutator: Layer { rank: m.central_rank, torsion: Vec::new() },
        bracket,
        torsion_free: true,
        malcev: Some(m),
        source: group,
    })
}

/// The torsion-free class-2 quotient together with its group algebra, whose
/// dual is the Gaussian part of `Γ̂`.
pub fn gaussian_part_dual(g: &FpGroup) -> Result<(Class2Quotient, crate::hopf::HopfPresentation)> {
    let q = torsion_free_reduce(&class2_quotient(g)?)?;
    let p = crate::hopf::group_algebra(q.source())?;
    Ok((q, p))
}

/// Mal'cev data of a torsion-free quotient, computing it if the input was not reduced yet.
pub(crate) fn malcev_of(c: &Class2Quotient) -> Result<Malcev> {
    if !c.torsion_free {
        return Err(Error::InvalidInput(format!("class-2 quotient of {} has torsion; reduce it first", c.group)));
    }
    match &c.malcev {
        Some(m) => Ok(m.clone()),
        None => malcev(&c.source),
    }
}

/// Entries of `Ω` are small; exposed for tests and reports.
pub fn omega_matrix(m: &Malcev) -> Vec<Vec<Vec<i64>>> {
    let r = m.abelian_rank;
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Less => {
                        m.omega_table[&(i, j)].iter().map(|x| x.to_i64().unwrap_or(0)).collect()
                    }
                    std::cmp::Ordering::Greater => {
                        m.omega_table[&(j, i)].iter().map(|x| -x.to_i64().unwrap_or(0)).collect()
                    }
                    std::cmp::Ordering::Equal => vec![0; m.central_rank],
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::central_gaussian;
    use crate::ideals::{kn_span, membership, BoundedQuotient, Verdict};
    use num_traits::Signed;

    fn z2z2() -> FpGroup {
        FpGroup::from_spec("Z2*Z2").unwrap()
    }

    #[test]
    fn free_group_gives_heisenberg() {
        let c = class2_quotient(&FpGroup::free(2)).unwrap();
        assert_eq!(c.abelian, Layer { rank: 2, torsion: vec![] });
        assert_eq!(c.commutator, Layer { rank: 1, torsion: vec![] });
        assert_eq!(c.bracket[0].value.len(), 1);
        assert_eq!(c.bracket[0].value[0].abs(), 1);
        assert!(c.torsion_free);
        let (q, p) = gaussian_part_dual(&FpGroup::free(2)).unwrap();
        let m = q.malcev.as_ref().unwrap();
        assert_eq!((m.abelian_rank, m.central_rank, m.center_rank), (2, 1, 1));
        assert_eq!(m.omega_of(0, 1)[0].abs(), BigInt::one());
        assert_eq!(q.source().ngens(), 3);
        assert_eq!(p.ngens(), 6);
    }

    #[test]
    fn abelian_inputs() {
        let c = class2_quotient(&FpGroup::free_abelian(2)).unwrap();
        assert!(c.commutator.is_trivial());
        assert_eq!(c.abelian.rank, 2);
        let zz3 = FpGroup::from_spec("Zx Z3").unwrap();
        let c = class2_quotient(&zz3).unwrap();
        assert_eq!(c.abelian, Layer { rank: 1, torsion: vec![3] });
        assert!(!c.torsion_free);
        let t = torsion_free_reduce(&c).unwrap();
        let m = t.malcev.as_ref().unwrap();
        assert_eq!((m.abelian_rank, m.central_rank), (1, 0));
        let (_, p) = gaussian_part_dual(&FpGroup::free_abelian(3)).unwrap();
        assert_eq!(p.ngens(), 6);
    }

    #[test]
    fn infinite_dihedral() {
        let c = class2_quotient(&z2z2()).unwrap();
        assert_eq!(c.abelian, Layer { rank: 0, torsion: vec![2, 2] });
        assert_eq!(c.commutator, Layer { rank: 0, torsion: vec![2] });
        assert_eq!(c.bracket[0].value, vec![1]);
        assert!(!c.torsion_free);
        let t = torsion_free_reduce(&c).unwrap();
        assert!(t.abelian.is_trivial() && t.commutator.is_trivial());
        let (_, p) = gaussian_part_dual(&z2z2()).unwrap();
        assert_eq!(p.ngens(), 0);
    }

    #[test]
    fn heisenberg_and_idempotence() {
        let h = FpGroup::heisenberg();
        let c = class2_quotient(&h).unwrap();
        assert!(c.torsion_free);
        let once = torsion_free_reduce(&c).unwrap();
        let twice = torsion_free_reduce(&once).unwrap();
        let sig = once.malcev.as_ref().unwrap().signature();
        assert_eq!(sig, (2, 1, 1, vec![BigInt::one()]));
        assert_eq!(twice.malcev.as_ref().unwrap().signature(), sig);
        let f2 = torsion_free_reduce(&class2_quotient(&FpGroup::free(2)).unwrap()).unwrap();
        assert_eq!(f2.malcev.as_ref().unwrap().signature(), sig);
    }

    #[test]
    fn square_root_of_commutator() {
        // [x, y] = z², z central: torsion-free although the abelianization has torsion
        let g = FpGroup::new(
            "R",
            vec!["x".into(), "y".into(), "z".into()],
            vec![
                {
                    let mut r = commutator(&[1], &[2]);
                    r.extend([-3, -3]);
                    r
                },
                commutator(&[1], &[3]),
                commutator(&[2], &[3]),
            ],
        )
        .unwrap();
        let c = class2_quotient(&g).unwrap();
        assert_eq!(c.abelian, Layer { rank: 2, torsion: vec![2] });
        assert!(c.torsion_free);
        let m = torsion_free_reduce(&c).unwrap().malcev.unwrap();
        assert_eq!((m.abelian_rank, m.central_rank), (2, 1));
        assert_eq!(m.omega_of(0, 1)[0].abs(), BigInt::from(2));
        // x and y are lifts of the abelian layer, z sits in the central one
        let z = &m.generator_images[2];
        assert_eq!(z.abelian, vec![0, 0]);
        assert_eq!(z.central[0].abs(), 1);
    }

    #[test]
    fn generator_images_respect_relators() {
        // Z × Z3: the generator of Z3 dies, the Z generator survives
        let m = torsion_free_reduce(&class2_quotient(&FpGroup::from_spec("ZxZ3").unwrap()).unwrap())
            .unwrap()
            .malcev
            .unwrap();
        assert_eq!(m.generator_images[0].abelian.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1]);
        assert_eq!(m.generator_images[1].abelian, vec![0]);
    }

    #[test]
    fn central_gaussian_on_duals() {
        let (q, p) = gaussian_part_dual(&FpGroup::free(2)).unwrap();
        let cg = central_gaussian(&q).unwrap();
        assert!(crate::gaussian::check_consistency(&cg.datum).unwrap().passed);
        let z = p.gen("z1").unwrap();
        assert!(!cg.datum.drift()[z as usize].is_zero());
        let zk = cg.value(&[3, 3, 3]).unwrap();
        assert_eq!(zk, Scalar::complex((0, 1), (-6, 1)));
        assert!(cg.conditional_positivity(2).unwrap().psd);

        let (q, _) = gaussian_part_dual(&FpGroup::integers()).unwrap();
        let cg = central_gaussian(&q).unwrap();
        for k in -3i32..=3 {
            let w: Vec<Letter> = vec![k.signum(); k.unsigned_abs() as usize];
            assert_eq!(cg.value(&w).unwrap(), Scalar::from_int(-(k as i64) * (k as i64)));
        }
        assert!(cg.conditional_positivity(2).unwrap().psd);
        assert!(central_gaussian(&class2_quotient(&z2z2()).unwrap()).is_err());
    }

    #[test]
    fn exported_algebra_commutators_in_k3() {
        let (q, p) = gaussian_part_dual(&FpGroup::free(2)).unwrap();
        let p = std::sync::Arc::new(p);
        let g = q.source().clone();
        let span = kn_span(&BoundedQuotient::new(p.clone(), 6).unwrap(), 3).unwrap();
        let w = commutator(&commutator(&[1], &[2]), &[1]);
        let x = &crate::hopf::group_element(&p, &g, &w).unwrap() - &crate::freestar::NCPoly::one();
        assert_eq!(membership(&span, &x).verdict, Verdict::CertifiedIn);
    }
}
