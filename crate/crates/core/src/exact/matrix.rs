use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::Scalar;
use crate::error::{Error, Result};

/// Dense matrix of exact scalars, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Row space summary returned by [`ScalarMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub basis: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdVerdict {
    PositiveSemidefinite,
    /// `v` satisfies `v* M v < 0`; `value` is that quadratic form value.
    Indefinite {
        witness: Vec<Scalar>,
        value: BigRational,
    },
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdVerdict::PositiveSemidefinite)
    }
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        ScalarMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == self[(j, i)].conj()))
    }

    pub fn conj_transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn matmul(&self, o: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, o.rows);
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = a * &o[(k, j)];
                    m[(i, j)] += t;
                }
            }
        }
        m
    }

    /// `v* M v`.
    pub fn quadratic_form(&self, v: &[Scalar]) -> Scalar {
        let mv = self.mul_vec(v);
        v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum()
    }

    /// Reduced row echelon form. Pivot choice: leftmost nonzero column, first
    /// row carrying it.
    pub fn rref(&self) -> RowEchelon {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].inv().unwrap();
            for x in a[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..self.rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..self.cols {
                        let t = &f * &a[r][j];
                        a[i][j] -= &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        RowEchelon { rank: r, pivots, basis: a }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Exact positive-semidefiniteness test by symmetric elimination.
    ///
    /// A negative pivot, or a zero pivot whose row is not zero, produces a
    /// witness vector with `v* M v < 0`.
    pub fn psd_check(&self) -> Result<PsdVerdict> {
        if !self.is_hermitian() {
            return Err(Error::InvalidInput("psd_check requires a hermitian matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        // basis[i] = current coordinate vector i expressed in the original basis
        let mut basis: Vec<Vec<Scalar>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect();
        let mut live: Vec<usize> = (0..n).collect();
        let witness = |v: Vec<Scalar>| -> Result<PsdVerdict> {
            let value = self.quadratic_form(&v).re;
            debug_assert!(value.is_negative());
            Ok(PsdVerdict::Indefinite { witness: v, value })
        };
        while !live.is_empty() {
            if let Some(&i) = live.iter().find(|&&i| a[i][i].re.is_negative()) {
                return witness(basis[i].clone());
            }
            for &i in &live {
                if !a[i][i].is_zero() {
                    continue;
                }
                if let Some(&j) = live.iter().find(|&&j| j != i && !a[i][j].is_zero()) {
                    // v = b_i - t·conj(a_ij)·b_j, t = 1/a_jj (or 1 when a_jj = 0)
                    let t = if a[j][j].is_zero() { Scalar::one() } else { a[j][j].inv().unwrap() };
                    let c = &t * &a[i][j].conj();
                    let v = basis[i].iter().zip(&basis[j]).map(|(x, y)| x - &(&c * y)).collect();
                    return witness(v);
                }
            }
            let Some(pos) = live.iter().position(|&i| !a[i][i].is_zero()) else { break };
            let k = live.remove(pos);
            let p = a[k][k].clone();
            for &i in &live {
                let c = &a[k][i] / &p;
                if c.is_zero() {
                    continue;
                }
                let bk = basis[k].clone();
                for (x, y) in basis[i].iter_mut().zip(&bk) {
                    *x -= &(&c * y);
                }
            }
            for &i in &live {
                for &j in &live {
                    let t = &(&a[i][k] * &a[k][j]) / &p;
                    a[i][j] -= &t;
                }
            }
        }
        Ok(PsdVerdict::PositiveSemidefinite)
    }
}

impl std::ops::Index<(usize, usize)> for ScalarMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ScalarMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

impl serde::Serialize for ScalarMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `true` iff the rational is `>= 0`.
pub fn nonneg(r: &BigRational) -> bool {
    !r.is_negative() || r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<Scalar>>) -> ScalarMatrix {
        ScalarMatrix::from_rows(rows)
    }

    #[test]
    fn rref_examples() {
        assert_eq!(ScalarMatrix::from_ints(&[&[1, 1], &[1, 1]]).rref().rank, 1);
        assert_eq!(ScalarMatrix::from_ints(&[&[0]]).rref().rank, 0);
        let i = Scalar::i();
        let a = m(vec![vec![Scalar::one(), i.clone()], vec![-i.clone(), Scalar::one()]]);
        let e = a.rref();
        assert_eq!(e.rank, 1);
        assert_eq!(e.pivots, vec![0]);
        assert_eq!(e.basis, vec![vec![Scalar::one(), i]]);
    }

    #[test]
    fn psd_examples() {
        assert!(ScalarMatrix::identity(2).psd_check().unwrap().is_psd());
        let i = Scalar::i();
        let a = m(vec![vec![Scalar::one(), i.clone()], vec![-i, Scalar::one()]]);
        assert!(a.psd_check().unwrap().is_psd());
        let b = ScalarMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        match b.psd_check().unwrap() {
            PsdVerdict::Indefinite { witness, value } => {
                assert_eq!(witness, vec![Scalar::one(), Scalar::from_int(-1)]);
                assert_eq!(value, BigRational::from_integer((-2).into()));
            }
            v => panic!("expected witness, got {v:?}"),
        }
    }

    #[test]
    fn psd_rejects_non_hermitian() {
        let a = ScalarMatrix::from_ints(&[&[1, 2], &[0, 1]]);
        assert!(a.psd_check().is_err());
    }

    #[test]
    fn psd_zero_pivot_after_elimination() {
        // [[1,1,0],[1,1,1],[0,1,0]]: the Schur complement has a zero pivot with a live row
        let a = ScalarMatrix::from_ints(&[&[1, 1, 0], &[1, 1, 1], &[0, 1, 0]]);
        let PsdVerdict::Indefinite { witness, value } = a.psd_check().unwrap() else {
            panic!("indefinite matrix accepted")
        };
        assert!(value.is_negative());
        assert_eq!(a.quadratic_form(&witness).re, value);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small() -> impl Strategy<Value = Scalar> {
            (-4i64..5, 1i64..4, -3i64..4).prop_map(|(n, d, im)| Scalar::complex((n, d), (im, 1)))
        }

        fn matrix(r: usize, c: usize) -> impl Strategy<Value = ScalarMatrix> {
            prop::collection::vec(small(), r * c)
                .prop_map(move |v| ScalarMatrix::from_rows(v.chunks(c).map(|x| x.to_vec()).collect()))
        }

        proptest! {
            #[test]
            fn rref_idempotent(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))) {
                let e = m.rref();
                let again = ScalarMatrix::from_rows(if e.basis.is_empty() {
                    vec![vec![Scalar::zero(); m.cols()]]
                } else {
                    e.basis.clone()
                })
                .rref();
                prop_assert_eq!(e.rank, again.rank);
                if e.rank > 0 {
                    prop_assert_eq!(&e.basis, &again.basis);
                }
            }

            #[test]
            fn psd_verdict_is_sound(
                b in (1usize..4, 1usize..4).prop_flat_map(|(r, c)| matrix(r, c)),
                vs in prop::collection::vec(prop::collection::vec(small(), 4), 100),
                sign in prop::bool::ANY,
            ) {
                // B*B is PSD; its negation is not unless B = 0
                let mut g = b.conj_transpose().matmul(&b);
                if sign {
                    for i in 0..g.rows() {
                        for j in 0..g.cols() {
                            g[(i, j)] = -&g[(i, j)];
                        }
                    }
                }
                match g.psd_check().unwrap() {
                    PsdVerdict::PositiveSemidefinite => {
                        for v in &vs {
                            prop_assert!(nonneg(&g.quadratic_form(&v[..g.rows()]).re));
                        }
                    }
                    PsdVerdict::Indefinite { witness, value } => {
                        prop_assert!(value.is_negative());
                        prop_assert_eq!(g.quadratic_form(&witness).re, value);
                        prop_assert!(sign);
                    }
                }
            }
        }
    }
}
