//! Integer lattices: Smith and Hermite normal forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries, in order.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.d.len().min(self.d.first().map_or(0, Vec::len)))
            .map(|i| self.d[i][i].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().len()
    }
}

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).fold(BigInt::zero(), |s, x| s + x)).collect()
        })
        .collect()
}

fn cols_of(m: &IntMatrix) -> usize {
    m.first().map_or(0, Vec::len)
}

fn row_axpy(m: &mut IntMatrix, dst: usize, f: &BigInt, src: usize) {
    if f.is_zero() {
        return;
    }
    let s = m[src].clone();
    for (x, y) in m[dst].iter_mut().zip(&s) {
        *x += f * y;
    }
}

fn col_axpy(m: &mut IntMatrix, dst: usize, f: &BigInt, src: usize) {
    if f.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let t = f * &row[src];
        row[dst] += t;
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `U·m·V = D` with `D` diagonal, `d_i | d_{i+1}`, entries nonnegative, `U`, `V` unimodular.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let rows = m.len();
    let cols = cols_of(m);
    let mut d = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    for k in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let best = (k..rows)
                .flat_map(|i| (k..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !d[i][j].is_zero())
                .min_by(|&(a, b), &(c, e)| d[a][b].abs().cmp(&d[c][e].abs()));
            let Some((pi, pj)) = best else { break };
            d.swap(k, pi);
            u.swap(k, pi);
            swap_cols(&mut d, k, pj);
            swap_cols(&mut v, k, pj);
            let mut clean = true;
            for i in k + 1..rows {
                let q = -d[i][k].div_floor(&d[k][k]);
                row_axpy(&mut d, i, &q, k);
                row_axpy(&mut u, i, &q, k);
                clean &= d[i][k].is_zero();
            }
            for j in k + 1..cols {
                let q = -d[k][j].div_floor(&d[k][k]);
                col_axpy(&mut d, j, &q, k);
                col_axpy(&mut v, j, &q, k);
                clean &= d[k][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row k and go again
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !d[i][j].is_multiple_of(&d[k][k])));
            match bad {
                Some(i) => {
                    row_axpy(&mut d, k, &BigInt::one(), i);
                    row_axpy(&mut u, k, &BigInt::one(), i);
                }
                None => break,
            }
        }
        if d.get(k).is_some_and(|r| r[k].is_negative()) {
            for x in d[k].iter_mut() {
                *x = -&*x;
            }
            for x in u[k].iter_mut() {
                *x = -&*x;
            }
        }
    }
    Smith { u, d, v }
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `m`.
/// Only nonzero rows are returned; pivots are positive and entries above a
/// pivot lie in `[0, pivot)`.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let cols = cols_of(m);
    let mut a: IntMatrix = m.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut r = 0;
    for c in 0..cols {
        loop {
            let best = (r..a.len()).filter(|&i| !a[i][c].is_zero()).min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(p) = best else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                let q = -a[i][c].div_floor(&a[r][c]);
                row_axpy(&mut a, i, &q, r);
                done &= a[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let q = -a[i][c].div_floor(&a[r][c]);
                row_axpy(&mut a, i, &q, r);
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// Basis of `{x ∈ ℤ^cols : m·x = 0}`, as vectors.
pub fn integer_kernel(m: &IntMatrix, cols: usize) -> Vec<Vec<BigInt>> {
    if m.is_empty() {
        return identity(cols);
    }
    let s = smith_normal_form(m);
    let rank = s.rank();
    (rank..cols).map(|j| s.v.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Determinant by fraction-free elimination (Bareiss).
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(matmul(&matmul(&s.u, m), &s.v), s.d);
        assert!(determinant(&s.u).abs().is_one());
        assert!(determinant(&s.v).abs().is_one());
        let inv = s.invariants();
        for w in inv.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn documented_examples() {
        assert_eq!(check(&identity(2)).d, identity(2));
        assert_eq!(check(&int_matrix(&[&[2, 0], &[0, 0]])).d, int_matrix(&[&[2, 0], &[0, 0]]));
        assert_eq!(check(&int_matrix(&[&[2, 4], &[6, 8]])).d, int_matrix(&[&[2, 0], &[0, 4]]));
    }

    #[test]
    fn hermite_and_kernel() {
        let h = hermite_rows(&int_matrix(&[&[2, 4], &[6, 8], &[0, 0]]));
        assert_eq!(h, int_matrix(&[&[2, 0], &[0, 4]]));
        let k = integer_kernel(&int_matrix(&[&[1, 1, 1]]), 3);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(v.iter().fold(BigInt::zero(), |s, x| s + x).is_zero());
        }
    }

    proptest! {
        #[test]
        fn snf_identity_and_det(rows in 1usize..4, cols in 1usize..4, seed in prop::collection::vec(-9i64..10, 16)) {
            let m: IntMatrix = (0..rows).map(|i| (0..cols).map(|j| BigInt::from(seed[i * 4 + j])).collect()).collect();
            let s = check(&m);
            if rows == cols {
                let dm = determinant(&m).abs();
                let dd = determinant(&s.d).abs();
                prop_assert_eq!(dm, dd);
            }
        }
    }
}
