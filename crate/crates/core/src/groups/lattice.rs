//! Small dense helpers for lattices in `ℚ^k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::{hermite_rows, integer_kernel, IntMatrix};

pub type QVec = Vec<BigRational>;

pub fn to_q(v: &[BigInt]) -> QVec {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Integer vector if every entry is integral.
pub fn to_z(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

/// Some `λ` with `Σ λ_s cols[s] = target`.
pub fn solve(cols: &[QVec], target: &[BigRational]) -> Option<QVec> {
    let dim = target.len();
    let k = cols.len();
    let mut a: Vec<QVec> = (0..dim)
        .map(|i| {
            let mut row: QVec = cols.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..dim).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..dim {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=k {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][k].clone();
    }
    Some(x)
}

fn common_denominator(vs: &[QVec]) -> BigInt {
    vs.iter().flatten().fold(BigInt::one(), |d, x| d.lcm(x.denom()))
}

/// A ℤ-basis (Hermite rows) of the lattice generated by `gens`.
pub fn lattice_basis(gens: &[QVec]) -> Vec<QVec> {
    let d = common_denominator(gens);
    let scaled: IntMatrix = gens
        .iter()
        .map(|v| v.iter().map(|x| (x * BigRational::from_integer(d.clone())).to_integer()).collect())
        .collect();
    let dq = BigRational::from_integer(d);
    hermite_rows(&scaled).iter().map(|row| to_q(row).into_iter().map(|x| x / &dq).collect()).collect()
}

/// `|det|` of a square rational basis.
pub fn covolume(basis: &[QVec]) -> BigRational {
    let n = basis.len();
    let mut a = basis.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return BigRational::zero() };
        a.swap(c, p);
        det *= &a[c][c];
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let t = &a[c][j] * &f;
                a[i][j] -= t;
            }
        }
    }
    det.abs()
}

/// `(ℚ·rows) ∩ ℤ^n`.
pub fn saturation(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let rows: IntMatrix = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if rows.is_empty() {
        return Vec::new();
    }
    let perp = integer_kernel(&rows, n);
    if perp.is_empty() {
        return crate::exact::snf::identity(n);
    }
    hermite_rows(&integer_kernel(&perp, n))
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    let mut a: Vec<QVec> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = to_q(row);
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).expect("unimodular matrix is invertible");
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let t = &a[c][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
    }
    a.iter().map(|row| to_z(&row[n..]).expect("unimodular inverse is integral")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::snf::int_matrix;

    fn q(v: &[i64]) -> QVec {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn solve_and_lattices() {
        let x = solve(&[q(&[1, 0]), q(&[1, 1])], &q(&[3, 2])).unwrap();
        assert_eq!(x, q(&[1, 2]));
        assert!(solve(&[q(&[1, 1])], &q(&[1, 0])).is_none());
        let half = vec![BigRational::new(1.into(), 2.into())];
        let b = lattice_basis(&[q(&[1]), half.clone()]);
        assert_eq!(b, vec![half]);
        assert_eq!(covolume(&[q(&[2, 1]), q(&[0, 3])]), BigRational::from_integer(6.into()));
    }

    #[test]
    fn saturation_and_inverse() {
        let s = saturation(&int_matrix(&[&[2, 4]]), 2);
        assert_eq!(s, int_matrix(&[&[1, 2]]));
        assert!(saturation(&[], 3).is_empty());
        let m = int_matrix(&[&[2, 1], &[1, 1]]);
        let inv = unimodular_inverse(&m);
        assert_eq!(crate::exact::snf::matmul(&m, &inv), crate::exact::snf::identity(2));
    }
}
