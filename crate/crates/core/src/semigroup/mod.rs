//! Convolution powers and convolution exponentials of functionals.

mod convolution;
mod functional;

pub use convolution::{
    convolution_power, exp_state, min_hermitian_eigenvalue, state_positivity_probe, word_family, ConvolutionSystem,
    ExpConfig, ExpValue, PositivityReport, POSITIVITY_TOLERANCE,
};
pub use functional::Functional;

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_complex::Complex64;

    use super::*;
    use crate::exact::Scalar;
    use crate::freestar::{NCPoly, Word};
    use crate::gaussian::{examples, DatumBuilder};

    fn power_of(p: &crate::hopf::HopfPresentation, k: i64) -> NCPoly {
        let g = if k >= 0 { p.gen("u") } else { p.gen("u^-1") }.unwrap();
        NCPoly::word(Word(vec![g; k.unsigned_abs() as usize]))
    }

    #[test]
    fn zeroth_power_is_counit() {
        let phi = Functional::gaussian(examples::heat());
        let p = phi.presentation().clone();
        let x = &power_of(&p, 2) + &NCPoly::constant(Scalar::from_int(3));
        assert_eq!(convolution_power(&phi, 0, &x).unwrap(), Scalar::from_int(4));
    }

    #[test]
    fn group_like_powers() {
        let phi = Functional::gaussian(examples::heat());
        let p = phi.presentation().clone();
        for k in [-2i64, 1, 3] {
            let x = power_of(&p, k);
            let base = phi.eval(&x).unwrap();
            for n in 0..5 {
                assert_eq!(convolution_power(&phi, n, &x).unwrap(), base.pow(n as u32));
            }
        }
    }

    #[test]
    fn drift_binomial_rule() {
        let p = Arc::new(crate::hopf::su_q2(&crate::exact::rat(1, 2)).unwrap());
        let a = p.gen("alpha").unwrap();
        let d = DatumBuilder::new("drift", p.clone())
            .drift(a, Scalar::complex((0, 1), (3, 2)))
            .drift(p.gen("alpha*").unwrap(), Scalar::complex((0, 1), (-3, 2)))
            .build()
            .unwrap();
        let phi = Functional::gaussian(d);
        let x = NCPoly::word(Word(vec![0, 2]));
        let y = NCPoly::word(Word(vec![2, 1]));
        for k in 0..=5usize {
            let lhs = convolution_power(&phi, k, &(&x * &y)).unwrap();
            let mut rhs = Scalar::zero();
            let mut binom = 1i64;
            for q in 0..=k {
                let term = &convolution_power(&phi, q, &x).unwrap() * &convolution_power(&phi, k - q, &y).unwrap();
                rhs += &(&term * &Scalar::from_int(binom));
                binom = binom * (k - q) as i64 / (q as i64 + 1);
            }
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    #[test]
    fn heat_semigroup_values() {
        let phi = Functional::gaussian(examples::heat());
        let p = phi.presentation().clone();
        let cfg = ExpConfig::default();
        for k in -5i64..=5 {
            for t in [0.0, 0.25, 1.0] {
                let v = exp_state(&phi, t, &power_of(&p, k), &cfg).unwrap();
                let expect = (-(k * k) as f64 * t / 2.0).exp();
                assert!((v.value() - Complex64::new(expect, 0.0)).norm() <= 1e-9, "k={k} t={t}");
                assert!(v.converged);
            }
        }
        let zero = exp_state(&phi, 0.0, &power_of(&p, 3), &cfg).unwrap();
        assert_eq!((zero.re, zero.im), (1.0, 0.0));
    }

    #[test]
    fn rotation_is_a_character() {
        let phi = Functional::gaussian(examples::rotation());
        let p = phi.presentation().clone();
        let v = exp_state(&phi, 0.7, &power_of(&p, 1), &ExpConfig::default()).unwrap();
        assert!((v.value() - Complex64::new(0.0, 0.7).exp()).norm() < 1e-12);
    }

    #[test]
    fn positivity_examples() {
        let phi = Functional::gaussian(examples::heat());
        let p = phi.presentation().clone();
        let cfg = ExpConfig::default();
        let r = state_positivity_probe(&phi, 0.0, &[NCPoly::one()], &cfg).unwrap();
        assert_eq!(r.matrix, vec![vec![(1.0, 0.0)]]);
        assert!(r.positive);
        let fam = [NCPoly::one(), power_of(&p, 1), power_of(&p, 2)];
        assert!(state_positivity_probe(&phi, 1.0, &fam, &cfg).unwrap().positive);
        let neg = Functional::gaussian(examples::negated_heat());
        assert!([0.5, 1.0, 2.0].iter().any(|&t| !state_positivity_probe(&neg, t, &fam, &cfg).unwrap().positive));
    }

    #[test]
    fn table_functional_errors_outside_table() {
        let p = examples::integers();
        let mut values = std::collections::BTreeMap::new();
        values.insert(Word::unit(), Scalar::zero());
        values.insert(Word(vec![0]), Scalar::one());
        let phi = Functional::Table { presentation: p, values };
        assert!(phi.eval(&NCPoly::gen(0)).is_ok());
        assert!(phi.eval(&NCPoly::gen(1)).is_err());
    }
}
