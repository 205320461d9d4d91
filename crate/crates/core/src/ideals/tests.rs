use std::sync::Arc;

use super::*;
use crate::error::Error;
use crate::exact::{rat, Scalar};
use crate::freestar::{Alphabet, GeneratorSymbol, NCPoly};
use crate::groups::{fp::commutator, FpGroup};
use crate::hopf::{self, group_algebra, group_element, HopfPresentation};

fn group(g: &FpGroup) -> Arc<HopfPresentation> {
    Arc::new(group_algebra(g).unwrap())
}

fn z2() -> Arc<HopfPresentation> {
    group(&FpGroup::cyclic(2))
}

#[test]
fn quotient_dimensions() {
    assert_eq!(BoundedQuotient::build(z2(), 3).unwrap().dimension().unwrap(), 2);
    let mut free = HopfPresentation::new("free", Alphabet::from_symbols([GeneratorSymbol::plain("x")]).unwrap());
    free.counit_table[0] = Scalar::zero();
    assert_eq!(BoundedQuotient::build(Arc::new(free), 3).unwrap().dimension().unwrap(), 4);
    let o2 = BoundedQuotient::build(Arc::new(hopf::o_n_plus(2).unwrap()), 2).unwrap();
    let rank = o2.relation_span().unwrap().rank();
    assert_eq!(o2.dimension().unwrap(), 1 + 4 + 16 - rank);
    assert!(rank > 0);
}

#[test]
fn cap_is_reported() {
    let q = BoundedQuotient::with_cap(group(&FpGroup::free(3)), 8, 200_000).unwrap();
    match q.dimension() {
        Err(Error::CapExceeded { required, cap }) => assert!(required > cap),
        other => panic!("{other:?}"),
    }
}

#[test]
fn relation_span_has_zero_counit() {
    for p in [z2(), Arc::new(hopf::su_q2(&rat(1, 2)).unwrap())] {
        let q = BoundedQuotient::build(p, 3).unwrap();
        let s = q.relation_span().unwrap();
        let unit = s.space.index(&crate::freestar::Word::unit()).unwrap();
        assert!(s.echelon.rows().all(|(_, r)| !r.contains_key(&unit)));
    }
}

#[test]
fn projection_group_kn() {
    let q = BoundedQuotient::build(z2(), 3).unwrap();
    for n in 1..=3 {
        let k = kn_span(&q, n).unwrap();
        assert_eq!(k.bounded_dimension, Some(1));
        assert_eq!(k.codimension(), 1);
    }
    let k4 = kn_span(&q, 4).unwrap();
    assert_eq!(k4.bounded_dimension, Some(0));
    assert!(!k4.warnings.is_empty());
    let r = kinfty_probe(&q, 3).unwrap();
    assert_eq!(r.evidence, ChainEvidence::TotalDisconnectionEvidence);
}

#[test]
fn commutators_of_commutators() {
    let f3 = FpGroup::free(3);
    let p = group(&f3);
    let c = commutator(&commutator(&[1], &[2]), &[3]);
    let x = &group_element(&p, &f3, &c).unwrap() - &NCPoly::one();
    let q = BoundedQuotient::new(p, 8).unwrap();
    let s = kn_span(&q, 3).unwrap();
    assert_eq!(membership(&s, &x).verdict, Verdict::CertifiedIn);
    let s4 = kn_span(&q, 4).unwrap();
    assert_eq!(membership(&s4, &x).verdict, Verdict::NotInSpanAtBound);
}

#[test]
fn projections_are_in_every_kn() {
    for k in [2usize, 4] {
        let g = FpGroup::cyclic(k);
        let p = group(&g);
        let avg = (0..k as i32)
            .map(|j| group_element(&p, &g, &vec![1; j as usize]).unwrap())
            .fold(NCPoly::zero(), |a, b| &a + &b)
            .scale(&Scalar::ratio(1, k as i64));
        let x = centered(&p, &avg).unwrap();
        let q = BoundedQuotient::new(p, 10).unwrap();
        for n in 1..=10 {
            assert_eq!(membership(&kn_span(&q, n).unwrap(), &x).verdict, Verdict::CertifiedIn, "Z{k} n={n}");
        }
    }
}

#[test]
fn integers_are_not_collapsing() {
    let z = FpGroup::integers();
    let p = group(&z);
    let x = &group_element(&p, &z, &[1]).unwrap() - &NCPoly::one();
    let q = BoundedQuotient::build(p, 6).unwrap();
    let m = membership(&kn_span(&q, 2).unwrap(), &x);
    assert_eq!(m.verdict, Verdict::NotInSpanAtBound);
    let r = kinfty_probe(&q, 6).unwrap();
    assert!(r.chain.windows(2).all(|w| w[1] < w[0]), "{:?}", r.chain);
    assert_eq!(r.quotient_dimensions, vec![1, 2, 3, 4, 5, 6]);
    assert_eq!(r.evidence, ChainEvidence::Inconclusive);
}

#[test]
fn o2_plus_descent() {
    let p = Arc::new(hopf::su_q2(&rat(-1, 1)).unwrap());
    for d in [4usize, 6] {
        let q = BoundedQuotient::build(p.clone(), d).unwrap();
        let r = o2plus_descent_check(&q, d).unwrap();
        assert!(r.rewriting_identity && r.k2_identity && !r.printed_sign_identity);
        assert!(r.certified_all);
        assert!(r.truncation_agrees.iter().all(|&b| b));
    }
    let half = BoundedQuotient::new(Arc::new(hopf::su_q2(&rat(1, 2)).unwrap()), 4).unwrap();
    assert!(matches!(o2plus_descent_check(&half, 4), Err(Error::WrongPresentation(_))));
}

#[test]
fn filtration_on_free_group() {
    let q = BoundedQuotient::new(group(&FpGroup::free(2)), 4).unwrap();
    for n in [2, 4] {
        let r = filtration_probe(&q, n).unwrap();
        assert!(r.passed);
        assert_eq!(r.half_split_passed, Some(true));
    }
    let z = BoundedQuotient::new(z2(), 4).unwrap();
    assert_eq!(filtration_probe(&z, 4).unwrap().half_split_passed, Some(true));
}

#[test]
fn kac_data() {
    let p = hopf::su_q2(&rat(1, 2)).unwrap();
    let c = p.corep.clone().unwrap();
    let k = kac_generators(&c);
    let gens: Vec<String> = k.iter().map(|g| p.render(&g.coefficient)).collect();
    assert_eq!(gens, ["-1/2*gamma*", "gamma"]);
    let s2 = s_squared(&c);
    assert_eq!(s2[0][1], rat(1, 4));
    assert_eq!(s2[1][0], rat(4, 1));
    assert!(scaling_action(&c, 0.0)
        .iter()
        .flatten()
        .all(|z| (z - num_complex::Complex64::new(1.0, 0.0)).norm() == 0.0));
    for g in &k {
        assert_ne!(s2[g.i][g.j], rat(1, 1));
    }
    let o = hopf::o_n_plus(3).unwrap().corep.unwrap();
    assert!(kac_generators(&o).is_empty());
    assert!(s_squared(&o).iter().flatten().all(|r| *r == rat(1, 1)));
}
