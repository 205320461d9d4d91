//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hgauss::exact::{rat, Scalar};
use hgauss::freestar::{NCPoly, Word};
use hgauss::gaussian::{examples, is_antisymmetric_space, solve_gaussian_space, GaussianDatum};
use hgauss::groups::fp::commutator;
use hgauss::groups::{central_gaussian, gaussian_part_dual, FpGroup, Letter};
use hgauss::hopf::{self, group_algebra, group_element, HopfPresentation};
use hgauss::ideals::{
    centered, filtration_probe, kac_generators, kn_span, membership, o2plus_descent_check, s_squared, scaling_action,
    BoundedQuotient, Verdict,
};
use hgauss::semigroup::{convolution_power, exp_state, ExpConfig, Functional};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn catalogue() -> Vec<Arc<HopfPresentation>> {
    let g = |s: &str| group_algebra(&FpGroup::from_spec(s).unwrap()).unwrap();
    vec![
        g("Z"),
        g("Z2"),
        g("F2"),
        g("H3"),
        hopf::su_q2(&rat(1, 2)).unwrap(),
        hopf::su_q2(&rat(-1, 1)).unwrap(),
        hopf::o_n_plus(2).unwrap(),
        hopf::u_n_plus(2).unwrap(),
        hopf::o_n_star(3).unwrap(),
        hopf::o_n_twisted(3).unwrap(),
    ]
    .into_iter()
    .map(Arc::new)
    .collect()
}

fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    rat(rng.random_range(-5..=5), rng.random_range(1..=4))
}

/// A random point of the solution space of the Gaussian constraints.
fn random_datum(p: &Arc<HopfPresentation>, rng: &mut ChaCha8Rng) -> Result<GaussianDatum, String> {
    let s = solve_gaussian_space(p.clone()).map_err(e)?;
    let coeffs: Vec<BigRational> = (0..s.basis.len()).map(|_| small_rational(rng)).collect();
    s.combine("random", &coeffs).map_err(e)
}

fn random_word(p: &HopfPresentation, rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    Word((0..len).map(|_| rng.random_range(0..p.ngens() as u32)).collect())
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut total = 0;
    for p in catalogue() {
        let d = random_datum(&p, &mut rng)?;
        for _ in 0..200 {
            let x = NCPoly::word(random_word(&p, &mut rng, 6));
            let (a, b) = (d.wick_eval(&x).map_err(e)?, d.wick_eval_recursive(&x).map_err(e)?);
            ensure(a == b, || format!("{}: {} gives {a} vs {b}", p.name, p.render(&x)))?;
            total += 1;
        }
    }
    Ok(format!("{total} words over {} entries agree exactly", catalogue().len()))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut total = 0;
    for p in catalogue() {
        let d = random_datum(&p, &mut rng)?;
        for _ in 0..100 {
            let mut prod = NCPoly::one();
            for _ in 0..3 {
                let w = NCPoly::word(random_word(&p, &mut rng, 3));
                let y = &w + &NCPoly::word(random_word(&p, &mut rng, 2)).scale(&Scalar::real(small_rational(&mut rng)));
                prod = &prod * &centered(&p, &y).map_err(e)?;
            }
            let v = d.wick_eval(&prod).map_err(e)?;
            ensure(v.is_zero(), || format!("{}: φ = {v} on a K3 product", p.name))?;
            total += 1;
        }
    }
    Ok(format!("φ vanishes on {total} K3 products"))
}

fn power(p: &HopfPresentation, k: i64) -> NCPoly {
    let g = p.gen(if k >= 0 { "u" } else { "u^-1" }).unwrap();
    NCPoly::word(Word(vec![g; k.unsigned_abs() as usize]))
}

fn criterion_3() -> Outcome {
    let phi = Functional::gaussian(examples::heat());
    let p = phi.presentation().clone();
    let cfg = ExpConfig { order: 30, ..ExpConfig::default() };
    let mut worst: f64 = 0.0;
    for t in [0.1, 1.0] {
        for k in -5i64..=5 {
            let v = exp_state(&phi, t, &power(&p, k), &cfg).map_err(e)?;
            let err = (v.value() - Complex64::new((-((k * k) as f64) * t / 2.0).exp(), 0.0)).norm();
            worst = worst.max(err);
            ensure(err <= 1e-9, || format!("t={t} k={k}: error {err:e}"))?;
        }
    }
    Ok(format!("max error {worst:.3e}"))
}

fn criterion_4() -> Outcome {
    let phi = Functional::gaussian(examples::rotation());
    let p = phi.presentation().clone();
    let cfg = ExpConfig::default();
    let mut worst: f64 = 0.0;
    for t in [0.5, 1.0] {
        for j in -4i64..=4 {
            for k in -4i64..=4 {
                let st = |x: &NCPoly| exp_state(&phi, t, x, &cfg).map(|v| v.value()).map_err(e);
                let err = (st(&(&power(&p, j) * &power(&p, k)))? - st(&power(&p, j))? * st(&power(&p, k))?).norm();
                worst = worst.max(err);
                ensure(err <= 1e-10, || format!("t={t} j={j} k={k}: defect {err:e}"))?;
            }
        }
    }
    let su = Arc::new(hopf::su_q2(&rat(1, 2)).unwrap());
    let (a, a_star) = (su.gen("alpha").unwrap(), su.gen("alpha*").unwrap());
    let drift = hgauss::gaussian::DatumBuilder::new("drift", su.clone())
        .drift(a, Scalar::complex((0, 1), (3, 2)))
        .drift(a_star, Scalar::complex((0, 1), (-3, 2)))
        .build()
        .map_err(e)?;
    let mut binomial_checks = 0;
    for (phi, pairs) in [
        (Functional::gaussian(examples::rotation()), vec![(power(&p, 2), power(&p, -1)), (power(&p, 3), power(&p, 1))]),
        (
            Functional::gaussian(drift),
            vec![
                (NCPoly::word(Word(vec![a])), NCPoly::word(Word(vec![a_star, a]))),
                (NCPoly::word(Word(vec![a, su.gen("gamma").unwrap()])), NCPoly::word(Word(vec![a_star]))),
            ],
        ),
    ] {
        for (x, y) in pairs {
            for k in 0..=5usize {
                let lhs = convolution_power(&phi, k, &(&x * &y)).map_err(e)?;
                let mut rhs = Scalar::zero();
                let mut binom = 1i64;
                for q in 0..=k {
                    let term =
                        &convolution_power(&phi, q, &x).map_err(e)? * &convolution_power(&phi, k - q, &y).map_err(e)?;
                    rhs += &(&term * &Scalar::from_int(binom));
                    binom = binom * (k - q) as i64 / (q as i64 + 1);
                }
                ensure(lhs == rhs, || format!("binomial identity fails at k={k}: {lhs} vs {rhs}"))?;
                binomial_checks += 1;
            }
        }
    }
    Ok(format!("character defect {worst:.3e}; {binomial_checks} exact binomial identities"))
}

fn criterion_5() -> Outcome {
    let p = Arc::new(hopf::su_q2(&rat(1, 2)).unwrap());
    let s = solve_gaussian_space(p.clone()).map_err(e)?;
    let names = |gs: &[u32]| gs.iter().map(|&g| p.symbol(g).to_string()).collect::<Vec<_>>();
    ensure(names(&s.eta_forced_zero) == ["gamma", "gamma*"], || {
        format!("η forced zero on {:?}", names(&s.eta_forced_zero))
    })?;
    ensure(names(&s.phi_forced_zero) == ["gamma", "gamma*"], || {
        format!("φ forced zero on {:?}", names(&s.phi_forced_zero))
    })?;
    ensure(s.dimension == 2, || format!("real dimension {}", s.dimension))?;
    let kac = kac_generators(p.corep.as_ref().unwrap());
    ensure(!kac.is_empty(), || "no Kac generators".into())?;
    for d in s.basis_data().map_err(e)? {
        for k in &kac {
            let x = &k.coefficient;
            let v = d.wick_eval(x).map_err(e)?;
            ensure(v.is_zero(), || format!("{} has φ = {v}", p.render(x)))?;
            for g in p.alphabet.ids() {
                let ip = d.eta_inner(x, &NCPoly::gen(g)).map_err(e)?;
                ensure(ip.is_zero(), || format!("⟨η({}), η({})⟩ = {ip}", p.render(x), p.symbol(g)))?;
            }
        }
    }
    Ok(format!("dimension 2, forced zeros {{γ, γ*}}, {} Kac generators annihilated", kac.len()))
}

fn criterion_6() -> Outcome {
    let s = solve_gaussian_space(Arc::new(hopf::o_n_star(3).unwrap())).map_err(e)?;
    let idx = |i: usize, j: usize| 3 * i + j;
    ensure(s.cocycle_space.len() == 3, || format!("cocycle space of dimension {}", s.cocycle_space.len()))?;
    ensure(is_antisymmetric_space(&s.cocycle_space, &idx, 3), || {
        "cocycle space is not the antisymmetric matrices".into()
    })?;
    ensure(s.cocycle_space.iter().flatten().all(|c| c.im.is_zero()), || "cocycle basis is not real".into())?;
    ensure(s.gram_forced_real, || "Gram realness is not forced".into())?;
    Ok("cocycles = real antisymmetric 3x3, Gram forced real".into())
}

fn criterion_7() -> Outcome {
    let p = hopf::o_n_twisted(3).unwrap();
    let s = solve_gaussian_space(Arc::new(p.clone())).map_err(e)?;
    for i in 0..3 {
        for j in 0..3 {
            let g = p.gen(&format!("u({},{})", i + 1, j + 1)).map_err(e)?;
            ensure(i == j || s.phi_forced_zero.contains(&g), || format!("φ(u_{}{}) is not forced to 0", i + 1, j + 1))?;
        }
    }
    Ok(format!("φ(u_ij) = 0 forced for i ≠ j; solution dimension {}", s.dimension))
}

fn criterion_8() -> Outcome {
    let (q, alg) = gaussian_part_dual(&FpGroup::free(2)).map_err(e)?;
    let m = q.malcev.as_ref().ok_or("no Mal'cev data")?;
    ensure(m.abelian_rank == 2 && m.central_rank == 1 && m.center_rank == 1, || format!("ranks {:?}", m.signature()))?;
    ensure(m.signature().3 == vec![1.into()], || format!("bracket invariants {:?}", m.signature().3))?;
    ensure(alg.ngens() == 6, || format!("group algebra has {} generators", alg.ngens()))?;
    let h3 = torsion_signature("H3")?;
    ensure(h3 == m.signature(), || format!("H3 signature {h3:?} differs from {:?}", m.signature()))?;
    let (t, talg) = gaussian_part_dual(&FpGroup::from_spec("Z2*Z2").unwrap()).map_err(e)?;
    ensure(t.abelian.rank == 0 && t.commutator.rank == 0 && talg.ngens() == 0, || format!("Z2*Z2 gives {t:?}"))?;
    let cg = central_gaussian(&q).map_err(e)?;
    let z = (m.abelian_rank + 1) as Letter;
    let at_center = cg.value(&[z]).map_err(e)?;
    ensure(!at_center.is_zero(), || "φ vanishes on the center".into())?;
    let pos = cg.conditional_positivity(3).map_err(e)?;
    ensure(pos.psd, || format!("kernel on {} words is not PSD", pos.elements))?;
    Ok(format!("Heisenberg (2,1,[1]); trivial for Z2*Z2; φ(z) = {at_center}; PSD on {} words", pos.elements))
}

fn torsion_signature(spec: &str) -> Result<(usize, usize, usize, Vec<num_bigint::BigInt>), String> {
    let (q, _) = gaussian_part_dual(&FpGroup::from_spec(spec).unwrap()).map_err(e)?;
    Ok(q.malcev.ok_or("no Mal'cev data")?.signature())
}

fn criterion_9() -> Outcome {
    // (a)
    let f3 = FpGroup::free(3);
    let p = Arc::new(group_algebra(&f3).unwrap());
    let c = commutator(&commutator(&[1], &[2]), &[3]);
    let x = &group_element(&p, &f3, &c).map_err(e)? - &NCPoly::one();
    let q = BoundedQuotient::new(p, 8).map_err(e)?;
    let v = membership(&kn_span(&q, 3).map_err(e)?, &x).verdict;
    ensure(v == Verdict::CertifiedIn, || format!("(a) verdict {v:?}"))?;
    // (b)
    for k in [2usize, 4] {
        let g = FpGroup::cyclic(k);
        let p = Arc::new(group_algebra(&g).unwrap());
        let avg = (0..k)
            .map(|j| group_element(&p, &g, &vec![1; j]).unwrap())
            .fold(NCPoly::zero(), |a, b| &a + &b)
            .scale(&Scalar::ratio(1, k as i64));
        let x = centered(&p, &avg).map_err(e)?;
        let q = BoundedQuotient::new(p, 10).map_err(e)?;
        for n in 1..=10 {
            let v = membership(&kn_span(&q, n).map_err(e)?, &x).verdict;
            ensure(v == Verdict::CertifiedIn, || format!("(b) Z{k}, n = {n}: {v:?}"))?;
        }
    }
    // (c)
    let q = BoundedQuotient::new(Arc::new(hopf::su_q2(&rat(-1, 1)).unwrap()), 6).map_err(e)?;
    let r = o2plus_descent_check(&q, 6).map_err(e)?;
    ensure(r.certified_all && r.certified == (1..=6).collect::<Vec<_>>(), || {
        format!("(c) certified {:?}", r.certified)
    })?;
    // (d)
    let q = BoundedQuotient::new(Arc::new(group_algebra(&FpGroup::free(2)).unwrap()), 4).map_err(e)?;
    for n in [2, 4] {
        let r = filtration_probe(&q, n).map_err(e)?;
        ensure(r.passed, || format!("(d) filtration fails for K{n}"))?;
    }
    Ok("(a) [[g,h],k]-1 ∈ K3; (b) projections in K1..K10; (c) γ ∈ K1..K6; (d) K2, K4 filtration".into())
}

fn criterion_10() -> Outcome {
    let p = hopf::su_q2(&rat(1, 2)).unwrap();
    let c = p.corep.clone().ok_or("no corepresentation")?;
    let k = kac_generators(&c);
    let got: Vec<(usize, usize, NCPoly)> = k.iter().map(|g| (g.i, g.j, g.coefficient.clone())).collect();
    let want = vec![(0, 1, c.coeffs[0][1].clone()), (1, 0, c.coeffs[1][0].clone())];
    ensure(got == want, || format!("generators {:?}", k.iter().map(|g| p.render(&g.coefficient)).collect::<Vec<_>>()))?;
    let s2 = s_squared(&c);
    for i in 0..2 {
        for j in 0..2 {
            let r = &c.q_eigenvalues[i] / &c.q_eigenvalues[j];
            ensure(s2[i][j] == r, || format!("S² ratio ({i},{j}) = {} vs {r}", s2[i][j]))?;
        }
    }
    for g in &k {
        ensure(g.ratio == &c.q_eigenvalues[g.i] / &c.q_eigenvalues[g.j], || {
            format!("ratio of u_{}{}", g.i + 1, g.j + 1)
        })?;
    }
    let one = Complex64::new(1.0, 0.0);
    ensure(scaling_action(&c, 0.0).iter().flatten().all(|z| *z == one), || "τ_0 is not identically 1".into())?;
    Ok("two off-diagonal generators, S² = q_i/q_j, τ_0 = 1".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<u64>); 10] = [
        ("Wick oracle equivalence", criterion_1, Some(10)),
        ("Gaussianity on K3", criterion_2, Some(10)),
        ("heat semigroup on C[Z]", criterion_3, Some(5)),
        ("drift is a character", criterion_4, None),
        ("SU_1/2(2) classification", criterion_5, None),
        ("O_3^* classification", criterion_6, None),
        ("twisted O_3", criterion_7, None),
        ("discrete duals", criterion_8, None),
        ("ideal machinery", criterion_9, Some(120)),
        ("Kac generators", criterion_10, None),
    ];
    let mut failed = 0;
    for (k, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if took > Duration::from_secs(*s) => Err(format!("took {took:.1?}, limit {s} s")),
            (o, _) => o,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {}: {name}: {msg} ({took:.2?})", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {msg} ({took:.2?})", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
