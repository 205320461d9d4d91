//! Built-in presentations.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Corepresentation, HopfPresentation};
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::freestar::{text::Cursor, Alphabet, GeneratorSymbol, NCPoly, Tensor, Word};
use crate::groups::FpGroup;

fn w(letters: &[u32]) -> NCPoly {
    NCPoly::word(Word(letters.to_vec()))
}

fn tensor(pairs: &[(Scalar, u32, u32)]) -> Tensor {
    let mut t = Tensor::zero(2);
    for (c, a, b) in pairs {
        t.add_term(vec![Word::letter(*a), Word::letter(*b)], c.clone());
    }
    t
}

fn group_like(g: u32) -> Tensor {
    tensor(&[(Scalar::one(), g, g)])
}

/// Group algebra `ℂ[Γ]`. Generators whose square is a relator become
/// self-adjoint involutions; every other generator gets an inverse letter.
pub fn group_algebra(g: &FpGroup) -> Result<HopfPresentation> {
    let n = g.ngens();
    let involution: Vec<bool> = (0..n).map(|i| g.relators.iter().any(|r| *r == vec![i as i32 + 1; 2])).collect();
    let mut alphabet = Alphabet::new();
    for name in &g.names {
        alphabet.push(GeneratorSymbol::plain(name.clone()))?;
    }
    let mut inverse = vec![0u32; n];
    for i in 0..n {
        inverse[i] = if involution[i] {
            i as u32
        } else {
            alphabet.push(GeneratorSymbol::plain(g.names[i].clone()).inverse())?
        };
    }
    let mut p = HopfPresentation::new(format!("group:{}", g.name), alphabet);
    let m = p.ngens();
    let mut partner = vec![0u32; m];
    for i in 0..n {
        partner[i] = inverse[i];
        partner[inverse[i] as usize] = i as u32;
    }
    for x in 0..m {
        p.star_table[x] = NCPoly::gen(partner[x]);
        p.antipode_table[x] = NCPoly::gen(partner[x]);
        p.counit_table[x] = Scalar::one();
        p.coproduct_table[x] = group_like(x as u32);
    }
    let letter = |l: i32| -> u32 {
        let i = (l.unsigned_abs() - 1) as usize;
        if l > 0 {
            i as u32
        } else {
            inverse[i]
        }
    };
    let one = NCPoly::one();
    for i in 0..n {
        if !involution[i] {
            p.relations.push(&w(&[i as u32, inverse[i]]) - &one);
            p.relations.push(&w(&[inverse[i], i as u32]) - &one);
        }
    }
    for r in &g.relators {
        let word: Vec<u32> = r.iter().map(|&l| letter(l)).collect();
        let rel = &w(&word) - &one;
        if !p.relations.contains(&rel) {
            p.relations.push(rel);
        }
    }
    p.params.insert("group".into(), g.to_string());
    p.trusted_normal_form = true;
    Ok(p)
}

/// A group word as an element of the group algebra built by [`group_algebra`].
pub fn group_element(p: &HopfPresentation, g: &FpGroup, word: &[crate::groups::Letter]) -> Result<NCPoly> {
    let mut letters = Vec::with_capacity(word.len());
    for &l in word {
        let i = (l.unsigned_abs() - 1) as usize;
        let name = g.names.get(i).ok_or_else(|| Error::UnknownGenerator(format!("letter {l}")))?;
        let sym = GeneratorSymbol::plain(name.clone());
        let sym = if l > 0 { sym } else { sym.inverse() };
        match p.resolve(&sym) {
            Some(x) => letters.push(x),
            None => return Err(Error::UnknownGenerator(sym.to_string())),
        }
    }
    Ok(letters.iter().fold(NCPoly::one(), |acc, x| &acc * x))
}

fn check_q(q: &BigRational) -> Result<()> {
    if q.is_zero() || *q < -BigRational::one() || *q >= BigRational::one() {
        return Err(Error::ParameterRange(format!("q = {q} must satisfy q != 0 and -1 <= q < 1")));
    }
    Ok(())
}

/// `SU_q(2)` with generators `alpha, alpha*, gamma, gamma*` and fundamental
/// corepresentation `u = [[alpha, -q gamma*], [gamma, alpha*]]`.
pub fn su_q2(q: &BigRational) -> Result<HopfPresentation> {
    check_q(q)?;
    let alphabet = Alphabet::from_symbols([
        GeneratorSymbol::plain("alpha"),
        GeneratorSymbol::plain("alpha").starred(),
        GeneratorSymbol::plain("gamma"),
        GeneratorSymbol::plain("gamma").starred(),
    ])?;
    let (a, a_s, c, c_s) = (0u32, 1u32, 2u32, 3u32);
    let qs = Scalar::real(q.clone());
    let one = Scalar::one();
    let mut p = HopfPresentation::new(format!("su_q2(q = {q})"), alphabet);
    p.params.insert("q".into(), q.to_string());
    p.star_table = vec![NCPoly::gen(a_s), NCPoly::gen(a), NCPoly::gen(c_s), NCPoly::gen(c)];
    p.counit_table = vec![one.clone(), one.clone(), Scalar::zero(), Scalar::zero()];
    p.coproduct_table = vec![
        tensor(&[(one.clone(), a, a), (-&qs, c_s, c)]),
        tensor(&[(one.clone(), a_s, a_s), (-&qs, c, c_s)]),
        tensor(&[(one.clone(), c, a), (one.clone(), a_s, c)]),
        tensor(&[(one.clone(), c_s, a_s), (one.clone(), a, c_s)]),
    ];
    let qinv = Scalar::real(q.recip());
    p.antipode_table =
        vec![NCPoly::gen(a_s), NCPoly::gen(a), NCPoly::gen(c).scale(&-&qs), NCPoly::gen(c_s).scale(&-&qinv)];
    let q2 = &qs * &qs;
    let unit = NCPoly::one();
    p.relations = vec![
        &w(&[a, c]) - &w(&[c, a]).scale(&qs),
        &w(&[a, c_s]) - &w(&[c_s, a]).scale(&qs),
        &w(&[c_s, a_s]) - &w(&[a_s, c_s]).scale(&qs),
        &w(&[c, a_s]) - &w(&[a_s, c]).scale(&qs),
        &w(&[c, c_s]) - &w(&[c_s, c]),
        &(&w(&[a_s, a]) + &w(&[c_s, c])) - &unit,
        &(&w(&[a, a_s]) + &w(&[c_s, c]).scale(&q2)) - &unit,
    ];
    let qa = q.abs();
    p.corep = Some(Corepresentation {
        coeffs: vec![vec![NCPoly::gen(a), NCPoly::gen(c_s).scale(&-&qs)], vec![NCPoly::gen(c), NCPoly::gen(a_s)]],
        q_eigenvalues: vec![qa.clone(), qa.recip()],
    });
    p.trusted_normal_form = true;
    p.notes.push("fundamental corepresentation u = [[alpha, -q gamma*], [gamma, alpha*]], Q = diag(|q|, 1/|q|)".into());
    Ok(p)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ParameterRange("N must be at least 1".into()));
    }
    Ok(())
}

/// Self-adjoint `u(i,j)` with matrix coproduct, `S(u_ij) = u_ji`, and both
/// orthogonality relation families.
fn orthogonal_base(name: &str, n: usize) -> Result<(HopfPresentation, impl Fn(usize, usize) -> u32)> {
    check_n(n)?;
    let mut alphabet = Alphabet::new();
    for i in 1..=n as i64 {
        for j in 1..=n as i64 {
            alphabet.push(GeneratorSymbol::indexed("u", &[i, j]))?;
        }
    }
    let idx = move |i: usize, j: usize| (i * n + j) as u32;
    let mut p = HopfPresentation::new(format!("{name}(N = {n})"), alphabet);
    p.params.insert("N".into(), n.to_string());
    for i in 0..n {
        for j in 0..n {
            let g = idx(i, j) as usize;
            p.counit_table[g] = Scalar::from_int((i == j) as i64);
            p.antipode_table[g] = NCPoly::gen(idx(j, i));
            p.coproduct_table[g] = tensor(&(0..n).map(|k| (Scalar::one(), idx(i, k), idx(k, j))).collect::<Vec<_>>());
        }
    }
    for i in 0..n {
        for j in 0..n {
            let delta = NCPoly::constant(Scalar::from_int((i == j) as i64));
            let rows = (0..n).fold(NCPoly::zero(), |s, k| &s + &w(&[idx(i, k), idx(j, k)]));
            let cols = (0..n).fold(NCPoly::zero(), |s, k| &s + &w(&[idx(k, i), idx(k, j)]));
            p.relations.push(&rows - &delta);
            p.relations.push(&cols - &delta);
        }
    }
    p.corep = Some(Corepresentation {
        coeffs: (0..n).map(|i| (0..n).map(|j| NCPoly::gen(idx(i, j))).collect()).collect(),
        q_eigenvalues: vec![BigRational::one(); n],
    });
    Ok((p, idx))
}

pub fn o_n_plus(n: usize) -> Result<HopfPresentation> {
    Ok(orthogonal_base("o_n_plus", n)?.0)
}

/// Half-liberated orthogonal group: `abc = cba` for all generators.
pub fn o_n_star(n: usize) -> Result<HopfPresentation> {
    let (mut p, _) = orthogonal_base("o_n_star", n)?;
    let m = p.ngens() as u32;
    for a in 0..m {
        for b in 0..m {
            for c in a + 1..m {
                p.relations.push(&w(&[a, b, c]) - &w(&[c, b, a]));
            }
        }
    }
    Ok(p)
}

/// Twisted orthogonal group: coefficients on a common row or column
/// anticommute, all others commute.
pub fn o_n_twisted(n: usize) -> Result<HopfPresentation> {
    let (mut p, idx) = orthogonal_base("o_n_twisted", n)?;
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    for (x, &(i, j)) in cells.iter().enumerate() {
        for &(k, l) in &cells[x + 1..] {
            let (a, b) = (idx(i, j), idx(k, l));
            let ab = w(&[a, b]);
            let ba = w(&[b, a]);
            let shared = (i == k) != (j == l);
            p.relations.push(if shared { &ab + &ba } else { &ab - &ba });
        }
    }
    Ok(p)
}

/// Free unitary group on `u(i,j)` and `u(i,j)*`.
pub fn u_n_plus(n: usize) -> Result<HopfPresentation> {
    check_n(n)?;
    let mut alphabet = Alphabet::new();
    for star in [false, true] {
        for i in 1..=n as i64 {
            for j in 1..=n as i64 {
                let s = GeneratorSymbol::indexed("u", &[i, j]);
                alphabet.push(if star { s.starred() } else { s })?;
            }
        }
    }
    let u = |i: usize, j: usize| (i * n + j) as u32;
    let us = |i: usize, j: usize| (n * n + i * n + j) as u32;
    let mut p = HopfPresentation::new(format!("u_n_plus(N = {n})"), alphabet);
    p.params.insert("N".into(), n.to_string());
    for i in 0..n {
        for j in 0..n {
            let e = Scalar::from_int((i == j) as i64);
            let (g, gs) = (u(i, j) as usize, us(i, j) as usize);
            p.star_table[g] = NCPoly::gen(us(i, j));
            p.star_table[gs] = NCPoly::gen(u(i, j));
            p.counit_table[g] = e.clone();
            p.counit_table[gs] = e;
            p.antipode_table[g] = NCPoly::gen(us(j, i));
            p.antipode_table[gs] = NCPoly::gen(u(j, i));
            p.coproduct_table[g] = tensor(&(0..n).map(|k| (Scalar::one(), u(i, k), u(k, j))).collect::<Vec<_>>());
            p.coproduct_table[gs] = tensor(&(0..n).map(|k| (Scalar::one(), us(i, k), us(k, j))).collect::<Vec<_>>());
        }
    }
    for i in 0..n {
        for j in 0..n {
            let delta = NCPoly::constant(Scalar::from_int((i == j) as i64));
            let sum = |f: &dyn Fn(usize) -> [u32; 2]| (0..n).fold(NCPoly::zero(), |s, k| &s + &w(&f(k)));
            p.relations.push(&sum(&|k| [u(i, k), us(j, k)]) - &delta);
            p.relations.push(&sum(&|k| [us(k, i), u(k, j)]) - &delta);
            p.relations.push(&sum(&|k| [us(i, k), u(j, k)]) - &delta);
            p.relations.push(&sum(&|k| [u(k, i), us(k, j)]) - &delta);
        }
    }
    p.corep = Some(Corepresentation {
        coeffs: (0..n).map(|i| (0..n).map(|j| NCPoly::gen(u(i, j))).collect()).collect(),
        q_eigenvalues: vec![BigRational::one(); n],
    });
    Ok(p)
}

/// Free product: disjoint union of generators and relations. Generator names
/// must not clash.
pub fn free_product(a: &HopfPresentation, b: &HopfPresentation) -> Result<HopfPresentation> {
    let mut alphabet = a.alphabet.clone();
    for s in b.alphabet.symbols() {
        alphabet
            .push(s.clone())
            .map_err(|_| Error::InvalidInput(format!("free_product: generator `{s}` occurs in both factors")))?;
    }
    let shift = a.ngens() as u32;
    let lift = |p: &NCPoly| {
        NCPoly::from_terms(p.terms().map(|(w, c)| (Word(w.letters().iter().map(|g| g + shift).collect()), c.clone())))
    };
    let lift_t = |t: &Tensor| {
        let mut out = Tensor::zero(t.arity());
        for (legs, c) in t.terms() {
            out.add_term(
                legs.iter().map(|w| Word(w.letters().iter().map(|g| g + shift).collect())).collect(),
                c.clone(),
            );
        }
        out
    };
    let mut p = HopfPresentation::new(format!("free_product({}, {})", a.name, b.name), alphabet);
    p.star_table = a.star_table.iter().cloned().chain(b.star_table.iter().map(lift)).collect();
    p.antipode_table = a.antipode_table.iter().cloned().chain(b.antipode_table.iter().map(lift)).collect();
    p.counit_table = a.counit_table.iter().chain(&b.counit_table).cloned().collect();
    p.coproduct_table = a.coproduct_table.iter().cloned().chain(b.coproduct_table.iter().map(lift_t)).collect();
    p.relations = a.relations.iter().cloned().chain(b.relations.iter().map(lift)).collect();
    if let (Some(ca), Some(cb)) = (&a.corep, &b.corep) {
        let (m, k) = (ca.dim(), cb.dim());
        let mut coeffs = vec![vec![NCPoly::zero(); m + k]; m + k];
        for i in 0..m {
            for j in 0..m {
                coeffs[i][j] = ca.coeffs[i][j].clone();
            }
        }
        for i in 0..k {
            for j in 0..k {
                coeffs[m + i][m + j] = lift(&cb.coeffs[i][j]);
            }
        }
        let q = ca.q_eigenvalues.iter().chain(&cb.q_eigenvalues).cloned().collect();
        p.corep = Some(Corepresentation { coeffs, q_eigenvalues: q });
    }
    Ok(p)
}

pub const CATALOGUE_NAMES: &[&str] =
    &["group_algebra", "su_q2", "o_n_plus", "u_n_plus", "o_n_star", "o_n_twisted", "free_product"];

/// Compact catalogue reference used on the command line: `su_q2:1/2`,
/// `o_n_plus:2`, `group:Z2`, `group_algebra:F2`, `free_product:(su_q2:1/2, group:Z)`.
pub fn from_spec(spec: &str) -> Result<HopfPresentation> {
    let mut cur = Cursor::new(spec);
    let p = spec_item(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.expected(&["end of catalogue reference"]));
    }
    Ok(p)
}

fn spec_item(cur: &mut Cursor) -> Result<HopfPresentation> {
    let name = cur.ident()?;
    cur.expect(":")?;
    match name.as_str() {
        "group" | "group_algebra" => {
            cur.skip_ws();
            let rest = cur.rest();
            let end = rest.find([',', ')']).unwrap_or(rest.len());
            let g = FpGroup::from_spec(&rest[..end])?;
            cur.set_pos(cur.pos() + end);
            group_algebra(&g)
        }
        "su_q2" => su_q2(&cur.rational()?),
        "o_n_plus" | "u_n_plus" | "o_n_star" | "o_n_twisted" => {
            let n = cur.integer()?;
            if n < 1 {
                return Err(Error::ParameterRange("N must be at least 1".into()));
            }
            let n = n as usize;
            match name.as_str() {
                "o_n_plus" => o_n_plus(n),
                "u_n_plus" => u_n_plus(n),
                "o_n_star" => o_n_star(n),
                _ => o_n_twisted(n),
            }
        }
        "free_product" => {
            cur.expect("(")?;
            let a = spec_item(cur)?;
            cur.expect(",")?;
            let b = spec_item(cur)?;
            cur.expect(")")?;
            free_product(&a, &b)
        }
        other => Err(Error::UnknownCatalogue(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn all_small() -> Vec<HopfPresentation> {
        vec![
            group_algebra(&FpGroup::from_spec("Z2").unwrap()).unwrap(),
            group_algebra(&FpGroup::from_spec("F2").unwrap()).unwrap(),
            group_algebra(&FpGroup::from_spec("H3").unwrap()).unwrap(),
            su_q2(&rat(1, 2)).unwrap(),
            su_q2(&rat(-1, 1)).unwrap(),
            o_n_plus(2).unwrap(),
            u_n_plus(2).unwrap(),
            o_n_star(2).unwrap(),
            o_n_twisted(3).unwrap(),
        ]
    }

    #[test]
    fn relations_have_zero_counit_and_star_is_involutive() {
        for p in all_small() {
            p.validate().unwrap();
            assert!(p.counit_violations().is_empty(), "{}", p.name);
        }
    }

    #[test]
    fn coassociative_on_short_words() {
        for p in all_small() {
            let n = p.ngens() as u32;
            for word in Word::all_up_to(n, 2) {
                let x = NCPoly::word(word);
                let right = p.iterated_coproduct(&x, 3).unwrap();
                let left = p.iterated_coproduct_left(&x, 3).unwrap();
                assert_eq!(right, left, "{}", p.name);
            }
        }
    }

    #[test]
    fn documented_shapes() {
        let s = su_q2(&rat(1, 2)).unwrap();
        assert_eq!(s.ngens(), 4);
        assert_eq!(s.relations.len(), 7);
        assert_eq!(s.render(&s.relations[0]), "-1/2*gamma.alpha + alpha.gamma");
        assert!(s.corep.as_ref().unwrap().trace_balanced());
        let f2 = group_algebra(&FpGroup::free(2)).unwrap();
        let names: Vec<String> = f2.alphabet.symbols().iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["g1", "g2", "g1^-1", "g2^-1"]);
        assert_eq!(f2.relations.len(), 4);
        let o2 = o_n_plus(2).unwrap();
        let u11 = NCPoly::gen(o2.gen("u(1,1)").unwrap());
        assert_eq!(o2.render_tensor(&o2.coproduct(&u11).unwrap()), "u(1,2) (x) u(2,1) + u(1,1) (x) u(1,1)");
        let z2 = group_algebra(&FpGroup::cyclic(2)).unwrap();
        assert_eq!(z2.ngens(), 1);
        assert_eq!(z2.relations.len(), 1);
    }

    #[test]
    fn parameter_guards() {
        assert!(su_q2(&rat(1, 1)).is_err());
        assert!(su_q2(&rat(0, 1)).is_err());
        assert!(su_q2(&rat(-2, 1)).is_err());
        assert!(o_n_plus(0).is_err());
        assert!(from_spec("sp_n:2").is_err());
    }

    #[test]
    fn specs() {
        assert_eq!(from_spec("su_q2:1/2").unwrap().ngens(), 4);
        assert_eq!(from_spec("group:Z2").unwrap().ngens(), 1);
        assert_eq!(from_spec("o_n_star:3").unwrap().ngens(), 9);
        let fp = from_spec("free_product:(group:Z, o_n_plus:1)").unwrap();
        assert_eq!(fp.ngens(), 3);
        fp.validate().unwrap();
    }
}
