//! Centered coordinates: words in `X_g = g − ε(g)`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exact::{Scalar, SparseVec};
use crate::freestar::{NCPoly, Word};
use crate::hopf::HopfPresentation;

pub const DEFAULT_BASIS_CAP: usize = 200_000;

/// The basis cap, overridable through `HGAUSS_MAX_BASIS`.
pub fn basis_cap() -> usize {
    std::env::var("HGAUSS_MAX_BASIS").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BASIS_CAP)
}

/// Number of words of length at most `len` over `m` letters, saturating.
pub fn count_words(m: usize, len: usize) -> usize {
    let mut total = 0usize;
    let mut layer = 1usize;
    for _ in 0..=len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(m);
    }
    total
}

/// All words up to a length, indexed so that longer words get smaller indices;
/// row reduction then rewrites long words in terms of short ones.
#[derive(Debug)]
pub struct WordSpace {
    max_len: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl WordSpace {
    pub fn new(m: usize, max_len: usize, cap: usize) -> Result<Self> {
        let required = count_words(m, max_len);
        if required > cap {
            return Err(Error::CapExceeded { required, cap });
        }
        let mut words = Word::all_up_to(m as u32, max_len);
        words.reverse();
        let index = words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        Ok(WordSpace { max_len, words, index })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn word(&self, k: usize) -> &Word {
        &self.words[k]
    }

    pub fn index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn count_of_length(&self, lo: usize, hi: usize) -> usize {
        self.words.iter().filter(|w| (lo..=hi).contains(&w.len())).count()
    }

    /// Coordinates of an X-polynomial, dropping words beyond the length bound.
    pub fn vector(&self, x: &BTreeMap<Word, Scalar>) -> SparseVec<Scalar> {
        x.iter().filter_map(|(w, c)| self.index(w).map(|k| (k, c.clone()))).filter(|(_, c)| !c.is_zero()).collect()
    }

    /// `X_g · v` or `v · X_g`, truncated.
    pub fn multiply(&self, v: &SparseVec<Scalar>, g: u32, left: bool) -> SparseVec<Scalar> {
        let mut out = SparseVec::new();
        for (k, c) in v {
            let w = &self.words[*k];
            if w.len() >= self.max_len {
                continue;
            }
            let prod = if left { Word::letter(g).concat(w) } else { w.concat(&Word::letter(g)) };
            out.insert(self.index[&prod], c.clone());
        }
        out
    }

    pub fn poly(&self, v: &SparseVec<Scalar>) -> NCPoly {
        NCPoly::from_terms(v.iter().map(|(k, c)| (self.words[*k].clone(), c.clone())))
    }
}

/// Expands `x` in X-words, keeping only words of length at most `max_len`.
pub fn to_x(p: &HopfPresentation, x: &NCPoly, max_len: usize) -> BTreeMap<Word, Scalar> {
    let mut out: BTreeMap<Word, Scalar> = BTreeMap::new();
    for (w, c) in x.terms() {
        let mut partial: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
        partial.insert(Vec::new(), c.clone());
        for &g in w.letters() {
            let e = &p.counit_table[g as usize];
            let mut next: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
            for (pre, v) in partial {
                if pre.len() < max_len {
                    let mut longer = pre.clone();
                    longer.push(g);
                    add(&mut next, longer, v.clone());
                }
                if !e.is_zero() {
                    add(&mut next, pre, &v * e);
                }
            }
            partial = next;
        }
        for (k, v) in partial {
            let e = out.entry(Word(k)).or_insert_with(Scalar::zero);
            *e += &v;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn add(m: &mut BTreeMap<Vec<u32>, Scalar>, k: Vec<u32>, v: Scalar) {
    let e = m.entry(k).or_insert_with(Scalar::zero);
    *e += &v;
}

/// Inverse change of variables: an X-polynomial as an ordinary polynomial.
pub fn from_x(p: &HopfPresentation, x: &NCPoly) -> NCPoly {
    x.map_words(|w| {
        w.letters().iter().fold(NCPoly::one(), |acc, &g| {
            &acc * &(&NCPoly::gen(g) - &NCPoly::constant(p.counit_table[g as usize].clone()))
        })
    })
}
