//! Sparse row echelon forms over an exact field.
//!
//! Rows are kept with a leading coefficient of one. Column order is the
//! natural `usize` order, so callers control pivot preference by how they
//! number coordinates.

use std::collections::BTreeMap;

use super::field::Field;

pub type SparseVec<F> = BTreeMap<usize, F>;

pub fn axpy<F: Field>(target: &mut SparseVec<F>, factor: &F, row: &SparseVec<F>) {
    for (c, v) in row {
        let delta = factor.mul(v);
        let entry = target.entry(*c).or_insert_with(F::zero);
        *entry = entry.add(&delta);
        if entry.is_zero() {
            target.remove(c);
        }
    }
}

/// Incrementally built echelon basis, indexed by pivot column.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec<F>> {
        self.rows.get(&pivot)
    }

    /// Eliminates every pivot column from `v`; the result is the canonical
    /// representative of `v` modulo the span.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut cursor = 0usize;
        loop {
            let next = v.range(cursor..).find(|(c, _)| self.rows.contains_key(c)).map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = next else { break };
            axpy(&mut v, &x.neg(), &self.rows[&c]);
            cursor = c + 1;
        }
        v
    }

    /// Eliminates only leading entries; cheaper than `reduce` for a membership test.
    fn reduce_leading(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        while let Some((&c, x)) = v.iter().next() {
            match self.rows.get(&c) {
                Some(r) => {
                    let x = x.clone();
                    axpy(&mut v, &x.neg(), r);
                }
                None => break,
            }
        }
        v
    }

    /// Inserts `v`; returns the new pivot column, or `None` if `v` was already in the span.
    pub fn insert(&mut self, v: SparseVec<F>) -> Option<usize> {
        let mut v = self.reduce_leading(v);
        loop {
            let (&c, lead) = v.iter().next()?;
            if let Some(r) = self.rows.get(&c) {
                let lead = lead.clone();
                axpy(&mut v, &lead.neg(), r);
                continue;
            }
            let inv = lead.inv();
            for x in v.values_mut() {
                *x = x.mul(&inv);
            }
            self.rows.insert(c, v);
            return Some(c);
        }
    }

    /// Like [`insert`](Self::insert) but keeps every row fully reduced, so rows
    /// stay short when the quotient by the span is small. Only meaningful if all
    /// rows were inserted this way.
    pub fn insert_reduced(&mut self, v: SparseVec<F>) -> Option<usize> {
        let mut v = self.reduce(v);
        let (&c, lead) = v.iter().next()?;
        let inv = lead.inv();
        for x in v.values_mut() {
            *x = x.mul(&inv);
        }
        for row in self.rows.values_mut() {
            if let Some(x) = row.get(&c).cloned() {
                axpy(row, &x.neg(), &v);
            }
        }
        self.rows.insert(c, v);
        Some(c)
    }

    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Back-substitutes so every pivot column is zero in all other rows.
    pub fn into_reduced(mut self) -> Self {
        // descending: rows with larger pivots are already fully reduced
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        for &p in pivots.iter().rev() {
            let mut tail = self.rows.remove(&p).unwrap();
            tail.remove(&p);
            let mut row = self.reduce(tail);
            row.insert(p, F::one());
            self.rows.insert(p, row);
        }
        self
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec<F>)> {
        self.rows.iter().map(|(c, r)| (*c, r))
    }

    /// Basis of the null space of the row span inside `0..ncols`: one vector per free column.
    pub fn kernel_basis(&self, ncols: usize) -> Vec<SparseVec<F>> {
        let reduced = self.clone().into_reduced();
        let mut out = Vec::new();
        for free in (0..ncols).filter(|c| !reduced.rows.contains_key(c)) {
            let mut v = BTreeMap::new();
            v.insert(free, F::one());
            for (p, row) in &reduced.rows {
                if let Some(x) = row.get(&free) {
                    v.insert(*p, x.neg());
                }
            }
            out.push(v);
        }
        out
    }
}
