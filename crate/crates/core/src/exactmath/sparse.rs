use std::collections::BTreeMap;

use super::{ExactMatrix, Field, Ring, GR};

type Row = BTreeMap<usize, GR>;

/// Incremental row echelon form over sparse rows.
///
/// Used for linear systems with hundreds of unknowns but only a handful of
/// nonzeros per equation (commutant equations of 20-dimensional direct sums),
/// where a dense tableau would be mostly zeros.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    n: usize,
    pivots: BTreeMap<usize, Row>,
}

impl SparseEchelon {
    pub fn new(unknowns: usize) -> Self {
        Self {
            n: unknowns,
            pivots: BTreeMap::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Whether some reduced equation leads with unknown `col`.
    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Adds `Σ c_k x_k = 0`; returns whether the rank grew.
    pub fn push<I: IntoIterator<Item = (usize, GR)>>(&mut self, eq: I) -> bool {
        let mut row = Row::new();
        for (k, c) in eq {
            assert!(k < self.n, "unknown index out of range");
            if c.is_zero() {
                continue;
            }
            let e = row.entry(k).or_insert_with(GR::zero);
            *e = e.add_ref(&c);
            if e.is_zero() {
                row.remove(&k);
            }
        }
        let mut cursor = 0;
        while let Some((&col, coef)) = row
            .range(cursor..)
            .find(|(c, _)| self.pivots.contains_key(c))
        {
            let coef = coef.clone();
            for (k, v) in &self.pivots[&col] {
                let e = row.entry(*k).or_insert_with(GR::zero);
                *e = e.sub_ref(&coef.mul_ref(v));
                if e.is_zero() {
                    row.remove(k);
                }
            }
            cursor = col + 1;
        }
        let Some((&lead, lc)) = row.iter().next() else {
            return false;
        };
        let inv = lc.inv().expect("nonzero leading coefficient");
        for v in row.values_mut() {
            *v = v.mul_ref(&inv);
        }
        self.pivots.insert(lead, row);
        true
    }

    /// Basis of the solution space, each vector as a dense list of values.
    pub fn nullspace(&self) -> Vec<Vec<GR>> {
        // back-substitute into reduced form, highest pivot first
        let mut reduced: BTreeMap<usize, Row> = BTreeMap::new();
        for (&p, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let hits: Vec<(usize, GR)> = r
                .iter()
                .filter(|(k, _)| **k != p && reduced.contains_key(k))
                .map(|(k, v)| (*k, v.clone()))
                .collect();
            for (k, c) in hits {
                for (j, v) in &reduced[&k] {
                    let e = r.entry(*j).or_insert_with(GR::zero);
                    *e = e.sub_ref(&c.mul_ref(v));
                    if e.is_zero() {
                        r.remove(j);
                    }
                }
            }
            reduced.insert(p, r);
        }
        (0..self.n)
            .filter(|f| !reduced.contains_key(f))
            .map(|f| {
                let mut x = vec![GR::zero(); self.n];
                x[f] = GR::one();
                for (&p, row) in &reduced {
                    if let Some(c) = row.get(&f) {
                        x[p] = c.neg_ref();
                    }
                }
                x
            })
            .collect()
    }

    /// Loads every row of a dense matrix as an equation.
    pub fn from_matrix(m: &ExactMatrix<GR>) -> Self {
        let mut s = Self::new(m.cols());
        for r in 0..m.rows() {
            s.push(m.row(r).iter().cloned().enumerate());
        }
        s
    }
}
