//! Exact sparse row-echelon forms, ranks and nullspaces.

use crate::field::{FieldSpec, Scalar};
use std::collections::{BTreeMap, HashMap};

/// Sparse row: (column, coefficient) sorted by column, no zero entries.
pub type SparseRow = Vec<(usize, Scalar)>;

pub fn row_from_dense(field: &FieldSpec, dense: &[Scalar]) -> SparseRow {
    dense
        .iter()
        .enumerate()
        .filter(|(_, c)| !field.is_zero(c))
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// target := target + coeff * source, both sorted sparse rows.
fn axpy(field: &FieldSpec, target: &SparseRow, coeff: &Scalar, source: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        if j >= source.len() || (i < target.len() && target[i].0 < source[j].0) {
            out.push(target[i].clone());
            i += 1;
        } else if i >= target.len() || source[j].0 < target[i].0 {
            let v = field.mul(coeff, &source[j].1);
            if !field.is_zero(&v) {
                out.push((source[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(&target[i].1, &field.mul(coeff, &source[j].1));
            if !field.is_zero(&v) {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental reduced row-echelon form. Pivot of a row is its leftmost
/// column; pivot columns are cleared from every other stored row, so the
/// stored rows are an RREF basis of the span of everything inserted.
pub struct Echelon {
    field: FieldSpec,
    rows: Vec<SparseRow>,
    pivot_rows: HashMap<usize, usize>, // pivot column -> row index
}

impl Echelon {
    pub fn new(field: FieldSpec) -> Self {
        Echelon { field, rows: Vec::new(), pivot_rows: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `row` against the current basis.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        loop {
            let Some(&(col, ref c)) = row.first() else { return row };
            match self.pivot_rows.get(&col) {
                Some(&r) => {
                    let coeff = self.field.neg(c);
                    row = axpy(&self.field, &row, &coeff, &self.rows[r]);
                }
                None => {
                    // leading column has no pivot: reduce the tail only
                    let mut rest = row.split_off(1);
                    rest = self.reduce_tail(rest);
                    row.extend(rest);
                    return row;
                }
            }
        }
    }

    fn reduce_tail(&self, mut row: SparseRow) -> SparseRow {
        let mut k = 0;
        while k < row.len() {
            let (col, ref c) = row[k];
            if let Some(&r) = self.pivot_rows.get(&col) {
                let coeff = self.field.neg(c);
                row = axpy(&self.field, &row, &coeff, &self.rows[r]);
                // entry at col vanished; positions before k unchanged
            } else {
                k += 1;
            }
        }
        row
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Insert a row; returns its pivot column if the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> Option<usize> {
        let reduced = self.reduce(row);
        if reduced.is_empty() {
            return None;
        }
        let pivot = reduced[0].0;
        let inv = self.field.inv(&reduced[0].1).expect("nonzero pivot");
        let monic: SparseRow = reduced
            .iter()
            .map(|(c, v)| (*c, self.field.mul(v, &inv)))
            .collect();
        // clear the new pivot column from existing rows
        let idx = self.rows.len();
        for r in 0..idx {
            if let Some(pos) = self.rows[r].iter().position(|(c, _)| *c == pivot) {
                let coeff = self.field.neg(&self.rows[r][pos].1);
                self.rows[r] = axpy(&self.field, &self.rows[r], &coeff, &monic);
            }
        }
        self.rows.push(monic);
        self.pivot_rows.insert(pivot, idx);
        Some(pivot)
    }

    /// Pivot columns in ascending order with their rows.
    pub fn pivots(&self) -> BTreeMap<usize, &SparseRow> {
        self.pivot_rows.iter().map(|(&c, &r)| (c, &self.rows[r])).collect()
    }

    /// Basis of the kernel of the inserted row space read as a linear system
    /// over `ncols` unknowns: one vector per free column, ascending.
    pub fn nullspace(&self, ncols: usize) -> Vec<Vec<Scalar>> {
        let pivots = self.pivots();
        let mut out = Vec::new();
        for free in 0..ncols {
            if pivots.contains_key(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); ncols];
            v[free] = self.field.one();
            for (&pc, row) in &pivots {
                if let Some((_, c)) = row.iter().find(|(c, _)| *c == free) {
                    v[pc] = self.field.neg(c);
                }
            }
            out.push(v);
        }
        out
    }
}
