//! Exact dense row reduction over a [`Field`].
//!
//! Small matrices only; rows are plain `Vec<Scalar>`.

use crate::scalar::{Field, Scalar};

/// A matrix in (or on its way to) reduced row echelon form.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    field: Field,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    /// Pivot column of each stored row, strictly increasing.
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(field: Field, cols: usize) -> Self {
        RowEchelon { field, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let mut e = RowEchelon::new(field, cols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.binary_search(&col).is_ok()
    }

    /// Reduces `v` against the stored rows in place.
    pub fn reduce_vec(&self, v: &mut [Scalar]) {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = x.sub(&c.mul(r));
            }
        }
    }

    /// Reduces `row` and inserts it if independent. Returns true when the rank grew.
    pub fn insert(&mut self, mut row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.reduce_vec(&mut row);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[p].inv();
        for x in row.iter_mut() {
            *x = x.mul(&inv);
        }
        // Eliminate the new pivot from existing rows to keep the form reduced.
        for r in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let c = r[p].clone();
                for (x, y) in r.iter_mut().zip(&row) {
                    *x = x.sub(&c.mul(y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, row);
        true
    }

    /// True when `v` lies in the row space.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce_vec(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

pub fn zero_vec(field: Field, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}
