//! Exact sparse row reduction over ℚ(i).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::GaussRat;

pub type SparseRow = BTreeMap<usize, GaussRat>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    rows: Vec<SparseRow>,
    ncols: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// Reduced rows, one per pivot, in pivot order; each pivot entry is 1.
    pub rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix { rows: Vec::new(), ncols }
    }

    pub fn from_dense(rows: &[Vec<GaussRat>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::new(ncols);
        for r in rows {
            let row: SparseRow = r
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect();
            m.rows.push(row);
        }
        m
    }

    pub fn push_row(&mut self, row: SparseRow) -> Result<()> {
        if let Some((&j, _)) = row.iter().next_back() {
            if j >= self.ncols {
                return Err(Error::DimensionMismatch { expected: self.ncols, got: j + 1 });
            }
        }
        self.rows.push(row.into_iter().filter(|(_, x)| !x.is_zero()).collect());
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = vec![SparseRow::new(); self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, x) in row {
                t[j].insert(i, x.clone());
            }
        }
        SparseMatrix { rows: t, ncols: self.rows.len() }
    }

    pub fn rref(&self) -> Rref {
        let mut pending: Vec<SparseRow> = self.rows.iter().filter(|r| !r.is_empty()).cloned().collect();
        let mut basis: Vec<SparseRow> = Vec::new();
        let mut pivots = Vec::new();
        while !pending.is_empty() {
            // lowest leading column, first row holding it
            let (idx, col) = pending
                .iter()
                .enumerate()
                .map(|(i, r)| (i, *r.keys().next().expect("non-empty")))
                .min_by_key(|&(i, c)| (c, i))
                .expect("non-empty");
            let mut prow = pending.remove(idx);
            let inv = prow[&col].inv().expect("pivot is nonzero");
            for x in prow.values_mut() {
                *x = &*x * &inv;
            }
            for r in pending.iter_mut().chain(basis.iter_mut()) {
                eliminate(r, &prow, col);
            }
            pending.retain(|r| !r.is_empty());
            basis.push(prow);
            pivots.push(col);
        }
        Rref { rank: pivots.len(), pivots, rows: basis }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }
}

/// `row -= row[col] · pivot_row` where `pivot_row[col] = 1`.
fn eliminate(row: &mut SparseRow, pivot_row: &SparseRow, col: usize) {
    let Some(f) = row.get(&col).cloned() else { return };
    for (&j, p) in pivot_row {
        let delta = &f * p;
        let slot = row.entry(j).or_insert_with(GaussRat::zero);
        *slot = &*slot - &delta;
        if slot.is_zero() {
            row.remove(&j);
        }
    }
}

impl Rref {
    /// Remainder of `row` after reduction against the row space basis.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut r = row.clone();
        for (prow, &col) in self.rows.iter().zip(&self.pivots) {
            eliminate(&mut r, prow, col);
        }
        r
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn is_pivot_normalized(&self) -> bool {
        self.rows.iter().zip(&self.pivots).all(|(r, c)| r.get(c) == Some(&GaussRat::one()))
    }
}
