//! Dense containers of weights.

use std::ops::{Deref, Index, IndexMut};

use crate::error::{Error, Result};
use crate::numeric::ExpFloat;

/// Length-`n` sequence of weights indexed from 0.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct WeightSequence {
    entries: Vec<ExpFloat>,
}

impl WeightSequence {
    pub fn new(entries: Vec<ExpFloat>) -> WeightSequence {
        WeightSequence { entries }
    }

    pub fn filled(n: usize, v: ExpFloat) -> WeightSequence {
        WeightSequence { entries: vec![v; n] }
    }

    pub fn into_inner(self) -> Vec<ExpFloat> {
        self.entries
    }
}

impl Deref for WeightSequence {
    type Target = [ExpFloat];

    fn deref(&self) -> &[ExpFloat] {
        &self.entries
    }
}

impl From<Vec<ExpFloat>> for WeightSequence {
    fn from(entries: Vec<ExpFloat>) -> WeightSequence {
        WeightSequence { entries }
    }
}

impl Index<usize> for WeightSequence {
    type Output = ExpFloat;

    fn index(&self, i: usize) -> &ExpFloat {
        &self.entries[i]
    }
}

impl IndexMut<usize> for WeightSequence {
    fn index_mut(&mut self, i: usize) -> &mut ExpFloat {
        &mut self.entries[i]
    }
}

/// Dense `n x n` matrix of weights in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightMatrix {
    n: usize,
    entries: Vec<ExpFloat>,
}

impl WeightMatrix {
    pub fn new(n: usize, entries: Vec<ExpFloat>) -> Result<WeightMatrix> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(entries.len(), n * n));
        }
        Ok(WeightMatrix { n, entries })
    }

    pub fn filled(n: usize, v: ExpFloat) -> WeightMatrix {
        WeightMatrix { n, entries: vec![v; n * n] }
    }

    pub fn from_rows(rows: Vec<Vec<ExpFloat>>) -> Result<WeightMatrix> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch(r.len(), n));
            }
            entries.extend(r);
        }
        Ok(WeightMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[ExpFloat] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [ExpFloat] {
        &mut self.entries
    }

    pub fn row(&self, i: usize) -> &[ExpFloat] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ExpFloat]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }
}

impl Index<(usize, usize)> for WeightMatrix {
    type Output = ExpFloat;

    fn index(&self, (i, j): (usize, usize)) -> &ExpFloat {
        &self.entries[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for WeightMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ExpFloat {
        &mut self.entries[i * self.n + j]
    }
}
