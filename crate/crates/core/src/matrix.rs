use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Square 0-1 matrix, stored row-major. Used for contact maps and SSE
/// incidence matrices; the constructors used by the pipeline keep it
/// symmetric with an empty diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdjacencyMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl AdjacencyMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, bits: vec![false; n * n] }
    }

    /// Builds a symmetric matrix from 0-based pairs. Self-pairs are ignored.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = Self::zeros(n);
        for (i, j) in pairs {
            if i != j {
                m.set_symmetric(i, j, true);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.len();
        let mut bits = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: r.len() });
            }
            bits.extend_from_slice(r);
        }
        Ok(Self { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.n + j] = v;
    }

    pub fn set_symmetric(&mut self, i: usize, j: usize, v: bool) {
        self.set(i, j, v);
        self.set(j, i, v);
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Upper-triangle pairs `(i, j)` with `i < j` that are set, in row order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).filter(move |&j| self.get(i, j)).map(move |j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.pairs().count()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[bool]> {
        self.bits.chunks(self.n.max(1)).take(self.n)
    }
}
