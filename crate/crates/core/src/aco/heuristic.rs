//! Occurrence matrices and heuristic edge weights for one SSE pair.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Shortcut edges a template has between the two SSEs of a pair, as
/// offsets inside each SSE.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairEvidence {
    pub len_x: usize,
    pub len_y: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Added to every occurrence count so that no heuristic weight is zero.
pub const SMOOTHING: f64 = 1.0;

/// Maps offset `p` of an SSE of length `len` to the nearest offset in an
/// SSE of length `target` by relative position.
pub fn map_position(p: usize, len: usize, target: usize) -> usize {
    if target <= 1 {
        return 0;
    }
    let rel = if len <= 1 { 0.5 } else { p as f64 / (len - 1) as f64 };
    (libm::floor(rel * (target - 1) as f64 + 0.5) as usize).min(target - 1)
}

/// `Q(i, j)`: template shortcut counts at the relative position of
/// `(i, j)` in an `n × m` pair, plus [`SMOOTHING`]. Row-major.
pub fn build_occurrence_matrix(evidence: &[PairEvidence], n: usize, m: usize) -> Vec<f64> {
    let mut q = vec![SMOOTHING; n * m];
    for t in evidence {
        for &(p, r) in &t.edges {
            let i = map_position(p, t.len_x, n);
            let j = map_position(r, t.len_y, m);
            q[i * m + j] += 1.0;
        }
    }
    q
}

/// `S_ij = e · Q_ij / ΣQ`, so that the weights sum to the budget `e`.
pub fn edge_probabilities(q: &[f64], e: f64) -> Result<Vec<f64>> {
    let total: f64 = q.iter().sum();
    if q.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(crate::error::invalid("q", "entries must be finite and non-negative"));
    }
    if !(total > 0.0) {
        return Err(Error::Empty("occurrence matrix mass"));
    }
    Ok(q.iter().map(|&v| e * v / total).collect())
}

/// Heuristic weights over the `n × m` inter-SSE edges of one pair.
#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicMatrix {
    pub n: usize,
    pub m: usize,
    pub q: Vec<f64>,
    pub s: Vec<f64>,
}

impl HeuristicMatrix {
    pub fn new(q: Vec<f64>, n: usize, m: usize, e: f64) -> Result<Self> {
        if q.len() != n * m {
            return Err(Error::DimensionMismatch { expected: n * m, found: q.len() });
        }
        let s = edge_probabilities(&q, e)?;
        Ok(Self { n, m, q, s })
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.s[i * self.m + j]
    }

    /// Mean inter-SSE weight; intra-SSE edges are given this weight.
    pub fn mean_weight(&self) -> f64 {
        self.s.iter().sum::<f64>() / self.s.len() as f64
    }

    pub fn mass(&self) -> f64 {
        self.q.iter().sum()
    }
}
