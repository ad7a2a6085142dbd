use alloc::vec::Vec;

use rand::Rng;

use crate::protein::SseId;

use super::{AcoParams, Candidate, Colony, HeuristicMatrix};

/// Residues of two interacting SSEs and the intra-SSE contacts among them.
#[derive(Debug, Clone, PartialEq)]
pub struct SsePair {
    pub x_sse: SseId,
    pub y_sse: SseId,
    /// 0-based residue indices of the first SSE, in order.
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// Intra-SSE residue contacts within either SSE.
    pub intra: Vec<(usize, usize)>,
}

/// Runs one colony of `n + m` ants on the pair graph and returns the
/// shortcut edges whose pheromone, relative to the strongest shortcut, is at
/// least `lambda_min`.
pub fn local_aco<R: Rng + ?Sized>(pair: &SsePair, h: &HeuristicMatrix, params: &AcoParams, rng: &mut R) -> Vec<Candidate> {
    let (n, m) = (pair.x.len(), pair.y.len());
    assert_eq!((h.n, h.m), (n, m), "heuristic matrix does not match the pair");
    let local = |r: usize| -> Option<usize> {
        pair.x.iter().position(|&v| v == r).or_else(|| pair.y.iter().position(|&v| v == r).map(|p| p + n))
    };
    let mut shortcuts = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            shortcuts.push((i, n + j, h.weight(i, j)));
        }
    }
    let intra: Vec<(usize, usize)> = pair
        .intra
        .iter()
        .filter_map(|&(a, b)| match (local(a), local(b)) {
            (Some(u), Some(v)) if (u < n) == (v < n) && u != v => Some((u, v)),
            _ => None,
        })
        .collect();
    let mut colony = Colony::new(n + m, &shortcuts, &intra);
    colony.run(n + m, params, rng);

    let top = colony.max_shortcut_pheromone();
    let mut out = Vec::new();
    for (id, &(i, jj, w)) in colony.shortcut_ids().iter().zip(&shortcuts) {
        let norm = colony.pheromone(*id) / top;
        if norm >= params.lambda_min {
            out.push(Candidate::new(pair.x[i], pair.y[jj - n], pair.x_sse, pair.y_sse, w, norm));
        }
    }
    out
}
