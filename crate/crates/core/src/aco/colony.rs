//! Ant dynamics shared by the local and global stages.
//!
//! The colony walks a graph of shortcut (inter-SSE) edges, which carry
//! their own heuristic weight and pheromone, and intra-SSE edges, which use
//! the mean shortcut weight and are pinned to the mean shortcut pheromone.

use alloc::vec;
use alloc::vec::Vec;

use libm::{exp, log};
use rand::Rng;

use crate::rng;

use super::{AcoParams, AntPlacement};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColonyEdge {
    pub a: usize,
    pub b: usize,
    pub shortcut: bool,
    /// Heuristic weight s.
    pub weight: f64,
}

/// Pheromone field and graph of one colony.
#[derive(Debug, Clone)]
pub struct Colony {
    edges: Vec<ColonyEdge>,
    incident: Vec<Vec<(usize, usize)>>,
    tau: Vec<f64>,
    shortcuts: Vec<usize>,
}

impl Colony {
    /// Builds a colony on vertices `0..n`. `shortcuts` are `(a, b, s_ab)`;
    /// `intra` edges get the mean shortcut weight. Every pheromone starts
    /// at 1.
    pub fn new(n: usize, shortcuts: &[(usize, usize, f64)], intra: &[(usize, usize)]) -> Self {
        let mean_s = if shortcuts.is_empty() {
            1.0
        } else {
            shortcuts.iter().map(|e| e.2).sum::<f64>() / shortcuts.len() as f64
        };
        let mut edges: Vec<ColonyEdge> = shortcuts.iter().map(|&(a, b, weight)| ColonyEdge { a, b, shortcut: true, weight }).collect();
        edges.extend(intra.iter().map(|&(a, b)| ColonyEdge { a, b, shortcut: false, weight: mean_s }));
        let mut incident = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            assert!(e.a < n && e.b < n && e.a != e.b, "bad colony edge ({}, {})", e.a, e.b);
            incident[e.a].push((e.b, id));
            incident[e.b].push((e.a, id));
        }
        for list in &mut incident {
            list.sort_unstable();
        }
        let shortcuts = (0..edges.len()).filter(|&i| edges[i].shortcut).collect();
        let tau = vec![1.0; edges.len()];
        Self { edges, incident, tau, shortcuts }
    }

    pub fn vertex_count(&self) -> usize {
        self.incident.len()
    }

    pub fn edges(&self) -> &[ColonyEdge] {
        &self.edges
    }

    pub fn pheromone(&self, edge: usize) -> f64 {
        self.tau[edge]
    }

    /// Overwrites one edge's pheromone. Values must stay positive.
    pub fn set_pheromone(&mut self, edge: usize, tau: f64) {
        assert!(tau > 0.0, "pheromone must be positive");
        self.tau[edge] = tau;
    }

    /// Ids of the shortcut edges, in insertion order.
    pub fn shortcut_ids(&self) -> &[usize] {
        &self.shortcuts
    }

    pub fn max_shortcut_pheromone(&self) -> f64 {
        self.shortcuts.iter().map(|&i| self.tau[i]).fold(0.0, f64::max)
    }

    pub fn mean_shortcut_pheromone(&self) -> f64 {
        if self.shortcuts.is_empty() {
            return 0.0;
        }
        self.shortcuts.iter().map(|&i| self.tau[i]).sum::<f64>() / self.shortcuts.len() as f64
    }

    /// Probability of moving from `i` to each neighbour, proportional to
    /// `tau^alpha * s^beta`, evaluated in log space. Returns
    /// `(neighbour, edge id, probability)`; empty for an isolated vertex.
    pub fn transition_distribution(&self, i: usize, params: &AcoParams) -> Vec<(usize, usize, f64)> {
        let nb = &self.incident[i];
        let logw: Vec<f64> = nb
            .iter()
            .map(|&(_, id)| {
                let e = &self.edges[id];
                params.alpha * log(self.tau[id]) + params.beta * log(e.weight)
            })
            .map(|w| if w.is_nan() { f64::NEG_INFINITY } else { w })
            .collect();
        let top = logw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if top.is_infinite() {
            // no usable weight, or an infinite one: fall back to uniform over the maxima
            let ties: Vec<bool> = logw.iter().map(|&w| top == f64::NEG_INFINITY || w == top).collect();
            let k = ties.iter().filter(|&&t| t).count() as f64;
            return nb.iter().zip(ties).map(|(&(j, id), t)| (j, id, if t { 1.0 / k } else { 0.0 })).collect();
        }
        let raw: Vec<f64> = logw.iter().map(|&w| exp(w - top)).collect();
        let total: f64 = raw.iter().sum();
        nb.iter().zip(raw).map(|(&(j, id), r)| (j, id, r / total)).collect()
    }

    /// Evaporates and deposits on shortcut edges,
    /// `tau = (1 - rho) tau + n * delta_tau`, then sets every intra-SSE edge
    /// to the mean shortcut pheromone. `moves` is indexed by edge id.
    pub fn update_pheromone(&mut self, moves: &[u32], params: &AcoParams) {
        for &id in &self.shortcuts {
            self.tau[id] = (1.0 - params.rho) * self.tau[id] + moves[id] as f64 * params.delta_tau;
        }
        let mean = self.mean_shortcut_pheromone();
        if !self.shortcuts.is_empty() {
            for (id, e) in self.edges.iter().enumerate() {
                if !e.shortcut {
                    self.tau[id] = mean;
                }
            }
        }
    }

    /// True once the strongest shortcut holds at least `e_stop` times the
    /// mean shortcut pheromone.
    pub fn converged(&self, params: &AcoParams) -> bool {
        !self.shortcuts.is_empty() && self.max_shortcut_pheromone() >= params.e_stop * self.mean_shortcut_pheromone()
    }

    /// Moves every ant once; returns the per-edge traversal counts. An ant
    /// on an isolated vertex stays put.
    pub fn step<R: Rng + ?Sized>(&self, ants: &mut [usize], params: &AcoParams, rng: &mut R) -> Vec<u32> {
        let mut moves = vec![0u32; self.edges.len()];
        let mut cache: Vec<Option<Vec<(usize, usize, f64)>>> = vec![None; self.vertex_count()];
        for ant in ants.iter_mut() {
            let dist = cache[*ant].get_or_insert_with(|| self.transition_distribution(*ant, params));
            if dist.is_empty() {
                continue;
            }
            let u: f64 = rng.random();
            let mut acc = 0.0;
            let mut chosen = dist.len() - 1;
            for (k, &(_, _, p)) in dist.iter().enumerate() {
                acc += p;
                if u < acc {
                    chosen = k;
                    break;
                }
            }
            // skip zero-probability tail entries picked by rounding
            while dist[chosen].2 == 0.0 && chosen > 0 {
                chosen -= 1;
            }
            let (next, id, _) = dist[chosen];
            moves[id] += 1;
            *ant = next;
        }
        moves
    }

    /// Places `ants` ants according to `params.placement` and iterates until
    /// [`Self::converged`] or `params.max_iterations`. Returns the number of
    /// iterations run.
    pub fn run<R: Rng + ?Sized>(&mut self, ants: usize, params: &AcoParams, rng: &mut R) -> usize {
        let n = self.vertex_count();
        if n == 0 || self.shortcuts.is_empty() {
            return 0;
        }
        let mut positions: Vec<usize> = match params.placement {
            AntPlacement::OnePerVertex => (0..ants).map(|k| k % n).collect(),
            AntPlacement::Uniform => (0..ants).map(|_| rng::index(rng, n)).collect(),
        };
        let mut iterations = 0;
        while iterations < params.max_iterations {
            let moves = self.step(&mut positions, params, rng);
            self.update_pheromone(&moves, params);
            iterations += 1;
            if self.converged(params) {
                break;
            }
        }
        iterations
    }
}
