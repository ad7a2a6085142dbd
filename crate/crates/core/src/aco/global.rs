use alloc::vec::Vec;

use rand::Rng;

use crate::contact::SseInGraph;
use crate::error::{Error, Result};

use super::{AcoParams, Candidate, Colony};

#[derive(Debug, Clone, PartialEq)]
pub struct GlobalOutcome {
    /// Final shortcuts, strongest pheromone first, with pheromone
    /// normalized by the strongest candidate.
    pub selected: Vec<Candidate>,
    /// `E_p - |selected|` when fewer candidates than requested were
    /// available.
    pub shortfall: usize,
    pub iterations: usize,
}

/// Runs a colony with one ant per vertex over `network`'s intra-SSE edges
/// plus the candidate shortcuts, then keeps the `e_p` candidates with the
/// most pheromone (ties: smaller endpoints first).
pub fn global_aco<R: Rng + ?Sized>(
    network: &SseInGraph,
    candidates: &[Candidate],
    e_p: usize,
    params: &AcoParams,
    rng: &mut R,
) -> Result<GlobalOutcome> {
    if e_p == 0 {
        return Err(Error::ZeroPrediction);
    }
    let mut cands: Vec<Candidate> = candidates.to_vec();
    cands.sort_by_key(|c| (c.a, c.b));
    cands.dedup_by_key(|c| (c.a, c.b));
    let pos = |r: usize| network.vertex_position(r).ok_or(crate::error::invalid("candidates", "endpoint outside the network"));
    let mut shortcuts = Vec::with_capacity(cands.len());
    for c in &cands {
        shortcuts.push((pos(c.a)?, pos(c.b)?, c.weight));
    }
    let intra: Vec<(usize, usize)> = network.intra_edges().map(|e| (pos(e.a).unwrap(), pos(e.b).unwrap())).collect();

    let mut colony = Colony::new(network.vertices.len(), &shortcuts, &intra);
    let iterations = colony.run(network.vertices.len(), params, rng);
    let top = colony.max_shortcut_pheromone();

    let mut ranked: Vec<(f64, Candidate)> = colony
        .shortcut_ids()
        .iter()
        .zip(cands)
        .map(|(&id, mut c)| {
            let tau = colony.pheromone(id);
            c.pheromone = if top > 0.0 { tau / top } else { 0.0 };
            (tau, c)
        })
        .collect();
    ranked.sort_by(|(ta, a), (tb, b)| tb.total_cmp(ta).then((a.a, a.b).cmp(&(b.a, b.b))));
    let shortfall = e_p.saturating_sub(ranked.len());
    let selected = ranked.into_iter().take(e_p).map(|(_, c)| c).collect();
    Ok(GlobalOutcome { selected, shortfall, iterations })
}
