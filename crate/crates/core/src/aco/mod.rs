//! Two-stage ant colony prediction of inter-SSE (shortcut) residue edges.
//!
//! The edge budget E_p comes from the closest family template. For every
//! SSE pair predicted to interact, a heuristic matrix is derived from the
//! templates' shortcut positions and a local colony proposes candidate
//! edges; a global colony over the whole network then keeps the E_p
//! candidates with the most pheromone.

mod budget;
mod colony;
mod global;
mod heuristic;
mod local;

use alloc::vec::Vec;

use rand::Rng;

use crate::contact::SseInGraph;
use crate::error::{invalid, Result};
use crate::matrix::AdjacencyMatrix;
use crate::metrics::{is_compatible, topological_profile, TopologicalProfile};
use crate::protein::{ProteinStructure, SseId};

pub use budget::{
    allele_distance, allocate_budget, average_family_chromosome, estimate_edge_budget, BudgetEstimate, BudgetSource,
    TemplateSummary, CLOSENESS,
};
pub use colony::{Colony, ColonyEdge};
pub use global::{global_aco, GlobalOutcome};
pub use heuristic::{build_occurrence_matrix, edge_probabilities, map_position, HeuristicMatrix, PairEvidence, SMOOTHING};
pub use local::{local_aco, SsePair};

#[derive(Debug, Clone, PartialEq)]
pub struct AcoParams {
    /// Pheromone exponent.
    pub alpha: f64,
    /// Heuristic exponent.
    pub beta: f64,
    /// Evaporation rate.
    pub rho: f64,
    /// Pheromone deposited per traversal.
    pub delta_tau: f64,
    /// Stop once max shortcut pheromone reaches this multiple of the mean.
    pub e_stop: f64,
    /// Local selection threshold on pheromone relative to the maximum.
    pub lambda_min: f64,
    pub max_iterations: usize,
    pub placement: AntPlacement,
}

/// Where the ants start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AntPlacement {
    /// Ant `k` starts on vertex `k mod n`: one ant per vertex when the
    /// colony has as many ants as vertices.
    #[default]
    OnePerVertex,
    /// Independent uniform draws; several ants may share a vertex.
    Uniform,
}

impl Default for AcoParams {
    fn default() -> Self {
        Self {
            alpha: 25.0,
            beta: 12.0,
            rho: 0.7,
            delta_tau: 4000.0,
            e_stop: 2.0,
            lambda_min: 0.8,
            max_iterations: 100,
            placement: AntPlacement::OnePerVertex,
        }
    }
}

impl AcoParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= 0.0 && self.beta >= 0.0) {
            return Err(invalid("alpha/beta", "exponents must be non-negative"));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(invalid("rho", "must lie in (0, 1)"));
        }
        if !(self.delta_tau > 0.0) {
            return Err(invalid("delta_tau", "must be positive"));
        }
        if !(self.lambda_min > 0.0 && self.lambda_min <= 1.0) {
            return Err(invalid("lambda_min", "must lie in (0, 1]"));
        }
        if !(self.e_stop > 0.0) {
            return Err(invalid("e_stop", "must be positive"));
        }
        Ok(())
    }
}

/// A shortcut edge proposed or selected by a colony.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    /// 0-based residue indices, `a < b`.
    pub a: usize,
    pub b: usize,
    pub sse_a: SseId,
    pub sse_b: SseId,
    /// Heuristic weight s.
    pub weight: f64,
    /// Pheromone relative to the strongest edge of the same colony.
    pub pheromone: f64,
}

impl Candidate {
    pub fn new(a: usize, b: usize, sse_a: SseId, sse_b: SseId, weight: f64, pheromone: f64) -> Self {
        if a <= b {
            Self { a, b, sse_a, sse_b, weight, pheromone }
        } else {
            Self { a: b, b: a, sse_a: sse_b, sse_b: sse_a, weight, pheromone }
        }
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.a, self.b)
    }
}

/// A template's shortcut edges located by SSE ordinal and offset within the
/// SSE.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateShortcuts {
    pub sizes: Vec<usize>,
    /// `(sse_x, offset_x, sse_y, offset_y)` with `sse_x < sse_y`.
    pub sites: Vec<(usize, usize, usize, usize)>,
}

impl TemplateShortcuts {
    pub fn from_network(network: &SseInGraph, protein: &ProteinStructure) -> Self {
        let sites = network
            .shortcuts()
            .map(|e| {
                let (sa, sb) = (network.sse_of[&e.a].0, network.sse_of[&e.b].0);
                let off = |r: usize, s: usize| r + 1 - protein.sse_list[s].first_residue;
                let (x, y) = ((sa, off(e.a, sa)), (sb, off(e.b, sb)));
                let ((sx, ox), (sy, oy)) = if sa < sb { (x, y) } else { (y, x) };
                (sx, ox, sy, oy)
            })
            .collect();
        Self { sizes: protein.sse_sizes(), sites }
    }

    pub fn summary(&self) -> TemplateSummary {
        TemplateSummary::new(self.sizes.clone(), self.sites.len())
    }

    /// Shortcut positions between SSEs `x < y`.
    pub fn pair_evidence(&self, x: usize, y: usize) -> PairEvidence {
        PairEvidence {
            len_x: self.sizes[x],
            len_y: self.sizes[y],
            edges: self.sites.iter().filter(|s| s.0 == x && s.2 == y).map(|s| (s.1, s.3)).collect(),
        }
    }
}

/// Local inputs prepared once per prediction: one entry per interacting
/// SSE pair.
#[derive(Debug, Clone)]
pub struct PairPlan {
    pub pair: SsePair,
    pub heuristic: HeuristicMatrix,
    pub budget: usize,
}

/// Prepares the local stage: pairs are the adjacent SSEs of `incidence`,
/// heuristic matrices come from the templates with a matching SSE count,
/// and `e_total` is split across pairs by occurrence mass. Pairs receiving
/// no budget are dropped.
pub fn plan_pairs(network: &SseInGraph, sse_count: usize, incidence: &AdjacencyMatrix, templates: &[TemplateShortcuts], e_total: usize) -> Result<Vec<PairPlan>> {
    if incidence.n() != sse_count {
        return Err(crate::error::Error::DimensionMismatch { expected: sse_count, found: incidence.n() });
    }
    let mut members: Vec<Vec<usize>> = alloc::vec![Vec::new(); sse_count];
    for (&r, s) in &network.sse_of {
        members[s.0].push(r);
    }
    let family: Vec<&TemplateShortcuts> = templates.iter().filter(|t| t.sizes.len() == sse_count).collect();
    let mut staged = Vec::new();
    for (x, y) in incidence.pairs() {
        let (n, m) = (members[x].len(), members[y].len());
        if n == 0 || m == 0 {
            continue;
        }
        let evidence: Vec<PairEvidence> = family.iter().map(|t| t.pair_evidence(x, y)).collect();
        let q = build_occurrence_matrix(&evidence, n, m);
        let intra = network
            .intra_edges()
            .filter(|e| {
                let s = network.sse_of[&e.a].0;
                s == x || s == y
            })
            .map(|e| (e.a, e.b))
            .collect();
        let pair = SsePair { x_sse: SseId(x), y_sse: SseId(y), x: members[x].clone(), y: members[y].clone(), intra };
        staged.push((pair, q, n, m));
    }
    let masses: Vec<f64> = staged.iter().map(|(_, q, _, _)| q.iter().sum()).collect();
    let budgets = allocate_budget(e_total, &masses);
    staged
        .into_iter()
        .zip(budgets)
        .filter(|(_, b)| *b > 0)
        .map(|((pair, q, n, m), budget)| Ok(PairPlan { pair, heuristic: HeuristicMatrix::new(q, n, m, budget as f64)?, budget }))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcoOutcome {
    /// Union of the local stage outputs, E_s.
    pub candidates: Vec<Candidate>,
    pub global: Option<GlobalOutcome>,
}

impl AcoOutcome {
    pub fn selected(&self) -> &[Candidate] {
        self.global.as_ref().map_or(&[], |g| &g.selected)
    }
}

/// One simulation of both colony stages.
pub fn run_aco<R: Rng + ?Sized>(network: &SseInGraph, plans: &[PairPlan], e_total: usize, params: &AcoParams, rng: &mut R) -> Result<AcoOutcome> {
    params.validate()?;
    let mut candidates = Vec::new();
    for plan in plans {
        candidates.extend(local_aco(&plan.pair, &plan.heuristic, params, rng));
    }
    let global = if e_total == 0 || candidates.is_empty() {
        None
    } else {
        Some(global_aco(network, &candidates, e_total, params, rng)?)
    };
    Ok(AcoOutcome { candidates, global })
}

/// Accepts a built network iff its profile is within `tol` of the family
/// profile in every field.
pub fn validate_built_network(built: &SseInGraph, family: &TopologicalProfile, tol: f64) -> bool {
    match topological_profile(&built.to_graph()) {
        Ok(p) => is_compatible(&p, family, tol),
        Err(_) => false,
    }
}
