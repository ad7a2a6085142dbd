//! Planted synthetic instances with a known SSE graph and known shortcut
//! edges.
//!
//! SSE clusters are laid out as paths: consecutive SSEs of a cluster are
//! linked in the ground truth. Linked SSEs sit `link_distance` apart with
//! identical backbone angles, so any chromosome using a non-planted link is
//! Pareto-dominated. Each planted SSE pair carries a ladder of residue
//! shortcuts. Family templates reproduce a `boost_fraction` share of those
//! shortcuts at the true position; the rest appear displaced, so the
//! occurrence matrix boosts the wrong cell for them.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::aco::TemplateShortcuts;
use crate::contact::{EdgeKind, SseEdge, SseInGraph};
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::matrix::AdjacencyMatrix;
use crate::metrics::{topological_profile, TopologicalProfile};
use crate::moga::SseContext;
use crate::protein::SseId;
use crate::rng;

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedConfig {
    /// Number of SSEs in each planted cluster (each cluster is a path).
    pub cluster_sizes: Vec<usize>,
    /// Inclusive residue-count range of an SSE.
    pub min_sse_len: usize,
    pub max_sse_len: usize,
    /// Coil residues between consecutive SSEs.
    pub loop_len: usize,
    /// Intra-SSE contacts join residues at most this far apart in sequence.
    pub intra_reach: usize,
    /// Shortcut ladder length per planted SSE pair.
    pub shortcuts_per_pair: usize,
    /// Share of true shortcuts reproduced at their true position by the
    /// templates.
    pub boost_fraction: f64,
    pub templates: usize,
    /// Extra random shortcuts per template on planted pairs.
    pub noise_edges: usize,
    /// Offset applied to the second endpoint of a non-boosted shortcut in
    /// the templates.
    pub displacement: usize,
    pub link_distance: f64,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        Self {
            cluster_sizes: vec![4, 4],
            min_sse_len: 8,
            max_sse_len: 14,
            loop_len: 3,
            intra_reach: 3,
            shortcuts_per_pair: 3,
            boost_fraction: 1.0,
            templates: 5,
            noise_edges: 0,
            displacement: 3,
            link_distance: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedInstance {
    pub sse_sizes: Vec<usize>,
    /// First residue (0-based) of every SSE.
    pub sse_starts: Vec<usize>,
    pub residue_count: usize,
    pub context: SseContext,
    pub sse_truth: AdjacencyMatrix,
    pub sse_family_profile: TopologicalProfile,
    /// Query network holding the intra-SSE edges and the true shortcuts.
    pub network: SseInGraph,
    /// True shortcuts, sorted `(a, b)` pairs with `a < b`.
    pub true_shortcuts: Vec<(usize, usize)>,
    /// True shortcuts reproduced at their true position by the templates.
    pub boosted: Vec<(usize, usize)>,
    pub templates: Vec<TemplateShortcuts>,
    /// Mean residue-level profile of the template networks.
    pub family_profile: TopologicalProfile,
}

impl PlantedInstance {
    pub fn sse_count(&self) -> usize {
        self.sse_sizes.len()
    }
}

pub fn planted_instance<R: Rng + ?Sized>(cfg: &PlantedConfig, rng: &mut R) -> Result<PlantedInstance> {
    let m: usize = cfg.cluster_sizes.iter().sum();
    if m < 2 || cfg.cluster_sizes.contains(&0) {
        return Err(invalid("cluster_sizes", "need at least two SSEs and no empty cluster"));
    }
    if cfg.min_sse_len < 2 || cfg.min_sse_len > cfg.max_sse_len {
        return Err(invalid("sse length", "need 2 <= min <= max"));
    }
    if !(0.0..=1.0).contains(&cfg.boost_fraction) {
        return Err(invalid("boost_fraction", "must lie in [0, 1]"));
    }
    let ladder_span = 2 * cfg.shortcuts_per_pair.saturating_sub(1) + 1;
    if cfg.shortcuts_per_pair == 0 || ladder_span > cfg.min_sse_len {
        return Err(invalid("shortcuts_per_pair", "ladder does not fit in the shortest SSE"));
    }

    let sizes: Vec<usize> = (0..m).map(|_| cfg.min_sse_len + rng::index(rng, cfg.max_sse_len - cfg.min_sse_len + 1)).collect();
    let mut starts = Vec::with_capacity(m);
    let mut cursor = cfg.loop_len;
    for &s in &sizes {
        starts.push(cursor);
        cursor += s + cfg.loop_len;
    }
    let residue_count = cursor;

    // SSE-level truth and geometry
    let mut links = Vec::new();
    let mut context = SseContext { centroids: Vec::new(), mean_phi: Vec::new(), mean_psi: Vec::new(), mean_hydrophobicity: Vec::new() };
    let mut first = 0;
    for (c, &size) in cfg.cluster_sizes.iter().enumerate() {
        let (phi, psi) = if c % 2 == 0 { (-57.0, -47.0) } else { (-119.0, 113.0) };
        for k in 0..size {
            context.centroids.push([k as f64 * cfg.link_distance, c as f64 * 10.0 * cfg.link_distance, 0.0]);
            context.mean_phi.push(phi);
            context.mean_psi.push(psi);
            context.mean_hydrophobicity.push(2.0);
            if k > 0 {
                links.push((first + k - 1, first + k));
            }
        }
        first += size;
    }
    let sse_truth = AdjacencyMatrix::from_pairs(m, links.iter().copied());
    let sse_family_profile = topological_profile(&Graph::from_matrix(&sse_truth))?;

    // residue level
    let mut sse_of = BTreeMap::new();
    let mut intra = Vec::new();
    for s in 0..m {
        for i in 0..sizes[s] {
            let r = starts[s] + i;
            sse_of.insert(r, SseId(s));
            for d in 1..=cfg.intra_reach {
                if i + d < sizes[s] {
                    intra.push((r, r + d));
                }
            }
        }
    }
    let mut truth_sites = Vec::new();
    for &(x, y) in &links {
        let ox = rng::index(rng, sizes[x] - ladder_span + 1);
        let oy = rng::index(rng, sizes[y] - ladder_span + 1);
        for t in 0..cfg.shortcuts_per_pair {
            truth_sites.push((x, ox + 2 * t, y, oy + 2 * t));
        }
    }
    let total = truth_sites.len();
    // at least the requested share is boosted
    let boosted_count = (libm::ceil(cfg.boost_fraction * total as f64 - 1e-9) as usize).min(total);
    let mut order: Vec<usize> = (0..total).collect();
    for i in (1..total).rev() {
        order.swap(i, rng::index(rng, i + 1));
    }
    let mut is_boosted = vec![false; total];
    for &i in &order[..boosted_count] {
        is_boosted[i] = true;
    }

    let site_pair = |&(x, ox, y, oy): &(usize, usize, usize, usize)| (starts[x] + ox, starts[y] + oy);
    let mut true_shortcuts: Vec<(usize, usize)> = truth_sites.iter().map(site_pair).collect();
    let mut boosted: Vec<(usize, usize)> = truth_sites.iter().zip(&is_boosted).filter(|(_, &b)| b).map(|(s, _)| site_pair(s)).collect();
    true_shortcuts.sort_unstable();
    boosted.sort_unstable();

    let network = network_with(&sse_of, &intra, &true_shortcuts);

    let mut templates = Vec::with_capacity(cfg.templates);
    let mut profiles = Vec::with_capacity(cfg.templates);
    for _ in 0..cfg.templates {
        let mut sites: Vec<(usize, usize, usize, usize)> = truth_sites
            .iter()
            .zip(&is_boosted)
            .map(|(&(x, ox, y, oy), &b)| if b { (x, ox, y, oy) } else { (x, ox, y, (oy + cfg.displacement) % sizes[y]) })
            .collect();
        for _ in 0..cfg.noise_edges {
            let &(x, y) = &links[rng::index(rng, links.len())];
            sites.push((x, rng::index(rng, sizes[x]), y, rng::index(rng, sizes[y])));
        }
        sites.sort_unstable();
        sites.dedup();
        let pairs: Vec<(usize, usize)> = sites.iter().map(site_pair).collect();
        profiles.push(topological_profile(&network_with(&sse_of, &intra, &pairs).to_graph())?);
        templates.push(TemplateShortcuts { sizes: sizes.clone(), sites });
    }
    let family_profile = if profiles.is_empty() { topological_profile(&network.to_graph())? } else { TopologicalProfile::mean(&profiles)? };

    Ok(PlantedInstance {
        sse_sizes: sizes,
        sse_starts: starts,
        residue_count,
        context,
        sse_truth,
        sse_family_profile,
        network,
        true_shortcuts,
        boosted,
        templates,
        family_profile,
    })
}

fn network_with(sse_of: &BTreeMap<usize, SseId>, intra: &[(usize, usize)], shortcuts: &[(usize, usize)]) -> SseInGraph {
    let mut edges: Vec<SseEdge> = intra.iter().map(|&(a, b)| SseEdge { a, b, kind: EdgeKind::IntraSse }).collect();
    edges.extend(shortcuts.iter().map(|&(a, b)| SseEdge { a: a.min(b), b: a.max(b), kind: EdgeKind::InterSse }));
    edges.sort_unstable();
    edges.dedup();
    SseInGraph { vertices: sse_of.keys().copied().collect(), edges, sse_of: sse_of.clone() }
}
