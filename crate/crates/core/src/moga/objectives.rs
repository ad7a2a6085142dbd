use alloc::vec::Vec;

use crate::geometry::{angle_gap, distance, Vec3};
use crate::protein::ProteinStructure;

use super::Chromosome;

/// Objective values of an individual; all three are minimized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveVector {
    /// Mean Cα-centroid distance of linked SSE pairs, Å.
    pub o_distance: f64,
    /// Mean backbone-angle disagreement of linked pairs, degrees.
    pub o_torsion: f64,
    /// Negated mean hydrophobicity product of linked pairs.
    pub o_hydro: f64,
}

impl ObjectiveVector {
    /// Value given to chromosomes without any link.
    pub const WORST: ObjectiveVector = ObjectiveVector { o_distance: f64::MAX, o_torsion: f64::MAX, o_hydro: f64::MAX };

    pub fn as_array(&self) -> [f64; 3] {
        [self.o_distance, self.o_torsion, self.o_hydro]
    }
}

/// Pareto dominance for minimization.
pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> bool {
    dominates_slice(&a.as_array(), &b.as_array())
}

pub(crate) fn dominates_slice(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

/// Per-SSE summaries the objectives are computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct SseContext {
    pub centroids: Vec<Vec3>,
    pub mean_phi: Vec<f64>,
    pub mean_psi: Vec<f64>,
    pub mean_hydrophobicity: Vec<f64>,
}

impl SseContext {
    pub fn len(&self) -> usize {
        self.centroids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centroids.is_empty()
    }

    /// Summaries of every SSE of `protein`. Missing angles are skipped in
    /// the means; an SSE without any angle gets 0.
    pub fn from_structure(protein: &ProteinStructure) -> SseContext {
        let mut ctx = SseContext { centroids: Vec::new(), mean_phi: Vec::new(), mean_psi: Vec::new(), mean_hydrophobicity: Vec::new() };
        for sse in &protein.sse_list {
            let members = &protein.residues[sse.first_residue - 1..sse.last_residue];
            let k = members.len() as f64;
            let mut c = [0.0; 3];
            for r in members {
                for (a, b) in c.iter_mut().zip(r.ca) {
                    *a += b / k;
                }
            }
            ctx.centroids.push(c);
            ctx.mean_phi.push(mean(members.iter().filter_map(|r| r.phi)));
            ctx.mean_psi.push(mean(members.iter().filter_map(|r| r.psi)));
            ctx.mean_hydrophobicity.push(members.iter().map(|r| r.hydrophobicity).sum::<f64>() / k);
        }
        ctx
    }
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}

/// Objectives over the distinct gene-implied links of `c`.
pub fn evaluate_objectives(c: &Chromosome, ctx: &SseContext) -> ObjectiveVector {
    let links = c.links();
    if links.is_empty() {
        return ObjectiveVector::WORST;
    }
    let k = links.len() as f64;
    let (mut d, mut t, mut h) = (0.0, 0.0, 0.0);
    for &(i, j) in &links {
        d += distance(&ctx.centroids[i], &ctx.centroids[j]);
        t += (angle_gap(ctx.mean_phi[i], ctx.mean_phi[j]) + angle_gap(ctx.mean_psi[i], ctx.mean_psi[j])) / 2.0;
        h += ctx.mean_hydrophobicity[i] * ctx.mean_hydrophobicity[j];
    }
    ObjectiveVector { o_distance: d / k, o_torsion: t / k, o_hydro: -h / k }
}
