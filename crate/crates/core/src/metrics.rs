//! Topological profiles, the family compatibility gate, modularity and the
//! evaluation scores.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::AdjacencyMatrix;

/// Diameter, characteristic path length, mean degree and mean clustering
/// coefficient of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TopologicalProfile {
    pub diameter: f64,
    pub char_path_length: f64,
    pub mean_degree: f64,
    pub clustering_coeff: f64,
}

impl TopologicalProfile {
    pub fn fields(&self) -> [f64; 4] {
        [self.diameter, self.char_path_length, self.mean_degree, self.clustering_coeff]
    }

    /// Field-wise mean of several profiles.
    pub fn mean(profiles: &[TopologicalProfile]) -> Result<TopologicalProfile> {
        if profiles.is_empty() {
            return Err(Error::Empty("profiles"));
        }
        let k = profiles.len() as f64;
        let sum = profiles.iter().fold([0.0; 4], |mut acc, p| {
            for (a, f) in acc.iter_mut().zip(p.fields()) {
                *a += f;
            }
            acc
        });
        Ok(TopologicalProfile {
            diameter: sum[0] / k,
            char_path_length: sum[1] / k,
            mean_degree: sum[2] / k,
            clustering_coeff: sum[3] / k,
        })
    }

    /// Largest per-field relative deviation from `template`. A zero
    /// template field is compared in absolute terms.
    pub fn deviation_from(&self, template: &TopologicalProfile) -> f64 {
        self.fields()
            .iter()
            .zip(template.fields())
            .map(|(&c, t)| relative_error(c, t))
            .fold(0.0, f64::max)
    }
}

fn relative_error(candidate: f64, template: f64) -> f64 {
    if template == 0.0 {
        candidate.abs()
    } else {
        (candidate - template).abs() / template.abs()
    }
}

/// Distances and diameter are taken over the largest connected component
/// (ties go to the component holding the smallest vertex); mean degree and
/// clustering over the whole graph.
pub fn topological_profile(graph: &Graph) -> Result<TopologicalProfile> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let labels = graph.components();
    let count = labels.iter().max().map_or(0, |&m| m + 1);
    let mut sizes = vec![0usize; count];
    for &l in &labels {
        sizes[l] += 1;
    }
    let largest = (0..count).fold(0, |best, c| if sizes[c] > sizes[best] { c } else { best });

    let mut diameter = 0usize;
    let mut total = 0usize;
    let members: Vec<usize> = (0..n).filter(|&v| labels[v] == largest).collect();
    for &s in &members {
        for &d in graph.bfs(s).iter().filter(|&&d| d != usize::MAX) {
            diameter = diameter.max(d);
            total += d;
        }
    }
    let k = members.len();
    let char_path_length = if k > 1 { total as f64 / (k * (k - 1)) as f64 } else { 0.0 };

    Ok(TopologicalProfile {
        diameter: diameter as f64,
        char_path_length,
        mean_degree: 2.0 * graph.edge_count() as f64 / n as f64,
        clustering_coeff: (0..n).map(|v| local_clustering(graph, v)).sum::<f64>() / n as f64,
    })
}

fn local_clustering(graph: &Graph, v: usize) -> f64 {
    let nb = graph.neighbors(v);
    let d = nb.len();
    if d < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if graph.has_edge(a, b) {
                links += 1;
            }
        }
    }
    links as f64 / (d * (d - 1) / 2) as f64
}

/// True iff every field of `candidate` is within `tol` relative error of
/// `template` (boundary inclusive).
pub fn is_compatible(candidate: &TopologicalProfile, template: &TopologicalProfile, tol: f64) -> bool {
    candidate
        .fields()
        .iter()
        .zip(template.fields())
        .all(|(&c, t)| relative_error(c, t) <= tol + tol * 1e-12)
}

/// Newman–Girvan modularity of `clusters` (one label per vertex).
pub fn modularity(graph: &Graph, clusters: &[usize]) -> Result<f64> {
    let n = graph.vertex_count();
    if clusters.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: clusters.len() });
    }
    let m = graph.edge_count();
    if m == 0 {
        return Ok(0.0);
    }
    let k = clusters.iter().max().map_or(0, |&c| c + 1);
    let mut inner = vec![0usize; k];
    let mut degree = vec![0usize; k];
    for v in 0..n {
        degree[clusters[v]] += graph.degree(v);
    }
    for (a, b) in graph.edges() {
        if clusters[a] == clusters[b] {
            inner[clusters[a]] += 1;
        }
    }
    let m = m as f64;
    Ok((0..k)
        .map(|c| {
            let share = degree[c] as f64 / (2.0 * m);
            inner[c] as f64 / m - share * share
        })
        .sum())
}

/// Fraction of the n² positions where the two matrices disagree.
pub fn matrix_error_rate(predicted: &AdjacencyMatrix, truth: &AdjacencyMatrix) -> Result<f64> {
    let n = truth.n();
    if predicted.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: predicted.n() });
    }
    if n == 0 {
        return Ok(0.0);
    }
    let wrong = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| predicted.get(i, j) != truth.get(i, j)).count();
    Ok(wrong as f64 / (n * n) as f64)
}

/// AC = 1 − |E_R − E_p| / E_p. Not clamped; may be negative.
pub fn prediction_accuracy(e_real: usize, e_pred: usize) -> Result<f64> {
    if e_pred == 0 {
        return Err(Error::ZeroPrediction);
    }
    Ok(1.0 - (e_real as f64 - e_pred as f64).abs() / e_pred as f64)
}

/// Share of correctly predicted shortcut edges: |P ∩ T| / max(|P|, |T|).
/// Both slices must hold normalized `(a, b)` pairs with `a < b`.
pub fn shortcut_score(predicted: &[(usize, usize)], truth: &[(usize, usize)]) -> f64 {
    let denom = predicted.len().max(truth.len());
    if denom == 0 {
        return 1.0;
    }
    let mut t: Vec<(usize, usize)> = truth.to_vec();
    t.sort_unstable();
    t.dedup();
    let mut p: Vec<(usize, usize)> = predicted.to_vec();
    p.sort_unstable();
    p.dedup();
    let hits = p.iter().filter(|e| t.binary_search(e).is_ok()).count();
    hits as f64 / denom as f64
}

/// Fraction of `truth` present in `found` (recall).
pub fn recovery_rate(found: &[(usize, usize)], truth: &[(usize, usize)]) -> f64 {
    if truth.is_empty() {
        return 1.0;
    }
    let mut f: Vec<(usize, usize)> = found.to_vec();
    f.sort_unstable();
    truth.iter().filter(|e| f.binary_search(e).is_ok()).count() as f64 / truth.len() as f64
}
