//! Residue contact maps and the SSE interaction network (SSE-IN) they
//! induce.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::distance;
use crate::graph::Graph;
use crate::matrix::AdjacencyMatrix;
use crate::protein::{ProteinStructure, SseId};

pub type ContactMap = AdjacencyMatrix;

/// Default Cα–Cα contact threshold in Ångströms.
pub const DEFAULT_THRESHOLD: f64 = 7.0;

/// Residues `i != j` are in contact iff their Cα atoms are strictly closer
/// than `threshold`.
pub fn build_contact_map(protein: &ProteinStructure, threshold: f64) -> Result<ContactMap> {
    if !(threshold > 0.0) || !threshold.is_finite() {
        return Err(crate::error::invalid("threshold", "must be a positive finite distance"));
    }
    let res = &protein.residues;
    let mut map = ContactMap::zeros(res.len());
    for i in 0..res.len() {
        for j in i + 1..res.len() {
            if distance(&res[i].ca, &res[j].ca) < threshold {
                map.set_symmetric(i, j, true);
            }
        }
    }
    Ok(map)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    IntraSse,
    /// Inter-SSE edge, also called a shortcut.
    InterSse,
}

/// Undirected residue pair, 0-based, with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SseEdge {
    pub a: usize,
    pub b: usize,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SseInGraph {
    /// 0-based residue indices of SSE members, ascending.
    pub vertices: Vec<usize>,
    /// Sorted by `(a, b)`.
    pub edges: Vec<SseEdge>,
    pub sse_of: BTreeMap<usize, SseId>,
}

impl SseInGraph {
    pub fn shortcuts(&self) -> impl Iterator<Item = &SseEdge> {
        self.edges.iter().filter(|e| e.kind == EdgeKind::InterSse)
    }

    pub fn intra_edges(&self) -> impl Iterator<Item = &SseEdge> {
        self.edges.iter().filter(|e| e.kind == EdgeKind::IntraSse)
    }

    pub fn shortcut_count(&self) -> usize {
        self.shortcuts().count()
    }

    /// Position of a residue in [`Self::vertices`].
    pub fn vertex_position(&self, residue: usize) -> Option<usize> {
        self.vertices.binary_search(&residue).ok()
    }

    /// The network as a [`Graph`] over vertex positions.
    pub fn to_graph(&self) -> Graph {
        let pos = |r: usize| self.vertex_position(r).expect("edge endpoint is a vertex");
        Graph::new(self.vertices.len(), self.edges.iter().map(|e| (pos(e.a), pos(e.b))))
    }

    /// Replaces the shortcut set, keeping vertices and intra-SSE edges.
    /// Pairs whose endpoints are not both vertices in different SSEs are
    /// skipped.
    pub fn with_shortcuts(&self, shortcuts: impl IntoIterator<Item = (usize, usize)>) -> SseInGraph {
        let mut edges: Vec<SseEdge> = self.intra_edges().copied().collect();
        for (a, b) in shortcuts {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            match (self.sse_of.get(&a), self.sse_of.get(&b)) {
                (Some(x), Some(y)) if x != y => edges.push(SseEdge { a, b, kind: EdgeKind::InterSse }),
                _ => {}
            }
        }
        edges.sort_unstable();
        edges.dedup();
        SseInGraph { vertices: self.vertices.clone(), edges, sse_of: self.sse_of.clone() }
    }

    /// SSE-level incidence: SSEs `x != y` are adjacent iff at least one
    /// shortcut joins them.
    pub fn sse_incidence(&self, sse_count: usize) -> AdjacencyMatrix {
        AdjacencyMatrix::from_pairs(
            sse_count,
            self.shortcuts().map(|e| (self.sse_of[&e.a].0, self.sse_of[&e.b].0)),
        )
    }
}

/// Restricts `map` to residues that belong to an SSE and tags each edge as
/// intra- or inter-SSE.
pub fn induce_sse_in(map: &ContactMap, protein: &ProteinStructure) -> Result<SseInGraph> {
    if map.n() != protein.residues.len() {
        return Err(Error::DimensionMismatch { expected: protein.residues.len(), found: map.n() });
    }
    let sse_of: BTreeMap<usize, SseId> = protein
        .residues
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.sse_id.map(|s| (i, s)))
        .collect();
    let vertices: Vec<usize> = sse_of.keys().copied().collect();
    let mut edges = Vec::new();
    for (pos, &a) in vertices.iter().enumerate() {
        for &b in &vertices[pos + 1..] {
            if map.get(a, b) {
                let kind = if sse_of[&a] == sse_of[&b] { EdgeKind::IntraSse } else { EdgeKind::InterSse };
                edges.push(SseEdge { a, b, kind });
            }
        }
    }
    Ok(SseInGraph { vertices, edges, sse_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protein::{Residue, SseAnnotation, SseKind};
    use alloc::vec;

    fn protein(coords: &[[f64; 3]], sse: &[Option<usize>]) -> ProteinStructure {
        let residues = coords
            .iter()
            .zip(sse)
            .enumerate()
            .map(|(i, (ca, s))| Residue {
                index: i + 1,
                seq_num: i as i32 + 1,
                code: 'A',
                ca: *ca,
                phi: None,
                psi: None,
                hydrophobicity: 1.8,
                sse_id: s.map(SseId),
            })
            .collect();
        ProteinStructure { id: "t".into(), residues, sse_list: vec![] }
    }

    #[test]
    fn single_residue_has_no_contact() {
        let p = protein(&[[0.0; 3]], &[None]);
        let m = build_contact_map(&p, 7.0).unwrap();
        assert_eq!(m.n(), 1);
        assert!(!m.get(0, 0));
    }

    #[test]
    fn threshold_is_strict() {
        let p = protein(&[[0.0, 0.0, 0.0], [0.0, 0.0, 5.0], [0.0, 0.0, 12.0]], &[None; 3]);
        let m = build_contact_map(&p, 7.0).unwrap();
        assert_eq!(m.pairs().collect::<Vec<_>>(), [(0, 1)]);
        assert!(build_contact_map(&p, 0.0).is_err());
    }

    #[test]
    fn tags_follow_sse_membership() {
        // residues 1,2 in SSE A, residue 7 in SSE B; contacts (1,2) and (2,7)
        let mut coords = vec![[100.0, 0.0, 0.0]; 7];
        for (i, c) in coords.iter_mut().enumerate() {
            c[0] = 100.0 * i as f64;
        }
        let sse = [Some(0), Some(0), None, None, None, None, Some(1)];
        let mut p = protein(&coords, &sse);
        p.sse_list = vec![
            SseAnnotation { sse_id: SseId(0), kind: SseKind::Helix, first_residue: 1, last_residue: 2 },
            SseAnnotation { sse_id: SseId(1), kind: SseKind::Strand, first_residue: 7, last_residue: 7 },
        ];
        let map = ContactMap::from_pairs(7, [(0, 1), (1, 6), (2, 3)]);
        let g = induce_sse_in(&map, &p).unwrap();
        assert_eq!(g.vertices, [0, 1, 6]);
        assert_eq!(
            g.edges,
            [
                SseEdge { a: 0, b: 1, kind: EdgeKind::IntraSse },
                SseEdge { a: 1, b: 6, kind: EdgeKind::InterSse },
            ]
        );
        assert_eq!(g.sse_incidence(2).pairs().collect::<Vec<_>>(), [(0, 1)]);
        assert!(induce_sse_in(&ContactMap::zeros(3), &p).is_err());
    }

    #[test]
    fn no_sse_gives_empty_graph() {
        let p = protein(&[[0.0; 3], [1.0, 0.0, 0.0]], &[None, None]);
        let m = build_contact_map(&p, 7.0).unwrap();
        let g = induce_sse_in(&m, &p).unwrap();
        assert!(g.vertices.is_empty() && g.edges.is_empty());
    }
}
