use alloc::vec::Vec;
use core::fmt;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::matrix::AdjacencyMatrix;

/// Locus-based adjacency encoding over M SSEs: gene `i` holding allele `j`
/// links SSE `i` to SSE `j`. Alleles are stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chromosome {
    genes: Vec<usize>,
}

impl Chromosome {
    pub fn new(genes: Vec<usize>) -> Result<Self> {
        let m = genes.len();
        if m == 0 {
            return Err(Error::Empty("chromosome"));
        }
        if genes.iter().any(|&g| g >= m) {
            return Err(invalid("genes", "allele out of range"));
        }
        Ok(Self { genes })
    }

    /// From 1-based alleles, as chromosomes are usually written.
    pub fn from_one_based(genes: &[usize]) -> Result<Self> {
        if genes.contains(&0) {
            return Err(invalid("genes", "1-based alleles start at 1"));
        }
        Self::new(genes.iter().map(|g| g - 1).collect())
    }

    /// Every gene pointing at itself: M singleton clusters.
    pub fn identity(m: usize) -> Self {
        Self { genes: (0..m).collect() }
    }

    pub fn genes(&self) -> &[usize] {
        &self.genes
    }

    pub(crate) fn genes_mut(&mut self) -> &mut [usize] {
        &mut self.genes
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    /// Distinct gene-implied links `(i, g_i)` with `i != g_i`, normalized
    /// to `(min, max)` and sorted.
    pub fn links(&self) -> Vec<(usize, usize)> {
        let mut links: Vec<(usize, usize)> = self
            .genes
            .iter()
            .enumerate()
            .filter(|&(i, &g)| i != g)
            .map(|(i, &g)| (i.min(g), i.max(g)))
            .collect();
        links.sort_unstable();
        links.dedup();
        links
    }
}

impl fmt::Display for Chromosome {
    /// Comma-separated 1-based alleles.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.genes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", g + 1)?;
        }
        Ok(())
    }
}

/// Decoded chromosome: cluster labels and the implied SSE incidence matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clustering {
    /// Cluster label per SSE; labels are numbered in order of each
    /// cluster's smallest member.
    pub assignment: Vec<usize>,
    pub incidence: AdjacencyMatrix,
}

impl Clustering {
    pub fn cluster_count(&self) -> usize {
        self.assignment.iter().max().map_or(0, |&c| c + 1)
    }

    pub fn graph(&self) -> Graph {
        Graph::from_matrix(&self.incidence)
    }

    /// Members of each cluster, ascending.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = alloc::vec![Vec::new(); self.cluster_count()];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// Clusters are the connected components of the gene-implied links.
pub fn decode(c: &Chromosome) -> Clustering {
    let m = c.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, &g) in c.genes().iter().enumerate() {
        let (a, b) = (find(&mut parent, i), find(&mut parent, g));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut label_of_root = alloc::vec![usize::MAX; m];
    let mut next = 0;
    let assignment = (0..m)
        .map(|v| {
            let r = find(&mut parent, v);
            if label_of_root[r] == usize::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            label_of_root[r]
        })
        .collect();
    Clustering { assignment, incidence: AdjacencyMatrix::from_pairs(m, c.links()) }
}
