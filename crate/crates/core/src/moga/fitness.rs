//! Strength-based raw rank, k-th nearest neighbour density and fitness.

use alloc::vec;
use alloc::vec::Vec;

use libm::sqrt;

use crate::error::{Error, Result};

use super::objectives::dominates_slice;

/// Raw rank of every pool member: the sum of the strengths of the members
/// that dominate it, where a member's strength is how many others it
/// dominates. Non-dominated members get 0.
pub fn strength_ranks<P: AsRef<[f64]>>(pool: &[P]) -> Vec<usize> {
    let n = pool.len();
    let mut dominated_by = vec![Vec::new(); n];
    let mut strength = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && dominates_slice(pool[i].as_ref(), pool[j].as_ref()) {
                strength[i] += 1;
                dominated_by[j].push(i);
            }
        }
    }
    dominated_by.iter().map(|ds| ds.iter().map(|&d| strength[d]).sum()).collect()
}

/// Distance to the k-th nearest neighbour (`sigma`) and density
/// `1 / (sigma + 1)` per member, in objective space min-max normalized over
/// the pool. `k` is 1-based.
pub fn density<P: AsRef<[f64]>>(pool: &[P], k: usize) -> Result<Vec<(f64, f64)>> {
    let n = pool.len();
    if k == 0 || k >= n {
        return Err(Error::NeighborIndex { k, pool: n });
    }
    let dims = pool[0].as_ref().len();
    let mut lo = vec![f64::INFINITY; dims];
    let mut hi = vec![f64::NEG_INFINITY; dims];
    for p in pool {
        for (d, &v) in p.as_ref().iter().enumerate() {
            lo[d] = lo[d].min(v);
            hi[d] = hi[d].max(v);
        }
    }
    let scaled: Vec<Vec<f64>> = pool
        .iter()
        .map(|p| {
            p.as_ref()
                .iter()
                .enumerate()
                .map(|(d, &v)| {
                    let span = hi[d] - lo[d];
                    if span > 0.0 {
                        // split to stay finite when the span is close to f64::MAX
                        v / span - lo[d] / span
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect();
    let mut dist = Vec::with_capacity(n - 1);
    Ok((0..n)
        .map(|i| {
            dist.clear();
            dist.extend((0..n).filter(|&j| j != i).map(|j| {
                sqrt(scaled[i].iter().zip(&scaled[j]).map(|(a, b)| (a - b) * (a - b)).sum())
            }));
            dist.sort_unstable_by(f64::total_cmp);
            let sigma = dist[k - 1];
            (sigma, 1.0 / (sigma + 1.0))
        })
        .collect())
}

/// `rank + density`; lower is better.
pub fn assign_fitness(ranks: &[usize], densities: &[f64]) -> Vec<f64> {
    ranks.iter().zip(densities).map(|(&r, &m)| r as f64 + m).collect()
}
