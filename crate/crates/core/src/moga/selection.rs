use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::Rng;

use crate::error::{Error, Result};
use crate::metrics::{topological_profile, TopologicalProfile};
use crate::rng;

use super::Individual;

/// Deviation of an individual's decoded SSE graph from the family profile.
pub fn profile_deviation(ind: &Individual, family: &TopologicalProfile) -> f64 {
    match topological_profile(&ind.clustering.graph()) {
        Ok(p) => p.deviation_from(family),
        Err(_) => f64::INFINITY,
    }
}

/// Builds the next archive from a fitness-assigned pool.
///
/// All non-dominated members are kept. Above capacity, members are removed
/// in order of largest topological deviation from `family`, then smaller
/// k-th neighbour distance, then lexicographically smallest genes. Below
/// capacity, the best dominated members by (fitness, deviation, genes) are
/// added. The result is sorted by (fitness, deviation, genes).
pub fn environmental_selection(pool: &[Individual], archive_size: usize, family: &TopologicalProfile) -> Vec<Individual> {
    let mut pool: Vec<Individual> = pool.to_vec();
    for ind in &mut pool {
        ind.deviation = profile_deviation(ind, family);
    }
    let (mut front, mut rest): (Vec<Individual>, Vec<Individual>) = pool.into_iter().partition(|i| i.raw_rank == 0);
    if front.len() > archive_size {
        // removal order: first element is removed first
        front.sort_by(|a, b| {
            b.deviation
                .total_cmp(&a.deviation)
                .then(a.sigma_k.total_cmp(&b.sigma_k))
                .then_with(|| a.chromosome.cmp(&b.chromosome))
        });
        front.drain(..front.len() - archive_size);
    } else if front.len() < archive_size {
        rest.sort_by(by_quality);
        front.extend(rest.into_iter().take(archive_size - front.len()));
    }
    front.sort_by(by_quality);
    front
}

fn by_quality(a: &Individual, b: &Individual) -> Ordering {
    a.fitness
        .total_cmp(&b.fitness)
        .then(a.deviation.total_cmp(&b.deviation))
        .then_with(|| a.chromosome.cmp(&b.chromosome))
}

/// Two uniform draws with replacement; the lower fitness wins and an exact
/// tie goes to the first draw.
pub fn binary_tournament<'a, R: Rng + ?Sized>(archive: &'a [Individual], rng: &mut R) -> Result<&'a Individual> {
    if archive.is_empty() {
        return Err(Error::Empty("archive"));
    }
    let a = &archive[rng::index(rng, archive.len())];
    let b = &archive[rng::index(rng, archive.len())];
    Ok(if b.fitness < a.fitness { b } else { a })
}
