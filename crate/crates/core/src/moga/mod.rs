//! Multi-objective genetic algorithm predicting the SSE interaction graph.
//!
//! Individuals are locus-based adjacency chromosomes over the SSEs. Each
//! generation ranks the union of population and archive by SPEA2 raw
//! fitness plus k-th nearest neighbour density, rebuilds the archive with a
//! topology-aware truncation, and breeds the next population by binary
//! tournament, uniform crossover and mutation. The archive member whose
//! clustering has the highest modularity is the prediction.

mod chromosome;
mod fitness;
mod objectives;
mod selection;
mod variation;

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::matrix::AdjacencyMatrix;
use crate::metrics::{modularity, TopologicalProfile};
use crate::rng;

pub use chromosome::{decode, Chromosome, Clustering};
pub use fitness::{assign_fitness, density, strength_ranks};
pub use objectives::{dominates, evaluate_objectives, ObjectiveVector, SseContext};
pub use selection::{binary_tournament, environmental_selection, profile_deviation};
pub use variation::{mutate, uniform_crossover};

#[derive(Debug, Clone, PartialEq)]
pub struct GaParams {
    pub population_size: usize,
    pub archive_size: usize,
    pub generations: usize,
    /// Neighbour index for the density estimate; `None` means
    /// `floor(sqrt(population_size + archive_size))`.
    pub k: Option<usize>,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
}

impl Default for GaParams {
    fn default() -> Self {
        Self { population_size: 20, archive_size: 20, generations: 100, k: None, crossover_rate: 0.9, mutation_rate: 0.1 }
    }
}

impl GaParams {
    pub fn neighbor_k(&self) -> usize {
        self.k.unwrap_or_else(|| libm::sqrt((self.population_size + self.archive_size) as f64) as usize)
    }

    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(invalid("population_size", "must be at least 2"));
        }
        if self.archive_size < 1 {
            return Err(invalid("archive_size", "must be at least 1"));
        }
        let k = self.neighbor_k();
        if k < 1 || k >= self.population_size {
            return Err(invalid("k", "must satisfy 1 <= k < population_size"));
        }
        for (name, r) in [("crossover_rate", self.crossover_rate), ("mutation_rate", self.mutation_rate)] {
            if !(0.0..=1.0).contains(&r) {
                return Err(invalid(name, "must lie in [0, 1]"));
            }
        }
        Ok(())
    }
}

/// A chromosome with its decoded clustering, objectives and the
/// pool-relative selection values from the last fitness assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub chromosome: Chromosome,
    pub clustering: Clustering,
    pub objectives: ObjectiveVector,
    pub raw_rank: usize,
    pub sigma_k: f64,
    pub density: f64,
    pub fitness: f64,
    /// Topological deviation from the family profile.
    pub deviation: f64,
}

impl Individual {
    pub fn new(chromosome: Chromosome, ctx: &SseContext) -> Self {
        let objectives = evaluate_objectives(&chromosome, ctx);
        let clustering = decode(&chromosome);
        Self { chromosome, clustering, objectives, raw_rank: 0, sigma_k: 0.0, density: 0.0, fitness: 0.0, deviation: 0.0 }
    }

    pub fn is_non_dominated(&self) -> bool {
        self.raw_rank == 0
    }

    /// Modularity of the decoded clustering over its own incidence graph.
    pub fn modularity(&self) -> f64 {
        modularity(&self.clustering.graph(), &self.clustering.assignment).unwrap_or(0.0)
    }
}

/// Computes rank, density and fitness of every pool member in place.
pub fn evaluate_pool(pool: &mut [Individual], k: usize) -> Result<()> {
    let objectives: Vec<[f64; 3]> = pool.iter().map(|i| i.objectives.as_array()).collect();
    let ranks = strength_ranks(&objectives);
    let dens = density(&objectives, k)?;
    for ((ind, r), (sigma, m)) in pool.iter_mut().zip(ranks).zip(dens) {
        ind.raw_rank = r;
        ind.sigma_k = sigma;
        ind.density = m;
        ind.fitness = r as f64 + m;
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct MogaOutcome {
    pub best: Individual,
    /// Final archive sorted by (fitness, deviation, genes).
    pub archive: Vec<Individual>,
    pub generations: usize,
}

impl MogaOutcome {
    pub fn incidence(&self) -> &AdjacencyMatrix {
        &self.best.clustering.incidence
    }

    pub fn non_dominated(&self) -> impl Iterator<Item = &Individual> {
        self.archive.iter().filter(|i| i.is_non_dominated())
    }
}

/// Runs the GA for `params.generations` generations and returns the
/// non-dominated archive member with the highest modularity (ties: lower
/// deviation, lower fitness, smaller genes).
pub fn run_moga<R: Rng + ?Sized>(ctx: &SseContext, params: &GaParams, family: &TopologicalProfile, rng: &mut R) -> Result<MogaOutcome> {
    let m = ctx.len();
    if m < 2 {
        return Err(Error::TooFewSses(m));
    }
    params.validate()?;
    let k = params.neighbor_k();

    let mut population: Vec<Individual> = Vec::with_capacity(params.population_size);
    population.push(Individual::new(Chromosome::identity(m), ctx));
    while population.len() < params.population_size {
        let genes = (0..m).map(|_| rng::index(rng, m)).collect();
        population.push(Individual::new(Chromosome::new(genes)?, ctx));
    }

    let mut archive: Vec<Individual> = Vec::new();
    let generations = params.generations.max(1);
    for generation in 0..generations {
        let mut pool = population;
        pool.extend(archive);
        evaluate_pool(&mut pool, k)?;
        archive = environmental_selection(&pool, params.archive_size, family);
        if generation + 1 == generations {
            break;
        }
        population = Vec::with_capacity(params.population_size);
        while population.len() < params.population_size {
            let p1 = binary_tournament(&archive, rng)?;
            let p2 = binary_tournament(&archive, rng)?;
            let child = if rng::chance(rng, params.crossover_rate) {
                let mask: Vec<bool> = (0..m).map(|_| rng::chance(rng, 0.5)).collect();
                uniform_crossover(&p1.chromosome, &p2.chromosome, &mask)?
            } else {
                p1.chromosome.clone()
            };
            population.push(Individual::new(mutate(&child, params.mutation_rate, rng), ctx));
        }
    }

    let best = archive
        .iter()
        .filter(|i| i.is_non_dominated())
        .map(|i| (i.modularity(), i))
        .max_by(|(qa, a), (qb, b)| {
            qa.total_cmp(qb)
                .then(b.deviation.total_cmp(&a.deviation))
                .then(b.fitness.total_cmp(&a.fitness))
                .then_with(|| b.chromosome.cmp(&a.chromosome))
        })
        .map(|(_, i)| i.clone())
        .ok_or(Error::Empty("non-dominated archive"))?;
    Ok(MogaOutcome { best, archive, generations })
}
