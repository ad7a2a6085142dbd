//! Benchmark harness: repeated colony simulations on instances with a
//! known network, summarized per instance and per simulation.
//!
//! A manifest is TOML with an optional top-level `simulations` count,
//! optional `[ga]`/`[aco]` overrides and one `[[instance]]` table per
//! instance. An instance is either planted (`boost_fraction` plus optional
//! generator knobs) or a structure (`pdb` and `family`). Instance `i`
//! draws from the seed `master + seed_i`, where `seed_i` defaults to `i`.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;
use ssein_core::aco::{estimate_edge_budget, plan_pairs, AcoParams, PairPlan, TemplateShortcuts};
use ssein_core::contact::SseInGraph;
use ssein_core::metrics::{matrix_error_rate, prediction_accuracy, recovery_rate, shortcut_score, TopologicalProfile};
use ssein_core::moga::{run_moga, GaParams, SseContext};
use ssein_core::rng::{self, streams};
use ssein_core::synth::{planted_instance, PlantedConfig};

use crate::config::{AcoConfig, AcoOverrides, GaConfig, GaOverrides, DEFAULT_TOLERANCE};
use crate::error::{read_to_string, write, Error, Result};
use crate::formats::{benchmark_table_tsv, curve_csv, sample_sd, BenchmarkRow, CurvePoint};
use crate::pipeline::{load_family, read_structure, simulate, Query};

/// Simulations per instance when neither the manifest nor the command
/// line says otherwise.
pub const DEFAULT_BENCH_SIMULATIONS: usize = 20;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub simulations: Option<usize>,
    #[serde(default)]
    pub ga: GaOverrides,
    #[serde(default)]
    pub aco: AcoOverrides,
    #[serde(default, rename = "instance")]
    pub instances: Vec<InstanceSpec>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub name: String,
    pub seed: Option<u64>,
    pub boost_fraction: Option<f64>,
    pub cluster_sizes: Option<Vec<usize>>,
    pub min_sse_len: Option<usize>,
    pub max_sse_len: Option<usize>,
    pub shortcuts_per_pair: Option<usize>,
    pub templates: Option<usize>,
    pub noise_edges: Option<usize>,
    pub displacement: Option<usize>,
    pub pdb: Option<PathBuf>,
    pub family: Option<PathBuf>,
    pub threshold: Option<f64>,
}

impl InstanceSpec {
    pub fn planted(name: impl Into<String>, boost_fraction: f64) -> Self {
        Self { name: name.into(), boost_fraction: Some(boost_fraction), ..Self::default() }
    }

    fn planted_config(&self) -> PlantedConfig {
        let d = PlantedConfig::default();
        PlantedConfig {
            cluster_sizes: self.cluster_sizes.clone().unwrap_or(d.cluster_sizes),
            min_sse_len: self.min_sse_len.unwrap_or(d.min_sse_len),
            max_sse_len: self.max_sse_len.unwrap_or(d.max_sse_len),
            shortcuts_per_pair: self.shortcuts_per_pair.unwrap_or(d.shortcuts_per_pair),
            boost_fraction: self.boost_fraction.unwrap_or(d.boost_fraction),
            templates: self.templates.unwrap_or(d.templates),
            noise_edges: self.noise_edges.unwrap_or(d.noise_edges),
            displacement: self.displacement.unwrap_or(d.displacement),
            ..d
        }
    }
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads a manifest; relative structure paths are resolved against
    /// the manifest's directory.
    pub fn read(path: &Path) -> Result<Self> {
        let mut m = Self::parse(&read_to_string(path)?).map_err(|e| e.in_file(path))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for inst in &mut m.instances {
            for p in [&mut inst.pdb, &mut inst.family].into_iter().flatten() {
                if p.is_relative() {
                    *p = base.join(&*p);
                }
            }
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkConfig {
    pub seed: u64,
    /// Overrides the manifest's count.
    pub simulations: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkOutput {
    pub rows: Vec<BenchmarkRow>,
    pub curve: Vec<CurvePoint>,
}

impl BenchmarkOutput {
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.to_path_buf(), source })?;
        write(&dir.join("benchmark_table.tsv"), benchmark_table_tsv(&self.rows))?;
        write(&dir.join("figure3_curve.csv"), curve_csv(&self.curve))
    }
}

struct Prepared {
    name: String,
    boost_fraction: Option<f64>,
    seed: u64,
    sse_count: usize,
    network: SseInGraph,
    plans: Vec<PairPlan>,
    e_p: usize,
    truth: Vec<(usize, usize)>,
    family_profile: TopologicalProfile,
    matrix_error_rate: f64,
}

struct Outcome {
    local_recovery: f64,
    score: f64,
    accepted: bool,
}

fn prepare(spec: &InstanceSpec, seed: u64, ga: &GaParams) -> Result<Prepared> {
    let mut ga_rng = rng::stream(seed, streams::MOGA);
    match (&spec.pdb, &spec.family) {
        (Some(pdb), Some(family)) => {
            if spec.boost_fraction.is_some() {
                return Err(Error::Config(format!("instance {}: boost_fraction only applies to planted instances", spec.name)));
            }
            let threshold = spec.threshold.unwrap_or(ssein_core::contact::DEFAULT_THRESHOLD);
            let query = Query::new(read_structure(pdb)?, threshold)?;
            let m = query.sse_count();
            let fam = load_family(family, m, threshold)?;
            let ctx = SseContext::from_structure(&query.parsed.structure);
            let best = run_moga(&ctx, ga, &fam.sse_profile, &mut ga_rng)?;
            let summaries: Vec<_> = fam.templates.iter().map(TemplateShortcuts::summary).collect();
            let budget = estimate_edge_budget(&query.parsed.structure.sse_sizes(), &summaries)?;
            let plans = plan_pairs(&query.stripped, m, best.incidence(), &fam.templates, budget.e_total)?;
            Ok(Prepared {
                name: spec.name.clone(),
                boost_fraction: None,
                seed,
                sse_count: m,
                matrix_error_rate: matrix_error_rate(best.incidence(), &query.sse_truth)?,
                network: query.stripped,
                plans,
                e_p: budget.e_total,
                truth: query.true_shortcuts,
                family_profile: fam.residue_profile,
            })
        }
        (None, None) => {
            let inst = planted_instance(&spec.planted_config(), &mut rng::stream(seed, 0))?;
            let m = inst.sse_count();
            let best = run_moga(&inst.context, ga, &inst.sse_family_profile, &mut ga_rng)?;
            let summaries: Vec<_> = inst.templates.iter().map(TemplateShortcuts::summary).collect();
            let budget = estimate_edge_budget(&inst.sse_sizes, &summaries)?;
            let network = inst.network.with_shortcuts(std::iter::empty());
            // the colony stage is scored on the planted SSE pairs so that
            // its recovery is measured apart from the GA's errors
            let plans = plan_pairs(&network, m, &inst.sse_truth, &inst.templates, budget.e_total)?;
            Ok(Prepared {
                name: spec.name.clone(),
                boost_fraction: Some(spec.planted_config().boost_fraction),
                seed,
                sse_count: m,
                matrix_error_rate: matrix_error_rate(best.incidence(), &inst.sse_truth)?,
                network,
                plans,
                e_p: budget.e_total,
                truth: inst.true_shortcuts,
                family_profile: inst.family_profile,
            })
        }
        _ => Err(Error::Config(format!("instance {}: give both pdb and family, or neither", spec.name))),
    }
}

pub fn run_benchmark(manifest: &Manifest, cfg: &BenchmarkConfig) -> Result<BenchmarkOutput> {
    if manifest.instances.is_empty() {
        return Err(Error::EmptyManifest);
    }
    let sims = cfg.simulations.or(manifest.simulations).unwrap_or(DEFAULT_BENCH_SIMULATIONS);
    if sims == 0 {
        return Err(Error::Config("simulations must be at least 1".into()));
    }
    let mut ga = GaConfig::default();
    manifest.ga.apply(&mut ga);
    let ga = ga.params();
    ga.validate()?;
    let mut aco = AcoConfig::default();
    manifest.aco.apply(&mut aco);
    let aco: AcoParams = aco.params();
    aco.validate()?;

    let prepared: Vec<Prepared> = manifest
        .instances
        .par_iter()
        .enumerate()
        .map(|(i, spec)| {
            let seed = cfg.seed.wrapping_add(spec.seed.unwrap_or(i as u64));
            prepare(spec, seed, &ga).map_err(|e| Error::Config(format!("instance {}: {e}", spec.name)))
        })
        .collect::<Result<_>>()?;

    let units: Vec<(usize, usize)> = (0..prepared.len()).flat_map(|i| (0..sims).map(move |k| (i, k))).collect();
    let outcomes: Vec<Outcome> = units
        .par_iter()
        .map(|&(i, k)| {
            let p = &prepared[i];
            let s = simulate(&p.network, &p.plans, p.e_p, &aco, &p.family_profile, DEFAULT_TOLERANCE, p.seed, k)?;
            Ok(Outcome {
                local_recovery: recovery_rate(&s.candidate_pairs(), &p.truth),
                score: shortcut_score(&s.selected_pairs(), &p.truth),
                accepted: s.accepted,
            })
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(prepared.len());
    let mut curve = Vec::with_capacity(outcomes.len());
    for (p, chunk) in prepared.iter().zip(outcomes.chunks(sims)) {
        let scores: Vec<f64> = chunk.iter().map(|o| o.score).collect();
        let n = sims as f64;
        rows.push(BenchmarkRow {
            instance: p.name.clone(),
            sse_count: p.sse_count,
            simulations: sims,
            e_real: p.truth.len(),
            e_p: p.e_p,
            score_mean: scores.iter().sum::<f64>() / n,
            score_sd: sample_sd(&scores),
            ac: prediction_accuracy(p.truth.len(), p.e_p).ok(),
            matrix_error_rate: p.matrix_error_rate,
            local_recovery_mean: chunk.iter().map(|o| o.local_recovery).sum::<f64>() / n,
            acceptance_rate: chunk.iter().filter(|o| o.accepted).count() as f64 / n,
            boost_fraction: p.boost_fraction,
        });
        for (k, o) in chunk.iter().enumerate() {
            curve.push(CurvePoint {
                instance: p.name.clone(),
                boost_fraction: p.boost_fraction,
                simulation: k,
                local_recovery: o.local_recovery,
                global_score: o.score,
            });
        }
    }
    Ok(BenchmarkOutput { rows, curve })
}
