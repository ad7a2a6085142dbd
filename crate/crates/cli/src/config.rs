//! Run configuration. Values come from built-in defaults, then an optional
//! TOML file, then command-line flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use ssein_core::aco::{AcoParams, AntPlacement};
use ssein_core::contact::DEFAULT_THRESHOLD;
use ssein_core::moga::GaParams;

use crate::error::{read_to_string, Error, Result};

pub const DEFAULT_SIMULATIONS: usize = 150;
pub const DEFAULT_TOLERANCE: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaConfig {
    pub population_size: usize,
    pub archive_size: usize,
    pub generations: usize,
    /// Density neighbour index; absent means `floor(sqrt(Np + NE))`.
    pub k: Option<usize>,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaParams::default().into()
    }
}

impl From<GaParams> for GaConfig {
    fn from(p: GaParams) -> Self {
        Self {
            population_size: p.population_size,
            archive_size: p.archive_size,
            generations: p.generations,
            k: p.k,
            crossover_rate: p.crossover_rate,
            mutation_rate: p.mutation_rate,
        }
    }
}

impl GaConfig {
    pub fn params(&self) -> GaParams {
        GaParams {
            population_size: self.population_size,
            archive_size: self.archive_size,
            generations: self.generations,
            k: self.k,
            crossover_rate: self.crossover_rate,
            mutation_rate: self.mutation_rate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Placement {
    #[default]
    OnePerVertex,
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcoConfig {
    pub alpha: f64,
    pub beta: f64,
    pub rho: f64,
    pub delta_tau: f64,
    pub e_stop: f64,
    pub lambda_min: f64,
    pub max_iterations: usize,
    pub ant_placement: Placement,
}

impl Default for AcoConfig {
    fn default() -> Self {
        let p = AcoParams::default();
        Self {
            alpha: p.alpha,
            beta: p.beta,
            rho: p.rho,
            delta_tau: p.delta_tau,
            e_stop: p.e_stop,
            lambda_min: p.lambda_min,
            max_iterations: p.max_iterations,
            ant_placement: Placement::default(),
        }
    }
}

impl AcoConfig {
    pub fn params(&self) -> AcoParams {
        AcoParams {
            alpha: self.alpha,
            beta: self.beta,
            rho: self.rho,
            delta_tau: self.delta_tau,
            e_stop: self.e_stop,
            lambda_min: self.lambda_min,
            max_iterations: self.max_iterations,
            placement: match self.ant_placement {
                Placement::OnePerVertex => AntPlacement::OnePerVertex,
                Placement::Uniform => AntPlacement::Uniform,
            },
        }
    }
}

/// A fully resolved `predict` configuration. Every field is echoed into
/// the report except `output_dir`, so that runs writing to different
/// directories still produce identical reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub pdb: PathBuf,
    pub family: PathBuf,
    pub threshold: f64,
    pub tolerance: f64,
    pub seed: u64,
    pub simulations: usize,
    #[serde(skip_serializing, default = "default_out")]
    pub output_dir: PathBuf,
    pub ga: GaConfig,
    pub aco: AcoConfig,
}

fn default_out() -> PathBuf {
    PathBuf::from(".")
}

impl RunConfig {
    pub fn new(pdb: impl Into<PathBuf>, family: impl Into<PathBuf>) -> Self {
        Self {
            pdb: pdb.into(),
            family: family.into(),
            threshold: DEFAULT_THRESHOLD,
            tolerance: DEFAULT_TOLERANCE,
            seed: 0,
            simulations: DEFAULT_SIMULATIONS,
            output_dir: default_out(),
            ga: GaConfig::default(),
            aco: AcoConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.simulations == 0 {
            return Err(Error::Config("simulations must be at least 1".into()));
        }
        if !(self.threshold > 0.0 && self.threshold.is_finite()) {
            return Err(Error::Config("threshold must be a positive distance".into()));
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::Config("tolerance must be non-negative".into()));
        }
        self.ga.params().validate()?;
        self.aco.params().validate()?;
        Ok(())
    }

    /// The config as TOML, loadable again with [`ConfigFile::read`].
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

/// Optional overrides, as read from a config file or the command line.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub pdb: Option<PathBuf>,
    pub family: Option<PathBuf>,
    pub threshold: Option<f64>,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
    pub simulations: Option<usize>,
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub ga: GaOverrides,
    #[serde(default)]
    pub aco: AcoOverrides,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaOverrides {
    pub population_size: Option<usize>,
    pub archive_size: Option<usize>,
    pub generations: Option<usize>,
    pub k: Option<usize>,
    pub crossover_rate: Option<f64>,
    pub mutation_rate: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcoOverrides {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub rho: Option<f64>,
    pub delta_tau: Option<f64>,
    pub e_stop: Option<f64>,
    pub lambda_min: Option<f64>,
    pub max_iterations: Option<usize>,
    pub ant_placement: Option<Placement>,
}

fn set<T: Clone>(slot: &mut T, v: &Option<T>) {
    if let Some(v) = v {
        *slot = v.clone();
    }
}

impl GaOverrides {
    pub fn apply(&self, g: &mut GaConfig) {
        set(&mut g.population_size, &self.population_size);
        set(&mut g.archive_size, &self.archive_size);
        set(&mut g.generations, &self.generations);
        g.k = self.k.or(g.k);
        set(&mut g.crossover_rate, &self.crossover_rate);
        set(&mut g.mutation_rate, &self.mutation_rate);
    }
}

impl AcoOverrides {
    pub fn apply(&self, a: &mut AcoConfig) {
        set(&mut a.alpha, &self.alpha);
        set(&mut a.beta, &self.beta);
        set(&mut a.rho, &self.rho);
        set(&mut a.delta_tau, &self.delta_tau);
        set(&mut a.e_stop, &self.e_stop);
        set(&mut a.lambda_min, &self.lambda_min);
        set(&mut a.max_iterations, &self.max_iterations);
        set(&mut a.ant_placement, &self.ant_placement);
    }
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads a config file; relative paths inside it are resolved against
    /// the file's directory.
    pub fn read(path: &Path) -> Result<Self> {
        let mut cfg = Self::parse(&read_to_string(path)?).map_err(|e| e.in_file(path))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.pdb, &mut cfg.family, &mut cfg.output_dir].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    /// Layers `over` on top of `self`.
    pub fn merge(mut self, over: ConfigFile) -> Self {
        self.pdb = over.pdb.or(self.pdb);
        self.family = over.family.or(self.family);
        self.threshold = over.threshold.or(self.threshold);
        self.tolerance = over.tolerance.or(self.tolerance);
        self.seed = over.seed.or(self.seed);
        self.simulations = over.simulations.or(self.simulations);
        self.output_dir = over.output_dir.or(self.output_dir);
        let (g, o) = (&mut self.ga, over.ga);
        g.population_size = o.population_size.or(g.population_size);
        g.archive_size = o.archive_size.or(g.archive_size);
        g.generations = o.generations.or(g.generations);
        g.k = o.k.or(g.k);
        g.crossover_rate = o.crossover_rate.or(g.crossover_rate);
        g.mutation_rate = o.mutation_rate.or(g.mutation_rate);
        let (a, o) = (&mut self.aco, over.aco);
        a.alpha = o.alpha.or(a.alpha);
        a.beta = o.beta.or(a.beta);
        a.rho = o.rho.or(a.rho);
        a.delta_tau = o.delta_tau.or(a.delta_tau);
        a.e_stop = o.e_stop.or(a.e_stop);
        a.lambda_min = o.lambda_min.or(a.lambda_min);
        a.max_iterations = o.max_iterations.or(a.max_iterations);
        a.ant_placement = o.ant_placement.or(a.ant_placement);
        self
    }

    /// Fills defaults and checks the result.
    pub fn resolve(self) -> Result<RunConfig> {
        let pdb = self.pdb.ok_or_else(|| Error::Config("no structure given (--pdb)".into()))?;
        let family = self.family.ok_or_else(|| Error::Config("no family index given (--family)".into()))?;
        let mut cfg = RunConfig::new(pdb, family);
        set(&mut cfg.threshold, &self.threshold);
        set(&mut cfg.tolerance, &self.tolerance);
        set(&mut cfg.seed, &self.seed);
        set(&mut cfg.simulations, &self.simulations);
        set(&mut cfg.output_dir, &self.output_dir);
        self.ga.apply(&mut cfg.ga);
        self.aco.apply(&mut cfg.aco);
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file() {
        let file = ConfigFile::parse("pdb = \"q.pdb\"\nfamily = \"f.tsv\"\nseed = 3\n[ga]\ngenerations = 7\n[aco]\nalpha = 2.0\n").unwrap();
        let flags = ConfigFile { seed: Some(9), ..ConfigFile::default() };
        let cfg = file.merge(flags).resolve().unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.ga.generations, 7);
        assert_eq!(cfg.aco.alpha, 2.0);
        assert_eq!(cfg.aco.beta, 12.0);
        assert_eq!(cfg.simulations, DEFAULT_SIMULATIONS);
    }

    #[test]
    fn unknown_key_rejected() {
        assert!(matches!(ConfigFile::parse("[ga]\npopulation = 3\n"), Err(Error::Config(_))));
    }

    #[test]
    fn zero_simulations_rejected() {
        let f = ConfigFile { pdb: Some("a".into()), family: Some("b".into()), simulations: Some(0), ..Default::default() };
        assert!(f.resolve().is_err());
    }

    #[test]
    fn echo_reloads_to_same_config() {
        let mut cfg = RunConfig::new("q.pdb", "f.tsv");
        cfg.seed = 77;
        cfg.ga.k = Some(3);
        cfg.aco.ant_placement = Placement::Uniform;
        let again = ConfigFile::parse(&cfg.to_toml()).unwrap().resolve().unwrap();
        assert_eq!(again, cfg);
    }
}
