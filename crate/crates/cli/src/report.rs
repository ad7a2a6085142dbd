//! The `predict` report and its JSON form.

use serde::{Deserialize, Serialize};
use ssein_core::aco::BudgetSource;
use ssein_core::metrics::TopologicalProfile;

use crate::config::RunConfig;
use crate::pdb::IngestWarnings;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub diameter: f64,
    pub char_path_length: f64,
    pub mean_degree: f64,
    pub clustering_coeff: f64,
}

impl From<TopologicalProfile> for Profile {
    fn from(p: TopologicalProfile) -> Self {
        Self { diameter: p.diameter, char_path_length: p.char_path_length, mean_degree: p.mean_degree, clustering_coeff: p.clustering_coeff }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accepted,
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaSummary {
    pub generations: usize,
    /// Best chromosome, 1-based alleles.
    pub best_chromosome: Vec<usize>,
    pub objectives: [f64; 3],
    pub modularity: f64,
    pub clusters: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeBudget {
    /// Predicted shortcut count E_p.
    pub e_p: usize,
    /// Shortcut edges per SSE residue used for E_p.
    pub rate: f64,
    /// `template:<protein id>`, `average-chromosome` or `family-mean`.
    pub source: String,
}

impl EdgeBudget {
    pub fn new(e_p: usize, rate: f64, source: BudgetSource, template_ids: &[String]) -> Self {
        let source = match source {
            BudgetSource::Template(i) => format!("template:{}", template_ids[i]),
            BudgetSource::AverageChromosome => "average-chromosome".into(),
            BudgetSource::FamilyMean => "family-mean".into(),
        };
        Self { e_p, rate, source }
    }
}

/// Scores against the query's own contact network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    /// Real shortcut count E_R.
    pub e_real: usize,
    /// `1 - |E_R - E_p| / E_p`; absent when E_p is 0.
    pub accuracy: Option<f64>,
    pub matrix_error_rate: f64,
    /// Fraction of the true shortcuts among the selected edges.
    pub shortcut_score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub protein_id: String,
    pub family_id: String,
    pub residue_count: usize,
    pub sse_count: usize,
    pub sse_sizes: Vec<usize>,
    pub templates: Vec<String>,
    pub ingest_warnings: IngestWarnings,
    pub ga: GaSummary,
    pub predicted_sse_incidence: Vec<Vec<u8>>,
    pub edge_budget: EdgeBudget,
    pub candidate_edges: usize,
    pub selected_edges: usize,
    /// Edges missing when the local stage proposed fewer than E_p.
    pub shortfall: usize,
    pub attempts: usize,
    pub verdict: Verdict,
    pub built_profile: Profile,
    pub family_profile: Profile,
    /// Largest relative field deviation of the built profile.
    pub deviation: f64,
    pub evaluation: Evaluation,
    pub config: RunConfig,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
