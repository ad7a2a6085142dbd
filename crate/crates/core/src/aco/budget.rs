//! Edge budget estimation from family templates.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Element-wise mean of equally long size vectors, rounded half-up.
pub fn average_family_chromosome(templates: &[&[usize]]) -> Result<Vec<usize>> {
    let first = templates.first().ok_or(Error::Empty("templates"))?;
    let len = first.len();
    if let Some(bad) = templates.iter().find(|t| t.len() != len) {
        return Err(Error::DimensionMismatch { expected: len, found: bad.len() });
    }
    let k = templates.len();
    Ok((0..len)
        .map(|i| {
            let sum: usize = templates.iter().map(|t| t[i]).sum();
            (2 * sum + k) / (2 * k)
        })
        .collect())
}

/// Sum of allele-wise absolute differences.
pub fn allele_distance(a: &[usize], b: &[usize]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    Ok(a.iter().zip(b).map(|(&x, &y)| x.abs_diff(y)).sum())
}

/// What the budget estimate needs from one family template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateSummary {
    /// Residue count of every SSE, in sequence order.
    pub sizes: Vec<usize>,
    /// Residues the edge rate is taken over (the SSE residues).
    pub residues: usize,
    pub shortcut_edges: usize,
}

impl TemplateSummary {
    pub fn new(sizes: Vec<usize>, shortcut_edges: usize) -> Self {
        let residues = sizes.iter().sum();
        Self { sizes, residues, shortcut_edges }
    }

    /// Shortcut edges per residue.
    pub fn edge_rate(&self) -> f64 {
        if self.residues == 0 {
            0.0
        } else {
            self.shortcut_edges as f64 / self.residues as f64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetSource {
    /// The nearest template (index into the template slice) was close enough.
    Template(usize),
    /// The average family chromosome was close enough; pooled family rate.
    AverageChromosome,
    /// Nothing was close; mean of the per-template rates.
    FamilyMean,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BudgetEstimate {
    /// Predicted number of shortcut edges, E_p.
    pub e_total: usize,
    pub rate: f64,
    pub source: BudgetSource,
}

/// Relative closeness bound: a template is close when its allele distance
/// is below this fraction of the sequence's cumulated size.
pub const CLOSENESS: f64 = 0.2;

/// Estimates E_p for a sequence with SSE sizes `sequence`. Only templates
/// with the same SSE count are considered.
pub fn estimate_edge_budget(sequence: &[usize], templates: &[TemplateSummary]) -> Result<BudgetEstimate> {
    let matching: Vec<(usize, &TemplateSummary)> =
        templates.iter().enumerate().filter(|(_, t)| t.sizes.len() == sequence.len()).collect();
    if matching.is_empty() {
        return Err(Error::NoMatchingTemplate(sequence.len()));
    }
    let cumulated: usize = sequence.iter().sum();
    let bound = CLOSENESS * cumulated as f64;

    let mut nearest: Option<(usize, usize)> = None;
    for &(idx, t) in &matching {
        let d = allele_distance(sequence, &t.sizes)?;
        if nearest.is_none_or(|(best, _)| d < best) {
            nearest = Some((d, idx));
        }
    }
    let (rate, source) = match nearest {
        Some((d, idx)) if (d as f64) < bound => (templates[idx].edge_rate(), BudgetSource::Template(idx)),
        _ => {
            let sizes: Vec<&[usize]> = matching.iter().map(|(_, t)| t.sizes.as_slice()).collect();
            let average = average_family_chromosome(&sizes)?;
            if (allele_distance(sequence, &average)? as f64) < bound {
                let edges: usize = matching.iter().map(|(_, t)| t.shortcut_edges).sum();
                let residues: usize = matching.iter().map(|(_, t)| t.residues).sum();
                let rate = if residues == 0 { 0.0 } else { edges as f64 / residues as f64 };
                (rate, BudgetSource::AverageChromosome)
            } else {
                let mean = matching.iter().map(|(_, t)| t.edge_rate()).sum::<f64>() / matching.len() as f64;
                (mean, BudgetSource::FamilyMean)
            }
        }
    };
    Ok(BudgetEstimate { e_total: libm::round(rate * cumulated as f64) as usize, rate, source })
}

/// Splits `total` across items proportionally to `weights` with the
/// largest-remainder method; the shares sum to `total` exactly. Remainder
/// ties go to the lower index.
pub fn allocate_budget(total: usize, weights: &[f64]) -> Vec<usize> {
    let sum: f64 = weights.iter().sum();
    if weights.is_empty() || !(sum > 0.0) {
        return alloc::vec![0; weights.len()];
    }
    let quotas: Vec<f64> = weights.iter().map(|w| total as f64 * w / sum).collect();
    let mut shares: Vec<usize> = quotas.iter().map(|&q| libm::floor(q) as usize).collect();
    let assigned: usize = shares.iter().sum();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = quotas[a] - shares[a] as f64;
        let rb = quotas[b] - shares[b] as f64;
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().cycle().take(total.saturating_sub(assigned)) {
        shares[i] += 1;
    }
    shares
}
