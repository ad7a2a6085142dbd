//! Tab-separated and CSV output tables. Every table starts with a header
//! row; residues and SSEs are numbered from 1.

use std::fmt::Write as _;

use ssein_core::aco::Candidate;
use ssein_core::matrix::AdjacencyMatrix;

pub const SHORTCUT_COLUMNS: [&str; 5] = ["res_i", "res_j", "sse_i", "sse_j", "pheromone_normalized"];

pub const BENCHMARK_COLUMNS: [&str; 12] = [
    "instance",
    "sse_count",
    "simulations",
    "e_real",
    "e_p",
    "score_mean",
    "average_deviation_sample_sd",
    "ac",
    "matrix_error_rate",
    "local_recovery_mean",
    "acceptance_rate",
    "boost_fraction",
];

pub const CURVE_COLUMNS: [&str; 5] = ["instance", "boost_fraction", "simulation", "local_recovery", "global_score"];

fn num(v: f64) -> String {
    format!("{v:.6}")
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), num)
}

/// One line per edge, in the given order.
pub fn shortcut_edges_tsv(edges: &[Candidate]) -> String {
    let mut out = SHORTCUT_COLUMNS.join("\t");
    out.push('\n');
    for e in edges {
        let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}", e.a + 1, e.b + 1, e.sse_a.0 + 1, e.sse_b.0 + 1, num(e.pheromone));
    }
    out
}

/// The SSE incidence matrix; the header row and first column hold SSE
/// numbers.
pub fn sse_incidence_tsv(m: &AdjacencyMatrix) -> String {
    let mut out = String::from("sse");
    for j in 1..=m.n() {
        let _ = write!(out, "\t{j}");
    }
    out.push('\n');
    for (i, row) in m.rows().enumerate() {
        let _ = write!(out, "{}", i + 1);
        for &b in row {
            out.push_str(if b { "\t1" } else { "\t0" });
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRow {
    pub instance: String,
    pub sse_count: usize,
    pub simulations: usize,
    pub e_real: usize,
    pub e_p: usize,
    pub score_mean: f64,
    /// Sample standard deviation of the per-simulation scores.
    pub score_sd: Option<f64>,
    pub ac: Option<f64>,
    pub matrix_error_rate: f64,
    pub local_recovery_mean: f64,
    pub acceptance_rate: f64,
    pub boost_fraction: Option<f64>,
}

pub fn benchmark_table_tsv(rows: &[BenchmarkRow]) -> String {
    let mut out = BENCHMARK_COLUMNS.join("\t");
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.instance,
            r.sse_count,
            r.simulations,
            r.e_real,
            r.e_p,
            num(r.score_mean),
            opt(r.score_sd),
            opt(r.ac),
            num(r.matrix_error_rate),
            num(r.local_recovery_mean),
            num(r.acceptance_rate),
            opt(r.boost_fraction),
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub instance: String,
    pub boost_fraction: Option<f64>,
    pub simulation: usize,
    pub local_recovery: f64,
    pub global_score: f64,
}

pub fn curve_csv(points: &[CurvePoint]) -> String {
    let mut out = CURVE_COLUMNS.join(",");
    out.push('\n');
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            p.instance,
            opt(p.boost_fraction),
            p.simulation,
            num(p.local_recovery),
            num(p.global_score)
        );
    }
    out
}

/// Sample standard deviation; `None` below two values.
pub fn sample_sd(values: &[f64]) -> Option<f64> {
    if values.len() < 2 {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    Some((values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ssein_core::protein::SseId;

    #[test]
    fn shortcut_rows_are_one_based() {
        let e = Candidate::new(4, 20, SseId(0), SseId(2), 0.5, 1.0);
        assert_eq!(shortcut_edges_tsv(&[e]), "res_i\tres_j\tsse_i\tsse_j\tpheromone_normalized\n5\t21\t1\t3\t1.000000\n");
    }

    #[test]
    fn incidence_layout() {
        let m = AdjacencyMatrix::from_pairs(3, [(0, 2)]);
        assert_eq!(sse_incidence_tsv(&m), "sse\t1\t2\t3\n1\t0\t0\t1\n2\t0\t0\t0\n3\t1\t0\t0\n");
    }

    #[test]
    fn sample_sd_uses_n_minus_one() {
        assert_eq!(sample_sd(&[1.0]), None);
        assert!((sample_sd(&[1.0, 2.0, 3.0, 4.0]).unwrap() - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }
}
