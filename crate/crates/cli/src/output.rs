//! Machine-readable output schemas. JSON is canonical; CSV is provided
//! for curve data. Both carry `schema_version`; consumers of v1 must
//! reject anything else.

use std::collections::BTreeMap;

use sbmk_core::posterior::KHistogram;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Effective sampler configuration, echoed verbatim for reproducibility.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub sweeps: usize,
    pub burnin_sweeps: usize,
    pub sample_interval: usize,
    pub runs: usize,
    pub seed: u64,
    pub k_init: usize,
    pub k_max: usize,
    pub degree_corrected: bool,
    pub k_step_probability: f64,
    /// "top-empty" (exactly balanced) or "any-empty" (relabeling variant).
    pub k_shrink: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: u64,
    pub edge_density: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunSummary {
    pub run_index: usize,
    pub avg_log_weight: f64,
    /// avg_log_weight minus the assignment-prior term.
    pub avg_log_likelihood: f64,
    /// Run selection score: avg_log_likelihood charged half the flat
    /// assignment-prior cost (n/2)·ln k per sample.
    pub selection_score: f64,
    pub final_k: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MarginalsOutput {
    /// Modal k the marginals are conditioned on.
    pub k: u32,
    /// Original node labels, row order of `rows`.
    pub nodes: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub consensus: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimateOutput {
    pub schema_version: u32,
    pub command: String,
    pub input: String,
    pub config: ConfigEcho,
    pub graph: GraphSummary,
    pub runs: Vec<RunSummary>,
    pub best_run: usize,
    /// P(k|A) from the best run, keyed by k.
    pub k_histogram: BTreeMap<u32, f64>,
    pub map_k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marginals: Option<MarginalsOutput>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleOutput {
    pub schema_version: u32,
    pub command: String,
    pub input: String,
    pub k_max: usize,
    pub degree_corrected: bool,
    pub posterior: BTreeMap<u32, f64>,
    pub map_k: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenerateOutput {
    pub schema_version: u32,
    pub command: String,
    pub k: usize,
    pub group_size: u64,
    pub c_in: f64,
    pub c_out: f64,
    pub seed: u64,
    pub n: usize,
    pub m: u64,
    pub graph_path: String,
    pub assignment_path: String,
}

pub fn histogram_map(hist: &KHistogram) -> BTreeMap<u32, f64> {
    hist.iter().collect()
}

/// CSV with a `# schema_version: 1` comment line, then a header row.
pub fn csv_document(columns: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("# schema_version: {SCHEMA_VERSION}\n");
    out.push_str(&columns.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
