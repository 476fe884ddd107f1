use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;
use sbmk_core::likelihood::ModelFlavor;
use sbmk_core::posterior::KHistogram;
use sbmk_core::sampler::{self, SamplerConfig};
use sbmk_core::synth;

use super::{emit, KShrinkArg};
use crate::output::csv_document;
use crate::protocol::{network_seed, rates_from_degrees, rates_from_strength};

/// Recovery benchmark: planted networks at fixed per-node degrees, one
/// posterior per network, reported as long-format CSV.
#[derive(Debug, Args)]
pub struct RecoveryArgs {
    /// Planted group counts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
    pub k_values: Vec<usize>,
    /// Networks per group count.
    #[arg(long, default_value_t = 10)]
    pub networks: u64,
    #[arg(long, default_value_t = 250)]
    pub group_size: u64,
    /// Expected in-group degree per node.
    #[arg(long, default_value_t = 16.0)]
    pub in_degree: f64,
    /// Expected degree per node to each other group.
    #[arg(long, default_value_t = 8.0)]
    pub out_degree: f64,
    #[arg(long, default_value_t = 2000)]
    pub sweeps: usize,
    #[arg(long, default_value_t = 1000)]
    pub burnin: usize,
    #[arg(long, default_value_t = 10)]
    pub runs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cap on the number of groups (default: n).
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Initial number of groups. The default warm start (above every
    /// planted k used here) matters: from a cold k=1 start the chain needs
    /// ~n sweeps per accepted k-increase, far more than the protocol runs.
    #[arg(long, default_value_t = 8)]
    pub k_init: usize,
    /// Shrink acceptance rule. Any-empty prunes redundant groups far
    /// faster on large networks (top-empty waits for one specific group
    /// to drain), and its small-k bias is negligible at this scale.
    #[arg(long, value_enum, default_value_t = KShrinkArg::AnyEmpty)]
    pub k_shrink: KShrinkArg,
    /// Use the plain blockmodel instead of the degree-corrected one.
    #[arg(long)]
    pub no_degree_correction: bool,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl RecoveryArgs {
    fn config(&self) -> SamplerConfig {
        SamplerConfig {
            sweeps: self.sweeps,
            burnin_sweeps: self.burnin,
            runs: self.runs,
            k_max: self.kmax,
            k_init: self.k_init,
            k_move_rule: self.k_shrink.into(),
            flavor: if self.no_degree_correction {
                ModelFlavor::PLAIN
            } else {
                ModelFlavor::DEGREE_CORRECTED
            },
            ..Default::default()
        }
    }

    pub fn execute(&self) -> anyhow::Result<()> {
        anyhow::ensure!(!self.k_values.is_empty(), "need at least one group count");
        let base = self.config();
        let jobs: Vec<(usize, u64)> = self
            .k_values
            .iter()
            .flat_map(|&k| (0..self.networks).map(move |i| (k, i)))
            .collect();
        let histograms: Vec<KHistogram> = jobs
            .par_iter()
            .map(|&(true_k, index)| {
                let (c_in, c_out) = rates_from_degrees(true_k, self.in_degree, self.out_degree);
                let stream = (true_k as u64) << 32 | index;
                let (graph, _) = synth::planted_partition(
                    true_k,
                    self.group_size,
                    c_in,
                    c_out,
                    network_seed(self.seed, stream),
                );
                let mut config = base.clone();
                config.seed = network_seed(self.seed ^ 0x7275_6e73, stream);
                config.k_init = config.k_init.min(config.k_max_for(graph.n()));
                config
                    .validate(graph.n())
                    .expect("benchmark configuration is well-formed");
                let result = sampler::multi_run(&graph, &config);
                KHistogram::from_samples(&result.best().k_samples)
            })
            .collect();
        let mut rows = Vec::new();
        for (&(true_k, index), hist) in jobs.iter().zip(&histograms) {
            for (k, p) in hist.iter() {
                rows.push(vec![
                    true_k.to_string(),
                    index.to_string(),
                    k.to_string(),
                    format!("{p:.6}"),
                ]);
            }
        }
        emit(
            self.output.as_ref(),
            &csv_document(&["true_k", "network", "k", "probability"], &rows),
        )
    }
}

/// Detectability benchmark: success fraction against community strength
/// δ = c_in − c_out at fixed mean degree.
#[derive(Debug, Args)]
pub struct DetectabilityArgs {
    /// Strength values δ, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "4,12,16,20,24,30")]
    pub deltas: Vec<f64>,
    /// Networks per strength value.
    #[arg(long, default_value_t = 50)]
    pub networks: u64,
    /// Planted group count.
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[arg(long, default_value_t = 250)]
    pub group_size: u64,
    #[arg(long, default_value_t = 16.0)]
    pub mean_degree: f64,
    #[arg(long, default_value_t = 2000)]
    pub sweeps: usize,
    #[arg(long, default_value_t = 1000)]
    pub burnin: usize,
    #[arg(long, default_value_t = 10)]
    pub runs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cap on the number of groups (default: n).
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Initial number of groups. The default warm start (above every
    /// planted k used here) matters: from a cold k=1 start the chain needs
    /// ~n sweeps per accepted k-increase, far more than the protocol runs.
    #[arg(long, default_value_t = 8)]
    pub k_init: usize,
    /// Shrink acceptance rule. Any-empty prunes redundant groups far
    /// faster on large networks (top-empty waits for one specific group
    /// to drain), and its small-k bias is negligible at this scale.
    #[arg(long, value_enum, default_value_t = KShrinkArg::AnyEmpty)]
    pub k_shrink: KShrinkArg,
    /// Use the plain blockmodel instead of the degree-corrected one.
    #[arg(long)]
    pub no_degree_correction: bool,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl DetectabilityArgs {
    pub fn execute(&self) -> anyhow::Result<()> {
        anyhow::ensure!(!self.deltas.is_empty(), "need at least one strength value");
        anyhow::ensure!(self.k >= 1, "k must be at least 1");
        let threshold = synth::detectability_threshold(self.k, self.mean_degree);
        let base = SamplerConfig {
            sweeps: self.sweeps,
            burnin_sweeps: self.burnin,
            runs: self.runs,
            k_max: self.kmax,
            k_init: self.k_init,
            k_move_rule: self.k_shrink.into(),
            flavor: if self.no_degree_correction {
                ModelFlavor::PLAIN
            } else {
                ModelFlavor::DEGREE_CORRECTED
            },
            ..Default::default()
        };
        let mut rows = Vec::new();
        for (di, &delta) in self.deltas.iter().enumerate() {
            let (c_in, c_out) = rates_from_strength(self.k, self.mean_degree, delta);
            anyhow::ensure!(
                c_out >= 0.0,
                "strength {delta} exceeds k·mean_degree; c_out would be negative"
            );
            let successes: u64 = (0..self.networks)
                .into_par_iter()
                .map(|index| {
                    let stream = (di as u64) << 32 | index;
                    let (graph, _) = synth::planted_partition(
                        self.k,
                        self.group_size,
                        c_in,
                        c_out,
                        network_seed(self.seed, stream),
                    );
                    let mut config = base.clone();
                    config.seed = network_seed(self.seed ^ 0x7275_6e73, stream);
                    config.k_init = config.k_init.min(config.k_max_for(graph.n()));
                    config
                        .validate(graph.n())
                        .expect("benchmark configuration is well-formed");
                    let result = sampler::multi_run(&graph, &config);
                    let hist = KHistogram::from_samples(&result.best().k_samples);
                    // success: the planted k carries a posterior majority
                    u64::from(hist.probability(self.k as u32) > 0.5)
                })
                .sum();
            rows.push(vec![
                format!("{delta}"),
                self.networks.to_string(),
                successes.to_string(),
                format!("{:.6}", successes as f64 / self.networks as f64),
                format!("{threshold:.6}"),
            ]);
        }
        emit(
            self.output.as_ref(),
            &csv_document(
                &[
                    "delta",
                    "networks",
                    "successes",
                    "success_fraction",
                    "threshold",
                ],
                &rows,
            ),
        )
    }
}
