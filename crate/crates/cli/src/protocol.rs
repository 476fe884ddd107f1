//! Benchmark protocol helpers: parameter translations for the planted
//! partition family and parallel multi-run execution.

use rayon::prelude::*;
use sbmk_core::sampler::{self, MultiRunResult, SamplerConfig};
use sbmk_core::Graph;

/// Planted-partition rates from per-node degrees: in-group degree
/// `in_degree` and `out_degree` to each other group, independent of k.
/// ω_rr = in_degree/group_size gives c_in = k·in_degree (same for out).
pub fn rates_from_degrees(k: usize, in_degree: f64, out_degree: f64) -> (f64, f64) {
    (k as f64 * in_degree, k as f64 * out_degree)
}

/// Rates at fixed mean degree and community strength δ = c_in − c_out,
/// from c_in + (k−1)·c_out = k·mean_degree.
pub fn rates_from_strength(k: usize, mean_degree: f64, delta: f64) -> (f64, f64) {
    let c_out = (k as f64 * mean_degree - delta) / k as f64;
    (c_out + delta, c_out)
}

/// Stable per-network seed stream for benchmark ensembles.
pub fn network_seed(base: u64, network_index: u64) -> u64 {
    sbmk_core::math::split_mix64(sbmk_core::math::split_mix64(base ^ 0x6273_6d6b) ^ network_index)
}

/// Runs the restarts of a multi-run in parallel; the reduction is by run
/// index, so the result is identical to the sequential `multi_run`.
pub fn multi_run_parallel(graph: &Graph, config: &SamplerConfig) -> MultiRunResult {
    let runs: Vec<_> = (0..config.runs)
        .into_par_iter()
        .map(|i| sampler::run(graph, config, i))
        .collect();
    let best_index = sampler::best_run_index(&runs);
    MultiRunResult { runs, best_index }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_translation_matches_caption() {
        // groups of 250, in-degree 16, out-degree 8
        let (c_in, c_out) = rates_from_degrees(4, 16.0, 8.0);
        assert_eq!((c_in, c_out), (64.0, 32.0));
        let n = 4.0 * 250.0;
        // per-node degrees recovered from the rates
        assert!((250.0 * c_in / n - 16.0).abs() < 1e-12);
        assert!((250.0 * c_out / n - 8.0).abs() < 1e-12);
    }

    #[test]
    fn strength_translation_keeps_mean_degree() {
        for delta in [4.0, 12.0, 16.0, 20.0, 24.0, 30.0] {
            let (c_in, c_out) = rates_from_strength(4, 16.0, delta);
            assert!((c_in - c_out - delta).abs() < 1e-12);
            assert!((c_in + 3.0 * c_out - 64.0).abs() < 1e-12);
        }
    }

    #[test]
    fn parallel_multi_run_equals_sequential() {
        let labels: Vec<String> = (0..6).map(|i| i.to_string()).collect();
        let graph =
            Graph::from_edges(labels, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let config = SamplerConfig {
            sweeps: 200,
            burnin_sweeps: 50,
            runs: 3,
            k_max: Some(4),
            seed: 9,
            ..Default::default()
        };
        let par = multi_run_parallel(&graph, &config);
        let seq = sampler::multi_run(&graph, &config);
        assert_eq!(par.best_index, seq.best_index);
        assert_eq!(par.runs, seq.runs);
    }
}
