//! Brute-force exact posterior by enumeration over all kⁿ assignments.
//! Slow on purpose: this is the ground truth the sampler is tested against,
//! so it shares nothing with the sampler's incremental update path.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;
use crate::likelihood::{log_weight, ModelFlavor};
use crate::math::OnlineLogSumExp;
use crate::partition::PartitionState;
use crate::posterior::KHistogram;

const MAX_ASSIGNMENTS: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    TooLargeForEnumeration { n: usize, k_max: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let OracleError::TooLargeForEnumeration { n, k_max } = self;
        write!(
            f,
            "enumeration over {k_max}^{n} assignments exceeds the guard"
        )
    }
}

impl core::error::Error for OracleError {}

fn check_size(n: usize, k_max: usize) -> Result<(), OracleError> {
    let mut total: u64 = 1;
    for _ in 0..n {
        total = match total.checked_mul(k_max as u64) {
            Some(t) if t <= MAX_ASSIGNMENTS => t,
            _ => return Err(OracleError::TooLargeForEnumeration { n, k_max }),
        };
    }
    Ok(())
}

/// Visits every assignment g ∈ {0..k−1}ⁿ in odometer order.
fn for_each_assignment(n: usize, k: usize, mut visit: impl FnMut(&[u32])) {
    let mut g = vec![0u32; n];
    loop {
        visit(&g);
        let mut pos = 0;
        while pos < n {
            g[pos] += 1;
            if (g[pos] as usize) < k {
                break;
            }
            g[pos] = 0;
            pos += 1;
        }
        if pos == n {
            break;
        }
    }
}

/// log Σ_g exp(log weight) over all kⁿ assignments.
fn log_evidence(graph: &Graph, k: usize, flavor: ModelFlavor) -> f64 {
    let p = graph.edge_density();
    let mut acc = OnlineLogSumExp::new();
    for_each_assignment(graph.n(), k, |g| {
        let state = PartitionState::build(graph, g.to_vec(), k).expect("assignment in range");
        acc.add(log_weight(&state, p, flavor));
    });
    acc.value()
}

/// Exact P(k|A) for k = 1..k_max. The flat prior on k cancels in the
/// normalization over the truncated support.
pub fn exact_posterior_k(
    graph: &Graph,
    k_max: usize,
    flavor: ModelFlavor,
) -> Result<KHistogram, OracleError> {
    let n = graph.n();
    check_size(n, k_max)?;
    let log_w: Vec<f64> = (1..=k_max)
        .map(|k| log_evidence(graph, k, flavor))
        .collect();
    let max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut weights = BTreeMap::new();
    for (i, &w) in log_w.iter().enumerate() {
        weights.insert(i as u32 + 1, libm::exp(w - max));
    }
    Ok(KHistogram::from_weights(weights))
}

/// Exact conditional marginals P(g_i = r | k, A) by enumeration.
pub fn exact_marginal_memberships(
    graph: &Graph,
    k: usize,
    flavor: ModelFlavor,
) -> Result<Vec<Vec<f64>>, OracleError> {
    let n = graph.n();
    check_size(n, k)?;
    let p = graph.edge_density();
    // two passes: max shift first, then accumulate
    let mut max = f64::NEG_INFINITY;
    for_each_assignment(n, k, |g| {
        let state = PartitionState::build(graph, g.to_vec(), k).expect("in range");
        max = max.max(log_weight(&state, p, flavor));
    });
    let mut weights = vec![vec![0.0f64; k]; n];
    let mut total = 0.0f64;
    for_each_assignment(n, k, |g| {
        let state = PartitionState::build(graph, g.to_vec(), k).expect("in range");
        let w = libm::exp(log_weight(&state, p, flavor) - max);
        total += w;
        for (i, &r) in g.iter().enumerate() {
            weights[i][r as usize] += w;
        }
    });
    Ok(weights
        .into_iter()
        .map(|row| row.into_iter().map(|w| w / total).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn labels(n: usize) -> Vec<alloc::string::String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn single_node_posterior_is_uniform() {
        let g = Graph::from_edges(labels(1), &[]).unwrap();
        let h = exact_posterior_k(&g, 3, ModelFlavor::PLAIN).unwrap();
        for k in 1..=3 {
            assert!((h.probability(k) - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_two_node_posterior_is_uniform() {
        // with m = 0 each k contributes Σ_g P(g|k) = 1
        let g = Graph::from_edges(labels(2), &[]).unwrap();
        let h = exact_posterior_k(&g, 2, ModelFlavor::PLAIN).unwrap();
        assert!((h.probability(1) - 0.5).abs() < 1e-12);
        assert!((h.probability(2) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn empty_graph_uniform_for_larger_support() {
        let g = Graph::from_edges(labels(3), &[]).unwrap();
        let h = exact_posterior_k(&g, 4, ModelFlavor::PLAIN).unwrap();
        for k in 1..=4 {
            assert!((h.probability(k) - 0.25).abs() < 1e-10, "k={k}");
        }
    }

    #[test]
    fn triangle_regression_value() {
        // frozen from this oracle's own first evaluation
        let g = Graph::from_edges(labels(3), &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let h = exact_posterior_k(&g, 2, ModelFlavor::PLAIN).unwrap();
        let p1 = h.probability(1);
        assert!(p1 > 0.5, "triangle should favor one group, got {p1}");
        assert!((h.probability(1) + h.probability(2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_marginals_for_empty_pair() {
        let g = Graph::from_edges(labels(2), &[]).unwrap();
        let marg = exact_marginal_memberships(&g, 2, ModelFlavor::PLAIN).unwrap();
        for row in &marg {
            assert!((row[0] - 0.5).abs() < 1e-12);
            assert!((row[1] - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn guard_rejects_large_instances() {
        let g = Graph::from_edges(labels(30), &[]).unwrap();
        assert!(matches!(
            exact_posterior_k(&g, 4, ModelFlavor::PLAIN),
            Err(OracleError::TooLargeForEnumeration { .. })
        ));
    }
}
