//! Collapsed log-posterior of the blockmodel: the group-assignment prior
//! term, the integrated edge likelihood, the degree-correction factor, and
//! the incremental deltas the sampler uses.
//!
//! Everything is evaluated in log space through log-gamma; the global
//! constants dropped from the posterior are never reconstructed, so all
//! values are comparable only as ratios or averages on a fixed graph.

use crate::graph::Graph;
use crate::math::{ln_factorial, ln_gamma, LnFact};
use crate::partition::PartitionState;

/// Plain vs degree-corrected blockmodel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelFlavor {
    pub degree_corrected: bool,
}

impl ModelFlavor {
    pub const DEGREE_CORRECTED: Self = Self {
        degree_corrected: true,
    };
    pub const PLAIN: Self = Self {
        degree_corrected: false,
    };
}

impl Default for ModelFlavor {
    fn default() -> Self {
        Self::DEGREE_CORRECTED
    }
}

/// log P(g|k) = log[(k−1)!/(n+k−1)!] + Σ_r log(n_r!).
pub fn log_p_g_given_k(state: &PartitionState) -> f64 {
    let n = state.n() as f64;
    let k = state.k() as f64;
    let mut total = ln_gamma(k) - ln_gamma(n + k);
    for &n_r in state.group_sizes() {
        total += ln_factorial(n_r);
    }
    total
}

#[inline]
fn offdiag_term(lnf: &LnFact, p: f64, n_r: u64, n_s: u64, m: u64) -> f64 {
    lnf.ln_factorial(m) - (m as f64 + 1.0) * libm::log(p * n_r as f64 * n_s as f64 + 1.0)
}

#[inline]
fn diag_term(lnf: &LnFact, p: f64, n_r: u64, m: u64) -> f64 {
    lnf.ln_factorial(m) - (m as f64 + 1.0) * libm::log(0.5 * p * (n_r * n_r) as f64 + 1.0)
}

/// log P(A|g) up to its dropped constant: per-block factorial over
/// penalized base terms, diagonal blocks with the ½n_r² base.
pub fn log_p_a_given_g(state: &PartitionState, p: f64) -> f64 {
    let k = state.k();
    let sizes = state.group_sizes();
    let mut total = 0.0;
    for r in 0..k {
        total += diag_term(&LnFact::EMPTY, p, sizes[r], state.edges_between(r, r));
        for s in 0..r {
            total += offdiag_term(
                &LnFact::EMPTY,
                p,
                sizes[r],
                sizes[s],
                state.edges_between(r, s),
            );
        }
    }
    total
}

#[inline]
fn dc_group_term(lnf: &LnFact, n_r: u64, kappa_r: u64) -> f64 {
    if n_r == 0 {
        return 0.0;
    }
    kappa_r as f64 * libm::log(n_r as f64) + lnf.ln_factorial(n_r - 1)
        - lnf.ln_factorial(n_r + kappa_r - 1)
}

/// Degree-correction factor Σ_{r: n_r>0} [κ_r·log n_r + log(n_r−1)! − log(n_r+κ_r−1)!].
pub fn log_dc_factor(state: &PartitionState) -> f64 {
    state
        .group_sizes()
        .iter()
        .zip(state.degree_sums())
        .map(|(&n_r, &kappa_r)| dc_group_term(&LnFact::EMPTY, n_r, kappa_r))
        .sum()
}

/// Full log weight of a state, up to constants that cancel in ratios
/// (including the flat −log n from the prior on k).
pub fn log_weight(state: &PartitionState, p: f64, flavor: ModelFlavor) -> f64 {
    let mut w = log_p_g_given_k(state) + log_p_a_given_g(state, p);
    if flavor.degree_corrected {
        w += log_dc_factor(state);
    }
    w
}

/// log of the posterior ratio P(k+1, g|A) / P(k, g|A) = k/(n+k).
pub fn log_k_ratio(k: usize, n: usize) -> f64 {
    libm::log(k as f64) - libm::log((n + k) as f64)
}

/// Change in `log_weight` from moving node i to `target`, in O(k + degree(i)).
pub fn log_weight_delta_move(
    state: &PartitionState,
    graph: &Graph,
    i: usize,
    target: usize,
    p: f64,
    flavor: ModelFlavor,
) -> f64 {
    if state.group_of(i) == target {
        return 0.0;
    }
    let (counts, loops) = state.block_neighbor_counts(graph, i);
    delta_move_with_counts(
        state,
        graph,
        i,
        target,
        p,
        flavor,
        &counts,
        loops,
        &LnFact::EMPTY,
    )
}

/// Delta with node i's block counts precomputed, so the heat-bath step can
/// reuse one count pass across all k candidate groups. `lnf` supplies
/// ln-factorials; pass a per-run table to keep this off the lgamma path.
#[allow(clippy::too_many_arguments)]
pub fn delta_move_with_counts(
    state: &PartitionState,
    graph: &Graph,
    i: usize,
    target: usize,
    p: f64,
    flavor: ModelFlavor,
    counts: &[u64],
    loops: u64,
    lnf: &LnFact,
) -> f64 {
    let a = state.group_of(i);
    let b = target;
    if a == b {
        return 0.0;
    }
    let sizes = state.group_sizes();
    let (na, nb) = (sizes[a], sizes[b]);
    let (na_new, nb_new) = (na - 1, nb + 1);
    let d = graph.degree(i);

    // Σ_r log(n_r!) changes only through groups a and b.
    let mut delta = libm::log(nb_new as f64) - libm::log(na as f64);

    for t in 0..state.k() {
        if t == a || t == b {
            continue;
        }
        let nt = sizes[t];
        let e = counts[t];
        let m_at = state.edges_between(a, t);
        let m_bt = state.edges_between(b, t);
        delta += offdiag_term(lnf, p, na_new, nt, m_at - e) - offdiag_term(lnf, p, na, nt, m_at);
        delta += offdiag_term(lnf, p, nb_new, nt, m_bt + e) - offdiag_term(lnf, p, nb, nt, m_bt);
    }

    let m_aa = state.edges_between(a, a);
    let m_bb = state.edges_between(b, b);
    let m_ab = state.edges_between(a, b);
    let (e_a, e_b) = (counts[a], counts[b]);
    delta += diag_term(lnf, p, na_new, m_aa - e_a - loops) - diag_term(lnf, p, na, m_aa);
    delta += diag_term(lnf, p, nb_new, m_bb + e_b + loops) - diag_term(lnf, p, nb, m_bb);
    delta +=
        offdiag_term(lnf, p, na_new, nb_new, m_ab + e_a - e_b) - offdiag_term(lnf, p, na, nb, m_ab);

    if flavor.degree_corrected {
        let kappa = state.degree_sums();
        delta += dc_group_term(lnf, na_new, kappa[a] - d) - dc_group_term(lnf, na, kappa[a]);
        delta += dc_group_term(lnf, nb_new, kappa[b] + d) - dc_group_term(lnf, nb, kappa[b]);
    }
    delta
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use alloc::string::ToString;
    use alloc::vec;
    use alloc::vec::Vec;

    fn labels(n: usize) -> Vec<alloc::string::String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    fn empty_graph(n: usize) -> Graph {
        Graph::from_edges(labels(n), &[]).unwrap()
    }

    #[test]
    fn p_g_given_k_examples() {
        let g = empty_graph(3);
        let s = PartitionState::build(&g, vec![0, 0, 1], 2).unwrap();
        assert!((log_p_g_given_k(&s) - libm::log(1.0 / 12.0)).abs() < 1e-12);

        let s1 = PartitionState::build(&g, vec![0, 0, 0], 1).unwrap();
        assert!(log_p_g_given_k(&s1).abs() < 1e-12);

        let g2 = empty_graph(2);
        let s2 = PartitionState::build(&g2, vec![0, 0], 2).unwrap();
        assert!((log_p_g_given_k(&s2) - libm::log(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn p_g_given_k_normalizes() {
        // Σ over all kⁿ assignments of exp(log P(g|k)) = 1, empty groups included.
        for n in 1..=6usize {
            let g = empty_graph(n);
            for k in 1..=3usize {
                let mut total = 0.0;
                let mut assign = vec![0u32; n];
                loop {
                    let s = PartitionState::build(&g, assign.clone(), k).unwrap();
                    total += libm::exp(log_p_g_given_k(&s));
                    let mut pos = 0;
                    loop {
                        if pos == n {
                            break;
                        }
                        assign[pos] += 1;
                        if (assign[pos] as usize) < k {
                            break;
                        }
                        assign[pos] = 0;
                        pos += 1;
                    }
                    if pos == n {
                        break;
                    }
                }
                assert!((total - 1.0).abs() < 1e-10, "n={n} k={k} sum={total}");
            }
        }
    }

    #[test]
    fn p_a_given_g_examples() {
        let g0 = empty_graph(4);
        let s0 = PartitionState::build(&g0, vec![0, 1, 0, 1], 2).unwrap();
        assert_eq!(log_p_a_given_g(&s0, 0.0), 0.0);

        let g = Graph::from_edges(labels(2), &[(0, 1)]).unwrap();
        let p = g.edge_density();
        assert_eq!(p, 0.5);
        let together = PartitionState::build(&g, vec![0, 0], 1).unwrap();
        assert!((log_p_a_given_g(&together, p) + libm::log(4.0)).abs() < 1e-12);
        let split = PartitionState::build(&g, vec![0, 1], 2).unwrap();
        let expected = -2.0 * libm::log(1.25) - 2.0 * libm::log(1.5);
        assert!((log_p_a_given_g(&split, p) - expected).abs() < 1e-12);
    }

    #[test]
    fn dc_factor_examples() {
        let g0 = empty_graph(3);
        let s0 = PartitionState::build(&g0, vec![0, 1, 0], 2).unwrap();
        assert_eq!(log_dc_factor(&s0), 0.0);

        // single edge, one group: n_r = 2, κ_r = 2 → 2²·1!/3! = 2/3
        let g1 = Graph::from_edges(labels(2), &[(0, 1)]).unwrap();
        let s1 = PartitionState::build(&g1, vec![0, 0], 1).unwrap();
        assert!((log_dc_factor(&s1) - libm::log(2.0 / 3.0)).abs() < 1e-12);

        // triple edge split apart: each group has n_r = 1, κ_r = 3 → 1/6 each
        let g2 = Graph::from_edges(labels(2), &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let s2 = PartitionState::build(&g2, vec![0, 1], 2).unwrap();
        assert!((log_dc_factor(&s2) - 2.0 * libm::log(1.0 / 6.0)).abs() < 1e-12);
    }

    #[test]
    fn k_ratio_examples() {
        assert!((log_k_ratio(1, 10) - libm::log(1.0 / 11.0)).abs() < 1e-12);
        assert!((log_k_ratio(10, 10) - libm::log(0.5)).abs() < 1e-12);
        assert!((log_k_ratio(2, 34) - libm::log(1.0 / 18.0)).abs() < 1e-12);
    }

    #[test]
    fn permutation_invariance_of_log_weight() {
        let g = Graph::from_edges(labels(5), &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 1)])
            .unwrap();
        let p = g.edge_density();
        let s = PartitionState::build(&g, vec![0, 0, 1, 2, 1], 4).unwrap();
        for flavor in [ModelFlavor::PLAIN, ModelFlavor::DEGREE_CORRECTED] {
            let base = log_weight(&s, p, flavor);
            let mut permuted = s.clone();
            permuted.swap_groups(0, 3);
            permuted.swap_groups(1, 2);
            let w = log_weight(&permuted, p, flavor);
            assert!(((w - base) / base.abs().max(1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn delta_matches_from_scratch() {
        let g = Graph::from_edges(
            labels(6),
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (2, 2),
            ],
        )
        .unwrap();
        let p = g.edge_density();
        for flavor in [ModelFlavor::PLAIN, ModelFlavor::DEGREE_CORRECTED] {
            let s = PartitionState::build(&g, vec![0, 0, 1, 1, 2, 2], 4).unwrap();
            let lnf = LnFact::up_to(6 + 2 * g.m());
            for i in 0..6 {
                for target in 0..4 {
                    let delta = log_weight_delta_move(&s, &g, i, target, p, flavor);
                    let (counts, loops) = s.block_neighbor_counts(&g, i);
                    let tabled =
                        delta_move_with_counts(&s, &g, i, target, p, flavor, &counts, loops, &lnf);
                    assert_eq!(delta.to_bits(), tabled.to_bits(), "table changes the value");
                    let mut moved = s.clone();
                    moved.move_node(&g, i, target);
                    let direct = log_weight(&moved, p, flavor) - log_weight(&s, p, flavor);
                    assert!(
                        (delta - direct).abs() < 1e-9,
                        "i={i} target={target} delta={delta} direct={direct}"
                    );
                }
            }
        }
    }
}
