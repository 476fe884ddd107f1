//! Post-processing of recorded samples: the empirical P(k|A) histogram,
//! label-switching alignment, membership marginals, and the consensus
//! partition.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::sampler::AssignmentSample;

/// Empirical posterior over the number of groups.
#[derive(Debug, Clone, PartialEq)]
pub struct KHistogram {
    probs: BTreeMap<u32, f64>,
}

impl KHistogram {
    pub fn from_samples(samples: &[u32]) -> Self {
        let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
        for &k in samples {
            *counts.entry(k).or_insert(0) += 1;
        }
        let total = samples.len() as f64;
        Self {
            probs: counts
                .into_iter()
                .map(|(k, c)| (k, c as f64 / total))
                .collect(),
        }
    }

    /// Builds from unnormalized per-k weights (normalized on construction).
    pub fn from_weights(weights: BTreeMap<u32, f64>) -> Self {
        let total: f64 = weights.values().sum();
        Self {
            probs: weights.into_iter().map(|(k, w)| (k, w / total)).collect(),
        }
    }

    pub fn probability(&self, k: u32) -> f64 {
        self.probs.get(&k).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.probs.iter().map(|(&k, &p)| (k, p))
    }

    /// MAP estimate of k; ties break toward smaller k.
    pub fn map_k(&self) -> u32 {
        let mut best_k = 0;
        let mut best_p = f64::NEG_INFINITY;
        for (&k, &p) in &self.probs {
            if p > best_p {
                best_p = p;
                best_k = k;
            }
        }
        best_k
    }

    pub fn total_variation(&self, other: &KHistogram) -> f64 {
        let keys: alloc::collections::BTreeSet<u32> = self
            .probs
            .keys()
            .chain(other.probs.keys())
            .copied()
            .collect();
        0.5 * keys
            .into_iter()
            .map(|k| (self.probability(k) - other.probability(k)).abs())
            .sum::<f64>()
    }
}

/// Minimum-cost assignment on a square i64 matrix (Hungarian algorithm
/// with potentials, O(k³)). Returns `perm` with row r matched to column
/// `perm[r]`.
fn min_cost_assignment(cost: &[Vec<i64>]) -> Vec<usize> {
    let n = cost.len();
    let inf = i64::MAX / 4;
    // 1-indexed with column 0 as the scanning sentinel
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut matched_row = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        matched_row[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[matched_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut perm = vec![0usize; n];
    for j in 1..=n {
        if matched_row[j] > 0 {
            perm[matched_row[j] - 1] = j - 1;
        }
    }
    perm
}

/// Group-label permutation of `sample` maximizing node agreement with
/// `reference`, via maximum-weight matching on the k×k confusion matrix.
pub fn align_partition(sample: &[u32], reference: &[u32], k: usize) -> Vec<u32> {
    debug_assert_eq!(sample.len(), reference.len());
    let mut confusion = vec![vec![0i64; k]; k];
    for (&s, &r) in sample.iter().zip(reference) {
        confusion[s as usize][r as usize] += 1;
    }
    for row in confusion.iter_mut() {
        for w in row.iter_mut() {
            *w = -*w;
        }
    }
    let perm = min_cost_assignment(&confusion);
    sample.iter().map(|&s| perm[s as usize] as u32).collect()
}

/// Row-normalized membership frequencies at the modal k, after aligning
/// every sample to the first sample recorded at that k.
///
/// Samples at other k are discarded; the marginal is conditional on k.
pub fn marginal_memberships(samples: &[AssignmentSample], k: usize) -> Option<Vec<Vec<f64>>> {
    let at_k: Vec<&AssignmentSample> = samples.iter().filter(|s| s.k == k).collect();
    let first = at_k.first()?;
    let n = first.g.len();
    let mut counts = vec![vec![0u64; k]; n];
    for sample in &at_k {
        let aligned = align_partition(&sample.g, &first.g, k);
        for (i, &r) in aligned.iter().enumerate() {
            counts[i][r as usize] += 1;
        }
    }
    let total = at_k.len() as f64;
    Some(
        counts
            .into_iter()
            .map(|row| row.into_iter().map(|c| c as f64 / total).collect())
            .collect(),
    )
}

/// Per-node argmax of the marginal rows; ties break toward the smaller
/// group label.
pub fn consensus_partition(marginals: &[Vec<f64>]) -> Vec<u32> {
    marginals
        .iter()
        .map(|row| {
            let mut best = 0usize;
            for (r, &p) in row.iter().enumerate() {
                if p > row[best] {
                    best = r;
                }
            }
            best as u32
        })
        .collect()
}
