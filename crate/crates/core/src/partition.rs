//! Joint state (k, g) with the sufficient statistics n_r, κ_r, m_rs kept
//! consistent under single-node moves and k ± 1 changes.
//!
//! Group labels are dense 0..k−1 and empty groups are legal states; they
//! carry posterior weight and must not be pruned.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionError {
    InvalidAssignment {
        node: usize,
        group: u32,
        k: usize,
    },
    /// Shrink proposed while every group is occupied (or k = 1).
    InfeasibleShrink,
    KMaxReached,
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionError::InvalidAssignment { node, group, k } => {
                write!(f, "node {node} assigned to group {group}, but k = {k}")
            }
            PartitionError::InfeasibleShrink => write!(f, "no empty group to remove"),
            PartitionError::KMaxReached => write!(f, "k is already at its maximum"),
        }
    }
}

impl core::error::Error for PartitionError {}

/// Current partition plus cached block statistics.
///
/// `m_rs` is stored as a dense lower triangle; the diagonal counts each
/// in-group edge (and each self-loop) once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionState {
    k: usize,
    g: Vec<u32>,
    n_r: Vec<u64>,
    kappa: Vec<u64>,
    m_tri: Vec<u64>,
}

#[inline]
fn tri_index(r: usize, s: usize) -> usize {
    let (hi, lo) = if r >= s { (r, s) } else { (s, r) };
    hi * (hi + 1) / 2 + lo
}

impl PartitionState {
    /// Computes all statistics from scratch for the given assignment.
    pub fn build(graph: &Graph, g: Vec<u32>, k: usize) -> Result<Self, PartitionError> {
        assert_eq!(g.len(), graph.n());
        assert!(k >= 1);
        for (node, &group) in g.iter().enumerate() {
            if group as usize >= k {
                return Err(PartitionError::InvalidAssignment { node, group, k });
            }
        }
        let mut n_r = vec![0u64; k];
        let mut kappa = vec![0u64; k];
        let mut m_tri = vec![0u64; k * (k + 1) / 2];
        for i in 0..graph.n() {
            let r = g[i] as usize;
            n_r[r] += 1;
            kappa[r] += graph.degree(i);
            for &(j, c) in graph.neighbors(i) {
                let j = j as usize;
                // each unordered pair once; self-loops live only in their
                // own node's list so j == i is hit exactly once per loop
                if j >= i {
                    m_tri[tri_index(r, g[j] as usize)] += c as u64;
                }
            }
        }
        Ok(Self {
            k,
            g,
            n_r,
            kappa,
            m_tri,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.g.len()
    }

    pub fn assignment(&self) -> &[u32] {
        &self.g
    }

    pub fn group_of(&self, i: usize) -> usize {
        self.g[i] as usize
    }

    pub fn group_sizes(&self) -> &[u64] {
        &self.n_r
    }

    pub fn degree_sums(&self) -> &[u64] {
        &self.kappa
    }

    /// m_rs: edges between groups r and s, or within r when r = s.
    pub fn edges_between(&self, r: usize, s: usize) -> u64 {
        self.m_tri[tri_index(r, s)]
    }

    pub fn non_empty_groups(&self) -> usize {
        self.n_r.iter().filter(|&&c| c > 0).count()
    }

    /// Edge endpoints from node i into each group (multiplicity counted,
    /// self-loops excluded) plus the self-loop count at i.
    pub fn block_neighbor_counts(&self, graph: &Graph, i: usize) -> (Vec<u64>, u64) {
        let mut counts = vec![0u64; self.k];
        let mut loops = 0u64;
        for &(j, c) in graph.neighbors(i) {
            if j as usize == i {
                loops += c as u64;
            } else {
                counts[self.g[j as usize] as usize] += c as u64;
            }
        }
        (counts, loops)
    }

    #[inline]
    fn add_m(&mut self, r: usize, s: usize, delta: i64) {
        let slot = &mut self.m_tri[tri_index(r, s)];
        *slot = (*slot as i64 + delta) as u64;
    }

    /// Reassigns node i to `target`, updating all statistics in
    /// O(k + degree(i)). Moving to the current group is a no-op.
    pub fn move_node(&mut self, graph: &Graph, i: usize, target: usize) {
        debug_assert!(target < self.k);
        let source = self.g[i] as usize;
        if source == target {
            return;
        }
        let (counts, loops) = self.block_neighbor_counts(graph, i);
        self.apply_move(graph, i, target, &counts, loops);
    }

    /// Same as `move_node` with precomputed block counts for node i.
    pub(crate) fn apply_move(
        &mut self,
        graph: &Graph,
        i: usize,
        target: usize,
        counts: &[u64],
        loops: u64,
    ) {
        let source = self.g[i] as usize;
        if source == target {
            return;
        }
        let d = graph.degree(i);
        self.n_r[source] -= 1;
        self.n_r[target] += 1;
        self.kappa[source] -= d;
        self.kappa[target] += d;
        for (t, &e) in counts.iter().enumerate() {
            if e == 0 || t == source || t == target {
                continue;
            }
            self.add_m(source, t, -(e as i64));
            self.add_m(target, t, e as i64);
        }
        let e_src = counts[source] as i64;
        let e_tgt = counts[target] as i64;
        self.add_m(source, source, -e_src - loops as i64);
        self.add_m(target, target, e_tgt + loops as i64);
        self.add_m(source, target, e_src - e_tgt);
        self.g[i] = target as u32;
    }

    /// k → k + 1: appends a new empty group.
    pub fn grow(&mut self) {
        self.k += 1;
        self.n_r.push(0);
        self.kappa.push(0);
        self.m_tri.extend(core::iter::repeat_n(0, self.k));
    }

    /// k → k − 1: drops the highest label. If that group is occupied its
    /// label is first swapped with the lowest-labeled empty group, which
    /// leaves the posterior weight unchanged by permutation invariance.
    pub fn shrink(&mut self) -> Result<(), PartitionError> {
        if self.k == 1 || self.non_empty_groups() > self.k - 1 {
            return Err(PartitionError::InfeasibleShrink);
        }
        let last = self.k - 1;
        if self.n_r[last] != 0 {
            let empty = self
                .n_r
                .iter()
                .position(|&c| c == 0)
                .expect("feasibility checked above");
            self.swap_groups(empty, last);
        }
        debug_assert_eq!(self.n_r[last], 0);
        debug_assert_eq!(self.kappa[last], 0);
        self.k = last;
        self.n_r.pop();
        self.kappa.pop();
        self.m_tri.truncate(self.k * (self.k + 1) / 2);
        Ok(())
    }

    /// Exchanges the labels of groups a and b.
    pub fn swap_groups(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.n_r.swap(a, b);
        self.kappa.swap(a, b);
        for t in 0..self.k {
            if t == a || t == b {
                continue;
            }
            self.m_tri.swap(tri_index(a, t), tri_index(b, t));
        }
        self.m_tri.swap(tri_index(a, a), tri_index(b, b));
        for g in self.g.iter_mut() {
            if *g as usize == a {
                *g = b as u32;
            } else if *g as usize == b {
                *g = a as u32;
            }
        }
    }
}
