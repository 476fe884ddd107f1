//! Undirected multigraph storage with the blockmodel adjacency conventions.
//!
//! A self-loop of multiplicity c contributes 2c to its node's degree
//! (a_ii = 2 per loop) but counts as c edges in the total m, so the
//! degree-sum identity Σ d_i = 2m holds exactly.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// No nodes after construction.
    Empty,
    /// Edge endpoint out of the declared node range.
    NodeOutOfRange { node: u32, n: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::Empty => write!(f, "graph has no nodes"),
            GraphError::NodeOutOfRange { node, n } => {
                write!(f, "edge endpoint {node} out of range for {n} nodes")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// Immutable sparse undirected multigraph.
///
/// Nodes carry their original string labels; internal ids are dense
/// 0..n−1 in first-appearance order.
#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<String>,
    /// Per-node (neighbor, multiplicity), sorted by neighbor id; a
    /// self-loop appears once in its own node's list.
    adj: Vec<Vec<(u32, u32)>>,
    degrees: Vec<u64>,
    m: u64,
}

impl Graph {
    /// Builds from a multiset of endpoint pairs; repeated pairs accumulate
    /// multiplicity. Labels define n, so isolated nodes are allowed.
    pub fn from_edges(labels: Vec<String>, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let n = labels.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut half: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            for e in [u, v] {
                if e as usize >= n {
                    return Err(GraphError::NodeOutOfRange { node: e, n });
                }
            }
            if u == v {
                half[u as usize].push(v);
            } else {
                half[u as usize].push(v);
                half[v as usize].push(u);
            }
        }
        let mut adj: Vec<Vec<(u32, u32)>> = Vec::with_capacity(n);
        let mut degrees = vec![0u64; n];
        for (i, mut nbrs) in half.into_iter().enumerate() {
            nbrs.sort_unstable();
            let mut list: Vec<(u32, u32)> = Vec::new();
            for j in nbrs {
                match list.last_mut() {
                    Some((last, c)) if *last == j => *c += 1,
                    _ => list.push((j, 1)),
                }
            }
            for &(j, c) in &list {
                degrees[i] += if j as usize == i {
                    2 * c as u64
                } else {
                    c as u64
                };
            }
            adj.push(list);
        }
        let degree_sum: u64 = degrees.iter().sum();
        debug_assert_eq!(degree_sum % 2, 0);
        Ok(Self {
            labels,
            adj,
            degrees,
            m: degree_sum / 2,
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Total edge count m = ½ Σ d_i; self-loops count once, multiedges
    /// with multiplicity.
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Neighbors of i as (neighbor id, multiplicity), sorted by id.
    /// A self-loop at i appears once as (i, multiplicity).
    pub fn neighbors(&self, i: usize) -> &[(u32, u32)] {
        &self.adj[i]
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.adj[i]
            .binary_search_by_key(&(j as u32), |&(v, _)| v)
            .map(|pos| self.adj[i][pos].1)
            .unwrap_or(0)
    }

    /// Empirical edge probability p = 2m/n², the prior scale of the model.
    pub fn edge_density(&self) -> f64 {
        let n = self.n() as f64;
        2.0 * self.m as f64 / (n * n)
    }

    /// Canonical edge multiset: each unordered pair once, endpoints ordered,
    /// repeated per unit of multiplicity. Sorted lexicographically.
    pub fn edge_multiset(&self) -> Vec<(u32, u32)> {
        let mut edges = Vec::with_capacity(self.m as usize);
        for (i, list) in self.adj.iter().enumerate() {
            for &(j, c) in list {
                if j as usize >= i {
                    for _ in 0..c {
                        edges.push((i as u32, j));
                    }
                }
            }
        }
        edges
    }
}

/// Incremental construction with string labels interned to dense ids.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: BTreeMap<String, u32>,
    edges: Vec<(u32, u32)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interns a label, assigning the next dense id on first appearance.
    pub fn node(&mut self, label: &str) -> u32 {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len() as u32;
        self.labels.push(String::from(label));
        self.index.insert(String::from(label), id);
        id
    }

    pub fn edge(&mut self, a: &str, b: &str) {
        let u = self.node(a);
        let v = self.node(b);
        self.edges.push((u, v));
    }

    /// Declares nodes "0".."n-1" up front, e.g. from a "#nodes N" header,
    /// so trailing isolated nodes survive the edge list.
    pub fn declare_numeric_nodes(&mut self, n: usize) {
        let mut buf = itoa_buf();
        for i in 0..n {
            let label = fmt_usize(&mut buf, i);
            self.node(label);
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        Graph::from_edges(self.labels, &self.edges)
    }
}

fn itoa_buf() -> String {
    String::with_capacity(20)
}

fn fmt_usize(buf: &mut String, value: usize) -> &str {
    use core::fmt::Write;
    buf.clear();
    let _ = write!(buf, "{value}");
    buf
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn path_graph_degrees() {
        let g = Graph::from_edges(labels(&["1", "2", "3"]), &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(g.degrees(), &[1, 2, 1]);
    }

    #[test]
    fn duplicate_edge_accumulates_multiplicity() {
        let g = Graph::from_edges(labels(&["a", "b"]), &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.m(), 2);
        assert_eq!(g.multiplicity(0, 1), 2);
        assert_eq!(g.degrees(), &[2, 2]);
    }

    #[test]
    fn self_loop_counts_twice_in_degree() {
        let g = Graph::from_edges(labels(&["x"]), &[(0, 0)]).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.m(), 1);
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn edge_density_examples() {
        let g = Graph::from_edges(labels(&["a", "b"]), &[(0, 1)]).unwrap();
        assert_eq!(g.edge_density(), 0.5);
        let empty = Graph::from_edges(labels(&["a", "b", "c"]), &[]).unwrap();
        assert_eq!(empty.edge_density(), 0.0);
    }

    #[test]
    fn empty_graph_rejected() {
        assert!(matches!(
            Graph::from_edges(Vec::new(), &[]),
            Err(GraphError::Empty)
        ));
    }

    #[test]
    fn builder_interns_in_first_appearance_order() {
        let mut b = GraphBuilder::new();
        b.edge("carol", "alice");
        b.edge("alice", "bob");
        let g = b.build().unwrap();
        assert_eq!(g.label(0), "carol");
        assert_eq!(g.label(1), "alice");
        assert_eq!(g.label(2), "bob");
        assert_eq!(g.degrees(), &[1, 2, 1]);
    }

    #[test]
    fn declared_nodes_allow_isolates() {
        let mut b = GraphBuilder::new();
        b.declare_numeric_nodes(4);
        b.edge("0", "1");
        let g = b.build().unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.degree(3), 0);
    }

    #[test]
    fn degree_sum_is_twice_m() {
        let g = Graph::from_edges(
            labels(&["a", "b", "c", "d"]),
            &[(0, 1), (1, 2), (2, 2), (0, 1), (3, 0)],
        )
        .unwrap();
        assert_eq!(g.degrees().iter().sum::<u64>(), 2 * g.m());
    }
}
