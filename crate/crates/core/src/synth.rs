//! Poisson blockmodel network generation and the planted-partition
//! benchmark family, plus the detectability-threshold marker.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SbmParamError {
    EmptyGroups,
    NegativeRate,
    OmegaShape,
}

impl fmt::Display for SbmParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SbmParamError::EmptyGroups => write!(f, "group sizes must be positive"),
            SbmParamError::NegativeRate => write!(f, "omega entries must be non-negative"),
            SbmParamError::OmegaShape => write!(f, "omega must be a symmetric k x k matrix"),
        }
    }
}

impl core::error::Error for SbmParamError {}

/// Generator parameters: group sizes and the mean-edge-count matrix ω.
#[derive(Debug, Clone, PartialEq)]
pub struct SbmParams {
    pub sizes: Vec<u64>,
    pub omega: Vec<Vec<f64>>,
}

impl SbmParams {
    pub fn new(sizes: Vec<u64>, omega: Vec<Vec<f64>>) -> Result<Self, SbmParamError> {
        let k = sizes.len();
        if k == 0 || sizes.contains(&0) {
            return Err(SbmParamError::EmptyGroups);
        }
        if omega.len() != k || omega.iter().any(|row| row.len() != k) {
            return Err(SbmParamError::OmegaShape);
        }
        for (r, row) in omega.iter().enumerate() {
            for (s, &w) in row.iter().enumerate() {
                if w < 0.0 || !w.is_finite() {
                    return Err(SbmParamError::NegativeRate);
                }
                if (w - omega[s][r]).abs() > 1e-12 {
                    return Err(SbmParamError::OmegaShape);
                }
            }
        }
        Ok(Self { sizes, omega })
    }

    /// Planted partition: ω_rr = c_in/n, ω_rs = c_out/n with n = k·group_size.
    pub fn planted_partition(
        k: usize,
        group_size: u64,
        c_in: f64,
        c_out: f64,
    ) -> Result<Self, SbmParamError> {
        let n = (k as u64 * group_size) as f64;
        let omega: Vec<Vec<f64>> = (0..k)
            .map(|r| {
                (0..k)
                    .map(|s| if r == s { c_in / n } else { c_out / n })
                    .collect()
            })
            .collect();
        Self::new(alloc::vec![group_size; k], omega)
    }

    pub fn n(&self) -> u64 {
        self.sizes.iter().sum()
    }

    /// Ensemble mean of the total edge count m.
    pub fn expected_edges(&self) -> f64 {
        let k = self.sizes.len();
        let mut total = 0.0;
        for r in 0..k {
            total += 0.5 * self.omega[r][r] * (self.sizes[r] * self.sizes[r]) as f64;
            for s in 0..r {
                total += self.omega[r][s] * (self.sizes[r] * self.sizes[s]) as f64;
            }
        }
        total
    }
}

fn draw_poisson<R: Rng>(rng: &mut R, mean: f64) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    let dist = Poisson::new(mean).expect("mean validated positive and finite");
    dist.sample(rng) as u64
}

/// Samples a network from the Poisson blockmodel, deterministic given the
/// seed. Returns the graph together with the planted assignment.
///
/// Edges are drawn block pair by block pair: the total count for a pair of
/// groups is Poisson with the summed mean, and each edge then lands on
/// endpoints chosen uniformly within the groups. This is distributionally
/// identical to per-pair Poisson draws (with the diagonal mean ω_rr·n_r²/2
/// covering both in-group pairs and the ω_rr/2 self-loops) but runs in
/// O(m + k²) instead of O(n²).
pub fn generate_sbm(params: &SbmParams, seed: u64) -> (Graph, Vec<u32>) {
    let k = params.sizes.len();
    let n = params.n() as usize;
    let mut offsets = Vec::with_capacity(k + 1);
    let mut acc = 0u64;
    for &s in &params.sizes {
        offsets.push(acc);
        acc += s;
    }
    offsets.push(acc);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for r in 0..k {
        let nr = params.sizes[r];
        let count = draw_poisson(&mut rng, 0.5 * params.omega[r][r] * (nr * nr) as f64);
        for _ in 0..count {
            let u = offsets[r] + rng.gen_range(0..nr);
            let v = offsets[r] + rng.gen_range(0..nr);
            edges.push((u as u32, v as u32));
        }
        for s in 0..r {
            let ns = params.sizes[s];
            let count = draw_poisson(&mut rng, params.omega[r][s] * (nr * ns) as f64);
            for _ in 0..count {
                let u = offsets[r] + rng.gen_range(0..nr);
                let v = offsets[s] + rng.gen_range(0..ns);
                edges.push((u as u32, v as u32));
            }
        }
    }

    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let graph = Graph::from_edges(labels, &edges).expect("generated nodes are non-empty");
    let mut assignment = Vec::with_capacity(n);
    for (r, &size) in params.sizes.iter().enumerate() {
        assignment.extend(core::iter::repeat_n(r as u32, size as usize));
    }
    (graph, assignment)
}

/// Convenience wrapper for the planted-partition benchmark.
pub fn planted_partition(
    k: usize,
    group_size: u64,
    c_in: f64,
    c_out: f64,
    seed: u64,
) -> (Graph, Vec<u32>) {
    let params = SbmParams::planted_partition(k, group_size, c_in, c_out)
        .expect("planted-partition parameters are well-formed");
    generate_sbm(&params, seed)
}

/// Detectability threshold marker: communities are provably undetectable
/// when c_in − c_out < k·√(mean degree).
pub fn detectability_threshold(k: usize, mean_degree: f64) -> f64 {
    k as f64 * libm::sqrt(mean_degree)
}
