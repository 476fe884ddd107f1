//! Log-space numerics shared by the likelihood, sampler, and oracle.

use alloc::vec::Vec;
use rand::Rng;

/// ln(n!) via the log-gamma function.
#[inline]
pub fn ln_factorial(n: u64) -> f64 {
    libm::lgamma((n + 1) as f64)
}

/// ln Γ(x).
#[inline]
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Precomputed ln(n!) table. Log-gamma dominates the sampler's per-step
/// cost; every factorial argument in the likelihood is bounded by
/// n + 2m, so one table per run covers the hot path. Entries are the
/// same `lgamma` values the direct evaluation would produce, and
/// arguments past the end fall back to `ln_factorial`, so results are
/// bit-identical with or without the table.
#[derive(Debug, Clone)]
pub struct LnFact {
    table: Vec<f64>,
}

impl LnFact {
    /// Table-free instance: every lookup falls back to `ln_factorial`.
    pub const EMPTY: LnFact = LnFact { table: Vec::new() };

    /// Tabulates ln(0!) ..= ln(max!).
    pub fn up_to(max: u64) -> Self {
        Self {
            table: (0..=max).map(ln_factorial).collect(),
        }
    }

    #[inline]
    pub fn ln_factorial(&self, n: u64) -> f64 {
        match self.table.get(n as usize) {
            Some(&v) => v,
            None => ln_factorial(n),
        }
    }
}

/// Max-shifted log(Σ exp(x_i)). Empty input yields −∞.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = xs.iter().map(|&x| libm::exp(x - max)).sum();
    max + libm::log(sum)
}

/// Streaming log-sum-exp accumulator, for sums too large to buffer.
#[derive(Clone, Copy, Debug)]
pub struct OnlineLogSumExp {
    max: f64,
    sum: f64,
}

impl OnlineLogSumExp {
    pub fn new() -> Self {
        Self {
            max: f64::NEG_INFINITY,
            sum: 0.0,
        }
    }

    pub fn add(&mut self, x: f64) {
        if x == f64::NEG_INFINITY {
            return;
        }
        if x > self.max {
            self.sum = self.sum * libm::exp(self.max - x) + 1.0;
            self.max = x;
        } else {
            self.sum += libm::exp(x - self.max);
        }
    }

    pub fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + libm::log(self.sum)
        }
    }
}

impl Default for OnlineLogSumExp {
    fn default() -> Self {
        Self::new()
    }
}

/// Draws an index with probability ∝ exp(log_w[i]), normalized by max shift.
pub fn sample_categorical_log<R: Rng>(log_w: &[f64], rng: &mut R) -> usize {
    debug_assert!(!log_w.is_empty());
    let max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = log_w.iter().map(|&x| libm::exp(x - max)).collect();
    let total: f64 = weights.iter().sum();
    let mut u = rng.gen::<f64>() * total;
    for (i, w) in weights.iter().enumerate() {
        u -= w;
        if u <= 0.0 {
            return i;
        }
    }
    log_w.len() - 1
}

/// SplitMix64 step, used to derive per-run RNG seeds from a base seed.
/// The mapping is fixed: changing it silently changes every seeded result.
pub fn split_mix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
