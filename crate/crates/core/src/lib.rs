//! Bayesian estimation of the number of communities in a network.
//!
//! The target distribution is the collapsed posterior P(k, g | A) of the
//! (optionally degree-corrected) Poisson stochastic block model, with the
//! continuous parameters integrated out analytically. The joint chain over
//! group assignments and group count is sampled with heat-bath node updates
//! and k ± 1 moves; the histogram of recorded k values estimates P(k | A).
//!
//! The crate is `no_std` (with `alloc`) and carries no IO; parsing, file
//! formats, and the CLI live in the companion `sbmk` crate.

#![no_std]

extern crate alloc;

pub mod graph;
pub mod likelihood;
pub mod math;
pub mod oracle;
pub mod partition;
pub mod posterior;
pub mod sampler;
pub mod synth;

pub use graph::Graph;
pub use likelihood::ModelFlavor;
pub use partition::PartitionState;
pub use posterior::KHistogram;
pub use sampler::{KMoveRule, RunResult, SamplerConfig};
