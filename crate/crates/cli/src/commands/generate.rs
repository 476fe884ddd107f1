use std::path::PathBuf;

use anyhow::Context;
use clap::Args;
use sbmk_core::synth;

use crate::formats;
use crate::output::{GenerateOutput, SCHEMA_VERSION};

/// Generate a planted-partition benchmark network.
#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Number of planted groups.
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[arg(long, default_value_t = 250)]
    pub group_size: u64,
    /// In-group rate c_in (ω_rr = c_in/n).
    #[arg(long)]
    pub c_in: f64,
    /// Between-group rate c_out (ω_rs = c_out/n).
    #[arg(long)]
    pub c_out: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edge-list output path; the planted assignment goes to
    /// "<output>.planted".
    #[arg(long)]
    pub output: PathBuf,
}

impl GenerateArgs {
    pub fn execute(&self) -> anyhow::Result<()> {
        anyhow::ensure!(self.k >= 1, "k must be at least 1");
        anyhow::ensure!(self.group_size >= 1, "group size must be at least 1");
        anyhow::ensure!(
            self.c_in >= 0.0 && self.c_out >= 0.0,
            "rates must be non-negative"
        );
        let (graph, planted) =
            synth::planted_partition(self.k, self.group_size, self.c_in, self.c_out, self.seed);
        let assignment_path = PathBuf::from(format!("{}.planted", self.output.display()));
        std::fs::write(&self.output, formats::write_edge_list(&graph))
            .with_context(|| format!("cannot write {}", self.output.display()))?;
        std::fs::write(
            &assignment_path,
            formats::write_assignment(&graph, &planted),
        )
        .with_context(|| format!("cannot write {}", assignment_path.display()))?;
        let meta = GenerateOutput {
            schema_version: SCHEMA_VERSION,
            command: "generate".into(),
            k: self.k,
            group_size: self.group_size,
            c_in: self.c_in,
            c_out: self.c_out,
            seed: self.seed,
            n: graph.n(),
            m: graph.m(),
            graph_path: self.output.display().to_string(),
            assignment_path: assignment_path.display().to_string(),
        };
        println!("{}", serde_json::to_string_pretty(&meta)?);
        Ok(())
    }
}
