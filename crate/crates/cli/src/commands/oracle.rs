use std::path::PathBuf;

use clap::Args;
use sbmk_core::likelihood::ModelFlavor;
use sbmk_core::oracle;

use super::{emit, read_graph, FormatArg};
use crate::output::{histogram_map, OracleOutput, SCHEMA_VERSION};

/// Exact P(k|A) by brute-force enumeration (tiny graphs only).
#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Input graph file.
    pub input: PathBuf,
    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
    /// Use the plain blockmodel instead of the degree-corrected one.
    #[arg(long)]
    pub no_degree_correction: bool,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl OracleArgs {
    pub fn execute(&self) -> anyhow::Result<()> {
        let graph = read_graph(&self.input, self.format)?;
        let flavor = if self.no_degree_correction {
            ModelFlavor::PLAIN
        } else {
            ModelFlavor::DEGREE_CORRECTED
        };
        let hist = oracle::exact_posterior_k(&graph, self.kmax, flavor)
            .map_err(|e| anyhow::anyhow!("enumeration refused: {e}"))?;
        let out = OracleOutput {
            schema_version: SCHEMA_VERSION,
            command: "oracle".into(),
            input: self.input.display().to_string(),
            k_max: self.kmax,
            degree_corrected: flavor.degree_corrected,
            posterior: histogram_map(&hist),
            map_k: hist.map_k(),
        };
        emit(
            self.output.as_ref(),
            &format!("{}\n", serde_json::to_string_pretty(&out)?),
        )
    }
}
