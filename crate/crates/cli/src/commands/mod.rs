//! CLI subcommands.

mod benchmark;
mod estimate;
mod generate;
mod oracle;

pub use benchmark::{DetectabilityArgs, RecoveryArgs};
pub use estimate::EstimateArgs;
pub use generate::GenerateArgs;
pub use oracle::OracleArgs;

use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::ValueEnum;
use sbmk_core::Graph;

use crate::formats::{self, GraphFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Edgelist,
    Gml,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KShrinkArg {
    TopEmpty,
    AnyEmpty,
}

impl From<KShrinkArg> for sbmk_core::KMoveRule {
    fn from(arg: KShrinkArg) -> Self {
        match arg {
            KShrinkArg::TopEmpty => Self::TopEmpty,
            KShrinkArg::AnyEmpty => Self::AnyEmpty,
        }
    }
}

/// Reads a graph, picking the format from the flag or the file extension.
pub fn read_graph(path: &Path, format: Option<FormatArg>) -> anyhow::Result<Graph> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read input file {}", path.display()))?;
    let format = match format {
        Some(FormatArg::Edgelist) => GraphFormat::EdgeList,
        Some(FormatArg::Gml) => GraphFormat::Gml,
        None => GraphFormat::from_path(path),
    };
    formats::parse_graph(&text, format).with_context(|| format!("cannot parse {}", path.display()))
}

/// Writes to the path when given, stdout otherwise.
pub fn emit(output: Option<&PathBuf>, content: &str) -> anyhow::Result<()> {
    match output {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("cannot write output file {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
