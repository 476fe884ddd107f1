use clap::{Parser, Subcommand};
use sbmk::commands::{DetectabilityArgs, EstimateArgs, GenerateArgs, OracleArgs, RecoveryArgs};

/// Bayesian estimation of the number of communities in a network.
#[derive(Parser)]
#[command(name = "sbmk", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample P(k|A) for a network and report the most probable k.
    Estimate(EstimateArgs),
    /// Generate a planted-partition benchmark network.
    Generate(GenerateArgs),
    /// Recovery benchmark across planted group counts (CSV).
    BenchmarkRecovery(RecoveryArgs),
    /// Detectability benchmark across community strengths (CSV).
    BenchmarkDetectability(DetectabilityArgs),
    /// Exact posterior by enumeration, for tiny graphs.
    Oracle(OracleArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Estimate(args) => args.execute(),
        Command::Generate(args) => args.execute(),
        Command::BenchmarkRecovery(args) => args.execute(),
        Command::BenchmarkDetectability(args) => args.execute(),
        Command::Oracle(args) => args.execute(),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(2);
    }
}
