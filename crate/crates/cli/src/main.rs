use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod analyze;
mod generate;
mod io;
mod manifest;
mod simulate;

use manifest::Manifest;

/// Two-step dungeon generation: create layouts, furnish them, play them
/// with MCTS personas and analyze the results.
#[derive(Parser)]
#[command(name = "twostep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate levels for one or all creator-furnisher combinations.
    Generate(Opts),
    /// Play generated levels with the personas and write trace rows.
    Simulate(Opts),
    /// Compute metrics, summaries, t-tests and histograms.
    Analyze(Opts),
}

/// Every option may also come from `--config`; flags win over the file.
#[derive(Args, Debug, Default, Clone)]
pub struct Opts {
    /// Flat `key = value` manifest file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Layout creator: cc, cac or ac.
    #[arg(long)]
    creator: Option<String>,
    /// Furnisher: cf, caf or af.
    #[arg(long)]
    furnisher: Option<String>,
    /// Run all nine creator-furnisher combinations.
    #[arg(long)]
    all_pairs: bool,
    /// Levels per combination (generate) or first levels played (simulate).
    #[arg(long)]
    count: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (generate, analyze) or trace file (simulate).
    #[arg(long)]
    out: Option<PathBuf>,
    /// runner, mk, tc or all.
    #[arg(long)]
    persona: Option<String>,
    /// MCTS iterations per hero move.
    #[arg(long)]
    mcts_iters: Option<u32>,
    /// Rule file; defaults are used when absent.
    #[arg(long)]
    rules: Option<PathBuf>,
    /// Directory written by `generate`.
    #[arg(long)]
    levels: Option<PathBuf>,
    /// Trace file written by `simulate` (analyze only).
    #[arg(long)]
    traces: Option<PathBuf>,
    /// Let distance metrics use the portal shortcut.
    #[arg(long)]
    use_portals: bool,
    /// Histogram bins per axis.
    #[arg(long)]
    bins: Option<usize>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Generate(o) => generate::run(&Manifest::resolve(&o)?),
        Command::Simulate(o) => simulate::run(&Manifest::resolve(&o)?),
        Command::Analyze(o) => analyze::run(&Manifest::resolve(&o)?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
