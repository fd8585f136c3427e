//! `netdisrupt`: ingest covert-network edge lists, generate layouts, and
//! run removal baselines, genetic searches, sweeps and reports.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand};
use netdisrupt::{Error, ErrorKind};

use args::{
    BaselineArgs, IngestArgs, LayoutArgs, OptimizeArgs, ParetoArgs, ReportArgs, SweepArgs,
};

#[derive(Debug, Parser)]
#[command(name = "netdisrupt", version, about = "Spatially aware disruption of covert networks")]
struct Cli {
    /// Worker threads (default: all available cores).
    #[arg(long, global = true, env = "NETDISRUPT_WORKERS")]
    workers: Option<usize>,

    /// More log output; repeat for debug level.
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse an edge list, print its size and optionally save the canonical graph.
    Ingest(IngestArgs),
    /// Generate node and headquarters coordinates for a graph.
    Layout(LayoutArgs),
    /// Run a centrality-ranked removal baseline or score an explicit list.
    Baseline(BaselineArgs),
    /// Run one genetic search at a fixed budget.
    Optimize(OptimizeArgs),
    /// Run strategies over a range of budgets, resuming earlier progress.
    Sweep(SweepArgs),
    /// Extract non-dominated records and node selection histograms.
    Pareto(ParetoArgs),
    /// Compare strategies at one budget.
    Report(ReportArgs),
}

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Config => 2,
        ErrorKind::Input => 3,
        ErrorKind::Runtime => 4,
    }
}

fn run(cli: Cli) -> netdisrupt::Result<()> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(Error::Config("--workers must be at least 1".into()));
        }
        pool = pool.num_threads(w);
    }
    pool.build_global()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;

    match cli.command {
        Command::Ingest(a) => commands::ingest(a),
        Command::Layout(a) => commands::layout(a),
        Command::Baseline(a) => commands::baseline(a),
        Command::Optimize(a) => commands::optimize(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Pareto(a) => commands::pareto(a),
        Command::Report(a) => commands::report(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();

    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
