//! `extremal`: extremal H-free subgraphs from the command line.
//!
//! Exit status: 0 on success, 1 on bad input, 2 when a budget ran out or a
//! verdict is unknown, 3 when `replay` finds a difference.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use extremal_core::formulas::FormulaId;
use extremal_core::Pattern;

use input::{Budget, GraphArg};

#[derive(Debug, Parser)]
#[command(name = "extremal", version, about = "Extremal H-free subgraphs maximizing clique and blow-up counts")]
struct Cli {
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a graph in graph6.
    Generate {
        graph: GraphArg,
        /// Print the edge list instead.
        #[arg(long)]
        edges: bool,
    },
    /// Count copies of a pattern.
    Count {
        #[arg(long)]
        graph: GraphArg,
        #[arg(long)]
        pattern: Pattern,
    },
    /// Does the graph contain a copy of another graph?
    Contains {
        #[arg(long)]
        graph: GraphArg,
        #[arg(long)]
        forbid: GraphArg,
    },
    /// Chromatic number, or a k-colorability test with --k.
    Color {
        #[arg(long)]
        graph: GraphArg,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = extremal_core::coloring::DEFAULT_COLOR_BUDGET)]
        color_budget: u64,
    },
    /// Best H-free spanning subgraph for the number of copies of a pattern.
    Solve {
        #[arg(long)]
        graph: GraphArg,
        #[arg(long)]
        pattern: Pattern,
        #[arg(long)]
        forbid: GraphArg,
        #[arg(long, value_enum, default_value = "exact")]
        mode: commands::ModeArg,
        /// List every optimum (exact mode only).
        #[arg(long)]
        all_optima: bool,
        #[command(flatten)]
        budget: Budget,
        /// Write the result as JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Best k-partite subgraph.
    Partite {
        #[arg(long)]
        graph: GraphArg,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "K2")]
        pattern: Pattern,
        #[arg(long, value_enum, default_value = "exact")]
        mode: commands::PartiteArg,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Remove low-degree vertices while the degree condition fails.
    Peel {
        #[arg(long)]
        graph: GraphArg,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "K2")]
        pattern: Pattern,
        /// Never peel below this many vertices.
        #[arg(long, default_value_t = 0)]
        floor: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Peel, repartition the core and re-insert the peeled vertices.
    Rebuild {
        #[arg(long)]
        graph: GraphArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        pattern: Pattern,
        #[arg(long)]
        forbid: GraphArg,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a closed-form prediction or bound.
    Formula {
        id: FormulaId,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        d: Option<String>,
    },
    /// Run an experiment and record the verdicts.
    Verify {
        #[command(subcommand)]
        experiment: commands::Experiment,
    },
    /// Colorability of optima on random graphs across minimum-degree fractions.
    Scan {
        #[arg(long)]
        forbid: GraphArg,
        #[arg(long, default_value = "K2")]
        pattern: Pattern,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Comma-separated degree fractions, e.g. 0,1/2,3/4,1.
        #[arg(long, value_delimiter = ',', required = true)]
        fractions: Vec<String>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long = "scan-seed", default_value_t = 0)]
        scan_seed: u64,
        #[command(flatten)]
        budget: Budget,
        /// Append the record to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run recorded experiments and compare everything but timings.
    Replay {
        records: PathBuf,
        /// Write the replayed records, without timings, to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(cli.command) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e
                .chain()
                .filter_map(|c| c.downcast_ref::<extremal_core::Error>())
                .any(|c| c.is_budget());
            ExitCode::from(if budget { 2 } else { 1 })
        }
    }
}
