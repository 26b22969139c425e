mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use commands::{EnumOutput, Limits};
use report::{Exit, Report};
use semiring_lab::enumerate::MAX_ENUM_ORDER;

#[derive(Parser)]
#[command(name = "semiring-lab", version, about = "Workbench for finite idempotent semirings")]
struct Cli {
    /// Largest order any enumeration may reach.
    #[arg(long, global = true, env = "SEMIRING_LAB_MAX_ORDER", default_value_t = MAX_ENUM_ORDER)]
    order_cap: usize,
    /// Wall-clock budget for enumeration, in seconds.
    #[arg(long, global = true, env = "SEMIRING_LAB_BUDGET_SECS", default_value_t = 1800)]
    budget_secs: u64,
    /// Search-node budget for enumeration.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget_nodes: u64,
    /// Include wall-clock timing in the JSON report (breaks byte-stability).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Green's relations, quasi-orders, σ, σ*, η and variety memberships of one semiring.
    Analyze { file: PathBuf },
    /// Check theorems on every idempotent semiring up to a given order.
    Verify {
        /// Theorem id, comma-separated ids, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_order: usize,
        /// Worker threads (default: all cores). Output does not depend on it.
        #[arg(long)]
        workers: Option<usize>,
        /// One representative per isomorphism class instead of all labeled tables.
        #[arg(long)]
        iso: bool,
    },
    /// Stream idempotent semirings of order n, `%%`-separated.
    Enumerate {
        #[arg(short = 'n', long)]
        order: usize,
        #[arg(long)]
        iso: bool,
        /// Variety name or Malcev product such as `LZ_dot o D`.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        count_only: bool,
        /// Write one file per semiring instead of streaming to stdout.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Spined-product decomposition of a D_dot member.
    Decompose {
        file: PathBuf,
        /// Also write s1.txt, s2.txt and d.txt here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Tabulate when σ is transitive and when it is η.
    ExploreSigma {
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        iso: bool,
    },
}

fn emit(report: &Report) -> ExitCode {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", report.to_json());
    for f in &report.failures {
        eprintln!("{}: {}", f.kind, f.message);
    }
    ExitCode::from(report.exit as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = |workers: Option<usize>| Limits {
        order_cap: cli.order_cap,
        max_nodes: cli.budget_nodes,
        budget: Duration::from_secs(cli.budget_secs),
        workers,
        timing: cli.timing,
    };
    match &cli.command {
        Command::Analyze { file } => emit(&commands::analyze(file, cli.timing)),
        Command::Verify { suite, max_order, workers, iso } => {
            emit(&commands::verify(suite, *max_order, *iso, &limits(*workers)))
        }
        Command::Decompose { file, out_dir } => emit(&commands::decompose(file, out_dir.as_deref(), cli.timing)),
        Command::ExploreSigma { max_order, workers, iso } => {
            emit(&commands::explore_sigma(*max_order, *iso, &limits(*workers)))
        }
        Command::Enumerate { order, iso, filter, count_only, out_dir } => {
            match commands::enumerate(*order, *iso, filter.as_deref(), out_dir.as_deref(), *count_only, &limits(None)) {
                Ok(EnumOutput::Count(n)) => println!("{n}"),
                Ok(EnumOutput::Stream(s)) => print!("{s}"),
                Ok(EnumOutput::Directory(n)) => eprintln!("wrote {n} files"),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(Exit::for_error(&e) as u8);
                }
            }
            ExitCode::SUCCESS
        }
    }
}
