//! `tripack`: packings of three edge-disjoint copies of a 2-factor.
//!
//! Exit codes: 0 success, 1 failed verification, 2 parse or I/O error,
//! 3 no packing exists.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;
use tripack_core::circulant::{hamiltonian_decomposition_with_budget, CirculantSpec};
use tripack_core::construct::{distinct_packings_with_budget, packing_of, PackingOutcome};
use tripack_core::enumerate::{
    enumerate_unions, DEFAULT_ENUMERATION_BUDGET, DEFAULT_ENUMERATION_MAX_N,
};
use tripack_core::graph::{to_dot, validate_packing, TriplePacking, TwoFactorShape};

#[derive(Parser)]
#[command(name = "tripack", version, about = "Packings of three copies of a 2-factor into K_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Edgelist,
}

#[derive(Args)]
struct BudgetArg {
    /// Time budget for searches, in seconds.
    #[arg(long, default_value_t = 300)]
    budget_seconds: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Find one packing of the given shape.
    Pack {
        /// Cycle lengths, comma separated, each >= 3.
        #[arg(long)]
        shape: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Validate a packing file (JSON or edge-list).
    Verify { file: PathBuf },
    /// Classify a shape: no packing, unique, or a certified distinct pair.
    Distinct {
        #[arg(long)]
        shape: String,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Exhaustively enumerate union-isomorphism classes of packings.
    Enumerate {
        #[arg(long)]
        shape: String,
        /// Largest order accepted for full enumeration.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_MAX_N)]
        max_n: usize,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Decompose a circulant C_n(a,b,c) into three Hamiltonian cycles.
    Circulant {
        #[arg(long)]
        n: usize,
        /// Three generators, comma separated.
        #[arg(long)]
        gens: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Convert a packing file between formats.
    Export {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
    },
}

fn main() -> ExitCode {
    // TRIPACK_THREADS caps worker threads; all current operations are
    // deterministic and run on a single worker, so any cap >= 1 is honored.
    if let Ok(raw) = std::env::var("TRIPACK_THREADS") {
        match raw.parse::<usize>() {
            Ok(t) if t >= 1 => {}
            _ => {
                eprintln!("TRIPACK_THREADS must be a positive integer, got {raw:?}");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Pack { shape, format, budget } => {
            let shape = TwoFactorShape::parse(&shape).map_err(|e| e.to_string())?;
            match packing_of(&shape, Duration::from_secs(budget.budget_seconds)) {
                Ok(p) => {
                    print_packing(&p, format);
                    Ok(ExitCode::SUCCESS)
                }
                Err(tripack_core::Error::Incomplete(s, reason)) if reason.contains("no packing") => {
                    println!("no packing of three copies of {s} exists");
                    Ok(ExitCode::from(3))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Verify { file } => {
            let p = read_packing(&file)?;
            let report = validate_packing(&p);
            if report.is_ok() {
                println!("valid packing of {} on {} vertices", p.shape, p.n);
                Ok(ExitCode::SUCCESS)
            } else {
                println!("invalid packing:");
                print!("{report}");
                Ok(ExitCode::from(1))
            }
        }
        Command::Distinct { shape, budget } => {
            let shape = TwoFactorShape::parse(&shape).map_err(|e| e.to_string())?;
            let outcome =
                distinct_packings_with_budget(&shape, Duration::from_secs(budget.budget_seconds))
                    .map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string(&outcome).expect("outcome serializes"));
            match outcome {
                PackingOutcome::NonExistent { .. } => Ok(ExitCode::from(3)),
                _ => Ok(ExitCode::SUCCESS),
            }
        }
        Command::Enumerate { shape, max_n, budget } => {
            let shape = TwoFactorShape::parse(&shape).map_err(|e| e.to_string())?;
            let budget = if budget.budget_seconds == 300 {
                DEFAULT_ENUMERATION_BUDGET
            } else {
                Duration::from_secs(budget.budget_seconds)
            };
            let result = enumerate_unions(&shape, max_n, budget).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string(&result).expect("result serializes"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Circulant { n, gens, format, budget } => {
            let parts: Vec<usize> = gens
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|e| format!("bad generator {s:?}: {e}")))
                .collect::<Result<_, _>>()?;
            if parts.len() != 3 {
                return Err(format!("expected three generators, got {}", parts.len()));
            }
            let spec =
                CirculantSpec::new(n, (parts[0], parts[1], parts[2])).map_err(|e| e.to_string())?;
            let p =
                hamiltonian_decomposition_with_budget(&spec, Duration::from_secs(budget.budget_seconds))
                    .map_err(|e| e.to_string())?;
            print_packing(&p, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Export { file, format } => {
            let p = read_packing(&file)?;
            print_packing(&p, format);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_packing(file: &PathBuf) -> Result<TriplePacking, String> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    let trimmed = text.trim_start();
    let parsed = if trimmed.starts_with('{') {
        TriplePacking::from_json(&text)
    } else {
        TriplePacking::from_edge_list(&text)
    };
    parsed.map_err(|e| format!("{}: {e}", file.display()))
}

fn print_packing(p: &TriplePacking, format: Format) {
    match format {
        Format::Json => println!("{}", p.to_json()),
        Format::Dot => print!("{}", to_dot(p)),
        Format::Edgelist => print!("{}", p.to_edge_list()),
    }
}
