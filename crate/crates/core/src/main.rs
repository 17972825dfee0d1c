use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use costas::bench::{bench_compare, BenchError};
use costas::io::{self, FormatError};
use costas::reconstruct::reconstruct_ucm_with;
use costas::search::{enumerate_costas_with, SearchConfig};
use costas::ucm::{build_ucfm, build_ucm_from_arrays, build_ucm_with, verify_theorems};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_DATA: u8 = 3;

#[derive(Parser)]
#[command(
    name = "costas",
    version,
    about = "Costas array enumeration and universal Costas matrices"
)]
struct Cli {
    /// Worker threads for searches outside `bench`; enables parallel search.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Largest order any search will accept.
    #[arg(long, global = true, default_value_t = costas::search::DEFAULT_ORDER_CAP)]
    order_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List Costas arrays of one order, lexicographically.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Restrict to arrays starting with this value.
        #[arg(long)]
        first: Option<usize>,
        /// Write an arrays file instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the canonical universal Costas matrix of an order.
    Ucm {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the frequency matrix of an order or of an arrays file.
    Ucfm {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rebuild the matrix from a frequency-matrix CSV.
    Reconstruct {
        #[arg(long)]
        ucfm: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the structural theorems; exits 1 if any check fails.
    Verify {
        #[command(flatten)]
        source: UcmSource,
    },
    /// Render a frequency-matrix CSV as a PGM heatmap.
    Heatmap {
        #[arg(long)]
        ucfm: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time reconstruction against symmetry-reduced enumeration.
    Bench {
        #[arg(long)]
        min: usize,
        #[arg(long)]
        max: usize,
        /// Timed runs per order; default 10 below order 13, 3 from 13 on.
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long)]
    order: Option<usize>,
    /// Arrays file; every line must be a Costas array.
    #[arg(long)]
    arrays: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct UcmSource {
    #[arg(long)]
    order: Option<usize>,
    /// Arrays file, e.g. the output of `ucm`.
    #[arg(long)]
    ucm: Option<PathBuf>,
}

/// Failure with the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

fn data_error(err: impl Display) -> Failure {
    Failure {
        code: EXIT_DATA,
        message: err.to_string(),
    }
}

impl From<FormatError> for Failure {
    fn from(err: FormatError) -> Self {
        data_error(err)
    }
}

impl From<BenchError> for Failure {
    fn from(err: BenchError) -> Self {
        data_error(err)
    }
}

fn load_ucm(
    order: Option<usize>,
    path: Option<&Path>,
    config: &SearchConfig,
) -> Result<costas::UniversalCostasMatrix, Failure> {
    match (order, path) {
        (Some(n), _) => build_ucm_with(n, config).map_err(data_error),
        (None, Some(path)) => {
            let arrays = io::read_arrays(path, true)?;
            build_ucm_from_arrays(arrays).map_err(data_error)
        }
        (None, None) => unreachable!("clap requires one source"),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut config = SearchConfig {
        order_cap: cli.order_cap,
        ..SearchConfig::default()
    };
    let parallel = cli.threads.is_some_and(|t| t > 1);
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(data_error)?;
    }
    if parallel && !matches!(cli.command, Command::Bench { .. }) {
        config.parallel = true;
    }

    match cli.command {
        Command::Enumerate { order, first, out } => {
            let result = enumerate_costas_with(order, first, &config).map_err(data_error)?;
            match out {
                Some(path) => io::write_arrays(&result.arrays, &path)?,
                None => print!("{}", io::format_arrays(&result.arrays)),
            }
            log::info!("{} arrays, {} nodes", result.count(), result.nodes);
        }
        Command::Ucm { order, out } => {
            let ucm = build_ucm_with(order, &config).map_err(data_error)?;
            io::write_arrays(ucm.rows(), &out)?;
        }
        Command::Ucfm { source, out } => {
            let ucm = load_ucm(source.order, source.arrays.as_deref(), &config)?;
            io::write_ucfm(&build_ucfm(&ucm), &out)?;
        }
        Command::Reconstruct { ucfm, out } => {
            let f = io::read_ucfm(&ucfm)?;
            let (ucm, stats) = reconstruct_ucm_with(&f, &config).map_err(data_error)?;
            io::write_arrays(ucm.rows(), &out)?;
            log::info!(
                "{} rows, {} nodes, {} block(s) searched",
                ucm.count(),
                stats.nodes,
                stats.blocks_searched
            );
        }
        Command::Verify { source } => {
            let ucm = load_ucm(source.order, source.ucm.as_deref(), &config)?;
            let report = verify_theorems(&ucm, &build_ucfm(&ucm)).map_err(data_error)?;
            print!("{report}");
            if !report.all_passed() {
                return Err(Failure {
                    code: EXIT_VERIFY_FAILED,
                    message: "verification failed".to_string(),
                });
            }
        }
        Command::Heatmap { ucfm, out } => {
            let f = io::read_ucfm(&ucfm)?;
            io::write_heatmap(&f, &out)?;
        }
        Command::Bench {
            min,
            max,
            runs,
            out,
        } => {
            if parallel {
                log::warn!("--threads does not apply to bench; timing runs are sequential");
            }
            let report = bench_compare(min, max, runs, &config)?;
            let json = serde_json::to_string_pretty(&report).map_err(data_error)?;
            std::fs::write(&out, json + "\n")
                .map_err(|e| data_error(format!("{}: {e}", out.display())))?;
            for row in &report.rows {
                println!(
                    "n={:<3} arrays={:<6} reconstruction={:.6}s enumeration={:.6}s improvement={:.1}%",
                    row.order,
                    row.arrays,
                    row.reconstruction.mean_s,
                    row.enumeration.mean_s,
                    row.improvement_pct
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
