use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

mod commands;
mod config;
mod error;
mod output;
mod scan;

use commands::Method;
use config::{Format, RunConfig};
use error::CliError;
use output::{emit, open_sink, Report};

const DEFAULT_VERIFY_THRESHOLD: usize = 8;

#[derive(Debug, Parser)]
#[command(
    name = "descent-poset",
    version,
    about = "Möbius function and topology of intervals in the permutation pattern poset"
)]
struct Cli {
    /// Longest top permutation whose interval may be built.
    #[arg(
        long,
        global = true,
        env = "DESCENT_POSET_MAX_LEN",
        default_value_t = 14
    )]
    max_len: usize,

    /// Fast answers for tops up to this length are re-checked by recursion
    /// [default: 8, capped at --max-len].
    #[arg(long, global = true)]
    verify_threshold: Option<usize>,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Möbius function μ(bottom, top).
    Mobius {
        #[arg(long)]
        bottom: String,
        #[arg(long)]
        top: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Run-index encoding of a permutation, or its inverse on a word.
    Bijection {
        #[arg(long, value_name = "PERM", conflicts_with = "to_perm")]
        to_word: Option<String>,
        #[arg(long, value_name = "WORD")]
        to_perm: Option<String>,
    },
    /// Structural case and value of μ(1, π) for a one-descent π.
    ClassifyOneDescent {
        #[arg(long = "perm")]
        perm: String,
    },
    /// Order complex of the open interval (bottom, top).
    Complex {
        #[arg(long)]
        bottom: String,
        #[arg(long)]
        top: String,
        /// Report the reduced Euler characteristic.
        #[arg(long)]
        euler: bool,
        /// Report reduced Betti numbers over GF(2).
        #[arg(long)]
        betti: bool,
    },
    /// Subintervals of [bottom, top] with disconnected interior.
    ScanDisconnected {
        #[arg(long)]
        top: String,
        #[arg(long, default_value = "1")]
        bottom: String,
        #[arg(long, default_value_t = 3)]
        min_rank: usize,
    },
    /// Check every one-descent permutation up to a length for disconnected
    /// subintervals of rank at least 3, as JSON lines.
    ScanConjecture {
        #[arg(long)]
        max_length: usize,
        /// Skip permutations already recorded in the --out file.
        #[arg(long)]
        resume: bool,
        /// Include reduced Betti numbers of Δ(1, π) in each record.
        #[arg(long)]
        betti: bool,
    },
    /// List permutations with a given number of descents, or the matching words.
    Enumerate {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        descents: usize,
        #[arg(long)]
        words: bool,
    },
    /// Run a self-verification suite, or `all`.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 6)]
        max_length: usize,
    },
}

fn config(cli: &Cli) -> Result<RunConfig, CliError> {
    let cfg = RunConfig {
        max_interval_top_length: cli.max_len,
        verify_threshold: cli
            .verify_threshold
            .unwrap_or(DEFAULT_VERIFY_THRESHOLD.min(cli.max_len)),
        parallel_width: cli
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        output_path: cli.out.clone(),
        format: cli.format,
    };
    cfg.validate()?;
    if cli.jobs.is_some() {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallel_width)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(cfg)
}

fn write(cfg: &RunConfig, report: &Report) -> Result<(), CliError> {
    let mut out = open_sink(cfg.output_path.as_deref(), false)?;
    emit(&mut *out, cfg.format, report)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = config(&cli)?;
    match cli.command {
        Command::Mobius {
            bottom,
            top,
            method,
        } => write(&cfg, &commands::mobius(&cfg, &bottom, &top, method)?),
        Command::Bijection { to_word, to_perm } => write(
            &cfg,
            &commands::bijection(to_word.as_deref(), to_perm.as_deref())?,
        ),
        Command::ClassifyOneDescent { perm } => write(&cfg, &commands::classify(&cfg, &perm)?),
        Command::Complex {
            bottom,
            top,
            euler,
            betti,
        } => write(&cfg, &commands::complex(&cfg, &bottom, &top, euler, betti)?),
        Command::ScanDisconnected {
            top,
            bottom,
            min_rank,
        } => write(
            &cfg,
            &commands::scan_disconnected(&cfg, &bottom, &top, min_rank)?,
        ),
        Command::ScanConjecture {
            max_length,
            resume,
            betti,
        } => {
            let summary = scan::scan_conjecture(&cfg, max_length, resume, betti)?;
            eprintln!(
                "scanned {} permutations, {} already recorded, {} counterexamples",
                summary.scanned,
                summary.skipped,
                summary.counterexamples.len()
            );
            if summary.counterexamples.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verification(format!(
                    "disconnected subintervals below obstruction-avoiding {}",
                    summary.counterexamples.join(", ")
                )))
            }
        }
        Command::Enumerate {
            length,
            descents,
            words,
        } => write(&cfg, &commands::enumerate(length, descents, words)?),
        Command::Verify { suite, max_length } => {
            let (report, passed) = commands::verify(&cfg, &suite, max_length)?;
            write(&cfg, &report)?;
            if passed {
                Ok(())
            } else {
                Err(CliError::Verification(format!(
                    "suite {suite} reported failures"
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // The reader went away (e.g. `| head`); nothing left to report.
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
