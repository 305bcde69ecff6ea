//! `solvcert` — batch certifier for solvability of automorphism groups of
//! finite-dimensional local commutative algebras.

use clap::{Args, Parser, Subcommand, ValueEnum};
use solvcert_cli::parse::PresentationFile;
use solvcert_cli::report::{self, OracleMode, RunError, RunOptions};
use solvcert_cli::run_fixtures;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "solvcert",
    about = "Certify solvability of the identity component of Aut(K[X1..Xn]/I) \
             for finite-dimensional local presentations",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the certification rules on a presentation file
    Certify {
        /// presentation file (field / vars / lowey / gen lines)
        file: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Compute the derivation Lie algebra and its derived series
    Oracle {
        file: PathBuf,
        /// also certify and report the cross-check status
        #[arg(long)]
        certify: bool,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Run the built-in corpus and print a summary table
    Fixtures {
        /// substring filter on fixture names
        filter: Option<String>,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct CommonOpts {
    /// seed for the randomized nonsingular-element search
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// number of random combinations tried per search
    #[arg(long, default_value_t = 64)]
    trials: u32,
    /// coefficients are drawn uniformly from [-bound, bound]
    #[arg(long, default_value_t = 10)]
    bound: i64,
    /// force the oracle to run (subject to --dim-cap)
    #[arg(long, conflicts_with = "no_oracle")]
    oracle: bool,
    /// disable the oracle
    #[arg(long)]
    no_oracle: bool,
    /// quotient-algebra dimension cap for the oracle
    #[arg(long, default_value_t = 1000)]
    dim_cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// include elapsed milliseconds in the report (breaks byte determinism)
    #[arg(long)]
    timing: bool,
}

impl CommonOpts {
    fn run_options(&self) -> RunOptions {
        RunOptions {
            seed: self.seed,
            trials: self.trials,
            bound: self.bound,
            oracle: if self.oracle {
                OracleMode::Forced
            } else if self.no_oracle {
                OracleMode::Disabled
            } else {
                OracleMode::Auto
            },
            dim_cap: self.dim_cap,
            timing: self.timing,
        }
    }
}

fn load(path: &PathBuf) -> Result<PresentationFile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    PresentationFile::parse(&text).map_err(|e| e.to_string())
}

fn emit(doc: &report::ReportDocument, format: Format) {
    match format {
        Format::Json => print!("{}", report::to_json(doc)),
        Format::Text => print!("{}", report::to_text(doc)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Certify { file, opts } => {
            let run = opts.run_options();
            match load(&file) {
                Err(msg) => {
                    eprintln!("error: {msg}");
                    2
                }
                Ok(pf) => match report::run_certify(&pf, &run) {
                    Ok(doc) => {
                        emit(&doc, opts.format);
                        0
                    }
                    Err(RunError::Input(e)) => {
                        eprintln!("error: {e}");
                        2
                    }
                    Err(RunError::Conflict(msg)) => {
                        eprintln!("conflict: {msg}");
                        3
                    }
                },
            }
        }
        Cmd::Oracle { file, certify, opts } => {
            let run = opts.run_options();
            match load(&file) {
                Err(msg) => {
                    eprintln!("error: {msg}");
                    2
                }
                Ok(pf) => match report::run_oracle(&pf, &run, certify) {
                    Ok(doc) => {
                        emit(&doc, opts.format);
                        0
                    }
                    Err(RunError::Input(e)) => {
                        eprintln!("error: {e}");
                        2
                    }
                    Err(RunError::Conflict(msg)) => {
                        eprintln!("conflict: {msg}");
                        3
                    }
                },
            }
        }
        Cmd::Fixtures { filter, opts } => {
            let run = opts.run_options();
            match run_fixtures(filter.as_deref(), &run) {
                Ok(table) => {
                    print!("{table}");
                    0
                }
                Err(RunError::Input(e)) => {
                    eprintln!("error: {e}");
                    2
                }
                Err(RunError::Conflict(msg)) => {
                    eprintln!("conflict: {msg}");
                    3
                }
            }
        }
    };
    ExitCode::from(code)
}
