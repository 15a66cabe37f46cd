//! Command-line front end: fixtures, complexity estimates, branch verdicts,
//! code checks, analytic models and the property suites.

mod commands;

use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_VALIDATION: u8 = 2;
const EXIT_TRUNCATED: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "wavebranch", version, about = "Branch decompositions and circuit complexity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Debug, clap::Args)]
pub struct GlobalOpts {
    /// Output format (defaults to json, or csv for trajectories).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for every stochastic step; required when one is reachable.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Maximum circuit size searched.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    #[arg(long, global = true, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Margin required for a good branch pair.
    #[arg(long, global = true, default_value_t = 2, allow_negative_numbers = true)]
    pub threshold: i64,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub lambda: f64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Exit with status 3 when any result was cut short by the budget.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a named example fixture.
    Example(commands::ExampleArgs),
    /// Estimate one complexity between two branches of a fixture.
    Estimate(commands::EstimateArgs),
    /// Classify every branch pair of a fixture.
    Verdict(commands::VerdictArgs),
    /// Error-correction residuals, complexity floor and region.
    Qec(commands::QecArgs),
    /// Rectangular surface-code logical rate model.
    Surface(commands::SurfaceArgs),
    /// Integrate the saturating complexity flow.
    Flow(commands::FlowArgs),
    /// Complexity under Hamiltonian evolution, symmetry freezing, ETH.
    Evolve(commands::EvolveArgs),
    /// Run the randomized property suites.
    Props(commands::PropsArgs),
    /// Compare the pure state with the branch mixture over short circuits.
    Gap(commands::GapArgs),
}

/// A formatted artifact plus whether any part of it was budget-limited.
pub struct Artifact {
    pub body: String,
    pub truncated: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(wavebranch::Error),
    Io(std::io::Error),
}

impl From<wavebranch::Error> for CliError {
    fn from(e: wavebranch::Error) -> Self {
        CliError::Lib(e)
    }
}

fn error_json(kind: &str, message: &str) -> String {
    #[derive(serde::Serialize)]
    struct Detail<'a> {
        kind: &'a str,
        message: &'a str,
    }
    #[derive(serde::Serialize)]
    struct Report<'a> {
        schema_version: u32,
        error: Detail<'a>,
    }
    let r = Report {
        schema_version: wavebranch::SCHEMA_VERSION,
        error: Detail { kind, message },
    };
    serde_json::to_string(&r).unwrap_or_default()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    if let Some(n) = cli.opts.threads {
        if n == 0 {
            eprintln!("--threads must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match commands::run(&cli) {
        Ok(artifact) => {
            let written = match &cli.opts.output {
                Some(path) => std::fs::write(path, &artifact.body),
                None => std::io::stdout().write_all(artifact.body.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("{}", error_json("io", &e.to_string()));
                return ExitCode::from(EXIT_VALIDATION);
            }
            if cli.opts.strict && artifact.truncated {
                eprintln!("{}", error_json("truncated", "a result was limited by the search budget"));
                return ExitCode::from(EXIT_TRUNCATED);
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("{}", error_json(e.kind(), &e.to_string()));
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(CliError::Io(e)) => {
            eprintln!("{}", error_json("io", &e.to_string()));
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}
