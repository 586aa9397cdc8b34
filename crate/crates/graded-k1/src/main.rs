use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use graded_k1::job::StrategyName;
use graded_k1::{emit_report, parse_job_with, run_job, Command, Format, JobError, Overrides, Status};

/// Graded K₁ computations over finite graded rings.
#[derive(Parser, Debug)]
#[command(name = "graded-k1", version)]
struct Cli {
    /// Command to run; must agree with the job file's `command` if it has one.
    command: Command,
    /// Job file (TOML).
    job: PathBuf,
    #[arg(long)]
    level: Option<usize>,
    /// Largest element set or candidate scan before reporting truncation.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed for fuzz sampling and generated chains.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    strategy: Option<StrategyName>,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let overrides = Overrides {
        command: Some(cli.command),
        level: cli.level,
        cap: cli.cap,
        format: cli.format,
        seed: cli.seed,
        strategy: cli.strategy,
    };
    let spec = std::fs::read_to_string(&cli.job)
        .map_err(|source| JobError::Io { path: cli.job.display().to_string(), source })
        .and_then(|text| parse_job_with(&text, &overrides));
    let spec = match spec {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error [{}]: {e}", e.code());
            return ExitCode::from(Status::Invalid.exit_code() as u8);
        }
    };
    let outcome = run_job(&spec);
    let bytes = emit_report(&spec, &outcome, spec.format());
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &bytes),
        None => std::io::stdout().lock().write_all(&bytes),
    };
    if let Err(e) = written {
        eprintln!("error [io]: {e}");
        return ExitCode::from(Status::Invalid.exit_code() as u8);
    }
    ExitCode::from(outcome.status.exit_code() as u8)
}
