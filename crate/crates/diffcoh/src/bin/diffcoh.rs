//! Thin command-line front-end over [`diffcoh::verify`].
//!
//! Exit codes: 0 when every claim verifies, 1 when at least one claim
//! fails, 2 on usage or input errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use diffcoh::verify::{self, JobSpec};

#[derive(Parser)]
#[command(
    name = "diffcoh",
    about = "Exact verification of differential cohomology structures",
    after_help = "Set DIFFCOH_CACHE to a directory to cache finished job results."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification job described by a JSON file and print one
    /// certificate per claim
    Run {
        /// Path to the job description (see the JobSpec schema in README)
        job: String,
    },
    /// Print cohomological invariants of a built-in complex
    Compute {
        /// Built-in complex name (e.g. circle, torus, rp2, disk-pair)
        complex: String,
        /// Cohomological degree
        #[arg(long)]
        n: usize,
        /// Coefficient ring name, or a path to a JSON file {"ring": name}
        #[arg(long, default_value = "integers")]
        coeff: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { job } => run_job(&job),
        Command::Compute { complex, n, coeff } => compute(&complex, n, &coeff),
    }
}

fn run_job(path: &str) -> ExitCode {
    let raw = match std::fs::read_to_string(path) {
        Ok(raw) => raw,
        Err(e) => {
            eprintln!("error: cannot read {path}: {e}");
            return ExitCode::from(2);
        }
    };
    let job: JobSpec = match serde_json::from_str(&raw) {
        Ok(job) => job,
        Err(e) => {
            eprintln!("error: malformed job file: {e}");
            return ExitCode::from(2);
        }
    };
    let certs = match verify::run(&job) {
        Ok(certs) => certs,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    println!("{}", serde_json::to_string_pretty(&certs).unwrap());
    let failed = certs.iter().filter(|c| !c.ok()).count();
    eprintln!("{} claims, {} failed", certs.len(), failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn compute(complex: &str, n: usize, coeff: &str) -> ExitCode {
    let ring_name = if std::path::Path::new(coeff).is_file() {
        let raw = std::fs::read_to_string(coeff).unwrap_or_default();
        match serde_json::from_str::<serde_json::Value>(&raw) {
            Ok(v) => match v.get("ring").and_then(|r| r.as_str()) {
                Some(name) => name.to_string(),
                None => {
                    eprintln!("error: {coeff} must contain {{\"ring\": name}}");
                    return ExitCode::from(2);
                }
            },
            Err(e) => {
                eprintln!("error: malformed coefficient file: {e}");
                return ExitCode::from(2);
            }
        }
    } else {
        coeff.to_string()
    };
    match verify::compute(complex, n, &ring_name) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
