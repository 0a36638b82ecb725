//! `orbitsum`: certify fixed-point existence of iterative maps from orbit
//! displacement data.
//!
//! Exit codes: 0 pass, 1 expectation mismatch, 2 configuration error,
//! 3 runtime/numeric error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use orbitsum_harness::{
    emit_trace, load_problems, registry, registry_problem, run_problem, HarnessError, Problem,
    RunOutcome, TraceFormat, FIXTURES,
};

#[derive(Parser)]
#[command(
    name = "orbitsum",
    version,
    about = "Fixed-point certification for iterative maps via orbit summability"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a problem (config file path, batch file, or registry name)
    Run {
        config: String,
        /// Directory to write the orbit trace into (one file per problem)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// List the built-in problem registry
    List,
    /// Run and compare against the `expected` baseline; exit 1 on mismatch
    Verify { config: String },
    /// Run and verify every registry fixture
    Suite {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for TraceFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => TraceFormat::Csv,
            FormatArg::Json => TraceFormat::Json,
        }
    }
}

/// A config argument is a file path first, a registry name second.
fn load_target(spec: &str) -> Result<Vec<Problem>, HarnessError> {
    let path = Path::new(spec);
    if path.is_file() {
        return load_problems(path);
    }
    match registry_problem(spec)? {
        Some(problem) => Ok(vec![problem]),
        None => Err(HarnessError::UnknownProblem(spec.to_string())),
    }
}

fn write_trace(
    outcome: &RunOutcome,
    out: &Option<PathBuf>,
    format: TraceFormat,
) -> Result<(), HarnessError> {
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::Io {
            path: dir.display().to_string(),
            source: e,
        })?;
        let path = dir.join(format!("{}.{}", outcome.report.name, format.extension()));
        emit_trace(&outcome.trace, &path, format)?;
        println!("  trace written to {}", path.display());
    }
    Ok(())
}

fn run_command(spec: &str, out: Option<PathBuf>, format: TraceFormat) -> Result<(), HarnessError> {
    for problem in load_target(spec)? {
        let outcome = run_problem(&problem)?;
        print!("{}", outcome.report);
        write_trace(&outcome, &out, format)?;
    }
    Ok(())
}

/// Returns the number of expectation mismatches.
fn verify_problems(problems: &[Problem]) -> Result<usize, HarnessError> {
    let mut mismatches = 0usize;
    // Fixture runs are independent and share nothing mutable; fan them out
    // and report in input order.
    let outcomes: Vec<Result<RunOutcome, HarnessError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = problems
            .iter()
            .map(|p| scope.spawn(move || run_problem(p)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    for (problem, outcome) in problems.iter().zip(outcomes) {
        let outcome = outcome?;
        let report = &outcome.report;
        match report.pass {
            Some(true) => println!(
                "[PASS] {} ({}, {} steps)",
                problem.name, report.certificate.verdict, report.trace_len
            ),
            Some(false) => {
                mismatches += 1;
                println!("[FAIL] {} ({})", problem.name, report.certificate.verdict);
                for failure in &report.failures {
                    println!("       {failure}");
                }
            }
            None => println!(
                "[ -- ] {} has no expected baseline ({})",
                problem.name, report.certificate.verdict
            ),
        }
    }
    Ok(mismatches)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<usize, HarnessError> = match cli.command {
        Command::Run {
            config,
            out,
            format,
        } => run_command(&config, out, format.into()).map(|_| 0),
        Command::List => {
            for (name, _) in FIXTURES {
                println!("{name}");
            }
            Ok(0)
        }
        Command::Verify { config } => load_target(&config).and_then(|p| verify_problems(&p)),
        Command::Suite { out, format } => registry().and_then(|problems| {
            let mismatches = verify_problems(&problems)?;
            if out.is_some() {
                for problem in &problems {
                    let outcome = run_problem(problem)?;
                    write_trace(&outcome, &out, format.into())?;
                }
            }
            println!(
                "suite: {}/{} fixtures passed",
                problems.len() - mismatches,
                problems.len()
            );
            Ok(mismatches)
        }),
    };
    match result {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
