use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qclab::scenario::{list_catalog, run_file, run_suite, RunOptions};
use qclab::Error;

#[derive(Parser)]
#[command(
    name = "qclab",
    version,
    about = "Scenario runner for quasiconformal harmonic-map experiments"
)]
struct Cli {
    /// Output directory (overrides the scenario's [output] dir).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Grid resolution override.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Seed override for randomized diagnostics.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file.
    Run { file: PathBuf },
    /// Run every *.toml scenario in a directory.
    Suite { dir: PathBuf },
    /// List domains, surfaces, boundary primitives, solvers and diagnostics.
    Catalog { filter: Option<String> },
}

const CONFIG_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions {
        out: cli.out,
        grid: cli.grid,
        seed: cli.seed,
    };
    match cli.command {
        Command::Catalog { filter } => {
            for line in list_catalog(filter.as_deref().unwrap_or("")) {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Command::Run { file } => match run_file(&file, &opts) {
            Ok(report) => {
                for c in &report.checks {
                    println!(
                        "{:<16} {} measured={} threshold={}",
                        c.name,
                        if c.passed { "ok" } else { "FAIL" },
                        c.measured,
                        c.threshold
                    );
                }
                if let Some(f) = &report.failure {
                    eprintln!("failure: {f}");
                }
                println!(
                    "{}: {}",
                    report.scenario.name,
                    if report.passed() { "passed" } else { "failed" }
                );
                if report.passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e @ (Error::Config(_) | Error::Io(_))) => {
                eprintln!("{}: {e}", file.display());
                ExitCode::from(CONFIG_ERROR)
            }
            Err(e) => {
                eprintln!("{}: {e}", file.display());
                ExitCode::from(1)
            }
        },
        Command::Suite { dir } => match run_suite(&dir, &opts) {
            Ok(report) => {
                print!("{}", report.table());
                if report.all_passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => {
                eprintln!("{}: {e}", dir.display());
                ExitCode::from(CONFIG_ERROR)
            }
        },
    }
}
