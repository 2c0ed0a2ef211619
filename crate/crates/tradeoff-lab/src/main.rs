//! Thin CLI over the library: `analyze`, `verify`, `scan`, `examples`.
//!
//! Exit codes: 0 success, 1 failed checks, 2 validation/usage errors.
//! Deterministic stdout for a fixed command line; wall-clock timing goes
//! to stderr.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use tradeoff_lab::harness::scan::run_scan;
use tradeoff_lab::harness::scenarios::{catalog, run_scenario};
use tradeoff_lab::harness::schema::parse_instance;
use tradeoff_lab::harness::suites::{run_suite, SuiteConfig, SuiteKind};
use tradeoff_lab::harness::{analyze, AnalyzeConfig};
use tradeoff_lab::Error;

#[derive(Parser)]
#[command(
    name = "tradeoff-lab",
    version,
    about = "Information-gain and disturbance quantities for quantum instruments",
    long_about = "Computes mutual information, accessible-information bounds, quantum \
                  information gain, recovery-optimized fidelities, quantum disturbance and \
                  entropy-defect loss for finite-dimensional quantum instruments, and runs \
                  randomized verification suites over their identities and inequality chains.\n\
                  The TRADEOFF_LAB_THREADS environment variable caps suite parallelism."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze a JSON instance (ensemble + instrument) and emit a report.
    Analyze {
        /// Path to a tradeoff-lab/1 instance file.
        instance: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include the recovery Choi matrices in the report for auditing.
        #[arg(long)]
        dump_recoveries: bool,
    },
    /// Run a randomized verification suite.
    Verify {
        /// One of: lemma1, theorem1, eq9, eq17, eq18, eq22, cw, eta-oracle,
        /// frame, pinsker, all.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated list of Hilbert dimensions.
        #[arg(long, default_value = "2,3")]
        dims: String,
    },
    /// Sweep a scenario family and emit CSV.
    Scan {
        #[arg(long, default_value = "two-state-angle")]
        family: String,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List or run bundled scenarios.
    Examples {
        /// List scenario names and descriptions.
        #[arg(long)]
        list: bool,
        /// Run one scenario's checks.
        #[arg(long)]
        run: Option<String>,
    },
}

fn parse_dims(s: &str) -> Result<Vec<usize>, Error> {
    let dims: Result<Vec<usize>, _> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect();
    match dims {
        Ok(v) if !v.is_empty() && v.iter().all(|&d| (1..=16).contains(&d)) => Ok(v),
        _ => Err(Error::Validation {
            path: "--dims".into(),
            message: format!("expected comma-separated dimensions in 1..=16, got '{s}'"),
        }),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Analyze {
            instance,
            out,
            dump_recoveries,
        } => {
            let text = std::fs::read_to_string(&instance)?;
            let inst = parse_instance(&text)?;
            let cfg = AnalyzeConfig {
                dump_recovery_chois: dump_recoveries,
                ..AnalyzeConfig::default()
            };
            let report = analyze(&inst, &cfg)?;
            let mut json = serde_json::to_string_pretty(&report)
                .expect("report serializes");
            json.push('\n');
            emit(&json, &out)?;
            Ok(0)
        }
        Cmd::Verify {
            suite,
            trials,
            seed,
            dims,
        } => {
            let kind: SuiteKind = suite.parse()?;
            let cfg = SuiteConfig {
                trials,
                seed,
                dims: parse_dims(&dims)?,
            };
            let started = Instant::now();
            let result = run_suite(kind, &cfg)?;
            print!("{}", result.render_table());
            eprintln!("elapsed: {:.2}s", started.elapsed().as_secs_f64());
            Ok(if result.passed() { 0 } else { 1 })
        }
        Cmd::Scan { family, steps, out } => {
            let (_, csv) = run_scan(&family, steps)?;
            emit(&csv, &out)?;
            Ok(0)
        }
        Cmd::Examples { list, run } => match (list, run) {
            (true, _) => {
                for s in catalog() {
                    println!("{:<26} {}", s.name, s.description);
                }
                Ok(0)
            }
            (false, Some(name)) => {
                let outcome = run_scenario(&name)?;
                print!("{}", outcome.render());
                Ok(if outcome.passed() { 0 } else { 1 })
            }
            (false, None) => Err(Error::Validation {
                path: "examples".into(),
                message: "pass --list or --run <name>".into(),
            }),
        },
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Validation { .. } | Error::Unknown { .. } | Error::Io(_) => 2u8,
                _ => 1u8,
            };
            ExitCode::from(code)
        }
    }
}
