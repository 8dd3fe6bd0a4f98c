//! Command-line front end: run named verification suites against a
//! monopole/modulus configuration and emit a machine-readable report.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use selfdual_cli::config::{Config, Suite};
use selfdual_cli::report::Report;
use selfdual_cli::suites;

#[derive(Parser)]
#[command(
    name = "selfdual",
    version,
    about = "Verification suites for toric self-dual monopole metrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites from a configuration file.
    Verify(VerifyArgs),
    /// List the suite catalogue.
    Suites(SuitesArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Path to the TOML configuration.
    #[arg(long)]
    config: PathBuf,
    /// Run only the named suite(s); repeatable. Overrides the config list.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Override the RNG seed from the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report to this path instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Additionally run the exact-arithmetic span checks.
    #[arg(long = "exact-mode")]
    exact_mode: bool,
}

#[derive(Args)]
struct SuitesArgs {
    /// Emit the catalogue as JSON.
    #[arg(long)]
    machine: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Suites(args) => {
            if args.machine {
                let catalogue: Vec<_> = Suite::all()
                    .iter()
                    .map(|s| {
                        serde_json::json!({
                            "name": s.name(),
                            "statement": s.statement(),
                            "needs_lambda": s.needs_lambda(),
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({ "suites": catalogue }))
                        .expect("serializable")
                );
            } else {
                for s in Suite::all() {
                    println!("{:<24} {}", s.name(), s.statement());
                }
            }
            ExitCode::SUCCESS
        }
        Command::Verify(args) => match run_verify(args) {
            Ok(pass) => {
                if pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        },
    }
}

fn run_verify(args: VerifyArgs) -> Result<bool, String> {
    let mut cfg = Config::from_path(&args.config).map_err(|e| e.to_string())?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if !args.suites.is_empty() {
        let selected = args
            .suites
            .iter()
            .map(|s| s.parse::<Suite>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        // re-validate requirements for the override
        if selected.iter().any(Suite::needs_toric) && !cfg.monopoles.is_toric() {
            return Err("the selected suites need a collinear configuration".into());
        }
        if selected.iter().any(Suite::needs_lambda) {
            match cfg.lambda {
                Some(l) if l > 1.5 && l < 2.0 => {}
                Some(l) => return Err(format!("twistor.lambda must satisfy 3/2 < λ < 2, got {l}")),
                None => return Err("twistor.lambda is required by the selected suites".into()),
            }
        }
        cfg.suites = selected;
    }

    let mut results = Vec::new();
    let mut timings = Vec::new();
    let total_start = Instant::now();
    for suite in cfg.suites.clone() {
        let start = Instant::now();
        let result = suites::run_suite(suite, &cfg, args.exact_mode);
        timings.push((suite.name().to_string(), start.elapsed().as_millis()));
        results.push(result);
    }
    timings.push(("total".to_string(), total_start.elapsed().as_millis()));

    let report = Report {
        results,
        timings_ms: timings,
    };
    let pass = report.pass();
    let body = serde_json::to_string_pretty(&report.to_json(&cfg)).expect("serializable");
    match &args.report {
        Some(path) => {
            std::fs::write(path, body.as_bytes())
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        }
        None => println!("{body}"),
    }
    eprint!("{}", report.summary());
    Ok(pass)
}
