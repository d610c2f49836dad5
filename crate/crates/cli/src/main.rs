use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use finslerlab::{all_pass, list_checks, objects, parse_config, render, run_checks, RunConfig};
use finslerlab_core::calculus::{sample_slit_points, SampleConfig};
use finslerlab_core::{validate_finsler, Fixture, TangentPoint};

#[derive(Parser)]
#[command(name = "finslerlab", version, about = "Residual checks for Finsler connection theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List registered checks.
    List {
        /// Only checks whose id contains this text.
        filter: Option<String>,
    },
    /// Run checks and print one JSON record per (check, fixture).
    Check {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        /// Comma-separated check ids.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a named construction at one point.
    Eval {
        #[arg(long)]
        fixture: String,
        #[arg(long)]
        object: String,
        /// x1,x2,y1,y2
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Vec<f64>,
    },
}

fn build_config(
    config: Option<PathBuf>,
    seed: Option<u64>,
    samples: Option<usize>,
    only: Option<Vec<String>>,
    out: Option<PathBuf>,
) -> Result<RunConfig, String> {
    let mut cfg = match &config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => RunConfig::default(),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(n) = samples {
        if n == 0 {
            return Err("--samples must be at least 1".into());
        }
        cfg.samples = n;
    }
    if let Some(ids) = only {
        cfg.retain_checks(&ids).map_err(|e| e.to_string())?;
    }
    cfg.output = out;
    Ok(cfg)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::List { filter } => {
            for c in list_checks(filter.as_deref()) {
                println!("{}  tol={:e}  {}", c.id, c.tolerance, c.description);
            }
            ExitCode::SUCCESS
        }
        Command::Check { config, seed, samples, only, out } => {
            let cfg = match build_config(config, seed, samples, only, out) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let results = match run_checks(&cfg) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let report = render(&results);
            print!("{report}");
            if let Some(path) = &cfg.output {
                if let Err(e) = fs::write(path, &report) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            let failed = results.iter().filter(|r| !r.pass).count();
            eprintln!("{} records, {} failed", results.len(), failed);
            if all_pass(&results) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::Eval { fixture, object, point } => {
            let Some(fx) = Fixture::from_id(&fixture) else {
                eprintln!("error: unknown fixture id `{fixture}`");
                return ExitCode::from(2);
            };
            let result = TangentPoint::from_coords(&point).and_then(|p| {
                let grid = sample_slit_points(2, 8, 42, SampleConfig::default())?;
                let f = validate_finsler(&fx.energy(2), &grid)?;
                objects::evaluate(&f, &object, &p)
            });
            match result {
                Ok(v) => {
                    println!("{v}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}
