mod config;
mod error;
mod output;
mod presets;
mod run;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use config::ScenarioConfig;
use error::CliError;

#[derive(Parser)]
#[command(name = "casimir-phase", version, about = "Casimir-Polder phases of atom interferometers near a mirror")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario file (or a bundled preset name) and write result tables.
    Run {
        config: String,
        /// Output directory.
        #[arg(long, env = "CASIMIR_PHASE_OUT", default_value = "results")]
        out: PathBuf,
        /// Worker threads for sweep points (0 = all cores).
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Relative quadrature tolerance, overriding the scenario file.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Check a scenario file against the schema and the physical constraints.
    Validate {
        config: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// List the bundled scenarios.
    Presets,
}

/// Reads a file, falling back to a bundled preset of the same name.
fn load(arg: &str) -> Result<(String, ScenarioConfig, String), CliError> {
    let text = match fs::read_to_string(arg) {
        Ok(t) => t,
        Err(e) => match presets::find(arg) {
            Some(t) if !Path::new(arg).exists() => t.to_string(),
            _ => return Err(CliError::Validation(format!("cannot read {arg}: {e}"))),
        },
    };
    let cfg = ScenarioConfig::parse(&text)?;
    let hash = hex::encode(Sha256::digest(text.as_bytes()));
    Ok((text, cfg, hash))
}

fn run(config: &str, out: &Path, threads: usize, tol: Option<f64>) -> Result<(), CliError> {
    let (_, cfg, hash) = load(config)?;
    let points = cfg.points(tol)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Validation(format!("thread pool: {e}")))?;
    // collect keeps sweep order regardless of which worker finishes first
    let results = pool.install(|| {
        points
            .par_iter()
            .map(|p| run::evaluate(&cfg, &hash, p))
            .collect::<Result<Vec<_>, _>>()
    })?;
    for w in results.iter().flat_map(|r| &r.warnings) {
        eprintln!("warning: {w}");
    }
    for path in output::write_all(out, &cfg.id, &hash, &results)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn validate(config: &str, tol: Option<f64>) -> Result<(), CliError> {
    let (_, cfg, hash) = load(config)?;
    let points = cfg.points(tol)?;
    println!("OK {} ({} point{}, config_sha256 {hash})", cfg.id, points.len(), if points.len() == 1 { "" } else { "s" });
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, out, threads, tol } => run(&config, &out, threads, tol),
        Command::Validate { config, tol } => validate(&config, tol),
        Command::Presets => {
            for (name, description) in presets::list() {
                println!("{name}\t{description}");
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("{}", serde_json::to_string(&e.report()).expect("report serializes"));
            ExitCode::from(e.exit_code())
        }
    }
}
