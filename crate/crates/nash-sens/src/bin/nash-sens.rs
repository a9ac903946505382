//! Batch CLI over the nash-sens library.
//!
//! `nash-sens <mode> --config FILE [overrides...]` reads a JSON config,
//! applies flag overrides, runs the experiment, and writes artifacts
//! (profiles.csv / report.json / trajectory.csv / manifest.json) to the
//! output directory.
//!
//! Exit codes: 0 success, 1 usage or runtime error, 2 an emitted report
//! contains a false verdict.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use nash_sens::config::{ExperimentConfig, Overrides};
use nash_sens::driver;

#[derive(Parser)]
#[command(
    name = "nash-sens",
    version,
    about = "Exact and epsilon-approximate Nash equilibrium sets on strategy grids",
    after_help = "Modes: nash | approx | sweep | limits | verify.\n\
        Games: `motivating`, `quadratic` (seeded), or `quadratic:SEED:PLAYERS:DIMS`.\n\
        Flags override config-file fields; defaults fill whatever remains."
)]
struct Cli {
    /// What to compute: nash | approx | sweep | limits | verify.
    mode: String,

    /// JSON experiment config (flag overrides beat file values).
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Game name from the registry.
    #[arg(long, value_name = "NAME")]
    game: Option<String>,

    /// Grid points per axis (>= 2).
    #[arg(long, value_name = "N")]
    grid: Option<usize>,

    /// Scalar parameter value.
    #[arg(long, value_name = "V")]
    x: Option<f64>,

    /// Payoff slack epsilon_1.
    #[arg(long, value_name = "V")]
    eps1: Option<f64>,

    /// Truncation level epsilon_2 (a number, or `off`).
    #[arg(long, value_name = "V|off")]
    eps2: Option<String>,

    /// Feasibility slack epsilon_3 (a number, or `off`).
    #[arg(long, value_name = "V|off")]
    eps3: Option<String>,

    /// Parameter sequence, `harmonic:LIMIT:SIDE[:COUNT]` with SIDE above|below.
    #[arg(long, value_name = "SPEC")]
    seq: Option<String>,

    /// Output directory for artifacts.
    #[arg(long, value_name = "DIR")]
    out: Option<String>,

    /// Tie tolerance for exact best responses.
    #[arg(long, value_name = "V")]
    tie_tol: Option<f64>,

    /// Set-limit locality radius (defaults to one grid spacing).
    #[arg(long, value_name = "V")]
    delta: Option<f64>,

    /// Seed for generated games.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,

    /// Worker threads (defaults to the rayon global pool).
    #[arg(long, value_name = "N")]
    threads: Option<usize>,

    /// Use the closed (weak-inequality) approximate-set variant.
    #[arg(long)]
    closed: bool,
}

fn run(cli: Cli) -> Result<bool, nash_sens::Error> {
    let file_text = match &cli.config {
        None => None,
        Some(path) => Some(
            std::fs::read_to_string(path).map_err(|e| nash_sens::Error::io(path, e))?,
        ),
    };
    let overrides = Overrides {
        mode: Some(cli.mode),
        game: cli.game,
        grid: cli.grid,
        x: cli.x,
        eps1: cli.eps1,
        eps2: cli.eps2,
        eps3: cli.eps3,
        seq: cli.seq,
        out: cli.out,
        tie_tol: cli.tie_tol,
        delta: cli.delta,
        seed: cli.seed,
        threads: cli.threads,
        closed: cli.closed,
    };
    let cfg = ExperimentConfig::resolve(file_text.as_deref(), &overrides)?;
    let outcome = driver::run(&cfg)?;
    for artifact in &outcome.artifacts {
        println!(
            "wrote {} ({} bytes, sha256 {})",
            outcome.out_dir.join(&artifact.name).display(),
            artifact.bytes,
            artifact.sha256
        );
    }
    println!("wrote {}", outcome.out_dir.join("manifest.json").display());
    if !outcome.all_verdicts_true {
        println!("verdict: FAILED (see report.json)");
    }
    Ok(outcome.all_verdicts_true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
