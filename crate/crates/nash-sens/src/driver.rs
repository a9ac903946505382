//! Experiment driver: runs one configured mode and writes its artifacts.
//!
//! Every artifact is rendered to an in-memory buffer first, hashed, and
//! only then written, so the manifest can list a digest for each file.
//! Artifact bytes are a pure function of the resolved config; the
//! manifest is the one exception (it carries a wall-clock stamp).
//! Floats are printed with 17 significant digits everywhere, including
//! inside JSON, so artifacts round-trip exactly.

use std::io;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::{ExperimentConfig, Mode, Variant};
use crate::equilibrium::{
    approx_nash_set, nash_set, verify_sandwich, EpsilonSchedule, SandwichReport,
};
use crate::error::{Error, Result};
use crate::games;
use crate::grid::{render_profiles_csv, Grid};
use crate::setlimits::{verify_limit_chain, verify_limit_chain_closed, LimitReport};

/// One written artifact, as recorded in the manifest.
#[derive(Debug, Clone)]
pub struct ArtifactRecord {
    pub name: String,
    pub sha256: String,
    pub bytes: usize,
}

/// Result of a driver run.
#[derive(Debug)]
pub struct RunOutcome {
    pub out_dir: PathBuf,
    pub artifacts: Vec<ArtifactRecord>,
    /// False when an emitted report contains a false verdict; the CLI
    /// maps this to exit code 2.
    pub all_verdicts_true: bool,
}

/// JSON serializer that prints every float with 17 significant digits.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize a JSON value with the 17-significant-digit float format.
pub fn to_json_bytes(value: &Value) -> Vec<u8> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    serde::Serialize::serialize(value, &mut ser).expect("in-memory JSON serialization");
    buf.push(b'\n');
    buf
}

fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

/// The registry name actually looked up: a bare `quadratic` picks up the
/// configured seed with two single-dimension players.
fn effective_game_name(cfg: &ExperimentConfig) -> String {
    if cfg.game == "quadratic" {
        format!("quadratic:{}:2:1", cfg.seed)
    } else {
        cfg.game.clone()
    }
}

fn sandwich_to_json(report: &SandwichReport) -> Value {
    let witnesses: Value = report
        .witnesses
        .iter()
        .map(|(link, idxs)| (link.clone(), json!(idxs)))
        .collect::<serde_json::Map<String, Value>>()
        .into();
    json!({
        "kind": "sandwich",
        "x": report.x,
        "eps": {
            "eps1": report.eps.eps1,
            "eps2": report.eps.eps2,
            "eps3": report.eps.eps3,
        },
        "counts": {
            "exact": report.exact.len(),
            "eps_open": report.eps_open.len(),
            "eps_closed": report.eps_closed.len(),
            "two_eps_open": report.two_eps_open.len(),
        },
        "verdicts": {
            "exact_in_open": report.exact_in_open,
            "open_in_closed": report.open_in_closed,
            "closed_in_two_eps": report.closed_in_two_eps,
            "all_hold": report.all_hold(),
        },
        "witnesses": witnesses,
    })
}

fn limit_report_to_json(report: &LimitReport) -> Value {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|row| {
            json!({
                "eps1": row.eps.eps1,
                "eps2": row.eps.eps2,
                "eps3": row.eps.eps3,
                "liminf_count": row.liminf.len(),
                "limsup_count": row.limsup.len(),
                "d_liminf": row.d_liminf,
                "d_limsup": row.d_limsup,
                "limit_in_liminf": row.limit_in_liminf,
                "liminf_in_limsup": row.liminf_in_limsup,
            })
        })
        .collect();
    json!({
        "kind": "limit_chain",
        "closed_variant": report.closed_variant,
        "limit_point": report.limit_point.coords,
        "sequence_count": report.sequence.len(),
        "tail_start": report.tail_start,
        "delta": report.delta,
        "counts": {
            "limit_set": report.limit_set.len(),
            "base_liminf": report.base_liminf.len(),
            "base_limsup": report.base_limsup.len(),
        },
        "base": {
            "d_liminf": report.d_base_liminf,
            "d_limsup": report.d_base_limsup,
            "liminf_in_limsup": report.base_liminf_in_limsup,
            "limsup_in_limit": report.base_limsup_in_limit,
        },
        "rows": rows,
        "distances_monotone": report.distances_monotone,
        "chain_ok": report.chain_ok(),
    })
}

fn trajectory_csv(report: &LimitReport) -> Vec<u8> {
    let mut out = String::from("step,eps1,d_liminf,d_limsup\n");
    for (k, row) in report.rows.iter().enumerate() {
        out.push_str(&format!(
            "{k},{},{},{}\n",
            sci(row.eps.eps1),
            sci(row.d_liminf),
            sci(row.d_limsup)
        ));
    }
    out.into_bytes()
}

/// Artifact name/bytes pairs plus the aggregate verdict flag.
type ModeOutput = (Vec<(String, Vec<u8>)>, bool);

fn dispatch(cfg: &ExperimentConfig, grid: &Grid) -> Result<ModeOutput> {
    let game = games::lookup(&effective_game_name(cfg))?;
    match cfg.mode {
        Mode::Nash => {
            let x = cfg.x.as_ref().expect("validated");
            game.validate_param(x)?;
            let set = nash_set(&game, x, grid, cfg.tie_tol)?;
            let mut buf = Vec::new();
            render_profiles_csv(&set, grid, &mut buf);
            Ok((vec![("profiles.csv".into(), buf)], true))
        }
        Mode::Approx => {
            let x = cfg.x.as_ref().expect("validated");
            game.validate_param(x)?;
            let closed = cfg.variant == Variant::Closed;
            let set = approx_nash_set(&game, x, &cfg.epsilon(), grid, closed)?;
            let mut buf = Vec::new();
            render_profiles_csv(&set, grid, &mut buf);
            Ok((vec![("profiles.csv".into(), buf)], true))
        }
        Mode::Sweep => {
            let sweep = cfg.sweep.expect("validated");
            let values = sweep.values();
            for &v in &values {
                game.validate_param(&[v])?;
            }
            let width = (sweep.count - 1).to_string().len().max(3);
            let per_point: Vec<(String, Vec<u8>, usize)> = values
                .par_iter()
                .enumerate()
                .map(|(k, &v)| {
                    let set = nash_set(&game, &[v], grid, cfg.tie_tol)?;
                    let mut buf = Vec::new();
                    render_profiles_csv(&set, grid, &mut buf);
                    Ok((format!("profiles_{k:0width$}.csv"), buf, set.len()))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut summary = String::from("index,x,profiles\n");
            for (k, &v) in values.iter().enumerate() {
                summary.push_str(&format!("{k},{},{}\n", sci(v), per_point[k].2));
            }
            let mut files: Vec<(String, Vec<u8>)> = per_point
                .into_iter()
                .map(|(name, buf, _)| (name, buf))
                .collect();
            files.push(("sweep_summary.csv".into(), summary.into_bytes()));
            Ok((files, true))
        }
        Mode::Limits => {
            let seq = cfg.sequence.as_ref().expect("validated");
            let schedule = EpsilonSchedule::payoff_only(&cfg.schedule)?;
            let delta = cfg.delta.unwrap_or_else(|| grid.max_spacing());
            let report = match cfg.variant {
                Variant::Open => {
                    verify_limit_chain(&game, seq, &schedule, grid, delta, None, cfg.tie_tol)?
                }
                Variant::Closed => verify_limit_chain_closed(
                    &game, seq, &schedule, grid, delta, None, cfg.tie_tol,
                )?,
            };
            let ok = report.chain_ok();
            Ok((
                vec![
                    ("report.json".into(), to_json_bytes(&limit_report_to_json(&report))),
                    ("trajectory.csv".into(), trajectory_csv(&report)),
                ],
                ok,
            ))
        }
        Mode::Verify => {
            let x = cfg.x.as_ref().expect("validated");
            game.validate_param(x)?;
            let report = verify_sandwich(&game, x, &cfg.epsilon(), grid, cfg.tie_tol)?;
            let ok = report.all_hold();
            Ok((
                vec![("report.json".into(), to_json_bytes(&sandwich_to_json(&report)))],
                ok,
            ))
        }
    }
}

/// Run the configured experiment and write its artifacts under `out`.
pub fn run(cfg: &ExperimentConfig) -> Result<RunOutcome> {
    let game = games::lookup(&effective_game_name(cfg))?;
    let grid = Grid::build(&game.grid_spec(cfg.grid_points))?;

    let (files, all_ok) = match cfg.threads {
        None => dispatch(cfg, &grid)?,
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
            pool.install(|| dispatch(cfg, &grid))?
        }
    };

    std::fs::create_dir_all(&cfg.out).map_err(|e| Error::io(&cfg.out, e))?;
    let mut records = Vec::with_capacity(files.len());
    for (name, bytes) in &files {
        let digest = hex::encode(Sha256::digest(bytes));
        let path = cfg.out.join(name);
        std::fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
        records.push(ArtifactRecord {
            name: name.clone(),
            sha256: digest,
            bytes: bytes.len(),
        });
    }

    // Manifest last: it lists every other artifact with its digest. The
    // wall-clock stamp makes it the only artifact excluded from
    // byte-level determinism comparisons.
    let wall = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs_f64())
        .unwrap_or(0.0);
    let manifest = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "generated_unix_s": wall,
        "config": serde_json::to_value(cfg)?,
        "artifacts": records
            .iter()
            .map(|r| {
                json!({"name": r.name, "sha256": r.sha256, "bytes": r.bytes})
            })
            .collect::<Vec<_>>(),
    });
    let manifest_path = cfg.out.join("manifest.json");
    std::fs::write(&manifest_path, to_json_bytes(&manifest))
        .map_err(|e| Error::io(&manifest_path, e))?;

    Ok(RunOutcome {
        out_dir: cfg.out.clone(),
        artifacts: records,
        all_verdicts_true: all_ok,
    })
}
