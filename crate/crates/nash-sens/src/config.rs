//! Experiment configuration: JSON file plus flat flag overrides, merged
//! over documented defaults and validated per mode.
//!
//! Precedence is defaults < file < flags. Validation errors name the
//! offending field so a bad config is diagnosable from the message alone.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::ParameterPoint;
use crate::setlimits::ParameterSequence;

/// Default epsilon schedule (payoff component only).
pub const DEFAULT_SCHEDULE: [f64; 6] = [0.16, 0.08, 0.04, 0.02, 0.01, 0.005];
/// Default grid resolution per axis.
pub const DEFAULT_GRID: usize = 201;
/// Default tie tolerance for exact best responses.
pub const DEFAULT_TIE_TOL: f64 = 1e-9;
/// Default sequence length for harmonic parameter sequences.
pub const DEFAULT_SEQUENCE_COUNT: usize = 50;

/// What the driver should compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Nash,
    Approx,
    Sweep,
    Limits,
    Verify,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "nash" => Ok(Mode::Nash),
            "approx" => Ok(Mode::Approx),
            "sweep" => Ok(Mode::Sweep),
            "limits" => Ok(Mode::Limits),
            "verify" => Ok(Mode::Verify),
            other => Err(Error::config(
                "mode",
                format!("expected nash | approx | sweep | limits | verify, got `{other}`"),
            )),
        }
    }
}

/// Open (strict) or closed (weak) approximate sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Open,
    Closed,
}

/// A linear parameter sweep over the first parameter coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRange {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl SweepRange {
    /// The swept values, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        (0..self.count)
            .map(|k| {
                if k == 0 {
                    self.lo
                } else if k == self.count - 1 {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * (k as f64 / (self.count - 1) as f64)
                }
            })
            .collect()
    }
}

/// Fully resolved, validated experiment description.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    pub game: String,
    pub mode: Mode,
    pub grid_points: usize,
    pub x: Option<Vec<f64>>,
    pub sweep: Option<SweepRange>,
    pub eps1: Option<f64>,
    pub eps2: Option<f64>,
    pub eps3: Option<f64>,
    pub schedule: Vec<f64>,
    pub sequence: Option<ParameterSequence>,
    pub tie_tol: f64,
    /// Locality radius / containment tolerance; `None` means one grid
    /// spacing, resolved when the grid is built.
    pub delta: Option<f64>,
    pub out: PathBuf,
    pub seed: u64,
    pub threads: Option<usize>,
    pub variant: Variant,
}

/// Flag-level overrides, applied after the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub mode: Option<String>,
    pub game: Option<String>,
    pub grid: Option<usize>,
    pub x: Option<f64>,
    pub eps1: Option<f64>,
    /// Number or `off`.
    pub eps2: Option<String>,
    /// Number or `off`.
    pub eps3: Option<String>,
    /// `harmonic:LIMIT:SIDE[:COUNT]`.
    pub seq: Option<String>,
    pub out: Option<String>,
    pub tie_tol: Option<f64>,
    pub delta: Option<f64>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub closed: bool,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ScalarOrVec {
    Scalar(f64),
    Vec(Vec<f64>),
}

impl ScalarOrVec {
    fn into_vec(self) -> Vec<f64> {
        match self {
            ScalarOrVec::Scalar(v) => vec![v],
            ScalarOrVec::Vec(v) => v,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum EpsOrOff {
    Num(f64),
    Text(String),
}

fn resolve_eps_component(field: &str, v: Option<EpsOrOff>) -> Result<Option<f64>> {
    match v {
        None => Ok(None),
        Some(EpsOrOff::Num(n)) => Ok(Some(n)),
        Some(EpsOrOff::Text(t)) if t == "off" => Ok(None),
        Some(EpsOrOff::Text(t)) => Err(Error::config(
            field,
            format!("expected a number or \"off\", got `{t}`"),
        )),
    }
}

fn resolve_eps_flag(field: &str, v: &str) -> Result<Option<f64>> {
    if v == "off" {
        return Ok(None);
    }
    v.parse::<f64>().map(Some).map_err(|_| {
        Error::config(field, format!("expected a number or `off`, got `{v}`"))
    })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    lo: f64,
    hi: f64,
    count: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSequence {
    kind: String,
    #[serde(default)]
    side: Option<String>,
    limit: ScalarOrVec,
    #[serde(default)]
    count: Option<usize>,
    #[serde(default)]
    scale: Option<f64>,
    #[serde(default)]
    points: Option<Vec<ScalarOrVec>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    game: Option<String>,
    #[serde(default)]
    mode: Option<String>,
    #[serde(default)]
    grid: Option<usize>,
    #[serde(default)]
    x: Option<ScalarOrVec>,
    #[serde(default)]
    sweep: Option<RawSweep>,
    #[serde(default)]
    eps1: Option<f64>,
    #[serde(default)]
    eps2: Option<EpsOrOff>,
    #[serde(default)]
    eps3: Option<EpsOrOff>,
    #[serde(default)]
    schedule: Option<Vec<f64>>,
    #[serde(default)]
    sequence: Option<RawSequence>,
    #[serde(default)]
    tie_tol: Option<f64>,
    #[serde(default)]
    delta: Option<f64>,
    #[serde(default)]
    out: Option<String>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    threads: Option<usize>,
    #[serde(default)]
    variant: Option<String>,
}

fn build_sequence(raw: RawSequence) -> Result<ParameterSequence> {
    let limit = ParameterPoint::new(raw.limit.into_vec());
    match raw.kind.as_str() {
        "harmonic" => {
            let count = raw.count.unwrap_or(DEFAULT_SEQUENCE_COUNT);
            let scale = raw.scale.unwrap_or(1.0);
            let side = raw.side.as_deref().ok_or_else(|| {
                Error::config("sequence.side", "harmonic sequences need side = above | below")
            })?;
            let seq = match side {
                "above" => ParameterSequence::harmonic_above(limit, count, scale),
                "below" => ParameterSequence::harmonic_below(limit, count, scale),
                other => {
                    return Err(Error::config(
                        "sequence.side",
                        format!("expected above | below, got `{other}`"),
                    ))
                }
            };
            seq.map_err(|e| Error::config("sequence", e.to_string()))
        }
        "custom" => {
            let points = raw
                .points
                .ok_or_else(|| Error::config("sequence.points", "custom sequences need points"))?
                .into_iter()
                .map(|p| ParameterPoint::new(p.into_vec()))
                .collect();
            ParameterSequence::custom(limit, points)
                .map_err(|e| Error::config("sequence", e.to_string()))
        }
        other => Err(Error::config(
            "sequence.kind",
            format!("expected harmonic | custom, got `{other}`"),
        )),
    }
}

fn parse_seq_flag(spec: &str) -> Result<ParameterSequence> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() < 3 || parts.len() > 4 || parts[0] != "harmonic" {
        return Err(Error::config(
            "--seq",
            format!("expected harmonic:LIMIT:SIDE[:COUNT], got `{spec}`"),
        ));
    }
    let limit: f64 = parts[1]
        .parse()
        .map_err(|_| Error::config("--seq", format!("bad limit `{}`", parts[1])))?;
    let count = match parts.get(3) {
        None => DEFAULT_SEQUENCE_COUNT,
        Some(c) => c
            .parse()
            .map_err(|_| Error::config("--seq", format!("bad count `{c}`")))?,
    };
    let limit = ParameterPoint::scalar(limit);
    let seq = match parts[2] {
        "above" => ParameterSequence::harmonic_above(limit, count, 1.0),
        "below" => ParameterSequence::harmonic_below(limit, count, 1.0),
        other => {
            return Err(Error::config(
                "--seq",
                format!("expected side above | below, got `{other}`"),
            ))
        }
    };
    seq.map_err(|e| Error::config("--seq", e.to_string()))
}

impl ExperimentConfig {
    /// Merge an optional JSON config text with flag overrides and validate.
    pub fn resolve(file_text: Option<&str>, ov: &Overrides) -> Result<ExperimentConfig> {
        let raw: RawConfig = match file_text {
            None => RawConfig::default(),
            Some(text) => serde_json::from_str(text)
                .map_err(|e| Error::config("config", e.to_string()))?,
        };

        let mode_str = ov
            .mode
            .clone()
            .or(raw.mode)
            .ok_or_else(|| Error::config("mode", "mode is required"))?;
        let mode = Mode::parse(&mode_str)?;

        let game = ov
            .game
            .clone()
            .or(raw.game)
            .unwrap_or_else(|| "motivating".to_string());
        if game.is_empty() {
            return Err(Error::config("game", "game name is empty"));
        }

        let grid_points = ov.grid.or(raw.grid).unwrap_or(DEFAULT_GRID);
        if grid_points < 2 {
            return Err(Error::config(
                "grid",
                format!("need at least 2 points per axis, got {grid_points}"),
            ));
        }

        let x = match (ov.x, raw.x) {
            (Some(v), _) => Some(vec![v]),
            (None, Some(sv)) => Some(sv.into_vec()),
            (None, None) => None,
        };
        if let Some(coords) = &x {
            if coords.is_empty() || coords.iter().any(|v| !v.is_finite()) {
                return Err(Error::config("x", "parameter must be nonempty and finite"));
            }
        }

        let sweep = match raw.sweep {
            None => None,
            Some(rs) => {
                if !(rs.lo < rs.hi) || !rs.lo.is_finite() || !rs.hi.is_finite() {
                    return Err(Error::config(
                        "sweep",
                        format!("need finite lo < hi, got [{}, {}]", rs.lo, rs.hi),
                    ));
                }
                if rs.count < 2 {
                    return Err(Error::config(
                        "sweep.count",
                        format!("need at least 2 points, got {}", rs.count),
                    ));
                }
                Some(SweepRange {
                    lo: rs.lo,
                    hi: rs.hi,
                    count: rs.count,
                })
            }
        };

        let eps1 = ov.eps1.or(raw.eps1);
        if let Some(e) = eps1 {
            if !(e > 0.0) || !e.is_finite() {
                return Err(Error::config(
                    "eps1",
                    format!("must be finite and positive, got {e}"),
                ));
            }
        }
        let eps2 = match &ov.eps2 {
            Some(text) => resolve_eps_flag("--eps2", text)?,
            None => resolve_eps_component("eps2", raw.eps2)?,
        };
        let eps3 = match &ov.eps3 {
            Some(text) => resolve_eps_flag("--eps3", text)?,
            None => resolve_eps_component("eps3", raw.eps3)?,
        };
        for (name, v) in [("eps2", eps2), ("eps3", eps3)] {
            if let Some(e) = v {
                if !(e > 0.0) || !e.is_finite() {
                    return Err(Error::config(
                        name,
                        format!("must be finite and positive when active, got {e}"),
                    ));
                }
            }
        }

        let schedule = raw.schedule.unwrap_or_else(|| DEFAULT_SCHEDULE.to_vec());
        if schedule.is_empty() {
            return Err(Error::config("schedule", "schedule is empty"));
        }
        for pair in schedule.windows(2) {
            if !(pair[1] < pair[0]) {
                return Err(Error::config(
                    "schedule",
                    format!(
                        "levels must strictly decrease, got {} then {}",
                        pair[0], pair[1]
                    ),
                ));
            }
        }
        if schedule.iter().any(|&e| !(e > 0.0) || !e.is_finite()) {
            return Err(Error::config("schedule", "levels must be finite and positive"));
        }

        let sequence = match &ov.seq {
            Some(spec) => Some(parse_seq_flag(spec)?),
            None => raw.sequence.map(build_sequence).transpose()?,
        };

        let tie_tol = ov.tie_tol.or(raw.tie_tol).unwrap_or(DEFAULT_TIE_TOL);
        if !(tie_tol >= 0.0) || !tie_tol.is_finite() {
            return Err(Error::config(
                "tie_tol",
                format!("must be finite and nonnegative, got {tie_tol}"),
            ));
        }
        let delta = ov.delta.or(raw.delta);
        if let Some(d) = delta {
            if !(d >= 0.0) || !d.is_finite() {
                return Err(Error::config(
                    "delta",
                    format!("must be finite and nonnegative, got {d}"),
                ));
            }
        }

        let out = PathBuf::from(ov.out.clone().or(raw.out).unwrap_or_else(|| "out".into()));
        let seed = ov.seed.or(raw.seed).unwrap_or(0);
        let threads = ov.threads.or(raw.threads);
        if threads == Some(0) {
            return Err(Error::config("threads", "thread count must be positive"));
        }
        let variant = if ov.closed {
            Variant::Closed
        } else {
            match raw.variant.as_deref() {
                None | Some("open") => Variant::Open,
                Some("closed") => Variant::Closed,
                Some(other) => {
                    return Err(Error::config(
                        "variant",
                        format!("expected open | closed, got `{other}`"),
                    ))
                }
            }
        };

        let cfg = ExperimentConfig {
            game,
            mode,
            grid_points,
            x,
            sweep,
            eps1,
            eps2,
            eps3,
            schedule,
            sequence,
            tie_tol,
            delta,
            out,
            seed,
            threads,
            variant,
        };
        cfg.check_mode_requirements()?;
        Ok(cfg)
    }

    fn check_mode_requirements(&self) -> Result<()> {
        let need = |field: &str, present: bool| -> Result<()> {
            if present {
                Ok(())
            } else {
                Err(Error::config(
                    field,
                    format!("mode `{:?}` requires `{field}`", self.mode).to_lowercase(),
                ))
            }
        };
        match self.mode {
            Mode::Nash => need("x", self.x.is_some()),
            Mode::Approx | Mode::Verify => {
                need("x", self.x.is_some())?;
                need("eps1", self.eps1.is_some())
            }
            Mode::Sweep => need("sweep", self.sweep.is_some()),
            Mode::Limits => need("sequence", self.sequence.is_some()),
        }
    }

    /// The epsilon triple for approx/verify modes (eps1 checked present).
    pub fn epsilon(&self) -> crate::game::EpsilonTriple {
        crate::game::EpsilonTriple::new(
            self.eps1.expect("mode validation guarantees eps1"),
            self.eps2,
            self.eps3,
        )
    }
}
