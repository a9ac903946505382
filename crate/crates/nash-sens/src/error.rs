//! Error type shared by every module in the crate.

use std::path::PathBuf;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes surfaced by the library and the CLI driver.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An axis was declared with a degenerate or inverted interval, or with
    /// fewer than two grid points.
    #[error("invalid axis: lo={lo}, hi={hi}, points={points} (need lo < hi, both finite, points >= 2)")]
    InvalidAxis { lo: f64, hi: f64, points: usize },

    /// Two objects built against different grids were combined.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A profile or point set was used with a grid other than the one it was
    /// sampled from.
    #[error("set was built on a different grid than the one supplied")]
    GridIdentityMismatch,

    /// A strategy or parameter vector lies outside its declared box.
    #[error("point outside declared box: {0}")]
    OutOfBox(String),

    /// A player's feasible strategy set came back empty for some context.
    #[error("player {player} has no feasible strategy in the supplied context")]
    Infeasible { player: usize },

    /// An operation that needs a nonempty set received an empty one.
    #[error("operation requires a nonempty set")]
    EmptySetInput,

    /// An epsilon component violates its admissible range.
    #[error("invalid epsilon: {0}")]
    InvalidEpsilon(String),

    /// An epsilon schedule is empty, non-decreasing, or toggles a disabled
    /// component.
    #[error("invalid epsilon schedule: {0}")]
    InvalidSchedule(String),

    /// A parameter sequence is too short or malformed.
    #[error("invalid parameter sequence: {0}")]
    InvalidSequence(String),

    /// A tail start index points past the end of a sequence of sets.
    #[error("tail start {tail_start} out of range for {len} sets")]
    TailStartOutOfRange { tail_start: usize, len: usize },

    /// A configuration file or flag set is incomplete or inconsistent.
    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },

    /// A game name passed to the registry is not recognized.
    #[error("unknown game `{0}`")]
    UnknownGame(String),

    /// A numeric-domain violation not covered by a more specific variant.
    #[error("domain error: {0}")]
    Domain(String),

    /// Filesystem failure while writing artifacts.
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// JSON serialization or parsing failure.
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Attach a path to a raw io error.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Shorthand for a config error naming the offending field.
    pub fn config(field: &str, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.to_string(),
            message: message.into(),
        }
    }
}
