//! Exact and epsilon-approximate Nash equilibrium sets of parameterized
//! games on discretized compact strategy boxes, with tools for studying
//! how those sets move as the parameter and the approximation level
//! change.
//!
//! A game assigns each player a box of pure strategies and a payoff
//! function that also depends on a parameter vector `x`. Discretizing
//! every box with a uniform grid makes each player's best-response set
//! computable by enumeration, so the grid Nash set `h(x)` (profiles where
//! every player best-responds, up to a tie tolerance) and its relaxations
//! `h^eps(x)` (payoff slack `eps1`, payoff truncation at `1/eps2`,
//! feasibility slack `eps3`) are finite sets that can be compared
//! exactly.
//!
//! The toolkit computes:
//!
//! - [`equilibrium::nash_set`] and [`equilibrium::approx_nash_set`]:
//!   the full exact and approximate equilibrium sets over a grid;
//! - [`equilibrium::verify_sandwich`]: the inclusion chain
//!   `h(x) ⊆ h^eps_open(x) ⊆ h^eps_closed(x) ⊆ h^2eps_open(x)`;
//! - [`equilibrium::eps_intersection_limit`]: running intersections of
//!   approximate sets along a shrinking epsilon schedule;
//! - [`setlimits::kuratowski_liminf`] / [`setlimits::kuratowski_limsup`]:
//!   finite inner and outer set-limit surrogates for a sequence of sets;
//! - [`setlimits::verify_limit_chain`]: the double-limit diagnostic that
//!   sandwiches the limit set `h(x*)` between set limits of exact and
//!   approximate sets along a parameter sequence `x_n -> x*`.
//!
//! All set comparisons use an index metric: distances are computed from
//! grid index offsets times the axis spacings, so geometry is exact in
//! the lattice and immune to coordinate rounding. Everything is
//! deterministic given a configuration; parallelism (rayon) never changes
//! results, only wall-clock time.
//!
//! The `examples/` directory is the guided tour; the `nash-sens` binary
//! exposes the same flows as a batch CLI over JSON configs.

// Validation sites negate comparisons (`!(x > 0.0)`) on purpose: the
// negated form rejects NaN together with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod driver;
pub mod equilibrium;
pub mod error;
pub mod game;
pub mod games;
pub mod grid;
pub mod setlimits;

pub use error::{Error, Result};
