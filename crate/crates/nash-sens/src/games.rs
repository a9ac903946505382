//! Built-in games and their closed-form equilibrium descriptions.
//!
//! The motivating two-player game lives here together with analytic
//! formulas for its best responses, value functions, exact equilibrium set
//! `h(x)`, and the region decomposition of the open approximate set
//! `h_eps(x)`. The formulas are independent of the grid enumeration code,
//! so tests can confront the two against each other.
//!
//! Payoffs of the motivating game on `y = (y1, y2) in [0,1]^2` with
//! parameter `x in [0, 2]`:
//!
//! ```text
//! f1(x, y) = -y1 * (y1 - 2 * x * y2)
//! f2(x, y) = -y2 * (y2 - 2 * y1)
//! ```
//!
//! Best responses are `BR1(y2) = min(x * y2, 1)` and `BR2(y1) = y1`; the
//! exact equilibrium set jumps from `{(0,0)}` for `x < 1` to the whole
//! diagonal at `x = 1` and to `{(0,0), (1,1)}` for `x > 1`, which is the
//! discontinuity all the set-convergence machinery is aimed at.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::GameSpec;
use crate::grid::{Grid, ProfileSet};

/// The running example: quadratic coupling with a jump in its equilibrium
/// set at `x = 1`.
pub fn motivating_game() -> GameSpec {
    GameSpec::new(
        "motivating",
        vec![vec![(0.0, 1.0)], vec![(0.0, 1.0)]],
        vec![
            Arc::new(|x: &[f64], y: &[f64]| -y[0] * (y[0] - 2.0 * x[0] * y[1])),
            Arc::new(|_x: &[f64], y: &[f64]| -y[1] * (y[1] - 2.0 * y[0])),
        ],
    )
    .expect("static game definition is well formed")
    .with_param_box(vec![(0.0, 2.0)])
    // |f1| <= 1 + 2*2*1 = 5 is crude; on the box the true range is
    // [-1, 3] for f1 and [-1, 1] for f2.
    .with_payoff_bound(3.0)
}

/// Closed-form best response of player 1: `min(x * y2, 1)`.
pub fn oracle_br1(x: f64, y2: f64) -> f64 {
    (x * y2).min(1.0)
}

/// Closed-form best response of player 2: `y1`.
pub fn oracle_br2(y1: f64) -> f64 {
    y1
}

/// Closed-form value of player 1 against `y2`.
pub fn oracle_v1(x: f64, y2: f64) -> f64 {
    let t = x * y2;
    if t <= 1.0 {
        t * t
    } else {
        2.0 * t - 1.0
    }
}

/// Closed-form value of player 2 against `y1`.
pub fn oracle_v2(y1: f64) -> f64 {
    y1 * y1
}

/// Labels for the pieces of the closed-form sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionLabel {
    /// Near-diagonal strip present for every parameter.
    A,
    /// Single upper band, moderate `x > 1`.
    B1,
    /// Lower part of the split upper band, larger `x`.
    B2,
    /// Upper part of the split upper band, larger `x`.
    C,
    /// The exact diagonal (only at `x = 1`).
    Diagonal,
    /// A finite list of exact equilibrium points.
    Points,
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegionLabel::A => "A",
            RegionLabel::B1 => "B1",
            RegionLabel::B2 => "B2",
            RegionLabel::C => "C",
            RegionLabel::Diagonal => "diagonal",
            RegionLabel::Points => "points",
        };
        f.write_str(s)
    }
}

/// One piece of a closed-form (approximate) equilibrium set, with an exact
/// membership predicate on strategy coordinates.
#[derive(Debug, Clone)]
pub enum Region {
    /// `y2 * |1 - x| < 2 * sqrt(eps)` and
    /// `y1 in (max(1,x) * y2 - sqrt(eps), min(1,x) * y2 + sqrt(eps))`.
    StripA { x: f64, sqrt_eps: f64 },
    /// `y2 in (y2_lo, y2_hi)` (upper end closed iff `hi_closed`) and
    /// `y1 in (x * y2 - sqrt((x * y2 - 1)^2 + eps), y2 + sqrt(eps))`.
    Band {
        label: RegionLabel,
        x: f64,
        eps: f64,
        sqrt_eps: f64,
        y2_lo: f64,
        y2_hi: f64,
        hi_closed: bool,
    },
    /// `y1 = y2`.
    Diagonal,
    /// A finite set of profiles.
    Points(Vec<(f64, f64)>),
}

impl Region {
    pub fn label(&self) -> RegionLabel {
        match self {
            Region::StripA { .. } => RegionLabel::A,
            Region::Band { label, .. } => *label,
            Region::Diagonal => RegionLabel::Diagonal,
            Region::Points(_) => RegionLabel::Points,
        }
    }

    /// Exact membership of `(y1, y2)`; finite sets and the diagonal use a
    /// hair of slack so grid coordinates that are analytically on the set
    /// are not lost to representation noise.
    pub fn contains(&self, y1: f64, y2: f64) -> bool {
        const EXACT_TOL: f64 = 1e-12;
        match *self {
            Region::StripA { x, sqrt_eps } => {
                y2 >= 0.0
                    && y2 * (1.0 - x).abs() < 2.0 * sqrt_eps
                    && y1 > x.max(1.0) * y2 - sqrt_eps
                    && y1 < x.min(1.0) * y2 + sqrt_eps
            }
            Region::Band {
                x,
                eps,
                sqrt_eps,
                y2_lo,
                y2_hi,
                hi_closed,
                ..
            } => {
                let hi_ok = if hi_closed { y2 <= y2_hi } else { y2 < y2_hi };
                if !(y2 > y2_lo && hi_ok) {
                    return false;
                }
                let t = x * y2;
                let lower = t - ((t - 1.0) * (t - 1.0) + eps).sqrt();
                y1 > lower && y1 < y2 + sqrt_eps
            }
            Region::Diagonal => (y1 - y2).abs() <= EXACT_TOL,
            Region::Points(ref pts) => pts
                .iter()
                .any(|&(p1, p2)| (y1 - p1).abs() <= EXACT_TOL && (y2 - p2).abs() <= EXACT_TOL),
        }
    }
}

/// A closed-form set: union of regions with a membership test and helpers
/// for sampling it onto a grid.
#[derive(Debug, Clone)]
pub struct OracleSet {
    pub regions: Vec<Region>,
}

impl OracleSet {
    pub fn contains(&self, y1: f64, y2: f64) -> bool {
        self.regions.iter().any(|r| r.contains(y1, y2))
    }

    /// All grid profiles whose coordinates satisfy the membership test.
    /// The grid must be the motivating game's: two players, one axis each
    /// on `[0, 1]`.
    pub fn grid_sample(&self, grid: &Grid) -> Result<ProfileSet> {
        check_motivating_grid(grid)?;
        let mut coords = [0.0f64; 2];
        let mut hits = Vec::new();
        for p in 0..grid.len() {
            grid.profile_coords_into(p, &mut coords);
            if self.contains(coords[0], coords[1]) {
                hits.push(p);
            }
        }
        Ok(ProfileSet::from_indices(hits, grid))
    }

    /// True when `(y1, y2)` sits within roughly `radius` of some region
    /// boundary, decided by probing the membership predicate on a ring of
    /// offsets (clamped into the unit square) and looking for disagreement.
    pub fn near_boundary(&self, y1: f64, y2: f64, radius: f64) -> bool {
        let base = self.contains(y1, y2);
        let clamp = |v: f64| v.clamp(0.0, 1.0);
        for &r in &[radius, radius * 0.5] {
            for k in 0..16 {
                let ang = std::f64::consts::TAU * (k as f64) / 16.0;
                let p1 = clamp(y1 + r * ang.cos());
                let p2 = clamp(y2 + r * ang.sin());
                if self.contains(p1, p2) != base {
                    return true;
                }
            }
        }
        false
    }
}

fn check_motivating_grid(grid: &Grid) -> Result<()> {
    let ok = grid.num_players() == 2
        && grid.player_dims(0) == 1
        && grid.player_dims(1) == 1
        && (0..2).all(|i| {
            let s = grid.axis_spec(i, 0);
            s.lo == 0.0 && s.hi == 1.0
        });
    if ok {
        Ok(())
    } else {
        Err(Error::GridMismatch(
            "closed-form sets are defined on the motivating game's [0,1]^2 grid".into(),
        ))
    }
}

fn check_param(x: f64) -> Result<()> {
    if !x.is_finite() || !(0.0..=2.0).contains(&x) {
        return Err(Error::Domain(format!(
            "motivating game parameter must lie in [0, 2], got {x}"
        )));
    }
    Ok(())
}

/// Closed-form exact equilibrium set `h(x)` of the motivating game.
pub fn oracle_h(x: f64) -> Result<OracleSet> {
    check_param(x)?;
    let regions = if x < 1.0 {
        vec![Region::Points(vec![(0.0, 0.0)])]
    } else if x == 1.0 {
        vec![Region::Diagonal]
    } else {
        vec![Region::Points(vec![(0.0, 0.0), (1.0, 1.0)])]
    };
    Ok(OracleSet { regions })
}

/// Roots `(r_minus, r_plus)` of the band-splitting quadratic for `x > 1`,
/// or `None` while the discriminant is negative (single-band regime).
pub fn b2c_roots(x: f64, eps: f64) -> Option<(f64, f64)> {
    let q = (1.0 - eps.sqrt()) * x + eps.sqrt();
    let disc = q * q - (2.0 * x - 1.0);
    if disc < 0.0 {
        return None;
    }
    let s = disc.sqrt();
    let den = 2.0 * x - 1.0;
    Some(((q - s) / den, (q + s) / den))
}

/// Closed-form open approximate equilibrium set `h_eps(x)` of the
/// motivating game, for a payoff-only epsilon in `(0, 1/4)`.
pub fn oracle_h_eps(x: f64, eps: f64) -> Result<OracleSet> {
    check_param(x)?;
    if !(eps > 0.0 && eps < 0.25) {
        return Err(Error::Domain(format!(
            "closed-form approximate set needs eps in (0, 0.25), got {eps}"
        )));
    }
    let sqrt_eps = eps.sqrt();
    let mut regions = vec![Region::StripA { x, sqrt_eps }];
    if x > 1.0 {
        match b2c_roots(x, eps) {
            None => regions.push(Region::Band {
                label: RegionLabel::B1,
                x,
                eps,
                sqrt_eps,
                y2_lo: 1.0 / x,
                y2_hi: 1.0,
                hi_closed: true,
            }),
            Some((r_minus, r_plus)) => {
                if r_minus > 1.0 / x {
                    regions.push(Region::Band {
                        label: RegionLabel::B2,
                        x,
                        eps,
                        sqrt_eps,
                        y2_lo: 1.0 / x,
                        y2_hi: r_minus,
                        hi_closed: false,
                    });
                }
                if r_plus < 1.0 {
                    regions.push(Region::Band {
                        label: RegionLabel::C,
                        x,
                        eps,
                        sqrt_eps,
                        y2_lo: r_plus,
                        y2_hi: 1.0,
                        hi_closed: true,
                    });
                }
            }
        }
    }
    Ok(OracleSet { regions })
}

/// A strictly concave random quadratic game for stress tests: player `i`
/// maximizes, over each own coordinate `y_ik`,
///
/// ```text
/// -a_ik * y_ik^2 + (b_ik + c_ik * x0 + sum_j d_ijkl * y_jl) * y_ik
/// ```
///
/// with `a_ik in [range/2, range]` and the linear coefficients uniform in
/// `[-range, range]`. Strategy boxes are `[0, 1]` per coordinate and the
/// parameter box is `[0, 2]` (one coordinate). The draw order is fixed, so
/// a seed pins the game exactly. `range = 0` degenerates to the constant
/// zero game, whose Nash set is the full grid.
pub fn random_quadratic_game(
    seed: u64,
    players: usize,
    dims: usize,
    coeff_range: f64,
) -> Result<GameSpec> {
    if players == 0 || dims == 0 {
        return Err(Error::Domain(
            "random quadratic game needs at least one player and one dimension".into(),
        ));
    }
    // Zero is allowed: every payoff is then the constant zero, so every
    // profile is optimal for every player and the Nash set is the full
    // grid (degenerate but well-defined).
    if !(coeff_range >= 0.0) || !coeff_range.is_finite() {
        return Err(Error::Domain(format!(
            "coefficient range must be finite and nonnegative, got {coeff_range}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let other_coords = dims * (players - 1);
    // Per own dim: (a, b, c, d-row over other players' coords).
    type DimCoef = (f64, f64, f64, Vec<f64>);
    let mut coef: Vec<Vec<DimCoef>> = Vec::with_capacity(players);
    for _ in 0..players {
        let mut per_dim = Vec::with_capacity(dims);
        for _ in 0..dims {
            let a = coeff_range * (0.5 + 0.5 * rng.gen::<f64>());
            let b = rng.gen_range(-coeff_range..=coeff_range);
            let c = rng.gen_range(-coeff_range..=coeff_range);
            let d: Vec<f64> = (0..other_coords)
                .map(|_| rng.gen_range(-coeff_range..=coeff_range))
                .collect();
            per_dim.push((a, b, c, d));
        }
        coef.push(per_dim);
    }
    // |f_i| <= sum_k (a + |b| + 2|c| + sum |d|) on the unit boxes, x <= 2.
    let bound = coef
        .iter()
        .map(|per_dim| {
            per_dim
                .iter()
                .map(|(a, b, c, d)| a + b.abs() + 2.0 * c.abs() + d.iter().map(|v| v.abs()).sum::<f64>())
                .sum::<f64>()
        })
        .fold(0.0f64, f64::max);
    let boxes = vec![vec![(0.0, 1.0); dims]; players];
    let payoffs = (0..players)
        .map(|i| {
            let per_dim = coef[i].clone();
            let own_off = i * dims;
            let f: crate::game::PayoffFn = Arc::new(move |x: &[f64], y: &[f64]| {
                let mut total = 0.0;
                for (k, (a, b, c, d)) in per_dim.iter().enumerate() {
                    let yik = y[own_off + k];
                    let mut lin = b + c * x[0];
                    let mut di = 0;
                    for (j, chunk) in y.chunks(per_dim.len()).enumerate() {
                        if j == i {
                            continue;
                        }
                        for &yjl in chunk {
                            lin += d[di] * yjl;
                            di += 1;
                        }
                    }
                    total += -a * yik * yik + lin * yik;
                }
                total
            });
            f
        })
        .collect();
    Ok(GameSpec::new(
        format!("quadratic:{seed}:{players}:{dims}"),
        boxes,
        payoffs,
    )?
    .with_param_box(vec![(0.0, 2.0)])
    .with_payoff_bound(bound))
}

/// Resolve a game name: `motivating`, or `quadratic:SEED:PLAYERS:DIMS`
/// (coefficient range fixed at 1).
pub fn lookup(name: &str) -> Result<GameSpec> {
    if name == "motivating" {
        return Ok(motivating_game());
    }
    if let Some(rest) = name.strip_prefix("quadratic:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() == 3 {
            let seed = parts[0].parse::<u64>();
            let players = parts[1].parse::<usize>();
            let dims = parts[2].parse::<usize>();
            if let (Ok(seed), Ok(players), Ok(dims)) = (seed, players, dims) {
                return random_quadratic_game(seed, players, dims, 1.0);
            }
        }
    }
    Err(Error::UnknownGame(name.to_string()))
}
