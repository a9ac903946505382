//! Parameterized games: payoffs, feasibility, epsilon relaxations, and the
//! per-context evaluation kernel that every equilibrium routine shares.
//!
//! A game has `m` players. Player `i` picks a strategy from a closed box
//! `Y_i`; the joint profile is scored by payoff functions `f_i(x, y)` that
//! also see a parameter vector `x`. Optional feasibility predicates restrict
//! which of player `i`'s strategies are admissible given everyone else's
//! choices (and `x`). All set-valued analysis happens on a [`Grid`] laid
//! over the product of the boxes.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{AxisSpec, Grid, GridSpec};

/// Identifies one player (0-based).
pub type PlayerId = usize;

/// A parameter vector, wrapped for serialization and sequence handling.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ParameterPoint {
    pub coords: Vec<f64>,
}

impl ParameterPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        ParameterPoint { coords }
    }

    pub fn scalar(x: f64) -> Self {
        ParameterPoint { coords: vec![x] }
    }
}

/// The three-component epsilon of the approximate equilibrium notion:
/// `eps1` relaxes payoff optimality, `eps2` (when active) truncates payoffs
/// to `[-1/eps2, 1/eps2]`, and `eps3` (when active) admits strategies within
/// `eps3` of the feasible set instead of only feasible ones.
///
/// `None` components are disabled: no truncation, exact feasibility.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct EpsilonTriple {
    pub eps1: f64,
    pub eps2: Option<f64>,
    pub eps3: Option<f64>,
}

impl EpsilonTriple {
    /// Relax payoff optimality only; truncation and feasibility slack stay
    /// disabled.
    pub fn payoff_only(eps1: f64) -> Self {
        EpsilonTriple {
            eps1,
            eps2: None,
            eps3: None,
        }
    }

    pub fn new(eps1: f64, eps2: Option<f64>, eps3: Option<f64>) -> Self {
        EpsilonTriple { eps1, eps2, eps3 }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(self.eps1) {
            return Err(Error::InvalidEpsilon(format!(
                "eps1 must be finite and positive, got {}",
                self.eps1
            )));
        }
        for (name, c) in [("eps2", self.eps2), ("eps3", self.eps3)] {
            if let Some(v) = c {
                if !ok(v) {
                    return Err(Error::InvalidEpsilon(format!(
                        "{name} must be finite and positive when active, got {v}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Componentwise doubling; disabled components stay disabled. Note that
    /// doubling `eps2` tightens the truncation bound `1/eps2`.
    pub fn doubled(&self) -> Self {
        EpsilonTriple {
            eps1: 2.0 * self.eps1,
            eps2: self.eps2.map(|v| 2.0 * v),
            eps3: self.eps3.map(|v| 2.0 * v),
        }
    }

    /// True when every active component of `self` is <= the matching
    /// component of `other` and the two agree on which components are
    /// active. This is the comparability needed for nestedness results.
    pub fn component_le(&self, other: &EpsilonTriple) -> bool {
        let le = |a: Option<f64>, b: Option<f64>| match (a, b) {
            (None, None) => true,
            (Some(x), Some(y)) => x <= y,
            _ => false,
        };
        self.eps1 <= other.eps1 && le(self.eps2, other.eps2) && le(self.eps3, other.eps3)
    }
}

impl fmt::Display for EpsilonTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |c: Option<f64>| match c {
            Some(v) => format!("{v}"),
            None => "off".to_string(),
        };
        write!(
            f,
            "(eps1={}, eps2={}, eps3={})",
            self.eps1,
            opt(self.eps2),
            opt(self.eps3)
        )
    }
}

/// Clamp a payoff to `[-1/eps2, 1/eps2]`; `None` disables truncation.
pub fn truncate_payoff(v: f64, eps2: Option<f64>) -> f64 {
    match eps2 {
        None => v,
        Some(e) => {
            let bound = 1.0 / e;
            v.clamp(-bound, bound)
        }
    }
}

/// Payoff of one player: arguments are the parameter vector and the joint
/// strategy coordinates (player-major order).
pub type PayoffFn = Arc<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync>;

/// Feasibility of one player's strategy inside a joint profile: the
/// candidate strategy is already written into the joint coordinates when
/// the predicate runs, so constraints may couple it with the opponents'
/// blocks and the parameter.
pub type FeasibilityFn = Arc<dyn Fn(&[f64], &[f64]) -> bool + Send + Sync>;

/// A parameterized game on products of boxes.
#[derive(Clone)]
pub struct GameSpec {
    name: String,
    /// Per player, per dimension: the closed strategy interval.
    boxes: Vec<Vec<(f64, f64)>>,
    payoffs: Vec<PayoffFn>,
    feasibility: Vec<Option<FeasibilityFn>>,
    param_box: Option<Vec<(f64, f64)>>,
    payoff_bound: Option<f64>,
}

impl fmt::Debug for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GameSpec")
            .field("name", &self.name)
            .field("boxes", &self.boxes)
            .field("param_box", &self.param_box)
            .field("payoff_bound", &self.payoff_bound)
            .finish_non_exhaustive()
    }
}

impl GameSpec {
    /// `boxes[i]` lists player `i`'s strategy intervals; `payoffs[i]` is
    /// that player's objective. Lengths must match and every interval must
    /// be nondegenerate.
    pub fn new(
        name: impl Into<String>,
        boxes: Vec<Vec<(f64, f64)>>,
        payoffs: Vec<PayoffFn>,
    ) -> Result<Self> {
        if boxes.is_empty() || boxes.len() != payoffs.len() {
            return Err(Error::Domain(
                "need one strategy box and one payoff per player".into(),
            ));
        }
        for player in &boxes {
            if player.is_empty() {
                return Err(Error::Domain("every player needs at least one axis".into()));
            }
            for &(lo, hi) in player {
                if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                    return Err(Error::Domain(format!(
                        "strategy interval [{lo}, {hi}] is degenerate"
                    )));
                }
            }
        }
        let n = boxes.len();
        Ok(GameSpec {
            name: name.into(),
            boxes,
            payoffs,
            feasibility: vec![None; n],
            param_box: None,
            payoff_bound: None,
        })
    }

    /// Install a feasibility predicate for player `i`.
    pub fn with_feasibility(mut self, i: PlayerId, f: FeasibilityFn) -> Self {
        self.feasibility[i] = Some(f);
        self
    }

    /// Declare the admissible parameter box; parameters are validated
    /// against it on every evaluation.
    pub fn with_param_box(mut self, param_box: Vec<(f64, f64)>) -> Self {
        self.param_box = Some(param_box);
        self
    }

    /// Declare a bound `|f_i| <= b` valid over the whole domain, used to
    /// decide when a truncation level cannot bind.
    pub fn with_payoff_bound(mut self, bound: f64) -> Self {
        self.payoff_bound = Some(bound);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_players(&self) -> usize {
        self.boxes.len()
    }

    pub fn dims(&self, i: PlayerId) -> usize {
        self.boxes[i].len()
    }

    pub fn strategy_box(&self, i: PlayerId) -> &[(f64, f64)] {
        &self.boxes[i]
    }

    pub fn param_box(&self) -> Option<&[(f64, f64)]> {
        self.param_box.as_deref()
    }

    pub fn payoff_bound(&self) -> Option<f64> {
        self.payoff_bound
    }

    pub fn has_feasibility(&self, i: PlayerId) -> bool {
        self.feasibility[i].is_some()
    }

    /// Uniform grid spec with `points` nodes per axis over this game's
    /// strategy boxes.
    pub fn grid_spec(&self, points: usize) -> GridSpec {
        GridSpec::new(
            self.boxes
                .iter()
                .map(|player| {
                    player
                        .iter()
                        .map(|&(lo, hi)| AxisSpec::new(lo, hi, points))
                        .collect()
                })
                .collect(),
        )
    }

    /// Check that `grid` was built over exactly this game's boxes.
    pub fn check_grid(&self, grid: &Grid) -> Result<()> {
        if grid.num_players() != self.num_players() {
            return Err(Error::GridMismatch(format!(
                "grid has {} players, game has {}",
                grid.num_players(),
                self.num_players()
            )));
        }
        for i in 0..self.num_players() {
            if grid.player_dims(i) != self.dims(i) {
                return Err(Error::GridMismatch(format!(
                    "player {i}: grid has {} axes, game has {}",
                    grid.player_dims(i),
                    self.dims(i)
                )));
            }
            for (d, &(lo, hi)) in self.boxes[i].iter().enumerate() {
                let spec = grid.axis_spec(i, d);
                if spec.lo != lo || spec.hi != hi {
                    return Err(Error::GridMismatch(format!(
                        "player {i} axis {d}: grid interval [{}, {}] vs game [{lo}, {hi}]",
                        spec.lo, spec.hi
                    )));
                }
            }
        }
        Ok(())
    }

    /// Validate a parameter vector against the declared box, if any.
    pub fn validate_param(&self, x: &[f64]) -> Result<()> {
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::OutOfBox(format!("parameter {x:?} is not finite")));
        }
        if let Some(pb) = &self.param_box {
            if x.len() != pb.len() {
                return Err(Error::OutOfBox(format!(
                    "parameter has {} coords, box has {}",
                    x.len(),
                    pb.len()
                )));
            }
            for (k, (&v, &(lo, hi))) in x.iter().zip(pb).enumerate() {
                if v < lo || v > hi {
                    return Err(Error::OutOfBox(format!(
                        "parameter coord {k} = {v} outside [{lo}, {hi}]"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Raw payoff of player `i` at joint coordinates `y` (player-major).
    pub fn payoff(&self, i: PlayerId, x: &[f64], y: &[f64]) -> Result<f64> {
        self.validate_param(x)?;
        let total: usize = self.boxes.iter().map(|b| b.len()).sum();
        if y.len() != total {
            return Err(Error::OutOfBox(format!(
                "profile has {} coords, game has {total}",
                y.len()
            )));
        }
        let mut k = 0;
        for player in &self.boxes {
            for &(lo, hi) in player {
                let v = y[k];
                if !(lo..=hi).contains(&v) {
                    return Err(Error::OutOfBox(format!(
                        "strategy coord {k} = {v} outside [{lo}, {hi}]"
                    )));
                }
                k += 1;
            }
        }
        Ok((self.payoffs[i])(x, y))
    }

    /// Unchecked payoff evaluation for the inner loops; callers guarantee
    /// `y` came off a compatible grid.
    #[inline]
    pub(crate) fn payoff_unchecked(&self, i: PlayerId, x: &[f64], y: &[f64]) -> f64 {
        (self.payoffs[i])(x, y)
    }

    #[inline]
    pub(crate) fn feasible_unchecked(&self, i: PlayerId, x: &[f64], y: &[f64]) -> bool {
        match &self.feasibility[i] {
            None => true,
            Some(f) => f(x, y),
        }
    }
}

/// Scratch space plus results for evaluating one player against one
/// opponent context: `payoffs[p]` and `feasible[p]` are indexed by the
/// player's own point index.
pub(crate) struct ContextEval {
    pub payoffs: Vec<f64>,
    pub feasible: Vec<bool>,
    coords: Vec<f64>,
    point: Vec<f64>,
}

impl ContextEval {
    pub fn new(grid: &Grid, i: PlayerId) -> Self {
        ContextEval {
            payoffs: vec![0.0; grid.player_size(i)],
            feasible: vec![false; grid.player_size(i)],
            coords: vec![0.0; grid.total_dims()],
            point: vec![0.0; grid.player_dims(i)],
        }
    }

    /// Fill `payoffs` and `feasible` for every candidate point of player
    /// `i`, holding the other players at their blocks in `base_profile`.
    pub fn run(&mut self, game: &GameSpec, i: PlayerId, x: &[f64], grid: &Grid, base_profile: usize) {
        grid.profile_coords_into(base_profile, &mut self.coords);
        let off = grid.player_coord_offset(i);
        let dims = grid.player_dims(i);
        for p in 0..grid.player_size(i) {
            grid.player_point_coords_into(i, p, &mut self.point);
            self.coords[off..off + dims].copy_from_slice(&self.point);
            self.feasible[p] = game.feasible_unchecked(i, x, &self.coords);
            self.payoffs[p] = game.payoff_unchecked(i, x, &self.coords);
        }
    }

    /// Best feasible truncated payoff, or `Err(Infeasible)` when no
    /// candidate is feasible.
    pub fn value_eps(&self, i: PlayerId, eps2: Option<f64>) -> Result<f64> {
        let mut best: Option<f64> = None;
        for (p, &ok) in self.feasible.iter().enumerate() {
            if ok {
                let v = truncate_payoff(self.payoffs[p], eps2);
                best = Some(match best {
                    None => v,
                    Some(b) => b.max(v),
                });
            }
        }
        best.ok_or(Error::Infeasible { player: i })
    }
}

/// Feasible candidate points of player `i` against the context held in
/// `base_profile` (player `i`'s own block there is ignored).
pub fn feasible_points(
    game: &GameSpec,
    i: PlayerId,
    x: &[f64],
    grid: &Grid,
    base_profile: usize,
) -> Result<Vec<usize>> {
    game.check_grid(grid)?;
    game.validate_param(x)?;
    let mut ev = ContextEval::new(grid, i);
    ev.run(game, i, x, grid, base_profile);
    Ok((0..grid.player_size(i)).filter(|&p| ev.feasible[p]).collect())
}

/// Best truncated feasible payoff of player `i` against a context:
/// the finite-grid stand-in for the optimal value function.
pub fn value_eps(
    game: &GameSpec,
    i: PlayerId,
    x: &[f64],
    grid: &Grid,
    base_profile: usize,
    eps2: Option<f64>,
) -> Result<f64> {
    game.check_grid(grid)?;
    game.validate_param(x)?;
    if let Some(e) = eps2 {
        EpsilonTriple::new(1.0, Some(e), None).validate()?;
    }
    let mut ev = ContextEval::new(grid, i);
    ev.run(game, i, x, grid, base_profile);
    ev.value_eps(i, eps2)
}

/// Exact best responses on the grid: feasible candidates whose raw payoff
/// is within `tie_tol` of the best feasible payoff. A small positive
/// `tie_tol` keeps analytically tied optima from being split by floating
/// point noise.
pub fn best_response(
    game: &GameSpec,
    i: PlayerId,
    x: &[f64],
    grid: &Grid,
    base_profile: usize,
    tie_tol: f64,
) -> Result<Vec<usize>> {
    if !(tie_tol >= 0.0) {
        return Err(Error::Domain(format!(
            "tie_tol must be nonnegative, got {tie_tol}"
        )));
    }
    game.check_grid(grid)?;
    game.validate_param(x)?;
    let mut ev = ContextEval::new(grid, i);
    ev.run(game, i, x, grid, base_profile);
    let best = ev.value_eps(i, None)?;
    Ok((0..grid.player_size(i))
        .filter(|&p| ev.feasible[p] && ev.payoffs[p] >= best - tie_tol)
        .collect())
}

/// Epsilon best responses of player `i` against a context. A candidate
/// qualifies when its truncated payoff beats `v_eps - eps1` (strictly for
/// the open variant, weakly for the closed one) and it is feasible, or with
/// `eps3` active, within `eps3` of the feasible candidates (strict or weak
/// by the same variant).
pub fn eps_best_response(
    game: &GameSpec,
    i: PlayerId,
    x: &[f64],
    grid: &Grid,
    base_profile: usize,
    eps: &EpsilonTriple,
    closed: bool,
) -> Result<Vec<usize>> {
    eps.validate()?;
    game.check_grid(grid)?;
    game.validate_param(x)?;
    let mut ev = ContextEval::new(grid, i);
    ev.run(game, i, x, grid, base_profile);
    eps_best_response_from_eval(&ev, i, grid, eps, closed)
}

/// Membership decision shared by the one-shot wrapper above and the bulk
/// enumeration in the equilibrium module.
pub(crate) fn eps_best_response_from_eval(
    ev: &ContextEval,
    i: PlayerId,
    grid: &Grid,
    eps: &EpsilonTriple,
    closed: bool,
) -> Result<Vec<usize>> {
    let v = ev.value_eps(i, eps.eps2)?;
    let threshold = v - eps.eps1;
    let payoff_ok = |p: usize| {
        let f = truncate_payoff(ev.payoffs[p], eps.eps2);
        if closed {
            f >= threshold
        } else {
            f > threshold
        }
    };
    let feasible: Vec<usize> = (0..grid.player_size(i)).filter(|&p| ev.feasible[p]).collect();
    let mut out = Vec::new();
    match eps.eps3 {
        None => {
            for &p in &feasible {
                if payoff_ok(p) {
                    out.push(p);
                }
            }
        }
        Some(e3) => {
            for p in 0..grid.player_size(i) {
                if !payoff_ok(p) {
                    continue;
                }
                let mut dist = f64::INFINITY;
                for &q in &feasible {
                    let d = grid.player_distance(i, p, q);
                    if d < dist {
                        dist = d;
                    }
                }
                let near = if closed { dist <= e3 } else { dist < e3 };
                if near {
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}
