//! Equilibrium sets on grids: exact Nash sets by exhaustive best-response
//! enumeration, epsilon-approximate sets in open and closed variants, the
//! inclusion sandwich between them, and intersections along shrinking
//! epsilon schedules.
//!
//! Everything here computes full sets, never single equilibria: a profile
//! is kept iff every player's block passes that player's (epsilon) best
//! response test against the rest of the profile. The per-player pass over
//! all opponent contexts is the hot loop; it is parallelized over the
//! leading context block with results collected in deterministic order, so
//! outputs are identical for any worker count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::{
    eps_best_response_from_eval, truncate_payoff, ContextEval, EpsilonTriple, GameSpec, PlayerId,
};
use crate::grid::{Grid, ProfileSet};

/// How a candidate block qualifies as a best response.
#[derive(Debug, Clone, Copy)]
pub enum MembershipRule {
    /// Feasible and within `tie_tol` of the best feasible raw payoff.
    Exact { tie_tol: f64 },
    /// The epsilon test of [`crate::game::eps_best_response`].
    Approx { eps: EpsilonTriple, closed: bool },
}

/// Per-profile flags for "player `i`'s block is a best response inside this
/// profile", for the whole grid at once.
///
/// Contexts are enumerated as (prefix, suffix) pairs around player `i`'s
/// block; each prefix owns a contiguous range of profile indices, which is
/// what makes the parallel collection order-independent.
pub(crate) fn player_membership_mask(
    game: &GameSpec,
    i: PlayerId,
    x: &[f64],
    grid: &Grid,
    rule: &MembershipRule,
) -> Result<Vec<bool>> {
    let n_i = grid.player_size(i);
    let stride = grid.player_stride(i);
    let block = n_i * stride;
    let prefixes = grid.len() / block;
    let chunks: Vec<Vec<bool>> = (0..prefixes)
        .into_par_iter()
        .map(|prefix| -> Result<Vec<bool>> {
            let mut chunk = vec![false; block];
            let mut ev = ContextEval::new(grid, i);
            for suffix in 0..stride {
                let base = prefix * block + suffix;
                ev.run(game, i, x, grid, base);
                match rule {
                    MembershipRule::Exact { tie_tol } => {
                        let best = ev.value_eps(i, None)?;
                        for p in 0..n_i {
                            if ev.feasible[p] && ev.payoffs[p] >= best - tie_tol {
                                chunk[p * stride + suffix] = true;
                            }
                        }
                    }
                    MembershipRule::Approx { eps, closed } => {
                        for p in eps_best_response_from_eval(&ev, i, grid, eps, *closed)? {
                            chunk[p * stride + suffix] = true;
                        }
                    }
                }
            }
            Ok(chunk)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut mask = Vec::with_capacity(grid.len());
    for chunk in chunks {
        mask.extend_from_slice(&chunk);
    }
    Ok(mask)
}

fn profiles_passing_all_players(
    game: &GameSpec,
    x: &[f64],
    grid: &Grid,
    rule: &MembershipRule,
) -> Result<ProfileSet> {
    game.check_grid(grid)?;
    game.validate_param(x)?;
    let mut joint: Option<Vec<bool>> = None;
    for i in 0..game.num_players() {
        let mask = player_membership_mask(game, i, x, grid, rule)?;
        joint = Some(match joint {
            None => mask,
            Some(mut acc) => {
                for (a, m) in acc.iter_mut().zip(&mask) {
                    *a = *a && *m;
                }
                acc
            }
        });
    }
    let joint = joint.expect("games have at least one player");
    let indices: Vec<usize> = joint
        .iter()
        .enumerate()
        .filter_map(|(p, &ok)| ok.then_some(p))
        .collect();
    Ok(ProfileSet::from_indices(indices, grid))
}

/// The exact Nash set on the grid: profiles where every player's block
/// maximizes that player's payoff (within `tie_tol`) over their own grid
/// points, holding the others fixed. May legitimately be empty.
pub fn nash_set(game: &GameSpec, x: &[f64], grid: &Grid, tie_tol: f64) -> Result<ProfileSet> {
    if !(tie_tol >= 0.0) || !tie_tol.is_finite() {
        return Err(Error::Domain(format!(
            "tie_tol must be finite and nonnegative, got {tie_tol}"
        )));
    }
    profiles_passing_all_players(game, x, grid, &MembershipRule::Exact { tie_tol })
}

/// The epsilon-approximate Nash set on the grid; `closed` picks the weak
/// inequality variant, whose set contains the strict (open) one.
pub fn approx_nash_set(
    game: &GameSpec,
    x: &[f64],
    eps: &EpsilonTriple,
    grid: &Grid,
    closed: bool,
) -> Result<ProfileSet> {
    eps.validate()?;
    profiles_passing_all_players(
        game,
        x,
        grid,
        &MembershipRule::Approx { eps: *eps, closed },
    )
}

/// Outcome of checking the inclusion sandwich
/// `h(x) ⊆ h_eps(x) ⊆ h_eps_closed(x) ⊆ h_2eps(x)` at one parameter.
#[derive(Debug, Clone)]
pub struct SandwichReport {
    pub x: Vec<f64>,
    pub eps: EpsilonTriple,
    pub exact: ProfileSet,
    pub eps_open: ProfileSet,
    pub eps_closed: ProfileSet,
    pub two_eps_open: ProfileSet,
    pub exact_in_open: bool,
    pub open_in_closed: bool,
    pub closed_in_two_eps: bool,
    /// For each failed link, up to five offending profile indices.
    pub witnesses: Vec<(String, Vec<usize>)>,
}

impl SandwichReport {
    pub fn all_hold(&self) -> bool {
        self.exact_in_open && self.open_in_closed && self.closed_in_two_eps
    }
}

/// Compute the four sets of the inclusion sandwich and check each link.
///
/// `tie_tol` must stay below `eps.eps1`: the exact set tolerates payoff
/// ties up to `tie_tol`, so the first link can only be guaranteed while the
/// epsilon relaxation is the wider one.
pub fn verify_sandwich(
    game: &GameSpec,
    x: &[f64],
    eps: &EpsilonTriple,
    grid: &Grid,
    tie_tol: f64,
) -> Result<SandwichReport> {
    eps.validate()?;
    if !(tie_tol >= 0.0) || tie_tol >= eps.eps1 {
        return Err(Error::Domain(format!(
            "tie_tol {tie_tol} must lie in [0, eps1 = {})",
            eps.eps1
        )));
    }
    let exact = nash_set(game, x, grid, tie_tol)?;
    let eps_open = approx_nash_set(game, x, eps, grid, false)?;
    let eps_closed = approx_nash_set(game, x, eps, grid, true)?;
    let two_eps_open = approx_nash_set(game, x, &eps.doubled(), grid, false)?;
    let exact_in_open = exact.is_subset_of(&eps_open)?;
    let open_in_closed = eps_open.is_subset_of(&eps_closed)?;
    let closed_in_two_eps = eps_closed.is_subset_of(&two_eps_open)?;
    let mut witnesses = Vec::new();
    if !exact_in_open {
        witnesses.push((
            "exact_in_open".to_string(),
            exact.subset_witnesses(&eps_open, 5)?,
        ));
    }
    if !open_in_closed {
        witnesses.push((
            "open_in_closed".to_string(),
            eps_open.subset_witnesses(&eps_closed, 5)?,
        ));
    }
    if !closed_in_two_eps {
        witnesses.push((
            "closed_in_two_eps".to_string(),
            eps_closed.subset_witnesses(&two_eps_open, 5)?,
        ));
    }
    Ok(SandwichReport {
        x: x.to_vec(),
        eps: *eps,
        exact,
        eps_open,
        eps_closed,
        two_eps_open,
        exact_in_open,
        open_in_closed,
        closed_in_two_eps,
        witnesses,
    })
}

/// A strictly shrinking sequence of epsilon levels. Active components must
/// strictly decrease step over step, and components cannot toggle between
/// active and disabled mid-schedule.
#[derive(Debug, Clone)]
pub struct EpsilonSchedule {
    steps: Vec<EpsilonTriple>,
}

impl EpsilonSchedule {
    pub fn new(steps: Vec<EpsilonTriple>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidSchedule("schedule is empty".into()));
        }
        for e in &steps {
            e.validate()?;
        }
        for (k, pair) in steps.windows(2).enumerate() {
            let (a, b) = (&pair[0], &pair[1]);
            let shrinks = |prev: Option<f64>, next: Option<f64>| match (prev, next) {
                (None, None) => true,
                (Some(p), Some(n)) => n < p,
                _ => false,
            };
            if !(b.eps1 < a.eps1)
                || !shrinks(a.eps2, b.eps2)
                || !shrinks(a.eps3, b.eps3)
            {
                return Err(Error::InvalidSchedule(format!(
                    "step {} -> {}: active components must strictly decrease \
                     and stay active ({a} -> {b})",
                    k,
                    k + 1
                )));
            }
        }
        Ok(EpsilonSchedule { steps })
    }

    /// Payoff-only schedule from a strictly decreasing list of `eps1`s.
    pub fn payoff_only(eps1s: &[f64]) -> Result<Self> {
        Self::new(eps1s.iter().map(|&e| EpsilonTriple::payoff_only(e)).collect())
    }

    pub fn steps(&self) -> &[EpsilonTriple] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The approximate sets along a shrinking schedule together with their
/// running intersections; the last running intersection is the finite
/// stand-in for the epsilon-to-zero limit.
#[derive(Debug, Clone)]
pub struct IntersectionTrace {
    pub schedule: EpsilonSchedule,
    pub per_step: Vec<ProfileSet>,
    pub running: Vec<ProfileSet>,
    /// Whether each step's set was nested inside the previous one.
    pub nested: bool,
}

impl IntersectionTrace {
    /// The intersection over the whole schedule.
    pub fn final_set(&self) -> &ProfileSet {
        self.running.last().expect("schedules are nonempty")
    }
}

/// Approximate sets and running intersections along `schedule`.
pub fn eps_intersection_limit(
    game: &GameSpec,
    x: &[f64],
    schedule: &EpsilonSchedule,
    grid: &Grid,
    closed: bool,
) -> Result<IntersectionTrace> {
    let mut per_step = Vec::with_capacity(schedule.len());
    let mut running: Vec<ProfileSet> = Vec::with_capacity(schedule.len());
    let mut nested = true;
    for eps in schedule.steps() {
        let set = approx_nash_set(game, x, eps, grid, closed)?;
        if let Some(prev) = per_step.last() {
            nested &= set.is_subset_of(prev)?;
        }
        let next_running = match running.last() {
            None => set.clone(),
            Some(acc) => acc.intersect(&set)?,
        };
        per_step.push(set);
        running.push(next_running);
    }
    Ok(IntersectionTrace {
        schedule: schedule.clone(),
        per_step,
        running,
        nested,
    })
}

/// Convenience: raw payoff of the profile with the acting player's block
/// replaced, used by examples to display regret numbers.
pub fn regret(
    game: &GameSpec,
    i: PlayerId,
    x: &[f64],
    grid: &Grid,
    profile: usize,
) -> Result<f64> {
    game.check_grid(grid)?;
    game.validate_param(x)?;
    let mut ev = ContextEval::new(grid, i);
    ev.run(game, i, x, grid, profile);
    let own = ev.payoffs[grid.player_point_of(profile, i)];
    let best = ev.value_eps(i, None)?;
    Ok(best - truncate_payoff(own, None))
}
