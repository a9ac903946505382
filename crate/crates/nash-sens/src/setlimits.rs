//! Finite surrogates of Kuratowski set limits and the inclusion-chain
//! verification along parameter sequences.
//!
//! True Kuratowski limits quantify over infinite tails; on a finite run of
//! sets they are replaced by two surrogates controlled by a tail index and
//! a locality radius:
//!
//! * limsup surrogate: grid points within `delta` of the union of the tail
//!   `sets[tail_start..]`. A point that keeps being approached by some
//!   member of the sequence lands here.
//! * liminf surrogate: grid points within `delta` of every single set in
//!   the tail. A point approached by all late sets lands here.
//!
//! `liminf ⊆ limsup` holds for every input, both grow with `delta`, and
//! moving `tail_start` forward can only shrink the limsup surrogate and
//! grow the liminf surrogate.
//!
//! The chain verifier runs a parameter sequence `x_n -> x*`, computes exact
//! and approximate equilibrium sets along it, and checks the directed
//! containments (at tolerance `delta`)
//!
//! ```text
//! liminf h(x_n) ⊆ limsup h(x_n) ⊆ h(x*) ⊆ liminf h_eps(x_n) ⊆ limsup h_eps(x_n)
//! ```
//!
//! together with the Hausdorff-distance trajectory of the epsilon-indexed
//! surrogates as epsilon shrinks.

use rayon::prelude::*;

use crate::equilibrium::{approx_nash_set, nash_set, EpsilonSchedule};
use crate::error::{Error, Result};
use crate::game::{EpsilonTriple, GameSpec, ParameterPoint};
use crate::grid::{
    contains_within, dilate, hausdorff, Grid, ProfileSet,
};

/// How a parameter sequence is generated.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum SequenceKind {
    /// `x_n = x* + c / n` in the first coordinate, `n = 1..=count`.
    HarmonicAbove,
    /// `x_n = x* - c / n` in the first coordinate.
    HarmonicBelow,
    /// An explicit list of points (its length is the count).
    Custom(Vec<ParameterPoint>),
}

/// A deterministic parameter sequence with a declared limit.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ParameterSequence {
    pub kind: SequenceKind,
    pub limit: ParameterPoint,
    pub count: usize,
    pub scale: f64,
}

impl ParameterSequence {
    pub fn harmonic_above(limit: ParameterPoint, count: usize, scale: f64) -> Result<Self> {
        Self::build(SequenceKind::HarmonicAbove, limit, count, scale)
    }

    pub fn harmonic_below(limit: ParameterPoint, count: usize, scale: f64) -> Result<Self> {
        Self::build(SequenceKind::HarmonicBelow, limit, count, scale)
    }

    pub fn custom(limit: ParameterPoint, points: Vec<ParameterPoint>) -> Result<Self> {
        let count = points.len();
        if points.iter().any(|p| p.coords.len() != limit.coords.len()) {
            return Err(Error::InvalidSequence(
                "custom points must match the limit's dimension".into(),
            ));
        }
        Self::build(SequenceKind::Custom(points), limit, count, 1.0)
    }

    fn build(kind: SequenceKind, limit: ParameterPoint, count: usize, scale: f64) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidSequence(format!(
                "need at least 2 points, got {count}"
            )));
        }
        if limit.coords.is_empty() || limit.coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSequence(
                "limit point must be nonempty and finite".into(),
            ));
        }
        if !matches!(kind, SequenceKind::Custom(_)) && (!(scale > 0.0) || !scale.is_finite()) {
            return Err(Error::InvalidSequence(format!(
                "harmonic scale must be finite and positive, got {scale}"
            )));
        }
        Ok(ParameterSequence {
            kind,
            limit,
            count,
            scale,
        })
    }

    /// The generated points `x_1, ..., x_count`.
    pub fn points(&self) -> Vec<ParameterPoint> {
        match &self.kind {
            SequenceKind::Custom(points) => points.clone(),
            SequenceKind::HarmonicAbove | SequenceKind::HarmonicBelow => {
                let sign = if matches!(self.kind, SequenceKind::HarmonicAbove) {
                    1.0
                } else {
                    -1.0
                };
                (1..=self.count)
                    .map(|n| {
                        let mut p = self.limit.clone();
                        p.coords[0] += sign * self.scale / n as f64;
                        p
                    })
                    .collect()
            }
        }
    }
}

fn check_tail(len: usize, tail_start: usize, delta: f64) -> Result<()> {
    if len == 0 {
        return Err(Error::EmptySetInput);
    }
    if tail_start >= len {
        return Err(Error::TailStartOutOfRange { tail_start, len });
    }
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(Error::Domain(format!(
            "delta must be finite and nonnegative, got {delta}"
        )));
    }
    Ok(())
}

/// Limsup surrogate: grid points within `delta` (closed) of the union of
/// `sets[tail_start..]`.
pub fn kuratowski_limsup(
    sets: &[ProfileSet],
    tail_start: usize,
    delta: f64,
    grid: &Grid,
) -> Result<ProfileSet> {
    check_tail(sets.len(), tail_start, delta)?;
    let mut union = sets[tail_start].clone();
    for s in &sets[tail_start + 1..] {
        union = union.union(s)?;
    }
    dilate(&union, delta, grid, true)
}

/// Liminf surrogate: grid points within `delta` (closed) of every set in
/// `sets[tail_start..]`. Any empty tail set empties the result.
pub fn kuratowski_liminf(
    sets: &[ProfileSet],
    tail_start: usize,
    delta: f64,
    grid: &Grid,
) -> Result<ProfileSet> {
    check_tail(sets.len(), tail_start, delta)?;
    let mut acc: Option<ProfileSet> = None;
    for s in &sets[tail_start..] {
        let ball = dilate(s, delta, grid, true)?;
        acc = Some(match acc {
            None => ball,
            Some(a) => a.intersect(&ball)?,
        });
        if acc.as_ref().is_some_and(|a| a.is_empty()) {
            break;
        }
    }
    Ok(acc.expect("tail checked nonempty"))
}

/// One epsilon level of the chain verification.
#[derive(Debug, Clone)]
pub struct LimitRow {
    pub eps: EpsilonTriple,
    pub liminf: ProfileSet,
    pub limsup: ProfileSet,
    /// Hausdorff distance of the liminf surrogate to `h(x*)`.
    pub d_liminf: f64,
    /// Hausdorff distance of the limsup surrogate to `h(x*)`.
    pub d_limsup: f64,
    /// `h(x*) ⊆ liminf` within tolerance `delta`.
    pub limit_in_liminf: bool,
    /// Literal `liminf ⊆ limsup`.
    pub liminf_in_limsup: bool,
}

/// Everything the chain verification produced at one sequence.
#[derive(Debug, Clone)]
pub struct LimitReport {
    /// The evaluated parameter points, in order.
    pub sequence: Vec<ParameterPoint>,
    pub limit_point: ParameterPoint,
    pub closed_variant: bool,
    pub tail_start: usize,
    pub delta: f64,
    /// Exact equilibrium set at the limit parameter.
    pub limit_set: ProfileSet,
    /// Kuratowski surrogates of the exact sets along the sequence.
    pub base_liminf: ProfileSet,
    pub base_limsup: ProfileSet,
    pub d_base_liminf: f64,
    pub d_base_limsup: f64,
    /// Literal `liminf ⊆ limsup` on the exact sets.
    pub base_liminf_in_limsup: bool,
    /// `limsup h(x_n) ⊆ h(x*)` within tolerance `delta`.
    pub base_limsup_in_limit: bool,
    /// One row per epsilon in the schedule, in schedule order.
    pub rows: Vec<LimitRow>,
    /// Both distance trajectories are nonincreasing along the schedule.
    pub distances_monotone: bool,
}

impl LimitReport {
    /// Every directed containment of the chain held.
    pub fn chain_ok(&self) -> bool {
        self.base_liminf_in_limsup
            && self.base_limsup_in_limit
            && self
                .rows
                .iter()
                .all(|r| r.limit_in_liminf && r.liminf_in_limsup)
    }
}

#[allow(clippy::too_many_arguments)]
fn chain_impl(
    game: &GameSpec,
    seq: &ParameterSequence,
    schedule: &EpsilonSchedule,
    grid: &Grid,
    delta: f64,
    tail_start: Option<usize>,
    tie_tol: f64,
    closed: bool,
) -> Result<LimitReport> {
    game.check_grid(grid)?;
    let points = seq.points();
    let tail_start = tail_start.unwrap_or(points.len() / 2);
    check_tail(points.len(), tail_start, delta)?;
    for p in points.iter().chain(std::iter::once(&seq.limit)) {
        game.validate_param(&p.coords)?;
    }
    let limit_set = nash_set(game, &seq.limit.coords, grid, tie_tol)?;

    // Exact sets along the sequence; parallel over n, collected in order.
    let exact_sets: Vec<ProfileSet> = points
        .par_iter()
        .map(|p| nash_set(game, &p.coords, grid, tie_tol))
        .collect::<Result<Vec<_>>>()?;
    let base_liminf = kuratowski_liminf(&exact_sets, tail_start, delta, grid)?;
    let base_limsup = kuratowski_limsup(&exact_sets, tail_start, delta, grid)?;
    let d_base_liminf = hausdorff(&base_liminf, &limit_set, grid)?;
    let d_base_limsup = hausdorff(&base_limsup, &limit_set, grid)?;
    let base_liminf_in_limsup = base_liminf.is_subset_of(&base_limsup)?;
    let base_limsup_in_limit = contains_within(&base_limsup, &limit_set, delta, grid)?;

    let mut rows = Vec::with_capacity(schedule.len());
    for eps in schedule.steps() {
        let approx_sets: Vec<ProfileSet> = points
            .par_iter()
            .map(|p| approx_nash_set(game, &p.coords, eps, grid, closed))
            .collect::<Result<Vec<_>>>()?;
        let liminf = kuratowski_liminf(&approx_sets, tail_start, delta, grid)?;
        let limsup = kuratowski_limsup(&approx_sets, tail_start, delta, grid)?;
        let d_liminf = hausdorff(&liminf, &limit_set, grid)?;
        let d_limsup = hausdorff(&limsup, &limit_set, grid)?;
        let limit_in_liminf = contains_within(&limit_set, &liminf, delta, grid)?;
        let liminf_in_limsup = liminf.is_subset_of(&limsup)?;
        rows.push(LimitRow {
            eps: *eps,
            liminf,
            limsup,
            d_liminf,
            d_limsup,
            limit_in_liminf,
            liminf_in_limsup,
        });
    }
    let nonincreasing = |sel: fn(&LimitRow) -> f64| {
        rows.windows(2).all(|w| sel(&w[1]) <= sel(&w[0]))
    };
    let distances_monotone = nonincreasing(|r| r.d_liminf) && nonincreasing(|r| r.d_limsup);
    Ok(LimitReport {
        sequence: points,
        limit_point: seq.limit.clone(),
        closed_variant: closed,
        tail_start,
        delta,
        limit_set,
        base_liminf,
        base_limsup,
        d_base_liminf,
        d_base_limsup,
        base_liminf_in_limsup,
        base_limsup_in_limit,
        rows,
        distances_monotone,
    })
}

/// Verify the inclusion chain with the open approximate sets.
///
/// `tail_start = None` defaults to half the sequence length. `delta` is the
/// locality radius of the surrogates and the tolerance of the directed
/// containment checks; grid spacing is the natural choice.
#[allow(clippy::too_many_arguments)]
pub fn verify_limit_chain(
    game: &GameSpec,
    seq: &ParameterSequence,
    schedule: &EpsilonSchedule,
    grid: &Grid,
    delta: f64,
    tail_start: Option<usize>,
    tie_tol: f64,
) -> Result<LimitReport> {
    chain_impl(game, seq, schedule, grid, delta, tail_start, tie_tol, false)
}

/// Same as [`verify_limit_chain`] but with the closed approximate sets.
#[allow(clippy::too_many_arguments)]
pub fn verify_limit_chain_closed(
    game: &GameSpec,
    seq: &ParameterSequence,
    schedule: &EpsilonSchedule,
    grid: &Grid,
    delta: f64,
    tail_start: Option<usize>,
    tie_tol: f64,
) -> Result<LimitReport> {
    chain_impl(game, seq, schedule, grid, delta, tail_start, tie_tol, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::motivating_game;
    use crate::grid::GridSpec;

    fn unit_grid(points: usize) -> Grid {
        Grid::build(&GridSpec::uniform(&[1, 1], 0.0, 1.0, points)).unwrap()
    }

    #[test]
    fn constant_sequence_at_zero_delta_reproduces_the_set() {
        let g = unit_grid(5);
        let s = ProfileSet::from_indices(vec![3, 7, 11], &g);
        let seq = vec![s.clone(), s.clone(), s.clone(), s.clone()];
        assert_eq!(kuratowski_limsup(&seq, 0, 0.0, &g).unwrap(), s);
        assert_eq!(kuratowski_liminf(&seq, 0, 0.0, &g).unwrap(), s);
        assert_eq!(kuratowski_limsup(&seq, 2, 0.0, &g).unwrap(), s);
        assert_eq!(kuratowski_liminf(&seq, 2, 0.0, &g).unwrap(), s);
    }

    #[test]
    fn alternating_sequence_limits() {
        // a = (0, 0), b = (1, 1) on the unit square: sqrt(2) apart.
        let g = unit_grid(5);
        let a = ProfileSet::from_indices(vec![g.compose(&[0, 0])], &g);
        let b = ProfileSet::from_indices(vec![g.compose(&[4, 4])], &g);
        let seq = vec![a.clone(), b.clone(), a.clone(), b.clone(), a.clone(), b.clone()];
        // Both points recur in every tail: the limsup surrogate keeps both.
        let limsup = kuratowski_limsup(&seq, 0, 0.0, &g).unwrap();
        assert_eq!(limsup, a.union(&b).unwrap());
        // No grid point is within 0.25 of both: the liminf is empty.
        let liminf = kuratowski_liminf(&seq, 0, 0.25, &g).unwrap();
        assert!(liminf.is_empty());
        // With delta past half the separation, lens points survive: the
        // emptiness claim needs d(a, b) > 2 * delta, not just > delta.
        let liminf_wide = kuratowski_liminf(&seq, 0, 0.75, &g).unwrap();
        assert!(liminf_wide.contains(g.compose(&[2, 2])));
    }

    #[test]
    fn tail_and_input_validation() {
        let g = unit_grid(3);
        let s = ProfileSet::from_indices(vec![0], &g);
        assert!(matches!(
            kuratowski_limsup(&[], 0, 0.0, &g),
            Err(Error::EmptySetInput)
        ));
        assert!(matches!(
            kuratowski_liminf(std::slice::from_ref(&s), 1, 0.0, &g),
            Err(Error::TailStartOutOfRange { tail_start: 1, len: 1 })
        ));
        assert!(kuratowski_limsup(std::slice::from_ref(&s), 0, -0.1, &g).is_err());
        assert!(kuratowski_limsup(&[s], 0, f64::NAN, &g).is_err());
    }

    #[test]
    fn empty_tail_set_empties_liminf_but_not_limsup() {
        let g = unit_grid(5);
        let s = ProfileSet::from_indices(vec![6], &g);
        let e = ProfileSet::empty(&g);
        let seq = vec![s.clone(), e, s.clone()];
        assert!(kuratowski_liminf(&seq, 0, 0.3, &g).unwrap().is_empty());
        assert!(!kuratowski_limsup(&seq, 0, 0.3, &g).unwrap().is_empty());
    }

    #[test]
    fn harmonic_sequences_generate_expected_points() {
        let above =
            ParameterSequence::harmonic_above(ParameterPoint::scalar(1.0), 4, 1.0).unwrap();
        let xs: Vec<f64> = above.points().iter().map(|p| p.coords[0]).collect();
        assert_eq!(xs, vec![2.0, 1.5, 1.0 + 1.0 / 3.0, 1.25]);
        let below =
            ParameterSequence::harmonic_below(ParameterPoint::scalar(1.0), 3, 0.5).unwrap();
        let xs: Vec<f64> = below.points().iter().map(|p| p.coords[0]).collect();
        assert_eq!(xs, vec![0.5, 0.75, 1.0 - 0.5 / 3.0]);
        assert!(ParameterSequence::harmonic_above(ParameterPoint::scalar(1.0), 1, 1.0).is_err());
        assert!(ParameterSequence::harmonic_above(ParameterPoint::scalar(1.0), 5, 0.0).is_err());
        assert!(ParameterSequence::custom(
            ParameterPoint::scalar(1.0),
            vec![ParameterPoint::scalar(0.5), ParameterPoint::new(vec![1.0, 2.0])],
        )
        .is_err());
    }

    #[test]
    fn chain_holds_on_motivating_game_below() {
        // x_n = 1 - 1/n -> 1 from below: each h(x_n) hugs the origin, the
        // limit set is the whole diagonal. The chain must hold while the
        // limsup stays far from h(1) in Hausdorff distance.
        let game = motivating_game();
        let grid = Grid::build(&game.grid_spec(101)).unwrap();
        let seq = ParameterSequence::harmonic_below(ParameterPoint::scalar(1.0), 20, 1.0).unwrap();
        let schedule = EpsilonSchedule::payoff_only(&[0.16, 0.04]).unwrap();
        let delta = grid.max_spacing();
        let rep =
            verify_limit_chain(&game, &seq, &schedule, &grid, delta, None, 1e-9).unwrap();
        assert!(rep.chain_ok());
        assert_eq!(rep.tail_start, 10);
        // Exact-set limsup misses most of the diagonal: the gap is large.
        assert!(rep.d_base_limsup > 1.0 && rep.d_base_limsup < 2.0f64.sqrt() + 0.05);
        // Approximate sets are fat enough to cover the diagonal per row.
        for row in &rep.rows {
            assert!(row.limit_in_liminf);
            assert!(row.d_liminf < rep.d_base_limsup);
        }
    }

    #[test]
    fn chain_holds_on_motivating_game_above_both_variants() {
        let game = motivating_game();
        let grid = Grid::build(&game.grid_spec(101)).unwrap();
        let seq = ParameterSequence::harmonic_above(ParameterPoint::scalar(1.0), 20, 1.0).unwrap();
        let schedule = EpsilonSchedule::payoff_only(&[0.16, 0.04]).unwrap();
        let delta = grid.max_spacing();
        let open =
            verify_limit_chain(&game, &seq, &schedule, &grid, delta, None, 1e-9).unwrap();
        let closed =
            verify_limit_chain_closed(&game, &seq, &schedule, &grid, delta, None, 1e-9).unwrap();
        assert!(open.chain_ok());
        assert!(closed.chain_ok());
        assert!(!open.closed_variant && closed.closed_variant);
        // Closed-variant liminf contains the open-variant liminf per row.
        for (o, c) in open.rows.iter().zip(&closed.rows) {
            assert!(o.liminf.is_subset_of(&c.liminf).unwrap());
        }
        // Limit set h(1) is the diagonal; the exact-set limsup keeps only
        // the two pure equilibria (plus near-origin resonance), so its gap
        // is about sqrt(2)/2, attained near the middle of the diagonal.
        assert!((open.d_base_limsup - 0.5f64 * 2.0f64.sqrt()).abs() < 0.1);
    }

    #[test]
    fn constant_custom_sequence_reproduces_approx_sets() {
        let game = motivating_game();
        let grid = Grid::build(&game.grid_spec(41)).unwrap();
        let x = ParameterPoint::scalar(1.2);
        let seq =
            ParameterSequence::custom(x.clone(), vec![x.clone(), x.clone(), x.clone()]).unwrap();
        let schedule = EpsilonSchedule::payoff_only(&[0.09, 0.04]).unwrap();
        let rep =
            verify_limit_chain_closed(&game, &seq, &schedule, &grid, 0.0, Some(0), 1e-9).unwrap();
        for (row, eps1) in rep.rows.iter().zip([0.09, 0.04]) {
            let expect = approx_nash_set(
                &game,
                &x.coords,
                &EpsilonTriple::payoff_only(eps1),
                &grid,
                true,
            )
            .unwrap();
            assert_eq!(row.liminf, expect);
            assert_eq!(row.limsup, expect);
        }
    }

    #[test]
    fn out_of_box_sequence_is_rejected() {
        let game = motivating_game();
        let grid = Grid::build(&game.grid_spec(11)).unwrap();
        // Scale 3 pushes x_1 = 1 - 3 < 0 outside the parameter box [0, 2].
        let seq = ParameterSequence::harmonic_below(ParameterPoint::scalar(1.0), 5, 3.0).unwrap();
        let schedule = EpsilonSchedule::payoff_only(&[0.1]).unwrap();
        assert!(matches!(
            verify_limit_chain(&game, &seq, &schedule, &grid, 0.01, None, 1e-9),
            Err(Error::OutOfBox(_))
        ));
    }
}
