//! Plugging a new game into the toolkit: a two-player partnership game
//! with a joint feasibility constraint, built from closures.
//!
//! Payoffs are f_i(x, y) = x y1 y2 - y_i^2 on the unit square. Without
//! constraints the best responses are y1 = x y2 / 2 and y2 = x y1 / 2,
//! so for x < 2 the only equilibrium is the origin. Adding the coupling
//! constraint y1 + y2 <= 1 changes nothing at small x but binds once
//! best responses push outward; the feasibility slack eps3 then admits
//! profiles just outside the constraint set.
//!
//! Run with `cargo run --example custom_game`.

use std::sync::Arc;

use nash_sens::equilibrium::{approx_nash_set, nash_set, verify_sandwich};
use nash_sens::game::{EpsilonTriple, GameSpec};
use nash_sens::grid::Grid;

fn partnership(constrained: bool) -> nash_sens::Result<GameSpec> {
    let boxes = vec![vec![(0.0, 1.0)], vec![(0.0, 1.0)]];
    let payoffs: Vec<nash_sens::game::PayoffFn> = (0..2)
        .map(|i| {
            let f: nash_sens::game::PayoffFn = Arc::new(move |x: &[f64], y: &[f64]| {
                x[0] * y[0] * y[1] - y[i] * y[i]
            });
            f
        })
        .collect();
    let mut game = GameSpec::new(
        if constrained { "partnership-constrained" } else { "partnership" },
        boxes,
        payoffs,
    )?
    .with_param_box(vec![(0.0, 2.0)])
    .with_payoff_bound(2.0);
    if constrained {
        let shared: nash_sens::game::FeasibilityFn =
            Arc::new(|_x: &[f64], y: &[f64]| y[0] + y[1] <= 1.0);
        game = game
            .with_feasibility(0, shared.clone())
            .with_feasibility(1, shared);
    }
    Ok(game)
}

fn main() -> nash_sens::Result<()> {
    let free = partnership(false)?;
    let tied = partnership(true)?;
    let grid = Grid::build(&free.grid_spec(101))?;
    let mut coords = vec![0.0; 2];

    for &x in &[1.0, 2.0] {
        let set_free = nash_set(&free, &[x], &grid, 1e-9)?;
        let set_tied = nash_set(&tied, &[x], &grid, 1e-9)?;
        println!("x = {x}: unconstrained |h| = {}, with y1+y2 <= 1 |h| = {}", set_free.len(), set_tied.len());
        for p in set_free.iter().take(4) {
            grid.profile_coords_into(p, &mut coords);
            println!("  unconstrained: ({:.2}, {:.2})", coords[0], coords[1]);
        }
    }

    // eps3 relaxes the constraint: profiles within eps3 of a feasible
    // candidate pass the feasibility leg of the membership test.
    let eps_strict = EpsilonTriple::new(0.02, None, None);
    let eps_slack = EpsilonTriple::new(0.02, None, Some(0.08));
    let strict = approx_nash_set(&tied, &[2.0], &eps_strict, &grid, false)?;
    let slack = approx_nash_set(&tied, &[2.0], &eps_slack, &grid, false)?;
    println!(
        "\nx = 2, eps1 = 0.02: feasible-only |h^eps| = {}, with eps3 = 0.08 |h^eps| = {}",
        strict.len(),
        slack.len()
    );
    assert!(strict.is_subset_of(&slack)?, "slack only adds profiles");

    // The machinery downstream of GameSpec is game-agnostic; the
    // sandwich holds here exactly as for the built-in games.
    let r = verify_sandwich(&tied, &[1.5], &EpsilonTriple::payoff_only(0.03), &grid, 1e-9)?;
    println!("sandwich on the constrained game at x = 1.5: all hold = {}", r.all_hold());
    Ok(())
}
