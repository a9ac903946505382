//! Recovering the exact set by intersecting approximate sets along a
//! shrinking epsilon schedule.
//!
//! For fixed x the approximate sets are nested in eps, so their running
//! intersection along a strictly decreasing schedule equals the last
//! (tightest) set, and as eps1 falls toward the grid's payoff resolution
//! the intersection closes onto the exact set h(x). This is the finite
//! analogue of "the intersection of the approximate sets over all eps is
//! the exact set". Run with `cargo run --example epsilon_intersection`.

use nash_sens::equilibrium::{eps_intersection_limit, nash_set, EpsilonSchedule};
use nash_sens::games::motivating_game;
use nash_sens::grid::{hausdorff, Grid};

fn main() -> nash_sens::Result<()> {
    let game = motivating_game();
    let grid = Grid::build(&game.grid_spec(201))?;
    // The last level sits below the grid's payoff resolution (about the
    // squared spacing), which is where the approximate set collapses onto
    // the exact one.
    let schedule = EpsilonSchedule::payoff_only(&[0.16, 0.01, 1e-3, 1e-4, 1e-5])?;

    for &x in &[0.5, 1.5] {
        let exact = nash_set(&game, &[x], &grid, 1e-9)?;
        let trace = eps_intersection_limit(&game, &[x], &schedule, &grid, false)?;
        println!("x = {x}: |h(x)| = {} (schedule nested: {})", exact.len(), trace.nested);
        for (k, (step, running)) in trace.per_step.iter().zip(&trace.running).enumerate() {
            let eps1 = schedule.steps()[k].eps1;
            println!(
                "  eps1 = {eps1:<9} |h^eps| = {:<5} |running intersection| = {}",
                step.len(),
                running.len()
            );
        }
        let d = hausdorff(trace.final_set(), &exact, &grid)?;
        println!(
            "  final intersection vs exact: d_H = {d:.6}, equal: {}\n",
            *trace.final_set() == exact
        );
    }
    Ok(())
}
