//! Where the exact equilibrium set jumps and the approximate set does
//! not.
//!
//! On the motivating game h(x) collapses from the full diagonal at
//! x = 1 to isolated points on either side, so x -> h(x) is wildly
//! discontinuous in the Hausdorff metric at x = 1. The approximate map
//! x -> h^eps(x) absorbs the collapse: for fixed eps1 > 0 its sets keep
//! covering a neighborhood of the diagonal while x stays within a window
//! of 1, so the distance curve flattens.
//!
//! Run with `cargo run --example continuity_gap`.

use nash_sens::equilibrium::{approx_nash_set, nash_set};
use nash_sens::game::EpsilonTriple;
use nash_sens::games::motivating_game;
use nash_sens::grid::{hausdorff, Grid};

fn main() -> nash_sens::Result<()> {
    let game = motivating_game();
    let grid = Grid::build(&game.grid_spec(201))?;
    let eps = EpsilonTriple::payoff_only(0.04);

    let exact_at_1 = nash_set(&game, &[1.0], &grid, 1e-9)?;
    let approx_at_1 = approx_nash_set(&game, &[1.0], &eps, &grid, false)?;

    println!("distance of h(x) and h^eps(x) to their values at x = 1");
    println!("(eps1 = 0.04, grid 201)\n");
    println!("{:>6} {:>12} {:>12}", "x", "d_H exact", "d_H approx");
    for k in 0..=16 {
        let x = 0.92 + 0.01 * k as f64;
        let exact = nash_set(&game, &[x], &grid, 1e-9)?;
        let approx = approx_nash_set(&game, &[x], &eps, &grid, false)?;
        let d_exact = hausdorff(&exact, &exact_at_1, &grid)?;
        let d_approx = hausdorff(&approx, &approx_at_1, &grid)?;
        println!("{x:>6.2} {d_exact:>12.6} {d_approx:>12.6}");
    }

    println!(
        "\nThe exact column jumps: around 1.3 below x = 1 (only the origin\n\
         end of the diagonal survives), around 0.6 above it (both ends\n\
         survive), 0 exactly at x = 1. The approximate column stays small\n\
         across the whole window. Shrinking eps1 narrows that window,\n\
         which is the double limit studied in the double_limit example."
    );
    Ok(())
}
