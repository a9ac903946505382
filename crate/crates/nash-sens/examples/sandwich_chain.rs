//! The inclusion sandwich that makes approximate sets trustworthy:
//!
//!   h(x)  subset of  h^eps_open(x)  subset of  h^eps_closed(x)
//!         subset of  h^2eps_open(x)
//!
//! where 2eps doubles every active component. Exact equilibria always
//! pass the approximate test, strict membership implies weak membership,
//! and weak membership at eps implies strict membership at 2eps. The
//! checker reports each link with witnesses when one fails.
//!
//! Run with `cargo run --example sandwich_chain`.

use nash_sens::equilibrium::verify_sandwich;
use nash_sens::game::EpsilonTriple;
use nash_sens::games::{motivating_game, random_quadratic_game};
use nash_sens::grid::Grid;

fn report_line(label: &str, r: &nash_sens::equilibrium::SandwichReport) {
    println!(
        "  {label}: |h| = {:<4} |open| = {:<5} |closed| = {:<5} |2eps open| = {:<5} all hold: {}",
        r.exact.len(),
        r.eps_open.len(),
        r.eps_closed.len(),
        r.two_eps_open.len(),
        r.all_hold()
    );
}

fn main() -> nash_sens::Result<()> {
    let game = motivating_game();
    let grid = Grid::build(&game.grid_spec(201))?;
    println!("motivating game, grid 201:");
    for &(x, e1) in &[(0.5, 0.01), (1.0, 0.04), (1.5, 0.01)] {
        let eps = EpsilonTriple::payoff_only(e1);
        let r = verify_sandwich(&game, &[x], &eps, &grid, 1e-9)?;
        report_line(&format!("x = {x:<4} eps1 = {e1:<5}"), &r);
    }

    // The sandwich is structural: it holds for generated games and with
    // the truncation and feasibility slacks active as well.
    println!("\nrandom concave quadratic games, grid 31, full triple:");
    for seed in [1u64, 2, 3] {
        let game = random_quadratic_game(seed, 2, 1, 1.0)?;
        let grid = Grid::build(&game.grid_spec(31))?;
        let eps = EpsilonTriple::new(0.05, Some(0.4), Some(0.1));
        let r = verify_sandwich(&game, &[1.0], &eps, &grid, 1e-9)?;
        report_line(&format!("seed {seed}"), &r);
        assert!(r.all_hold(), "sandwich must hold");
    }
    Ok(())
}
