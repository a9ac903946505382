//! The double-limit diagnostic: epsilon to zero after x_n to x*.
//!
//! Along a parameter sequence x_n -> x* the finite set-limit surrogates
//! of the exact sets h(x_n) land inside h(x*), and for each fixed eps the
//! limit set h(x*) lands inside the inner limit of the approximate sets
//! h^eps(x_n). Shrinking eps then tightens the outer approximation from
//! above, which is the order of limits that recovers h(x*):
//!
//!   liminf_n h(x_n)  subset  limsup_n h(x_n)  subset  h(x*)
//!   h(x*)  subset  liminf_n h^eps(x_n)        for every fixed eps
//!
//! Run with `cargo run --example double_limit`.

use nash_sens::equilibrium::EpsilonSchedule;
use nash_sens::game::ParameterPoint;
use nash_sens::games::motivating_game;
use nash_sens::grid::Grid;
use nash_sens::setlimits::{verify_limit_chain, ParameterSequence};

fn main() -> nash_sens::Result<()> {
    let game = motivating_game();
    let grid = Grid::build(&game.grid_spec(201))?;
    let schedule = EpsilonSchedule::payoff_only(&[0.16, 0.08, 0.04, 0.02, 0.01])?;
    let delta = grid.max_spacing();

    for (label, seq) in [
        (
            "x_n = 1 + 1/n (n = 1..30)",
            ParameterSequence::harmonic_above(ParameterPoint::scalar(1.0), 30, 1.0)?,
        ),
        (
            "x_n = 1 - 1/n (n = 1..30)",
            ParameterSequence::harmonic_below(ParameterPoint::scalar(1.0), 30, 1.0)?,
        ),
    ] {
        let report = verify_limit_chain(&game, &seq, &schedule, &grid, delta, None, 1e-9)?;
        println!("{label}, delta = {delta:.4}, tail from n = {}", report.tail_start + 1);
        println!(
            "  exact sets: |liminf| = {:<4} |limsup| = {:<4} limsup within delta of h(x*): {}",
            report.base_liminf.len(),
            report.base_limsup.len(),
            report.base_limsup_in_limit
        );
        println!("  {:>6} {:>9} {:>9} {:>10} {:>10}", "eps1", "|liminf|", "|limsup|", "d_liminf", "d_limsup");
        for row in &report.rows {
            println!(
                "  {:>6} {:>9} {:>9} {:>10.6} {:>10.6}   h(x*) in liminf: {}",
                row.eps.eps1,
                row.liminf.len(),
                row.limsup.len(),
                row.d_liminf,
                row.d_limsup,
                row.limit_in_liminf
            );
        }
        println!(
            "  distances monotone along the schedule: {}\n  chain ok: {}\n",
            report.distances_monotone,
            report.chain_ok()
        );
    }
    Ok(())
}
