//! Grid evidence for equi-positivity of tail measures, and the counterexample
//! point for the scaled dyadic family.
//!
//! ```bash
//! cargo run --release --example equi_positivity
//! ```

use cantor_moran::fixtures;
use cantor_moran::zeroset::{equi_positivity_estimate, unit_grid};

fn main() -> cantor_moran::Result<()> {
    let grid = unit_grid(1.0 / 256.0);

    let report = equi_positivity_estimate(
        &fixtures::quarter_cantor(),
        &[0, 1, 2, 3, 4],
        12,
        &grid,
        0.05,
        16,
    )?;
    println!(
        "quarter-Cantor tails nu_0..nu_4: achieved min lower bound {:.6} at x = {:.6}, n = {} ({} counterexamples)",
        report.achieved_min, report.worst_x, report.worst_n, report.counterexamples.len()
    );

    let mut grid_with_zero_point = grid.clone();
    grid_with_zero_point.push(1.0 / 3.0);
    let report = equi_positivity_estimate(
        &fixtures::scaled_dyadic(),
        &[0, 1, 2, 3, 4],
        12,
        &grid_with_zero_point,
        0.05,
        16,
    )?;
    println!(
        "scaled dyadic tails: {} grid point(s) where no |k| <= 16 reaches epsilon",
        report.counterexamples.len()
    );
    for entry in report.counterexamples.iter().take(6) {
        println!(
            "  x = {:.6}, n = {}: best lower bound {:.3e}",
            entry.x, entry.n, entry.best_bound
        );
    }
    Ok(())
}
