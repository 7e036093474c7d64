//! Scan for integral periodic zero set candidates over small denominators.
//!
//! ```bash
//! cargo run --release --example integral_zero_scan
//! ```

use cantor_moran::fixtures;
use cantor_moran::zeroset::integral_zero_scan;

fn main() -> cantor_moran::Result<()> {
    let scaled = fixtures::scaled_dyadic();
    let found = integral_zero_scan(&scaled, 0, 6, 6, 20)?;
    println!("scaled dyadic (2,{{0,3}}), nu_0, depth 6, denominators <= 6, |k| <= 20:");
    for xi in &found {
        println!("  candidate xi = {xi}");
    }

    let quarter = fixtures::quarter_cantor();
    let found = integral_zero_scan(&quarter, 0, 6, 6, 20)?;
    println!(
        "quarter-Cantor (4,{{0,2}}): {} candidates (zero set is empty)",
        found.len()
    );
    Ok(())
}
