//! Wiener averages of squared transform samples converging to the sum of
//! squared atom weights.
//!
//! ```bash
//! cargo run --release --example wiener_average
//! ```

use cantor_moran::fixtures;
use cantor_moran::measures::{truncate, AtomicMeasure};
use cantor_moran::Rational;

fn main() -> cantor_moran::Result<()> {
    let half = AtomicMeasure::uniform(vec![Rational::from_integer(0), Rational::new(1, 2)])?;
    let mu3 = truncate(&fixtures::quarter_cantor(), 3)?.reduce_mod_one();

    for (name, measure) in [("uniform {0, 1/2}", &half), ("quarter-Cantor mu_3", &mu3)] {
        let target = measure.sum_squared_weights();
        println!("{name}: target sum of squared weights = {target}");
        for n in [100u64, 1_000, 10_000] {
            let avg = measure.wiener_average(n);
            println!(
                "  N = {n:>6}: average = {avg:.8}, |error| = {:.3e}",
                (avg - target.to_f64()).abs()
            );
        }
    }
    Ok(())
}
