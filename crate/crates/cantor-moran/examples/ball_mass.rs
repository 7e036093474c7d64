//! Ball-mass growth signatures separating absolutely continuous from
//! singular truncations.
//!
//! ```bash
//! cargo run --release --example ball_mass
//! ```

use cantor_moran::fixtures;
use cantor_moran::measures::truncate;
use cantor_moran::Rational;

fn main() -> cantor_moran::Result<()> {
    // dyadic: mass(B(x,r))/r stays bounded by 4P = 8
    let mu = truncate(&fixtures::dyadic(), 12)?;
    println!("dyadic mu_12 (uniform lattice):");
    for k in 4..=10u32 {
        let r = Rational::new(1, 2i64.pow(k));
        let mut worst = 0.0f64;
        for (center, _) in mu.atoms().step_by(64) {
            let ratio = mu.ball_mass(center, &r).to_f64() / r.to_f64();
            worst = worst.max(ratio);
        }
        println!("  r = 2^-{k:<2} max mass/r = {worst:.4}");
    }

    // quarter-Cantor: mass(B(x, 4^-k))/4^-k grows like 2^k at atom centers
    let mu = truncate(&fixtures::quarter_cantor(), 12)?;
    println!("quarter-Cantor mu_12 (singular signature):");
    let center = mu.atoms().next().unwrap().0.clone();
    let mut previous: Option<f64> = None;
    for k in 2..=5u32 {
        let r = Rational::new(1, 4i64.pow(k));
        let ratio = mu.ball_mass(&center, &r).to_f64() / r.to_f64();
        let growth = previous.map(|p| ratio / p);
        previous = Some(ratio);
        match growth {
            Some(g) => println!("  r = 4^-{k}: mass/r = {ratio:.4} (x{g:.2} per step)"),
            None => println!("  r = 4^-{k}: mass/r = {ratio:.4}"),
        }
    }
    Ok(())
}
