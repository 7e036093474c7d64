//! Build a truncation spectrum, check it exactly, and scan its Q-function.
//!
//! ```bash
//! cargo run --release --example spectrum_qscan
//! ```

use cantor_moran::fixtures;
use cantor_moran::measures::truncate;
use cantor_moran::spectrum::{build_spectrum, check_spectrum_exact, q_scan, SpectrumCandidate};
use cantor_moran::Rational;

fn main() -> cantor_moran::Result<()> {
    let system = fixtures::quarter_cantor();
    for n in [2usize, 4, 6] {
        let mu = truncate(&system, n)?;
        let lambda = build_spectrum(&system, n)?;
        let exact = check_spectrum_exact(&mu, &lambda);
        let scan = q_scan(&mu, &lambda, 0.0, 1.0, 1e-3);
        println!(
            "quarter-Cantor n={n}: {} points, exact spectrum: {exact}, Q in [{:.12}, {:.12}]",
            lambda.len(),
            scan.min,
            scan.max
        );
    }

    // an orthogonal but incomplete set stays below 1 somewhere
    let mu2 = truncate(&system, 2)?;
    let partial =
        SpectrumCandidate::from_points(vec![Rational::from_integer(0), Rational::from_integer(1)])?;
    let scan = q_scan(&mu2, &partial, 0.0, 1.0, 1e-3);
    println!(
        "partial set {{0,1}} on mu_2: Q in [{:.6}, {:.6}] (incomplete)",
        scan.min, scan.max
    );

    // a non-orthogonal set exceeds 1
    let bad =
        SpectrumCandidate::from_points(vec![Rational::from_integer(0), Rational::from_integer(2)])?;
    let scan = q_scan(&mu2, &bad, 0.0, 1.0, 1e-3);
    println!(
        "non-orthogonal set {{0,2}} on mu_2: Q max = {:.6} (exceeds 1)",
        scan.max
    );
    Ok(())
}
