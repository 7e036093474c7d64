//! Explicit spectra for truncations of the growing-base system p_j = 3j,
//! D_j = {0, 2, 3j^2+1}, and a Q-scan exploration of an unbounded-digit
//! system that carries no verdict.
//!
//! ```bash
//! cargo run --release --example growing_base_spectrum
//! ```

use cantor_moran::fixtures;
use cantor_moran::measures::truncate;
use cantor_moran::spectrum::{check_spectrum_exact, q_scan};

fn main() -> cantor_moran::Result<()> {
    for n in 1..=5usize {
        let system = fixtures::growing_base_truncation(n);
        let mu = truncate(&system, n)?;
        let lambda = fixtures::growing_base_spectrum(n);
        println!(
            "growing-base n={n}: #Lambda = {} = #supp mu = {}, exact spectrum: {}",
            lambda.len(),
            mu.atom_count(),
            check_spectrum_exact(&mu, &lambda)
        );
    }

    // exploration fixture only: p = 9, D_n = {0, 2, 4^n}; digits outgrow the
    // base, so no spectrality verdict attaches to these scans.
    let system = fixtures::unbounded_digit_truncation(4);
    let mu = truncate(&system, 4)?;
    let lambda = fixtures::growing_base_spectrum(4);
    let scan = q_scan(&mu, &lambda, 0.0, 1.0, 1e-3);
    println!(
        "\nunbounded-digit fixture (exploration only): borrowed 81-point set gives Q in [{:.4}, {:.4}]",
        scan.min, scan.max
    );
    Ok(())
}
