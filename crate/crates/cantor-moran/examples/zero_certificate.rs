//! Certify integral-periodic-zero-set membership with a residue-class tree.
//!
//! ```bash
//! cargo run --release --example zero_certificate
//! ```

use cantor_moran::fixtures;
use cantor_moran::zeroset::{certify_periodic_zero, reverify_certificate, CertifyOutcome};
use cantor_moran::Rational;
use num_bigint::BigInt;

fn main() -> cantor_moran::Result<()> {
    let system = fixtures::scaled_dyadic();
    let xi = Rational::new(1, 3);

    match certify_periodic_zero(&system, 0, &xi, 8)? {
        CertifyOutcome::Certified(cert) => {
            println!(
                "xi = {xi} lies in the zero set of nu_0 (tree depth {})",
                cert.depth
            );
            for class in &cert.killed {
                println!(
                    "  killed: k = {} (mod {}) at level {} — mask vanishes at {}",
                    class.residue, class.modulus, class.level, class.witness
                );
            }
            for class in &cert.recurrent {
                println!(
                    "  recurrent: k = {} (mod {}) — value {} repeats depth-{} ancestor",
                    class.residue, class.modulus, class.value, class.ancestor_depth
                );
            }
            let translates: Vec<BigInt> = (-20..=20).map(BigInt::from).collect();
            println!(
                "  re-verification over k in [-20, 20]: {}",
                if reverify_certificate(&system, &cert, &translates)? {
                    "every translate vanishes exactly"
                } else {
                    "FAILED"
                }
            );
        }
        CertifyOutcome::Inconclusive { survivors, .. } => {
            println!("inconclusive: {} surviving classes", survivors.len());
        }
    }

    // a spectral system: certification cannot succeed
    let outcome = certify_periodic_zero(&fixtures::quarter_cantor(), 0, &xi, 8)?;
    match outcome {
        CertifyOutcome::Inconclusive { survivors, .. } => println!(
            "\nquarter-Cantor at xi = {xi}: inconclusive as expected ({} survivors at depth 8)",
            survivors.len()
        ),
        CertifyOutcome::Certified(_) => println!("\nunexpected certificate"),
    }
    Ok(())
}
