//! Spectrality and continuity classification of eventually-periodic systems.
//!
//! ```bash
//! cargo run --release --example classify_systems
//! ```

use cantor_moran::dpc::classify;
use cantor_moran::fixtures;

fn main() -> cantor_moran::Result<()> {
    let systems = [
        ("quarter-Cantor (4,{0,2})", fixtures::quarter_cantor()),
        ("dyadic (2,{0,1})", fixtures::dyadic()),
        ("scaled dyadic (2,{0,3})", fixtures::scaled_dyadic()),
        (
            "prefix (2,{0,1}) then (2,{0,3})",
            fixtures::scaled_dyadic_with_prefix(),
        ),
    ];
    for (name, system) in systems {
        let report = classify(&system)?;
        println!("{name}:");
        println!(
            "  equi-positive subsequence: {}",
            report.equi_positive_subsequence
        );
        println!(
            "  spectral conclusion:       {:?}",
            report.spectral_conclusion
        );
        println!("  continuity:                {:?}", report.continuity);
        for witness in &report.witnesses {
            println!("  [{}] {}", witness.criterion, witness.evidence);
        }
        println!("  gcd tail: {:?}", report.gcd_tail_table);
        println!();
    }

    // rule-generated sequences are finite truncations; classification refuses
    let truncated = fixtures::growing_base_truncation(5);
    match classify(&truncated) {
        Err(e) => println!("growing-base truncation: refused as expected ({e})"),
        Ok(_) => println!("unexpected: truncation classified"),
    }
    Ok(())
}
