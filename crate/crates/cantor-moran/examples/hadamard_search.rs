//! Verify Hadamard triples and discover frequency sets.
//!
//! ```bash
//! cargo run --release --example hadamard_search
//! ```

use cantor_moran::exact::Rational;
use cantor_moran::hadamard::{find_spectra_l, parseval_residual, verify_hadamard, Level};

fn main() -> cantor_moran::Result<()> {
    let triples = [
        (4, vec![0, 2], vec![0, 1]),
        (2, vec![0, 3], vec![0, 1]),
        (3, vec![0, 1], vec![0, 1]),
        (6, vec![0, 1, 2], vec![0, 2, 4]),
    ];
    for (p, digits, l) in triples {
        let level = Level::new(p, digits.clone(), Some(l.clone()))?;
        let ok = verify_hadamard(&level)?;
        println!("(p={p}, D={digits:?}, L={l:?}) Hadamard: {ok}");
        if ok {
            let residual = parseval_residual(&level, &Rational::new(1, 3))?;
            println!("  Parseval residual at xi = 1/3: {residual:.3e}");
        }
    }

    println!("\nDiscovering all frequency sets inside {{0,...,p-1}}:");
    for (p, digits) in [
        (4i64, vec![0i64, 2]),
        (2, vec![0, 3]),
        (6, vec![0, 2, 4]),
        (3, vec![0, 1]),
    ] {
        let found = find_spectra_l(p, &digits, 64)?;
        println!("  p={p}, D={digits:?} -> {found:?}");
    }
    Ok(())
}
