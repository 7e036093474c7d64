//! Canonical example systems used across tests, examples and the CLI docs.

use crate::exact::Rational;
use crate::hadamard::{Level, MoranSystem};
use crate::spectrum::SpectrumCandidate;

/// The quarter-Cantor system: every level is `(4, {0,2}, {0,1})`. Spectral
/// and singular.
pub fn quarter_cantor() -> MoranSystem {
    MoranSystem::periodic(vec![
        Level::new(4, vec![0, 2], Some(vec![0, 1])).expect("valid level")
    ])
    .expect("valid system")
}

/// The dyadic system: every level is `(2, {0,1}, {0,1})`. Its Moran measure
/// is Lebesgue on the unit interval.
pub fn dyadic() -> MoranSystem {
    MoranSystem::periodic(vec![
        Level::new(2, vec![0, 1], Some(vec![0, 1])).expect("valid level")
    ])
    .expect("valid system")
}

/// Every level `(2, {0,3}, {0,1})`: all tail gcds equal 3, so the tail
/// measures admit no equi-positive subsequence and `1/3` sits in every
/// integral periodic zero set.
pub fn scaled_dyadic() -> MoranSystem {
    MoranSystem::periodic(vec![
        Level::new(2, vec![0, 3], Some(vec![0, 1])).expect("valid level")
    ])
    .expect("valid system")
}

/// First level `(2, {0,1})`, then `(2, {0,3})` forever: the classical
/// non-spectral family from scaling the dyadic digits after one step.
pub fn scaled_dyadic_with_prefix() -> MoranSystem {
    MoranSystem::new(
        vec![Level::new(2, vec![0, 1], Some(vec![0, 1])).expect("valid level")],
        Some(vec![
            Level::new(2, vec![0, 3], Some(vec![0, 1])).expect("valid level")
        ]),
    )
    .expect("valid system")
}

/// Finite truncation of the growing-base system `p_j = 3j`,
/// `D_j = {0, 2, 3j^2 + 1}`. Not eventually periodic, so classification
/// refuses; shipped for spectrum exploration via [`growing_base_spectrum`].
pub fn growing_base_truncation(levels: usize) -> MoranSystem {
    assert!(levels >= 1);
    let prefix = (1..=levels as i64)
        .map(|j| Level::new(3 * j, vec![0, 2, 3 * j * j + 1], None).expect("valid level"))
        .collect();
    MoranSystem::truncation(prefix).expect("valid system")
}

/// The explicit spectrum `Lambda_n = sum_{j<=n} 3^j j! {0, +-1/3}` of the
/// growing-base truncation, encoded directly as its rational point set.
pub fn growing_base_spectrum(levels: usize) -> SpectrumCandidate {
    assert!(levels >= 1);
    let mut points = vec![Rational::zero()];
    let mut factorial: i64 = 1;
    for j in 1..=levels as i64 {
        factorial *= j;
        let step = Rational::from_integer(3i64.pow(j as u32) * factorial) * Rational::new(1, 3);
        let mut next = Vec::with_capacity(points.len() * 3);
        for p in &points {
            next.push(p - &step);
            next.push(p.clone());
            next.push(p + &step);
        }
        points = next;
    }
    SpectrumCandidate::from_points(points).expect("distinct by construction")
}

/// Finite truncation of the exploration system `p = 9`, `D_n = {0, 2, 4^n}`.
/// Its digits outgrow the base, so the standing support-bound hypothesis
/// fails; shipped only as a Q-scan exploration fixture with no verdict
/// attached.
pub fn unbounded_digit_truncation(levels: usize) -> MoranSystem {
    assert!(levels >= 1);
    let prefix = (1..=levels as u32)
        .map(|j| Level::new(9, vec![0, 2, 4i64.pow(j)], None).expect("valid level"))
        .collect();
    MoranSystem::truncation(prefix).expect("valid system")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::truncate;
    use crate::spectrum::check_spectrum_exact;

    #[test]
    fn growing_base_spectrum_counts() {
        for n in 1..=4 {
            let lambda = growing_base_spectrum(n);

            assert_eq!(lambda.len(), 3usize.pow(n as u32));
            let mu = truncate(&growing_base_truncation(n), n).unwrap();
            assert_eq!(mu.atom_count(), 3usize.pow(n as u32));
            assert!(check_spectrum_exact(&mu, &lambda), "level {n}");
        }
    }

    #[test]
    fn fixtures_have_expected_shapes() {
        assert_eq!(quarter_cantor().support_bound(), Rational::new(1, 2));
        assert_eq!(dyadic().support_bound(), Rational::new(1, 2));
        assert_eq!(scaled_dyadic().support_bound(), Rational::new(3, 2));
        let g = growing_base_truncation(5);
        assert_eq!(g.level(5).unwrap().p(), 15);
        assert_eq!(g.level(5).unwrap().digits(), &[0, 2, 76]);
    }
}
