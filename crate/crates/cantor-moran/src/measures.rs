//! Exact truncated Moran measures: convolution, Fourier transforms, tail
//! bounds, Wiener averages and ball masses.
//!
//! An [`AtomicMeasure`] is a finite probability measure with rational atom
//! positions and weights. Truncations `mu_n` and tail truncations of `nu_n`
//! are built by exact convolution; colliding atoms merge, so the atom count
//! is the true support cardinality.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::exact::{weighted_root_sum_is_zero, Rational};
use crate::hadamard::MoranSystem;
use crate::{Error, Result};

/// Finite atomic probability measure with exact rational data.
///
/// Invariants: weights are positive, they sum to exactly 1, and positions are
/// distinct (construction merges collisions by adding weights).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicMeasure {
    atoms: BTreeMap<Rational, Rational>,
}

impl AtomicMeasure {
    /// Build from (position, weight) pairs, merging collisions. The merged
    /// weights must be positive and sum to exactly 1.
    pub fn from_atoms<I>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut map: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (pos, w) in atoms {
            let entry = map.entry(pos).or_insert_with(Rational::zero);
            *entry = &*entry + &w;
        }
        let measure = AtomicMeasure { atoms: map };
        measure.validate()?;
        Ok(measure)
    }

    fn validate(&self) -> Result<()> {
        if self.atoms.is_empty() {
            return Err(Error::InvalidMeasure("measure has no atoms".into()));
        }
        let mut total = Rational::zero();
        for (pos, w) in &self.atoms {
            if !w.is_positive() {
                return Err(Error::InvalidMeasure(format!(
                    "atom at {pos} has nonpositive weight {w}"
                )));
            }
            total = &total + w;
        }
        if total != Rational::one() {
            return Err(Error::InvalidMeasure(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(())
    }

    /// The Dirac measure at `pos`.
    pub fn point_mass(pos: Rational) -> Self {
        let mut atoms = BTreeMap::new();
        atoms.insert(pos, Rational::one());
        AtomicMeasure { atoms }
    }

    /// Uniform measure on a finite set of positions (must be distinct).
    pub fn uniform(positions: Vec<Rational>) -> Result<Self> {
        let n = positions.len();
        if n == 0 {
            return Err(Error::InvalidMeasure("empty position set".into()));
        }
        let w = Rational::new(1, n as i64);
        let measure = Self::from_atoms(positions.into_iter().map(|p| (p, w.clone())))?;
        if measure.atom_count() != n {
            return Err(Error::InvalidMeasure(
                "uniform positions must be distinct".into(),
            ));
        }
        Ok(measure)
    }

    /// Uniform digit measure `delta_{D/scale}`.
    pub fn digit_measure(digits: &[i64], scale: &BigInt) -> Result<Self> {
        Self::uniform(
            digits
                .iter()
                .map(|&d| Rational::from_big(BigInt::from(d), scale.clone()))
                .collect(),
        )
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// Atoms in increasing position order.
    pub fn atoms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.atoms.iter()
    }

    pub fn weight_at(&self, pos: &Rational) -> Option<&Rational> {
        self.atoms.get(pos)
    }

    /// `sum_x w_x^2`, the Wiener-average limit for measures on `[0,1)`.
    pub fn sum_squared_weights(&self) -> Rational {
        self.atoms
            .values()
            .fold(Rational::zero(), |acc, w| &acc + &(w * w))
    }

    /// Convolution: atoms at all position sums with product weights, merged
    /// on collision. Total mass stays exactly 1.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut atoms: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (xa, wa) in &self.atoms {
            for (xb, wb) in &other.atoms {
                let pos = xa + xb;
                let w = wa * wb;
                let entry = atoms.entry(pos).or_insert_with(Rational::zero);
                *entry = &*entry + &w;
            }
        }
        AtomicMeasure { atoms }
    }

    /// Positions reduced mod 1, merging collisions; what integer-frequency
    /// sampling sees.
    pub fn reduce_mod_one(&self) -> Self {
        let mut atoms: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (pos, w) in &self.atoms {
            let entry = atoms.entry(pos.mod_one()).or_insert_with(Rational::zero);
            *entry = &*entry + w;
        }
        AtomicMeasure { atoms }
    }

    /// Floating Fourier transform `sum_x w_x e^{2 pi i x xi}`.
    pub fn fourier(&self, xi: f64) -> Complex64 {
        self.atoms
            .iter()
            .map(|(x, w)| {
                Complex64::from_polar(w.to_f64(), 2.0 * std::f64::consts::PI * x.to_f64() * xi)
            })
            .sum()
    }

    /// Exact vanishing test of the Fourier transform at a rational frequency.
    ///
    /// Clearing the common denominator of `{x * xi}` and the weights turns
    /// the sum into an integer combination of roots of unity, decided by the
    /// cyclotomic kernel.
    pub fn fourier_is_zero(&self, xi: &Rational) -> bool {
        if xi.is_zero() {
            return false;
        }
        // q = lcm of position denominators, W = lcm of weight denominators.
        let q = self
            .atoms
            .keys()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let weight_lcm = self
            .atoms
            .values()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        // x * xi = (n_x * a) / (q * b): common root order q * b.
        let order_big = &q * xi.denom();
        let order = num_traits::ToPrimitive::to_u64(&order_big)
            .expect("root-of-unity order exceeds u64; beyond the supported desk scale");
        let terms = self.atoms.iter().map(|(x, w)| {
            let n_x = (x.numer() * &q) / x.denom();
            let mut e = (n_x * xi.numer()) % &order_big;
            if e.is_negative() {
                e += &order_big;
            }
            let c = (w.numer() * &weight_lcm) / w.denom();
            (
                num_traits::ToPrimitive::to_u64(&e).expect("reduced exponent fits"),
                c,
            )
        });
        weighted_root_sum_is_zero(terms, order)
    }

    /// Exact mass of the open ball `|position - x| < r`.
    pub fn ball_mass(&self, x: &Rational, r: &Rational) -> Rational {
        assert!(r.is_positive(), "ball radius must be positive");
        let lo = x - r;
        let hi = x + r;
        let mut mass = Rational::zero();
        for (pos, w) in self.atoms.range(lo.clone()..) {
            if pos >= &hi {
                break;
            }
            if pos > &lo {
                mass = &mass + w;
            }
        }
        mass
    }

    /// `(1/(2N+1)) sum_{k=-N}^{N} |m_hat(k)|^2` over the mod-1 reduction of
    /// this measure; converges to `sum_x w_x^2` as `N` grows.
    pub fn wiener_average(&self, n: u64) -> f64 {
        let wrapped = self.reduce_mod_one();
        let atoms: Vec<(f64, f64)> = wrapped
            .atoms
            .iter()
            .map(|(x, w)| (x.to_f64(), w.to_f64()))
            .collect();
        let transform_sq = |k: f64| -> f64 {
            let mut sum = Complex64::new(0.0, 0.0);
            for &(x, w) in &atoms {
                sum += Complex64::from_polar(w, 2.0 * std::f64::consts::PI * x * k);
            }
            sum.norm_sqr()
        };
        // |m_hat(-k)| = |m_hat(k)| for real measures.
        let mut total = transform_sq(0.0);
        for k in 1..=n {
            total += 2.0 * transform_sq(k as f64);
        }
        total / (2 * n + 1) as f64
    }
}

/// The truncation `mu_n = delta_{p1^-1 D1} * ... * delta_{(p1...pn)^-1 Dn}`.
pub fn truncate(system: &MoranSystem, n: usize) -> Result<AtomicMeasure> {
    if n == 0 {
        return Err(Error::LevelOutOfRange(0));
    }
    let mut measure = AtomicMeasure::point_mass(Rational::zero());
    let mut scale = BigInt::one();
    for j in 1..=n {
        let level = system.level(j)?;
        scale *= BigInt::from(level.p());
        measure = measure.convolve(&AtomicMeasure::digit_measure(level.digits(), &scale)?);
    }
    Ok(measure)
}

/// The depth-term truncation of the tail measure `nu_n`, with scales
/// `(p_{n+1} ... p_{n+j})^-1`.
pub fn tail_truncate(system: &MoranSystem, n: usize, depth: usize) -> Result<AtomicMeasure> {
    if depth == 0 {
        return Err(Error::LevelOutOfRange(n));
    }
    let mut measure = AtomicMeasure::point_mass(Rational::zero());
    let mut scale = BigInt::one();
    for j in 1..=depth {
        let level = system.level(n + j)?;
        scale *= BigInt::from(level.p());
        measure = measure.convolve(&AtomicMeasure::digit_measure(level.digits(), &scale)?);
    }
    Ok(measure)
}

/// Output of [`tail_lower_bound`].
#[derive(Clone, Debug)]
pub struct TailBound {
    /// Number of levels to skip: beyond `n + j0` the tail product is bounded
    /// below by `2/pi` on `|xi| < m`.
    pub j0: usize,
    /// The guaranteed lower bound for the skipped tail, `2/pi`.
    pub bound: f64,
    /// `(p_{n+1} ... p_{n+j0})^{-1} C m`, which the construction keeps < 1/4.
    pub scaled_reach: f64,
    /// Whether `scaled_reach < 1/4` held, as it must for `p_j >= 2`.
    pub scale_check: bool,
}

/// `J_0 = max([log2(8 C m)], 0) + 1` with `C = sup_n max(D_n)/p_n`, and the
/// guaranteed bound `2/pi` for the infinite tail product beyond level
/// `n + J_0` on `|xi| < m`.
pub fn tail_lower_bound(system: &MoranSystem, n: usize, m: f64) -> Result<TailBound> {
    if !system.has_cycle() {
        return Err(Error::NoCycle);
    }
    assert!(m > 0.0, "frequency window m must be positive");
    let c = system.support_bound().to_f64();
    let log = (8.0 * c * m).log2();
    let j0 = if log.is_finite() && log > 0.0 {
        log.floor() as usize + 1
    } else {
        1
    };
    let mut scale = 1.0f64;
    for j in 1..=j0 {
        scale *= system.level(n + j)?.p() as f64;
    }
    let scaled_reach = c * m / scale;
    Ok(TailBound {
        j0,
        bound: 2.0 / std::f64::consts::PI,
        scaled_reach,
        scale_check: scaled_reach < 0.25,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::mask_eval;
    use crate::hadamard::Level;

    fn quarter_cantor() -> MoranSystem {
        MoranSystem::periodic(vec![Level::new(4, vec![0, 2], Some(vec![0, 1])).unwrap()]).unwrap()
    }

    fn dyadic() -> MoranSystem {
        MoranSystem::periodic(vec![Level::new(2, vec![0, 1], Some(vec![0, 1])).unwrap()]).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn convolve_with_point_mass_is_identity() {
        let m = AtomicMeasure::uniform(vec![rat(0, 1), rat(1, 4)]).unwrap();
        let delta = AtomicMeasure::point_mass(Rational::zero());
        assert_eq!(delta.convolve(&m), m);
    }

    #[test]
    fn convolve_enumerates_sums() {
        let a = AtomicMeasure::uniform(vec![rat(0, 1), rat(1, 4)]).unwrap();
        let b = AtomicMeasure::uniform(vec![rat(0, 1), rat(1, 16)]).unwrap();
        let c = a.convolve(&b);
        assert_eq!(c.atom_count(), 4);
        for pos in [rat(0, 1), rat(1, 16), rat(1, 4), rat(5, 16)] {
            assert_eq!(c.weight_at(&pos), Some(&rat(1, 4)));
        }
    }

    #[test]
    fn convolve_merges_collisions() {
        let half = AtomicMeasure::uniform(vec![rat(0, 1), rat(1, 2)]).unwrap();
        let c = half.convolve(&half);
        assert_eq!(c.atom_count(), 3);
        assert_eq!(c.weight_at(&rat(0, 1)), Some(&rat(1, 4)));
        assert_eq!(c.weight_at(&rat(1, 2)), Some(&rat(1, 2)));
        assert_eq!(c.weight_at(&rat(1, 1)), Some(&rat(1, 4)));
    }

    #[test]
    fn truncate_quarter_cantor_two_levels() {
        let mu2 = truncate(&quarter_cantor(), 2).unwrap();
        assert_eq!(mu2.atom_count(), 4);
        for pos in [rat(0, 1), rat(1, 8), rat(1, 2), rat(5, 8)] {
            assert_eq!(mu2.weight_at(&pos), Some(&rat(1, 4)));
        }
    }

    #[test]
    fn truncate_trivial_digits_gives_point_mass() {
        let sys =
            MoranSystem::periodic(vec![Level::new(3, vec![0], Some(vec![0])).unwrap()]).unwrap();
        let mu = truncate(&sys, 5).unwrap();
        assert_eq!(mu, AtomicMeasure::point_mass(Rational::zero()));
    }

    #[test]
    fn truncate_dyadic_is_uniform_lattice() {
        let mu3 = truncate(&dyadic(), 3).unwrap();
        assert_eq!(mu3.atom_count(), 8);
        for k in 0..8 {
            assert_eq!(mu3.weight_at(&rat(k, 8)), Some(&rat(1, 8)));
        }
    }

    #[test]
    fn truncation_is_one_more_convolution() {
        let sys = quarter_cantor();
        let mu3 = truncate(&sys, 3).unwrap();
        let mu2 = truncate(&sys, 2).unwrap();
        let step = AtomicMeasure::digit_measure(&[0, 2], &BigInt::from(64)).unwrap();
        assert_eq!(mu2.convolve(&step), mu3);
    }

    #[test]
    fn tail_truncate_depth_one() {
        let nu = tail_truncate(&quarter_cantor(), 0, 1).unwrap();
        assert_eq!(nu.atom_count(), 2);
        assert_eq!(nu.weight_at(&rat(0, 1)), Some(&rat(1, 2)));
        assert_eq!(nu.weight_at(&rat(1, 2)), Some(&rat(1, 2)));
        // periodicity: the same truncation five levels in
        assert_eq!(tail_truncate(&quarter_cantor(), 5, 1).unwrap(), nu);
    }

    #[test]
    fn tail_truncate_rejects_depth_zero() {
        assert!(tail_truncate(&quarter_cantor(), 0, 0).is_err());
    }

    #[test]
    fn tail_support_stays_within_twice_the_bound() {
        let sys = MoranSystem::new(
            vec![Level::new(2, vec![0, 3], None).unwrap()],
            Some(vec![Level::new(4, vec![0, 2], None).unwrap()]),
        )
        .unwrap();
        let c = sys.support_bound();
        let two_c = &Rational::from_integer(2) * &c;
        for n in 0..3 {
            let nu = tail_truncate(&sys, n, 6).unwrap();
            for (pos, _) in nu.atoms() {
                assert!(pos.abs() <= two_c, "atom {pos} exceeds 2C = {two_c}");
            }
        }
    }

    #[test]
    fn fourier_at_zero_is_total_mass() {
        let mu = truncate(&quarter_cantor(), 3).unwrap();
        assert!((mu.fourier(0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(!mu.fourier_is_zero(&Rational::zero()));
    }

    #[test]
    fn fourier_zero_examples() {
        let mu1 = truncate(&quarter_cantor(), 1).unwrap();
        assert!(mu1.fourier_is_zero(&rat(1, 1)));
        assert!(!mu1.fourier_is_zero(&rat(2, 1)));
        assert!(mu1.fourier(1.0).norm() < 1e-12);
        let mu2 = truncate(&quarter_cantor(), 2).unwrap();
        assert!(mu2.fourier_is_zero(&rat(4, 1)));
    }

    #[test]
    fn fourier_factorizes_over_levels() {
        let sys = quarter_cantor();
        let mu3 = truncate(&sys, 3).unwrap();
        for &xi in &[0.37, 1.25, -2.0, 5.0] {
            let direct = mu3.fourier(xi);
            let mut product = Complex64::new(1.0, 0.0);
            let mut scale = 1.0;
            for j in 1..=3 {
                scale *= sys.level(j).unwrap().p() as f64;
                product *= mask_eval(sys.level(j).unwrap().digits(), xi / scale);
            }
            assert!((direct - product).norm() < 1e-12, "xi = {xi}");
        }
    }

    #[test]
    fn ball_mass_examples() {
        let delta = AtomicMeasure::point_mass(Rational::zero());
        assert_eq!(delta.ball_mass(&rat(0, 1), &rat(1, 1)), Rational::one());
        let mu2 = truncate(&quarter_cantor(), 2).unwrap();
        // atoms in (-1/4, 1/4) are 0 and 1/8
        assert_eq!(mu2.ball_mass(&rat(0, 1), &rat(1, 4)), rat(1, 2));
        // open ball: the atom at 1/2 sits exactly on the boundary of B(1/4; 1/4)
        assert_eq!(mu2.ball_mass(&rat(1, 4), &rat(1, 4)), rat(1, 4));
    }

    #[test]
    fn ball_mass_on_dyadic_lattice_matches_counting() {
        let mun = truncate(&dyadic(), 6).unwrap();
        let r = rat(3, 64);
        for k in 0..10 {
            let x = rat(k, 10);
            let expected = (0..64)
                .filter(|&j| (rat(j, 64) - x.clone()).abs() < r)
                .count();
            let mass = mun.ball_mass(&x, &r);
            assert_eq!(mass, rat(expected as i64, 64));
        }
    }

    #[test]
    fn tail_lower_bound_examples() {
        let tb = tail_lower_bound(&quarter_cantor(), 0, 1.0).unwrap();
        assert_eq!(tb.j0, 3);
        assert!((tb.bound - 2.0 / std::f64::consts::PI).abs() < 1e-15);
        assert!(tb.scale_check);

        let tb = tail_lower_bound(&dyadic(), 0, 2.0).unwrap();
        assert_eq!(tb.j0, 4);

        // tiny window: 8Cm < 1 takes the max{., 0} branch
        let tb = tail_lower_bound(&quarter_cantor(), 0, 0.01).unwrap();
        assert_eq!(tb.j0, 1);
    }

    #[test]
    fn wiener_average_point_mass_is_one() {
        let delta = AtomicMeasure::point_mass(Rational::zero());
        for n in [10, 100] {
            assert!((delta.wiener_average(n) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn wiener_average_half_lattice() {
        let m = AtomicMeasure::uniform(vec![rat(0, 1), rat(1, 2)]).unwrap();
        let avg = m.wiener_average(10_000);
        assert!((avg - 0.5).abs() < 1e-3, "average {avg}");
    }

    #[test]
    fn wiener_wraps_positions_mod_one() {
        // atoms at 0 and 3/2 wrap to 0 and 1/2
        let m = AtomicMeasure::uniform(vec![rat(0, 1), rat(3, 2)]).unwrap();
        let wrapped = m.reduce_mod_one();
        assert_eq!(wrapped.atom_count(), 2);
        assert!(wrapped.weight_at(&rat(1, 2)).is_some());
        // wrapping collisions merge into the squared-weight target
        let m = AtomicMeasure::uniform(vec![rat(0, 1), rat(1, 1)]).unwrap();
        assert_eq!(m.reduce_mod_one().sum_squared_weights(), Rational::one());
        assert!((m.wiener_average(100) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn weight_conservation_through_convolutions() {
        let mut total = AtomicMeasure::point_mass(Rational::zero());
        for j in 1..=6 {
            let scale = BigInt::from(4).pow(j);
            total = total.convolve(&AtomicMeasure::digit_measure(&[0, 2], &scale).unwrap());
            let sum = total.atoms().fold(Rational::zero(), |acc, (_, w)| &acc + w);
            assert_eq!(sum, Rational::one());
        }
    }
}
