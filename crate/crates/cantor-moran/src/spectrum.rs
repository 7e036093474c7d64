//! Candidate spectra for truncated Moran measures: mixed-radix construction,
//! exact orthogonality and completeness checks, and Q-function scans.
//!
//! For a finite atomic measure, a frequency set is a spectrum iff its nonzero
//! differences lie in the exact zero set of the Fourier transform
//! (orthogonality) and its cardinality matches the support count
//! (completeness). The Q-function `Q(xi) = sum_l |m_hat(xi + l)|^2` gives the
//! numeric counterpart: `Q <= 1` characterizes orthogonal sets and `Q == 1`
//! characterizes spectra.

use rayon::prelude::*;
use serde::Serialize;

use crate::exact::Rational;
use crate::hadamard::{verify_hadamard, MoranSystem};
use crate::measures::AtomicMeasure;
use crate::{Error, Result};

/// A finite candidate spectrum containing 0, with optional per-point digit
/// provenance when built by the mixed-radix construction.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumCandidate {
    points: Vec<Rational>,
    /// `point = l_1 + p_1 l_2 + ... + (p_1...p_{n-1}) l_n`; one digit tuple
    /// per point when constructed.
    provenance: Option<Vec<Vec<i64>>>,
}

impl SpectrumCandidate {
    /// Build from explicit points; 0 must be present and points distinct.
    pub fn from_points(mut points: Vec<Rational>) -> Result<Self> {
        points.sort();
        let before = points.len();
        points.dedup();
        if points.len() != before {
            return Err(Error::InvalidConfig(
                "spectrum points must be distinct".into(),
            ));
        }
        if !points.contains(&Rational::zero()) {
            return Err(Error::InvalidConfig("spectrum must contain 0".into()));
        }
        Ok(SpectrumCandidate {
            points,
            provenance: None,
        })
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn provenance(&self) -> Option<&[Vec<i64>]> {
        self.provenance.as_deref()
    }
}

/// The canonical truncation spectrum
/// `Lambda_n = L_1 + p_1 L_2 + ... + (p_1...p_{n-1}) L_n`, with provenance.
///
/// All levels `1..=n` must carry `L` and verify as Hadamard triples. The
/// mixed-radix sums must be distinct; a collision is an error, not a merge.
pub fn build_spectrum(system: &MoranSystem, n: usize) -> Result<SpectrumCandidate> {
    if n == 0 {
        return Err(Error::LevelOutOfRange(0));
    }
    for j in 1..=n {
        let level = system.level(j)?;
        if level.frequencies().is_none() {
            return Err(Error::MissingL(j));
        }
        if !verify_hadamard(level)? {
            return Err(Error::NotHadamard(format!(
                "level {j}: (p={}, D={:?}, L={:?})",
                level.p(),
                level.digits(),
                level.frequencies()
            )));
        }
    }
    let mut sums: Vec<(i64, Vec<i64>)> = vec![(0, Vec::new())];
    let mut radix = 1i64;
    for j in 1..=n {
        let level = system.level(j)?;
        let l = level.frequencies().expect("checked above");
        let mut next = Vec::with_capacity(sums.len() * l.len());
        for (value, digits) in &sums {
            for &ell in l {
                let mut d = digits.clone();
                d.push(ell);
                next.push((value + radix * ell, d));
            }
        }
        sums = next;
        radix = radix
            .checked_mul(level.p())
            .ok_or_else(|| Error::Unsupported("radix overflow".into()))?;
    }
    let mut seen = std::collections::BTreeMap::new();
    for (value, digits) in &sums {
        if seen.insert(*value, digits.clone()).is_some() {
            return Err(Error::UnexpectedCollision(format!("point {value}")));
        }
    }
    let (points, provenance): (Vec<Rational>, Vec<Vec<i64>>) = seen
        .into_iter()
        .map(|(v, d)| (Rational::from_integer(v), d))
        .unzip();
    Ok(SpectrumCandidate {
        points,
        provenance: Some(provenance),
    })
}

/// Exact bi-zero check: every nonzero difference of spectrum points lies in
/// the exact zero set of the measure's Fourier transform.
pub fn check_bizero(measure: &AtomicMeasure, candidate: &SpectrumCandidate) -> bool {
    let points = candidate.points();
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            // |m_hat(-xi)| = |m_hat(xi)| for real measures, so one sign suffices.
            if !measure.fourier_is_zero(&(b - a)) {
                return false;
            }
        }
    }
    true
}

/// Exact spectrum check for finite atomic measures: orthogonality plus
/// matching cardinality `#Lambda = #supp`.
pub fn check_spectrum_exact(measure: &AtomicMeasure, candidate: &SpectrumCandidate) -> bool {
    candidate.len() == measure.atom_count() && check_bizero(measure, candidate)
}

/// `Q(xi) = sum_{l in Lambda} |m_hat(xi + l)|^2`.
pub fn q_function(measure: &AtomicMeasure, candidate: &SpectrumCandidate, xi: f64) -> f64 {
    candidate
        .points()
        .iter()
        .map(|l| measure.fourier(xi + l.to_f64()).norm_sqr())
        .sum()
}

// Inclusive sample count, robust to step sizes with no exact binary form.
fn grid_count(from: f64, to: f64, step: f64) -> usize {
    ((to - from) / step + 1e-9).floor() as usize + 1
}

/// Extrema of a Q-function grid scan.
#[derive(Clone, Debug, Serialize)]
pub struct QScan {
    pub min: f64,
    pub max: f64,
    pub argmin: f64,
    pub argmax: f64,
    pub samples: usize,
}

/// Scan `Q` over the inclusive grid `from, from+step, ..., to`.
///
/// Deterministic regardless of thread count: grid values are evaluated in
/// index order and reduced sequentially; ties keep the smallest argument.
pub fn q_scan(
    measure: &AtomicMeasure,
    candidate: &SpectrumCandidate,
    from: f64,
    to: f64,
    step: f64,
) -> QScan {
    assert!(step > 0.0, "grid step must be positive");
    assert!(to >= from, "empty scan interval");
    let count = grid_count(from, to, step);
    let values: Vec<(f64, f64)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let xi = from + i as f64 * step;
            (xi, q_function(measure, candidate, xi))
        })
        .collect();
    let mut scan = QScan {
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
        argmin: from,
        argmax: from,
        samples: count,
    };
    for (xi, q) in values {
        if q < scan.min {
            scan.min = q;
            scan.argmin = xi;
        }
        if q > scan.max {
            scan.max = q;
            scan.argmax = xi;
        }
    }
    scan
}

/// Q-function values over the same grid, for CSV emission.
pub fn q_profile(
    measure: &AtomicMeasure,
    candidate: &SpectrumCandidate,
    from: f64,
    to: f64,
    step: f64,
) -> Vec<(f64, f64)> {
    assert!(step > 0.0 && to >= from);
    let count = grid_count(from, to, step);
    (0..count)
        .into_par_iter()
        .map(|i| {
            let xi = from + i as f64 * step;
            (xi, q_function(measure, candidate, xi))
        })
        .collect()
}
