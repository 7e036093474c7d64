//! Hadamard triples `(p, D, L)` and eventually-periodic Moran systems.
//!
//! A triple is Hadamard when the matrix
//! `H = (1/sqrt(#D)) [e^{2 pi i d l / p}]_{l in L, d in D}` is unitary. For a
//! square matrix this is equivalent to the pairwise differences of `L`
//! landing in the exact zero set of the digit mask `m_D(./p)`, which is how
//! [`verify_hadamard`] decides it — no floating matrix products are involved.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::exact::{mask_eval, mask_is_zero, Rational};
use crate::{Error, Result};

/// Default upper bound on `p` for the clique search in [`find_spectra_l`].
pub const DEFAULT_SEARCH_BOUND: i64 = 64;

/// One level `(p, D, L)` of a Moran system. `L` is optional; when absent it
/// can often be discovered by [`find_spectra_l`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    p: i64,
    digits: Vec<i64>,
    frequencies: Option<Vec<i64>>,
}

impl Level {
    /// Validates `p >= 2`, `0 in D`, nonnegative digits, and `#L = #D` with
    /// `0 in L` when `L` is given. Digit and frequency sets are stored sorted
    /// and duplicate-free.
    pub fn new(p: i64, digits: Vec<i64>, frequencies: Option<Vec<i64>>) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidLevel(format!("base p = {p} must be >= 2")));
        }
        let digits = canonical_set(digits, "digit set D")?;
        if digits.first() != Some(&0) {
            return Err(Error::InvalidLevel("digit set D must contain 0".into()));
        }
        let frequencies = match frequencies {
            None => None,
            Some(l) => {
                let l = canonical_set(l, "frequency set L")?;
                if l.first() != Some(&0) {
                    return Err(Error::InvalidLevel("frequency set L must contain 0".into()));
                }
                if l.len() != digits.len() {
                    return Err(Error::InvalidLevel(format!(
                        "#L = {} must equal #D = {}",
                        l.len(),
                        digits.len()
                    )));
                }
                Some(l)
            }
        };
        Ok(Level {
            p,
            digits,
            frequencies,
        })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    pub fn digit_count(&self) -> usize {
        self.digits.len()
    }

    pub fn frequencies(&self) -> Option<&[i64]> {
        self.frequencies.as_deref()
    }

    /// gcd of the digit set, with `gcd({0}) = 0`.
    pub fn gcd_digits(&self) -> i64 {
        self.digits.iter().fold(0i64, |g, &d| g.gcd(&d))
    }

    pub fn with_frequencies(&self, l: Vec<i64>) -> Result<Self> {
        Level::new(self.p, self.digits.clone(), Some(l))
    }
}

fn canonical_set(mut values: Vec<i64>, what: &str) -> Result<Vec<i64>> {
    if values.is_empty() {
        return Err(Error::InvalidLevel(format!("{what} must be nonempty")));
    }
    if values.iter().any(|&v| v < 0) {
        return Err(Error::InvalidLevel(format!(
            "{what} must contain only nonnegative integers"
        )));
    }
    values.sort_unstable();
    let before = values.len();
    values.dedup();
    if values.len() != before {
        return Err(Error::InvalidLevel(format!("{what} contains duplicates")));
    }
    Ok(values)
}

/// An eventually-periodic sequence of levels: a finite prefix followed by an
/// infinitely repeated cycle. Without a cycle the system is a finite
/// truncation only, and tail questions (gcd conditions, classification)
/// refuse with [`Error::NoCycle`].
#[derive(Clone, Debug)]
pub struct MoranSystem {
    prefix: Vec<Level>,
    cycle: Option<Vec<Level>>,
}

impl MoranSystem {
    pub fn new(prefix: Vec<Level>, cycle: Option<Vec<Level>>) -> Result<Self> {
        if let Some(c) = &cycle {
            if c.is_empty() {
                return Err(Error::InvalidConfig("cycle must be nonempty".into()));
            }
        }
        if prefix.is_empty() && cycle.is_none() {
            return Err(Error::InvalidConfig(
                "system needs a nonempty prefix or a cycle".into(),
            ));
        }
        Ok(MoranSystem { prefix, cycle })
    }

    pub fn periodic(cycle: Vec<Level>) -> Result<Self> {
        Self::new(Vec::new(), Some(cycle))
    }

    pub fn truncation(prefix: Vec<Level>) -> Result<Self> {
        Self::new(prefix, None)
    }

    pub fn prefix(&self) -> &[Level] {
        &self.prefix
    }

    pub fn cycle(&self) -> Option<&[Level]> {
        self.cycle.as_deref()
    }

    pub fn has_cycle(&self) -> bool {
        self.cycle.is_some()
    }

    /// The 1-indexed n-th level: `prefix[n-1]` for `n <= #prefix`, then the
    /// cycle repeated forever.
    pub fn level(&self, n: usize) -> Result<&Level> {
        if n == 0 {
            return Err(Error::LevelOutOfRange(0));
        }
        if n <= self.prefix.len() {
            return Ok(&self.prefix[n - 1]);
        }
        match &self.cycle {
            Some(cycle) => Ok(&cycle[(n - self.prefix.len() - 1) % cycle.len()]),
            None => Err(Error::LevelOutOfRange(n)),
        }
    }

    /// Cycle phase of the 1-indexed level `n`, when `n` lies inside the tail.
    pub fn cycle_phase(&self, n: usize) -> Option<usize> {
        let cycle = self.cycle.as_ref()?;
        if n > self.prefix.len() {
            Some((n - self.prefix.len() - 1) % cycle.len())
        } else {
            None
        }
    }

    /// All distinct level slots (prefix then one cycle period), with their
    /// first 1-indexed position.
    pub fn level_slots(&self) -> Vec<(usize, &Level)> {
        let mut slots: Vec<(usize, &Level)> = self
            .prefix
            .iter()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .collect();
        if let Some(cycle) = &self.cycle {
            slots.extend(
                cycle
                    .iter()
                    .enumerate()
                    .map(|(i, l)| (self.prefix.len() + i + 1, l)),
            );
        }
        slots
    }

    /// Support bound `C = sup_n max(D_n)/p_n`, finite for prefix+cycle data.
    pub fn support_bound(&self) -> Rational {
        self.level_slots()
            .iter()
            .map(|(_, l)| Rational::new(*l.digits().last().expect("digits nonempty"), l.p()))
            .max()
            .expect("at least one level")
    }

    pub fn sup_digit_count(&self) -> usize {
        self.level_slots()
            .iter()
            .map(|(_, l)| l.digit_count())
            .max()
            .expect("at least one level")
    }

    /// Product `p_{n+1} ... p_{n+j}` as a big integer.
    pub fn scale_product(&self, n: usize, depth: usize) -> Result<BigInt> {
        let mut prod = BigInt::from(1);
        for j in 1..=depth {
            prod *= BigInt::from(self.level(n + j)?.p());
        }
        Ok(prod)
    }
}

/// Exact Hadamard test: `#L = #D` (enforced at construction) and every
/// nonzero difference `(l - l')/p` lies in the exact zero set of `m_D`.
pub fn verify_hadamard(level: &Level) -> Result<bool> {
    let l = level.frequencies().ok_or(Error::MissingL(0))?;
    for (i, &a) in l.iter().enumerate() {
        for &b in &l[i + 1..] {
            let diff = Rational::new(b - a, level.p());
            if diff.is_integer() || !mask_is_zero(level.digits(), &diff) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `| sum_{l in L} |m_D((xi + l)/p)|^2 - 1 |`, which vanishes identically for
/// Hadamard triples. Errors with [`Error::NotHadamard`] when the triple fails
/// verification.
pub fn parseval_residual(level: &Level, xi: &Rational) -> Result<f64> {
    if !verify_hadamard(level)? {
        return Err(Error::NotHadamard(format!(
            "(p={}, D={:?}, L={:?})",
            level.p(),
            level.digits(),
            level.frequencies()
        )));
    }
    let l = level.frequencies().expect("checked above");
    let p = Rational::from_integer(level.p());
    let sum: f64 = l
        .iter()
        .map(|&ell| {
            let arg = (xi + &Rational::from_integer(ell)) / &p;
            mask_eval(level.digits(), arg.to_f64()).norm_sqr()
        })
        .sum();
    Ok((sum - 1.0).abs())
}

/// All frequency sets `L in {0,...,p-1}` with `0 in L`, `#L = #D`, and all
/// nonzero differences in the exact zero set of `m_{D/p}`.
///
/// Works on the graph over `{0,...,p-1}` whose edges are the exact zero
/// differences, enumerating cliques of size `#D` through 0. Results are in
/// lexicographic order.
pub fn find_spectra_l(p: i64, digits: &[i64], bound: i64) -> Result<Vec<Vec<i64>>> {
    if p > bound {
        return Err(Error::SearchBoundExceeded { p, bound });
    }
    if p < 2 {
        return Err(Error::InvalidLevel(format!("base p = {p} must be >= 2")));
    }
    let k = digits.len();
    if k == 0 {
        return Err(Error::InvalidLevel("digit set D must be nonempty".into()));
    }
    if k == 1 {
        return Ok(vec![vec![0]]);
    }
    if (k as i64) > p {
        return Ok(Vec::new());
    }
    // zero_diff[t] for t in 1..p: is m_D(t/p) exactly zero?
    let zero_diff: Vec<bool> = (0..p)
        .map(|t| t != 0 && mask_is_zero(digits, &Rational::new(t, p)))
        .collect();
    let mut found = Vec::new();
    let mut current = vec![0i64];
    fn extend(
        current: &mut Vec<i64>,
        start: i64,
        p: i64,
        k: usize,
        zero_diff: &[bool],
        found: &mut Vec<Vec<i64>>,
    ) {
        if current.len() == k {
            found.push(current.clone());
            return;
        }
        for cand in start..p {
            if current
                .iter()
                .all(|&m| zero_diff[(cand - m).unsigned_abs() as usize])
            {
                current.push(cand);
                extend(current, cand + 1, p, k, zero_diff, found);
                current.pop();
            }
        }
    }
    extend(&mut current, 1, p, k, &zero_diff, &mut found);
    Ok(found)
}

/// Brute-force unitarity of `H^* H` in floating point; test-support oracle
/// for [`verify_hadamard`].
pub fn unitary_residual(p: i64, digits: &[i64], frequencies: &[i64]) -> f64 {
    let k = digits.len();
    let h: Vec<Vec<num_complex::Complex64>> = frequencies
        .iter()
        .map(|&ell| {
            digits
                .iter()
                .map(|&d| {
                    num_complex::Complex64::from_polar(
                        1.0 / (k as f64).sqrt(),
                        2.0 * std::f64::consts::PI * (d as f64) * (ell as f64) / p as f64,
                    )
                })
                .collect()
        })
        .collect();
    let mut worst: f64 = 0.0;
    for a in 0..k {
        for b in 0..k {
            let mut entry = num_complex::Complex64::new(0.0, 0.0);
            for row in &h {
                entry += row[a].conj() * row[b];
            }
            let target = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((entry - target).norm());
        }
    }
    worst
}
