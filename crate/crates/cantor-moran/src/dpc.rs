//! Double points condition machinery and the spectrality/continuity
//! classifier for eventually-periodic Moran systems.
//!
//! For a Hadamard pair `(p, D)` the double points condition set
//! `T_{p,D} in [0,1)` — the points where at least two translates
//! `(xi + l)/p`, `l in {0,...,p-1}`, avoid the mask's zeros — has a closed
//! form: all of `[0,1)` when `p > #D`, and `[0,1) \ (1/gcd D) Z` when
//! `p = #D`. [`dpcs_member`] is the brute-force oracle for the definition;
//! [`dpcs_describe`] is the closed form; the two are checked against each
//! other exhaustively in the acceptance suite.

use num_integer::Integer;
use serde::Serialize;

use crate::exact::{mask_is_zero, Rational};
use crate::hadamard::{find_spectra_l, verify_hadamard, MoranSystem, DEFAULT_SEARCH_BOUND};
use crate::{Error, Result};

/// Symbolic value of the double points condition set `T_{p,D}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum DpcsDescription {
    /// `T_{p,D} = [0,1)`; the pair satisfies the double points condition.
    Full,
    /// `T_{p,D} = [0,1) \ (1/g) Z` with `g = gcd D`.
    LatticeComplement { gcd: i64 },
}

impl DpcsDescription {
    /// Membership of `xi in [0,1)` in the described set.
    pub fn contains(&self, xi: &Rational) -> bool {
        match self {
            DpcsDescription::Full => true,
            DpcsDescription::LatticeComplement { gcd } => {
                !(xi * &Rational::from_integer(*gcd)).is_integer()
            }
        }
    }
}

/// Brute-force oracle for the double points condition at `xi`: true iff at
/// least two translates `l in {0,...,p-1}` give `m_D((xi + l)/p) != 0`,
/// decided exactly.
pub fn dpcs_member(p: i64, digits: &[i64], xi: &Rational) -> bool {
    let p_rat = Rational::from_integer(p);
    let mut nonzero = 0;
    for ell in 0..p {
        let arg = (xi + &Rational::from_integer(ell)) / &p_rat;
        if !mask_is_zero(digits, &arg) {
            nonzero += 1;
            if nonzero >= 2 {
                return true;
            }
        }
    }
    false
}

/// Closed-form description of `T_{p,D}` for a Hadamard pair.
///
/// Requires some `L` to exist (searched up to `DEFAULT_SEARCH_BOUND`);
/// `p > #D` gives `Full`, `p = #D` gives the lattice complement.
pub fn dpcs_describe(p: i64, digits: &[i64]) -> Result<DpcsDescription> {
    let k = digits.len() as i64;
    if p < k {
        return Err(Error::Unsupported(format!(
            "p = {p} < #D = {k}: no Hadamard triple can exist"
        )));
    }
    let spectra = find_spectra_l(p, digits, DEFAULT_SEARCH_BOUND)?;
    if spectra.is_empty() {
        return Err(Error::NotHadamard(format!(
            "(p={p}, D={digits:?}) admits no L"
        )));
    }
    if p > k {
        Ok(DpcsDescription::Full)
    } else {
        let gcd = digits.iter().fold(0i64, |g, &d| g.gcd(&d));
        Ok(DpcsDescription::LatticeComplement { gcd })
    }
}

/// `d_n' = gcd over all j >= n of gcd D_j`, exact for periodic tails: the gcd
/// stabilizes after one full cycle beyond `max(n, #prefix + 1)`.
pub fn gcd_tail(system: &MoranSystem, n: usize) -> Result<i64> {
    if !system.has_cycle() {
        return Err(Error::NoCycle);
    }
    if n == 0 {
        return Err(Error::LevelOutOfRange(0));
    }
    let cycle_len = system.cycle().expect("checked").len();
    let hi = n.max(system.prefix().len() + 1) + cycle_len - 1;
    let mut g = 0i64;
    for j in n..=hi {
        g = g.gcd(&system.level(j)?.gcd_digits());
        if g == 1 {
            break;
        }
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectralConclusion {
    /// An equi-positive subsequence of tail measures exists, hence the Moran
    /// measure is spectral.
    Spectral,
    /// The sufficient criterion fails; no spectrality claim is made either way.
    NotImplied,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Continuity {
    Singular,
    AbsolutelyContinuous,
}

/// A named criterion plus the concrete evidence that fired it.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub criterion: String,
    pub evidence: String,
}

/// Outcome of [`classify`].
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub equi_positive_subsequence: bool,
    pub spectral_conclusion: SpectralConclusion,
    pub continuity: Continuity,
    /// `(n, d_n')` for n through the prefix plus one cycle period.
    pub gcd_tail_table: Vec<(usize, i64)>,
    pub witnesses: Vec<Witness>,
}

fn ensure_all_hadamard(system: &MoranSystem) -> Result<()> {
    for (index, level) in system.level_slots() {
        let ok = match level.frequencies() {
            Some(_) => verify_hadamard(level)?,
            None => !find_spectra_l(level.p(), level.digits(), DEFAULT_SEARCH_BOUND)?.is_empty(),
        };
        if !ok {
            return Err(Error::NotHadamard(format!(
                "level {index}: (p={}, D={:?})",
                level.p(),
                level.digits()
            )));
        }
    }
    Ok(())
}

/// Evaluates the spectrality criterion and the singularity dichotomy for an
/// eventually-periodic system.
///
/// The criterion holds iff strict expansion `p > #D` occurs at some cycle
/// level (hence infinitely often), or every tail gcd `d_n'` equals 1. When it
/// holds, an equi-positive subsequence of tail measures exists and the
/// measure is spectral. Singularity holds iff strict expansion recurs.
pub fn classify(system: &MoranSystem) -> Result<ClassificationReport> {
    if !system.has_cycle() {
        return Err(Error::NoCycle);
    }
    ensure_all_hadamard(system)?;

    let cycle = system.cycle().expect("checked");
    let prefix_len = system.prefix().len();
    let strict_level = cycle
        .iter()
        .enumerate()
        .find(|(_, l)| l.p() > l.digit_count() as i64)
        .map(|(i, l)| (prefix_len + i + 1, l.clone()));

    let horizon = prefix_len + cycle.len();
    let gcd_tail_table: Vec<(usize, i64)> = (1..=horizon)
        .map(|n| Ok((n, gcd_tail(system, n)?)))
        .collect::<Result<_>>()?;
    let gcd_all_one = gcd_tail_table.iter().all(|&(_, g)| g == 1);

    let mut witnesses = Vec::new();
    if let Some((index, level)) = &strict_level {
        witnesses.push(Witness {
            criterion: "strict-expansion-recurs".into(),
            evidence: format!(
                "cycle level {index} has p = {} > #D = {}, so p_n > #D_n infinitely often",
                level.p(),
                level.digit_count()
            ),
        });
    } else if gcd_all_one {
        witnesses.push(Witness {
            criterion: "tail-gcd-one".into(),
            evidence: format!("every cycle level has p = #D and d_n' = 1 for all n <= {horizon}"),
        });
    } else {
        // p = #D throughout the tail, so the lattice-complement description
        // applies and 1/d escapes every later double points set.
        let (n, g) = gcd_tail_table
            .iter()
            .find(|&&(_, g)| g != 1)
            .expect("some entry differs from 1");
        witnesses.push(Witness {
            criterion: "tail-gcd-exceeds-one".into(),
            evidence: format!(
                "every cycle level has p = #D and d_{n}' = {g} > 1, so 1/{g} escapes every later double points set"
            ),
        });
    }

    let criterion = strict_level.is_some() || gcd_all_one;
    Ok(ClassificationReport {
        equi_positive_subsequence: criterion,
        spectral_conclusion: if criterion {
            SpectralConclusion::Spectral
        } else {
            SpectralConclusion::NotImplied
        },
        continuity: if strict_level.is_some() {
            Continuity::Singular
        } else {
            Continuity::AbsolutelyContinuous
        },
        gcd_tail_table,
        witnesses,
    })
}

/// Truth of `limsup_k T_{p_k, D_k} contains (0,1)`, computed through its
/// proved equivalence with the classification criterion.
pub fn limsup_dpcs_covers(system: &MoranSystem) -> Result<bool> {
    Ok(classify(system)?.equi_positive_subsequence)
}
