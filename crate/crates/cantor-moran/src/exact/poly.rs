//! Dense integer polynomials and cyclotomic polynomials.
//!
//! `cyclotomic(b)` computes the b-th cyclotomic polynomial by exact division
//! of `x^b - 1` by the product of the proper-divisor cyclotomics. Coefficients
//! are `BigInt` so intermediate remainders can never overflow.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Integer polynomial, coefficients in ascending degree, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// The polynomial `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        assert!(n >= 1);
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// Quotient and remainder by a monic divisor; exact over the integers.
    ///
    /// Panics when `divisor` is not monic (the only case this crate needs).
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let lead = std::mem::take(&mut rem[i]);
            if lead.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate().take(d) {
                let delta = &lead * c;
                rem[i - d + j] -= delta;
            }
            quot[i - d] = lead;
        }
        rem.truncate(d);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Exact division; panics on a nonzero remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem_monic(divisor);
        assert!(r.is_zero(), "exact_div left a nonzero remainder");
        q
    }

    /// Largest absolute coefficient value, useful in tests.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// Euler's totient, by trial-division factorization.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut phi = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            phi = phi / p * (p - 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        phi = phi / m * (m - 1);
    }
    phi
}

fn cyclotomic_uncached(b: u64) -> IntPolynomial {
    if b == 1 {
        return IntPolynomial::from_i64_coeffs(&[-1, 1]);
    }
    let mut result = IntPolynomial::x_pow_minus_one(b as usize);
    for d in divisors(b) {
        if d < b {
            result = result.exact_div(&cyclotomic(d));
        }
    }
    result
}

/// The b-th cyclotomic polynomial, monic of degree phi(b). Memoized.
pub fn cyclotomic(b: u64) -> IntPolynomial {
    assert!(b >= 1, "cyclotomic order must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPolynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&b) {
        return hit.clone();
    }
    let computed = cyclotomic_uncached(b);
    cache.lock().unwrap().insert(b, computed.clone());
    computed
}
