//! Exact vanishing tests for weighted sums of roots of unity, and the digit
//! mask `m_D(xi) = (1/#D) sum_d e^{2 pi i d xi}`.
//!
//! A sum `sum_e c_e w^e` with `w = e^{2 pi i / b}` vanishes iff the integer
//! polynomial `sum_e c_e x^e` is divisible by the b-th cyclotomic polynomial.
//! We use `Phi_b(x) = Phi_rad(b)(x^{b/rad(b)})`: exponents are bucketed by
//! residue mod `b/rad(b)` and each bucket is reduced modulo `Phi_rad(b)`, so
//! the test stays cheap even when `b` is a large smooth number.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::{cyclotomic, IntPolynomial};
use super::rational::Rational;

/// Squarefree radical of `b` (product of its distinct prime factors).
pub fn radical(b: u64) -> u64 {
    assert!(b >= 1);
    let mut rad = 1;
    let mut m = b;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            rad *= p;
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        rad *= m;
    }
    rad
}

/// Exact test of `sum_i c_i w^{e_i} = 0` with `w = e^{2 pi i / order}`.
///
/// Exponents are reduced mod `order`; coefficients may repeat an exponent and
/// are accumulated.
pub fn weighted_root_sum_is_zero<I>(terms: I, order: u64) -> bool
where
    I: IntoIterator<Item = (u64, BigInt)>,
{
    assert!(order >= 1, "root-of-unity order must be positive");
    let rad = radical(order);
    let stride = order / rad;
    // Bucket r holds the polynomial sum_{e = y*stride + r} c_e x^y, y < rad.
    let mut buckets: Vec<Option<Vec<BigInt>>> = vec![None; stride as usize];
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        let e = e % order;
        let r = (e % stride.max(1)) as usize;
        let y = (e / stride.max(1)) as usize;
        let bucket = buckets[r].get_or_insert_with(|| vec![BigInt::zero(); rad as usize]);
        bucket[y] += c;
    }
    let phi = cyclotomic(rad);
    buckets.into_iter().flatten().all(|coeffs| {
        let poly = IntPolynomial::from_coeffs(coeffs);
        poly.div_rem_monic(&phi).1.is_zero()
    })
}

/// Exact test of `sum_e w^e = 0` over a multiset of exponents mod `order`.
pub fn root_sum_is_zero(exponents: &[u64], order: u64) -> bool {
    weighted_root_sum_is_zero(exponents.iter().map(|&e| (e, BigInt::from(1))), order)
}

/// Floating evaluation of the mask `m_D(xi)`.
pub fn mask_eval(digits: &[i64], xi: f64) -> Complex64 {
    assert!(!digits.is_empty(), "digit set must be nonempty");
    let sum: Complex64 = digits
        .iter()
        .map(|&d| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * d as f64 * xi))
        .sum();
    sum / digits.len() as f64
}

fn modulus_to_u64(b: &BigInt) -> u64 {
    b.to_u64()
        .expect("root-of-unity order exceeds u64; beyond the supported desk scale")
}

/// Exact vanishing test of `m_D(xi)` at a rational argument.
///
/// With `xi = a/b` reduced, `e^{2 pi i d xi} = w^{d a mod b}` for
/// `w = e^{2 pi i / b}`, so the mask vanishes iff the corresponding root sum
/// does.
pub fn mask_is_zero(digits: &[i64], xi: &Rational) -> bool {
    assert!(!digits.is_empty(), "digit set must be nonempty");
    let b = modulus_to_u64(xi.denom());
    let a = xi.numer();
    let exponents: Vec<u64> = digits
        .iter()
        .map(|&d| {
            let e = (BigInt::from(d) * a) % BigInt::from(b);
            modulus_to_u64(&if e.is_negative() {
                e + BigInt::from(b)
            } else {
                e
            })
        })
        .collect();
    root_sum_is_zero(&exponents, b)
}
