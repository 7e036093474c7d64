//! Exact arithmetic foundation: reduced rationals, integer polynomials,
//! cyclotomic polynomials, and exact zero tests for sums of roots of unity.
//!
//! Every "exact" claim elsewhere in the crate routes through this module.
//! Floating evaluation exists only for magnitudes and grid scans; vanishing
//! questions at rational arguments are decided through the cyclotomic kernel.

mod poly;
mod rational;
mod roots;

pub use poly::{cyclotomic, divisors, euler_phi, IntPolynomial};
pub use rational::Rational;
pub use roots::{mask_eval, mask_is_zero, radical, root_sum_is_zero, weighted_root_sum_is_zero};
