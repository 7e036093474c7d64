//! Exact verification toolkit for spectral theory of Cantor-Moran measures.
//!
//! A Cantor-Moran measure is the infinite convolution
//! `mu = delta_{p1^-1 D1} * delta_{(p1 p2)^-1 D2} * ...` built from a sequence
//! of digit systems `(p_n, D_n)`. When each level carries a frequency set
//! `L_n` making `(p_n, D_n, L_n)` a Hadamard triple, the measure may admit an
//! orthogonal basis of exponentials. This crate mechanizes the finite,
//! exactly-decidable parts of that theory for eventually-periodic systems:
//!
//! - [`exact`] — reduced big rationals, cyclotomic polynomials, and exact
//!   vanishing tests for sums of roots of unity;
//! - [`hadamard`] — Hadamard-triple verification, Parseval residuals, and
//!   exhaustive discovery of frequency sets;
//! - [`dpc`] — the double points condition, its closed-form description, and
//!   the spectrality/continuity classifier;
//! - [`measures`] — exact truncated Moran measures, Fourier transforms, tail
//!   products, Wiener averages and ball masses;
//! - [`zeroset`] — integral periodic zero sets: scans, residue-class
//!   certificates, and equi-positivity estimates;
//! - [`spectrum`] — candidate spectra for truncations, exact orthogonality
//!   and completeness checks, and Q-function scans.
//!
//! The `examples/` directory holds one runnable program per capability, e.g.
//!
//! ```bash
//! cargo run --release --example classify_systems
//! cargo run --release --example zero_certificate
//! ```
//!
//! A thin `moran` binary exposes the same operations on JSON system
//! definitions; see the README for the command reference.

pub mod cli;
pub mod config;
pub mod dpc;
pub mod exact;
pub mod fixtures;
pub mod hadamard;
pub mod measures;
pub mod spectrum;
pub mod zeroset;

pub use exact::Rational;
pub use hadamard::{Level, MoranSystem};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("level {0} has no frequency set L")]
    MissingL(usize),
    #[error("not a Hadamard triple: {0}")]
    NotHadamard(String),
    #[error("base {p} exceeds the spectrum search bound {bound}")]
    SearchBoundExceeded { p: i64, bound: i64 },
    #[error("operation requires an eventually-periodic system (no cycle present)")]
    NoCycle,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("level {0} is out of range for this system")]
    LevelOutOfRange(usize),
    #[error("xi out of range: {0}")]
    XiOutOfRange(String),
    #[error("unexpected collision in spectrum construction at {0}")]
    UnexpectedCollision(String),
    #[error("invalid level: {0}")]
    InvalidLevel(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid system definition: {0}")]
    InvalidConfig(String),
    #[error("depth {depth} is too shallow; the tail bound needs depth >= {required}")]
    DepthTooShallow { depth: usize, required: usize },
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
