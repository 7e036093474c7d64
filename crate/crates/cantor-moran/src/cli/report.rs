//! Serializable command reports and CSV emission.
//!
//! Reports go to stdout as JSON with a fixed field order; a short human
//! summary goes to stderr. CSV files follow RFC 4180 (header row, CRLF).

use serde::Serialize;

use crate::dpc::ClassificationReport;
use crate::exact::Rational;
use crate::spectrum::QScan;
use crate::zeroset::{KilledClass, RecurrentClass, SurvivingClass};

#[derive(Serialize)]
pub struct LevelReport {
    pub index: usize,
    pub p: i64,
    pub digits: Vec<i64>,
    pub digit_count: usize,
    pub hadamard: bool,
    /// "given", "discovered" or "none".
    pub frequency_source: String,
    pub frequencies: Option<Vec<i64>>,
    pub parseval_max_residual: Option<f64>,
    pub criterion: String,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub command: String,
    pub name: Option<String>,
    pub all_hadamard: bool,
    pub support_bound: Rational,
    pub sup_digit_count: usize,
    pub parseval_samples: usize,
    pub seed: u64,
    pub levels: Vec<LevelReport>,
}

#[derive(Serialize)]
pub struct ClassifyReport {
    pub command: String,
    pub name: Option<String>,
    #[serde(flatten)]
    pub classification: ClassificationReport,
}

#[derive(Serialize)]
pub struct SpectrumReport {
    pub command: String,
    pub name: Option<String>,
    pub action: String,
    pub levels: usize,
    pub points: Vec<Rational>,
    pub cardinality: usize,
    pub support_cardinality: usize,
    pub bizero: Option<bool>,
    pub exact_spectrum: Option<bool>,
    pub qscan: Option<QScan>,
    pub criterion: String,
}

#[derive(Serialize)]
pub struct ResidueRow {
    pub residue: String,
    pub status: String,
    pub level: Option<usize>,
    pub witness: Option<Rational>,
    pub ancestor_depth: Option<usize>,
}

#[derive(Serialize)]
pub struct ZerosReport {
    pub command: String,
    pub name: Option<String>,
    pub mode: String,
    pub start_level: usize,
    pub depth: usize,
    pub xi: Option<Rational>,
    pub candidates: Option<Vec<Rational>>,
    pub status: Option<String>,
    pub killed: Option<Vec<KilledClass>>,
    pub recurrent: Option<Vec<RecurrentClass>>,
    pub survivors: Option<Vec<SurvivingClass>>,
    /// Full residue table modulo the deepest modulus, for certified runs.
    pub residue_table_modulus: Option<String>,
    pub residue_table: Option<Vec<ResidueRow>>,
    pub criterion: String,
}

#[derive(Serialize)]
pub struct WienerRow {
    pub samples: u64,
    pub average: f64,
    pub target: f64,
    pub abs_error: f64,
}

#[derive(Serialize)]
pub struct BallMassRow {
    pub radius: Rational,
    pub max_ratio: f64,
    pub argmax_center: Rational,
}

#[derive(Serialize)]
pub struct TailBoundReport {
    pub j0: usize,
    pub bound: f64,
    pub scaled_reach: f64,
    pub scale_check: bool,
    pub grid_points: usize,
    pub product_depth: usize,
    pub min_tail_product: f64,
}

#[derive(Serialize)]
pub struct EquiPosSummary {
    pub depth: usize,
    pub j0: usize,
    pub tail_factor: f64,
    pub epsilon: f64,
    pub k_max: i64,
    pub achieved_min: f64,
    pub worst_x: f64,
    pub worst_n: usize,
    pub counterexample_count: usize,
    pub counterexamples: Vec<crate::zeroset::EquiPosEntry>,
}

#[derive(Serialize)]
pub struct ProbeReport {
    pub command: String,
    pub name: Option<String>,
    pub probe: String,
    pub levels: Option<usize>,
    pub wiener: Option<Vec<WienerRow>>,
    pub ball_mass: Option<Vec<BallMassRow>>,
    pub tail_bound: Option<TailBoundReport>,
    pub equi_positivity: Option<EquiPosSummary>,
    pub criterion: String,
}

/// Emit a report as pretty JSON on stdout.
pub fn emit<T: Serialize>(report: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("report serializes")
    );
}

/// RFC 4180 CSV: header row, CRLF records, minimal quoting.
pub fn write_csv(
    path: &std::path::Path,
    header: &[&str],
    rows: &[Vec<String>],
) -> std::io::Result<()> {
    let quote = |field: &str| -> String {
        if field.contains([',', '"', '\n', '\r']) {
            format!("\"{}\"", field.replace('"', "\"\""))
        } else {
            field.to_string()
        }
    };
    let mut out = String::new();
    out.push_str(
        &header
            .iter()
            .map(|h| quote(h))
            .collect::<Vec<_>>()
            .join(","),
    );
    out.push_str("\r\n");
    for row in rows {
        out.push_str(&row.iter().map(|f| quote(f)).collect::<Vec<_>>().join(","));
        out.push_str("\r\n");
    }
    std::fs::write(path, out)
}
