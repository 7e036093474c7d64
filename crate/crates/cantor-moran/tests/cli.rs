//! End-to-end tests of the `moran` binary: exit codes, JSON reports, CSV.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn write_config(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).expect("write config");
    path
}

fn moran(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moran"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

const QUARTER: &str =
    r#"{ "name": "quarter-cantor", "cycle": [ { "p": 4, "D": [0, 2], "L": [0, 1] } ] }"#;
const SCALED: &str =
    r#"{ "name": "scaled-dyadic", "cycle": [ { "p": 2, "D": [0, 3], "L": [0, 1] } ] }"#;

#[test]
fn verify_reports_support_bound_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "q.json", QUARTER);
    let out = moran(&["verify", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["all_hadamard"], Value::Bool(true));
    assert_eq!(report["support_bound"], Value::String("1/2".into()));
    assert_eq!(report["levels"][0]["hadamard"], Value::Bool(true));
    let residual = report["levels"][0]["parseval_max_residual"]
        .as_f64()
        .expect("residual present");
    assert!(residual < 1e-12);
}

#[test]
fn verify_discovers_missing_frequency_sets() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        &dir,
        "noL.json",
        r#"{ "cycle": [ { "p": 4, "D": [0, 2] } ] }"#,
    );
    let out = moran(&["verify", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(
        report["levels"][0]["frequency_source"],
        Value::String("discovered".into())
    );
    assert_eq!(report["levels"][0]["frequencies"][0], Value::from(0));
}

#[test]
fn verify_fails_on_non_hadamard_level() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        &dir,
        "bad.json",
        r#"{ "cycle": [ { "p": 3, "D": [0, 1], "L": [0, 1] } ] }"#,
    );
    let out = moran(&["verify", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn parse_failures_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    // empty prefix and no cycle
    let empty = write_config(&dir, "empty.json", r#"{ "prefix": [] }"#);
    assert_eq!(
        moran(&["verify", empty.to_str().unwrap()]).status.code(),
        Some(2)
    );
    // unknown key
    let unknown = write_config(
        &dir,
        "u.json",
        r#"{ "cycle": [ { "p": 4, "D": [0,2], "X": 1 } ] }"#,
    );
    assert_eq!(
        moran(&["verify", unknown.to_str().unwrap()]).status.code(),
        Some(2)
    );
    // missing file
    assert_eq!(
        moran(&["verify", "/nonexistent.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn classify_verdicts_and_no_cycle_exit() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "q.json", QUARTER);
    let out = moran(&["classify", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["equi_positive_subsequence"], Value::Bool(true));
    assert_eq!(
        report["spectral_conclusion"],
        Value::String("spectral".into())
    );
    assert_eq!(report["continuity"], Value::String("singular".into()));

    let truncation = write_config(
        &dir,
        "t.json",
        r#"{ "prefix": [ { "p": 4, "D": [0, 2] } ] }"#,
    );
    assert_eq!(
        moran(&["classify", truncation.to_str().unwrap()])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn spectrum_build_check_and_failed_check() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "q.json", QUARTER);
    let out = moran(&[
        "spectrum",
        config.to_str().unwrap(),
        "-n",
        "6",
        "--action",
        "build",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["cardinality"], Value::from(64));
    assert_eq!(report["support_cardinality"], Value::from(64));

    let out = moran(&[
        "spectrum",
        config.to_str().unwrap(),
        "-n",
        "6",
        "--action",
        "check",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["exact_spectrum"], Value::Bool(true));

    // override with a non-orthogonal set: check fails with exit 5
    let lambda = dir.path().join("lambda.json");
    std::fs::write(&lambda, r#"["0", "2"]"#).unwrap();
    let out = moran(&[
        "spectrum",
        config.to_str().unwrap(),
        "-n",
        "2",
        "--action",
        "check",
        "--lambda",
        lambda.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(5));
    let report = stdout_json(&out);
    assert_eq!(report["bizero"], Value::Bool(false));
    assert_eq!(report["exact_spectrum"], Value::Bool(false));
}

#[test]
fn spectrum_qscan_emits_csv() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "q.json", QUARTER);
    let csv_path = dir.path().join("q.csv");
    let out = moran(&[
        "spectrum",
        config.to_str().unwrap(),
        "-n",
        "4",
        "--action",
        "qscan",
        "--grid-step",
        "0.01",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    let min = report["qscan"]["min"].as_f64().unwrap();
    let max = report["qscan"]["max"].as_f64().unwrap();
    assert!(min > 1.0 - 1e-9 && max < 1.0 + 1e-9);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.split("\r\n");
    assert_eq!(lines.next(), Some("xi,q"));
    assert_eq!(csv.trim_end().split("\r\n").count(), 102); // header + 101 samples
}

#[test]
fn zeros_certify_and_inconclusive_and_bad_xi() {
    let dir = tempfile::tempdir().unwrap();
    let scaled = write_config(&dir, "s.json", SCALED);
    let out = moran(&[
        "zeros",
        scaled.to_str().unwrap(),
        "--mode",
        "certify",
        "--xi",
        "1/3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["status"], Value::String("certified".into()));
    let table = report["residue_table"].as_array().expect("residue table");
    assert!(!table.is_empty());

    // spectral system: certification is inconclusive, exit 6
    let quarter = write_config(&dir, "q.json", QUARTER);
    let out = moran(&[
        "zeros",
        quarter.to_str().unwrap(),
        "--mode",
        "certify",
        "--xi",
        "1/3",
        "--depth",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(6));
    let report = stdout_json(&out);
    assert_eq!(report["status"], Value::String("inconclusive".into()));
    assert!(!report["survivors"].as_array().unwrap().is_empty());

    // xi outside (0,1) is an input error
    let out = moran(&[
        "zeros",
        scaled.to_str().unwrap(),
        "--mode",
        "certify",
        "--xi",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zeros_scan_lists_candidates() {
    let dir = tempfile::tempdir().unwrap();
    let scaled = write_config(&dir, "s.json", SCALED);
    let out = moran(&[
        "zeros",
        scaled.to_str().unwrap(),
        "--mode",
        "scan",
        "--depth",
        "6",
        "--denominator-bound",
        "6",
        "--kmax",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    let candidates = report["candidates"].as_array().unwrap();
    assert_eq!(candidates.len(), 2);
    assert_eq!(candidates[0], Value::String("1/3".into()));
    assert_eq!(candidates[1], Value::String("2/3".into()));

    let quarter = write_config(&dir, "q.json", QUARTER);
    let out = moran(&["zeros", quarter.to_str().unwrap(), "--mode", "scan"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_json(&out)["candidates"]
        .as_array()
        .unwrap()
        .is_empty());
}

#[test]
fn probe_wiener_tailbound_ballmass_equipos() {
    let dir = tempfile::tempdir().unwrap();
    let quarter = write_config(&dir, "q.json", QUARTER);

    let out = moran(&[
        "probe",
        quarter.to_str().unwrap(),
        "--probe",
        "wiener",
        "-n",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = stdout_json(&out)["wiener"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 3);
    assert!((rows[2]["target"].as_f64().unwrap() - 0.125).abs() < 1e-12);
    assert!(rows[2]["abs_error"].as_f64().unwrap() < 1e-2);

    let out = moran(&[
        "probe",
        quarter.to_str().unwrap(),
        "--probe",
        "tailbound",
        "--m",
        "1.0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let tb = stdout_json(&out)["tail_bound"].clone();
    assert_eq!(tb["j0"], Value::from(3));
    assert!(tb["min_tail_product"].as_f64().unwrap() >= tb["bound"].as_f64().unwrap() - 1e-6);

    let dyadic = write_config(
        &dir,
        "d.json",
        r#"{ "cycle": [ { "p": 2, "D": [0, 1], "L": [0, 1] } ] }"#,
    );
    let out = moran(&[
        "probe",
        dyadic.to_str().unwrap(),
        "--probe",
        "ballmass",
        "-n",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for row in stdout_json(&out)["ball_mass"].as_array().unwrap() {
        assert!(row["max_ratio"].as_f64().unwrap() <= 8.0);
    }

    let csv_path = dir.path().join("equipos.csv");
    let out = moran(&[
        "probe",
        quarter.to_str().unwrap(),
        "--probe",
        "equipos",
        "--depth",
        "12",
        "--grid-step",
        "0.015625",
        "--indices",
        "0,1",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary = stdout_json(&out)["equi_positivity"].clone();
    assert!(summary["achieved_min"].as_f64().unwrap() > 0.05);
    assert_eq!(summary["counterexample_count"], Value::from(0));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("x,n,best_bound,best_k,first_k_reaching_epsilon\r\n"));
}

#[test]
fn nonsensical_flag_values_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let quarter = write_config(&dir, "q.json", QUARTER);
    let cases: Vec<Vec<&str>> = vec![
        vec!["spectrum", quarter.to_str().unwrap(), "-n", "2", "--action", "qscan", "--grid-step", "0"],
        vec!["probe", quarter.to_str().unwrap(), "--probe", "tailbound", "--m", "-1"],
        vec!["probe", quarter.to_str().unwrap(), "--probe", "equipos", "--grid-step", "1.5"],
    ];
    for case in cases {
        assert_eq!(moran(&case).status.code(), Some(2), "{case:?}");
    }
}

#[test]
fn probe_errors_exit_7() {
    let dir = tempfile::tempdir().unwrap();
    let quarter = write_config(&dir, "q.json", QUARTER);
    // equi-positivity depth below J0 cannot produce rigorous lower bounds
    let out = moran(&[
        "probe",
        quarter.to_str().unwrap(),
        "--probe",
        "equipos",
        "--depth",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(7));
}

#[test]
fn zeros_certificate_covers_every_residue_class() {
    let dir = tempfile::tempdir().unwrap();
    let scaled = write_config(&dir, "s.json", SCALED);
    let out = moran(&[
        "zeros",
        scaled.to_str().unwrap(),
        "--mode",
        "certify",
        "--xi",
        "1/3",
    ]);
    let report = stdout_json(&out);
    let modulus: u64 = report["residue_table_modulus"]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    let table = report["residue_table"].as_array().unwrap();
    let mut seen: Vec<u64> = table
        .iter()
        .map(|row| row["residue"].as_str().unwrap().parse().unwrap())
        .collect();
    seen.sort_unstable();
    let expected: Vec<u64> = (0..modulus).collect();
    assert_eq!(seen, expected, "residue table must cover 0..modulus");
}
