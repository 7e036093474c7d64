//! Command-line front end: JSON system definitions in, JSON reports out.
//!
//! Exit codes partition outcomes: 0 success, 2 parse/input failure,
//! 3 verification failure, 4 missing cycle, 5 failed spectrum check,
//! 6 inconclusive certificate, 7 probe error.

mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::SystemConfig;
use crate::exact::{mask_eval, Rational};
use crate::hadamard::{
    find_spectra_l, parseval_residual, verify_hadamard, MoranSystem, DEFAULT_SEARCH_BOUND,
};
use crate::measures::{tail_lower_bound, truncate, AtomicMeasure};
use crate::spectrum::{
    build_spectrum, check_bizero, check_spectrum_exact, q_profile, q_scan, SpectrumCandidate,
};
use crate::zeroset::{
    certify_periodic_zero, equi_positivity_estimate, integral_zero_scan, unit_grid, CertifyOutcome,
};
use crate::{Error, Result};
use report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_NO_CYCLE: i32 = 4;
pub const EXIT_SPECTRUM: i32 = 5;
pub const EXIT_INCONCLUSIVE: i32 = 6;
pub const EXIT_PROBE: i32 = 7;

#[derive(Parser)]
#[command(
    name = "moran",
    version,
    about = "Exact toolkit for spectral theory of Cantor-Moran measures"
)]
struct Cli {
    /// Worker threads for grid scans; reports are byte-identical regardless.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify each level as a Hadamard triple, discovering L when absent.
    Verify(VerifyArgs),
    /// Classify spectrality and continuity of an eventually-periodic system.
    Classify(ClassifyArgs),
    /// Build, check or Q-scan a candidate spectrum for a truncation.
    Spectrum(SpectrumArgs),
    /// Scan or certify integral periodic zero set membership for a tail.
    Zeros(ZerosArgs),
    /// Numeric probes: Wiener averages, ball masses, tail bounds, equi-positivity.
    Probe(ProbeArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON system definition.
    config: PathBuf,
    /// Seed for the random Parseval-identity sweep.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct ClassifyArgs {
    config: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectrumAction {
    Build,
    Check,
    Qscan,
}

#[derive(Args)]
struct SpectrumArgs {
    config: PathBuf,
    /// Truncation level count n.
    #[arg(short = 'n', long)]
    levels: usize,
    #[arg(long, value_enum)]
    action: SpectrumAction,
    /// JSON array of rationals overriding the constructed spectrum.
    #[arg(long)]
    lambda: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0)]
    grid_from: f64,
    #[arg(long, default_value_t = 1.0)]
    grid_to: f64,
    #[arg(long, default_value_t = 1e-3)]
    grid_step: f64,
    /// CSV output path for the Q-profile.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ZerosMode {
    Scan,
    Certify,
}

#[derive(Args)]
struct ZerosArgs {
    config: PathBuf,
    #[arg(long, value_enum)]
    mode: ZerosMode,
    /// Tail start index n (the scan concerns nu_n).
    #[arg(long, default_value_t = 0)]
    start: usize,
    /// Frequency to certify, as "a/b".
    #[arg(long)]
    xi: Option<String>,
    #[arg(long, default_value_t = 8)]
    depth: usize,
    #[arg(long, default_value_t = 6)]
    denominator_bound: u64,
    #[arg(long, default_value_t = 20)]
    kmax: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbeKind {
    Wiener,
    Ballmass,
    Tailbound,
    Equipos,
}

#[derive(Args)]
struct ProbeArgs {
    config: PathBuf,
    #[arg(long, value_enum)]
    probe: ProbeKind,
    /// Truncation level count for wiener/ballmass probes.
    #[arg(short = 'n', long, default_value_t = 3)]
    levels: usize,
    /// Frequency window m for the tail bound.
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Tail start index n.
    #[arg(long, default_value_t = 0)]
    start: usize,
    /// Exact product depth (tailbound verification, equipos lower bounds).
    #[arg(long, default_value_t = 12)]
    depth: usize,
    #[arg(long, default_value_t = 1.0 / 256.0)]
    grid_step: f64,
    /// Extra grid points appended to the uniform grid (equipos).
    #[arg(long, value_delimiter = ',')]
    grid_extra: Vec<f64>,
    #[arg(long, default_value_t = 0.05)]
    epsilon: f64,
    #[arg(long, default_value_t = 16)]
    kmax: i64,
    /// Tail indices for the equi-positivity probe.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0usize, 1, 2, 3, 4])]
    indices: Vec<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Entry point for the `moran` binary; returns the process exit code.
pub fn main() -> i32 {
    run(std::env::args())
}

pub fn run<I>(args: I) -> i32
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    let jobs = cli.jobs;
    let dispatch = || match cli.command {
        Command::Verify(args) => cmd_verify(&args),
        Command::Classify(args) => cmd_classify(&args),
        Command::Spectrum(args) => cmd_spectrum(&args),
        Command::Zeros(args) => cmd_zeros(&args),
        Command::Probe(args) => cmd_probe(&args),
    };
    let outcome = match jobs {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build();
            match pool {
                Ok(pool) => pool.install(dispatch),
                Err(e) => {
                    eprintln!("error: cannot build thread pool: {e}");
                    return EXIT_PARSE;
                }
            }
        }
        None => dispatch(),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(error: &Error) -> i32 {
    match error {
        Error::NoCycle => EXIT_NO_CYCLE,
        Error::NotHadamard(_) | Error::MissingL(_) => EXIT_VERIFY,
        Error::UnexpectedCollision(_) => EXIT_SPECTRUM,
        Error::Io(_)
        | Error::Json(_)
        | Error::InvalidConfig(_)
        | Error::InvalidLevel(_)
        | Error::XiOutOfRange(_)
        | Error::LevelOutOfRange(_) => EXIT_PARSE,
        _ => EXIT_PROBE,
    }
}

fn load_system(path: &PathBuf) -> Result<(SystemConfig, MoranSystem)> {
    let text = std::fs::read_to_string(path)?;
    let config = SystemConfig::from_json(&text)?;
    let system = config.build()?;
    Ok((config, system))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(1..=60i64);
    let num = rng.gen_range(-120..=120i64);
    Rational::new(num, den)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let (config, system) = load_system(&args.config)?;
    let samples = 100;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut levels = Vec::new();
    let mut all_ok = true;
    for (index, level) in system.level_slots() {
        let (hadamard, source, frequencies) = match level.frequencies() {
            Some(l) => (verify_hadamard(level)?, "given", Some(l.to_vec())),
            None => {
                let found = find_spectra_l(level.p(), level.digits(), DEFAULT_SEARCH_BOUND)?;
                match found.into_iter().next() {
                    Some(l) => (true, "discovered", Some(l)),
                    None => (false, "none", None),
                }
            }
        };
        all_ok &= hadamard;
        let parseval_max_residual = if hadamard {
            let checked =
                level.with_frequencies(frequencies.clone().expect("present when hadamard"))?;
            let mut worst = 0.0f64;
            for _ in 0..samples {
                let xi = random_rational(&mut rng);
                worst = worst.max(parseval_residual(&checked, &xi)?);
            }
            Some(worst)
        } else {
            None
        };
        levels.push(LevelReport {
            index,
            p: level.p(),
            digits: level.digits().to_vec(),
            digit_count: level.digit_count(),
            hadamard,
            frequency_source: source.to_string(),
            frequencies,
            parseval_max_residual,
            criterion: "unitary-digit-frequency-matrix".into(),
        });
    }
    let report = VerifyReport {
        command: "verify".into(),
        name: config.name.clone(),
        all_hadamard: all_ok,
        support_bound: system.support_bound(),
        sup_digit_count: system.sup_digit_count(),
        parseval_samples: samples,
        seed: args.seed,
        levels,
    };
    emit(&report);
    eprintln!(
        "verify: {} ({} level slot(s), support bound C = {})",
        if all_ok { "all levels pass" } else { "FAILED" },
        report.levels.len(),
        report.support_bound
    );
    Ok(if all_ok { EXIT_OK } else { EXIT_VERIFY })
}

fn cmd_classify(args: &ClassifyArgs) -> Result<i32> {
    let (config, system) = load_system(&args.config)?;
    let classification = crate::dpc::classify(&system)?;
    eprintln!(
        "classify: equi-positive={} spectral={:?} continuity={:?}",
        classification.equi_positive_subsequence,
        classification.spectral_conclusion,
        classification.continuity
    );
    let report = ClassifyReport {
        command: "classify".into(),
        name: config.name,
        classification,
    };
    emit(&report);
    Ok(EXIT_OK)
}

fn load_lambda(path: &PathBuf) -> Result<SpectrumCandidate> {
    let text = std::fs::read_to_string(path)?;
    let points: Vec<Rational> = serde_json::from_str(&text)?;
    SpectrumCandidate::from_points(points)
}

fn require(condition: bool, message: &str) -> Result<()> {
    if condition {
        Ok(())
    } else {
        Err(Error::InvalidConfig(message.into()))
    }
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<i32> {
    require(args.grid_step > 0.0, "--grid-step must be positive")?;
    require(args.grid_to >= args.grid_from, "--grid-to must be >= --grid-from")?;
    let (config, system) = load_system(&args.config)?;
    let measure = truncate(&system, args.levels)?;
    let candidate = match &args.lambda {
        Some(path) => load_lambda(path)?,
        None => build_spectrum(&system, args.levels)?,
    };
    let mut report = SpectrumReport {
        command: "spectrum".into(),
        name: config.name,
        action: match args.action {
            SpectrumAction::Build => "build",
            SpectrumAction::Check => "check",
            SpectrumAction::Qscan => "qscan",
        }
        .into(),
        levels: args.levels,
        points: candidate.points().to_vec(),
        cardinality: candidate.len(),
        support_cardinality: measure.atom_count(),
        bizero: None,
        exact_spectrum: None,
        qscan: None,
        criterion: "orthogonality-plus-counting".into(),
    };
    let mut code = EXIT_OK;
    match args.action {
        SpectrumAction::Build => {}
        SpectrumAction::Check => {
            let bizero = check_bizero(&measure, &candidate);
            let exact = bizero && check_spectrum_exact(&measure, &candidate);
            report.bizero = Some(bizero);
            report.exact_spectrum = Some(exact);
            if !exact {
                code = EXIT_SPECTRUM;
            }
        }
        SpectrumAction::Qscan => {
            let scan = q_scan(
                &measure,
                &candidate,
                args.grid_from,
                args.grid_to,
                args.grid_step,
            );
            if let Some(path) = &args.out {
                let rows: Vec<Vec<String>> = q_profile(
                    &measure,
                    &candidate,
                    args.grid_from,
                    args.grid_to,
                    args.grid_step,
                )
                .into_iter()
                .map(|(xi, q)| vec![format!("{xi}"), format!("{q}")])
                .collect();
                write_csv(path, &["xi", "q"], &rows)?;
            }
            report.qscan = Some(scan);
        }
    }
    emit(&report);
    eprintln!(
        "spectrum {}: {} points against {} atoms{}",
        report.action,
        report.cardinality,
        report.support_cardinality,
        match (report.bizero, report.exact_spectrum) {
            (Some(b), Some(e)) => format!(" (bizero={b}, exact={e})"),
            _ => String::new(),
        }
    );
    Ok(code)
}

fn cmd_zeros(args: &ZerosArgs) -> Result<i32> {
    let (config, system) = load_system(&args.config)?;
    let mut report = ZerosReport {
        command: "zeros".into(),
        name: config.name,
        mode: match args.mode {
            ZerosMode::Scan => "scan",
            ZerosMode::Certify => "certify",
        }
        .into(),
        start_level: args.start,
        depth: args.depth,
        xi: None,
        candidates: None,
        status: None,
        killed: None,
        recurrent: None,
        survivors: None,
        residue_table_modulus: None,
        residue_table: None,
        criterion: "all-integer-translates-vanish".into(),
    };
    let code = match args.mode {
        ZerosMode::Scan => {
            let candidates = integral_zero_scan(
                &system,
                args.start,
                args.depth,
                args.denominator_bound,
                args.kmax,
            )?;
            eprintln!("zeros scan: {} candidate(s)", candidates.len());
            report.candidates = Some(candidates);
            EXIT_OK
        }
        ZerosMode::Certify => {
            let xi: Rational = args
                .xi
                .as_deref()
                .ok_or_else(|| Error::XiOutOfRange("--xi is required in certify mode".into()))?
                .parse()
                .map_err(Error::XiOutOfRange)?;
            report.xi = Some(xi.clone());
            match certify_periodic_zero(&system, args.start, &xi, args.depth)? {
                CertifyOutcome::Certified(cert) => {
                    eprintln!(
                        "zeros certify: xi = {xi} certified in the zero set (depth {})",
                        cert.depth
                    );
                    let (modulus, table) = residue_table(&system, args.start, &cert)?;
                    report.status = Some("certified".into());
                    report.depth = cert.depth;
                    report.residue_table_modulus = Some(modulus.to_string());
                    report.residue_table = Some(table);
                    report.killed = Some(cert.killed);
                    report.recurrent = Some(cert.recurrent);
                    EXIT_OK
                }
                CertifyOutcome::Inconclusive {
                    depth,
                    survivors,
                    killed,
                    recurrent,
                } => {
                    eprintln!(
                        "zeros certify: inconclusive at depth {depth} ({} surviving class(es))",
                        survivors.len()
                    );
                    report.status = Some("inconclusive".into());
                    report.depth = depth;
                    report.survivors = Some(survivors);
                    report.killed = Some(killed);
                    report.recurrent = Some(recurrent);
                    EXIT_INCONCLUSIVE
                }
            }
        }
    };
    emit(&report);
    Ok(code)
}

/// Expand killed and recurrent classes to the deepest modulus, for reports.
fn residue_table(
    system: &MoranSystem,
    start: usize,
    cert: &crate::zeroset::ZeroCertificate,
) -> Result<(BigInt, Vec<ResidueRow>)> {
    let full_modulus = system.scale_product(start, cert.depth)?;
    let mut rows: Vec<(BigInt, ResidueRow)> = Vec::new();
    for class in &cert.killed {
        let copies = &full_modulus / &class.modulus;
        let mut copy = BigInt::from(0);
        while copy < copies {
            let residue = &class.residue + &copy * &class.modulus;
            rows.push((
                residue.clone(),
                ResidueRow {
                    residue: residue.to_string(),
                    status: "killed".into(),
                    level: Some(class.level),
                    witness: Some(class.witness.clone()),
                    ancestor_depth: None,
                },
            ));
            copy += 1;
        }
    }
    for class in &cert.recurrent {
        let copies = &full_modulus / &class.modulus;
        let mut copy = BigInt::from(0);
        while copy < copies {
            let residue = &class.residue + &copy * &class.modulus;
            rows.push((
                residue.clone(),
                ResidueRow {
                    residue: residue.to_string(),
                    status: "recurrent".into(),
                    level: None,
                    witness: Some(class.value.clone()),
                    ancestor_depth: Some(class.ancestor_depth),
                },
            ));
            copy += 1;
        }
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    Ok((full_modulus, rows.into_iter().map(|(_, r)| r).collect()))
}

fn cmd_probe(args: &ProbeArgs) -> Result<i32> {
    require(args.m > 0.0, "--m must be positive")?;
    require(
        args.grid_step > 0.0 && args.grid_step < 1.0,
        "--grid-step must lie in (0, 1)",
    )?;
    require(args.epsilon > 0.0, "--epsilon must be positive")?;
    require(args.kmax >= 0, "--kmax must be nonnegative")?;
    require(args.depth >= 1, "--depth must be at least 1")?;
    let (config, system) = load_system(&args.config)?;
    let mut report = ProbeReport {
        command: "probe".into(),
        name: config.name,
        probe: match args.probe {
            ProbeKind::Wiener => "wiener",
            ProbeKind::Ballmass => "ballmass",
            ProbeKind::Tailbound => "tailbound",
            ProbeKind::Equipos => "equipos",
        }
        .into(),
        levels: None,
        wiener: None,
        ball_mass: None,
        tail_bound: None,
        equi_positivity: None,
        criterion: String::new(),
    };
    match args.probe {
        ProbeKind::Wiener => {
            report.levels = Some(args.levels);
            report.criterion = "squared-transform-averages".into();
            let measure = truncate(&system, args.levels)?.reduce_mod_one();
            let target = measure.sum_squared_weights().to_f64();
            let rows: Vec<WienerRow> = [100u64, 1_000, 10_000]
                .iter()
                .map(|&n| {
                    let average = measure.wiener_average(n);
                    WienerRow {
                        samples: n,
                        average,
                        target,
                        abs_error: (average - target).abs(),
                    }
                })
                .collect();
            if let Some(path) = &args.out {
                let csv: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.samples.to_string(),
                            format!("{}", r.average),
                            format!("{}", r.target),
                            format!("{}", r.abs_error),
                        ]
                    })
                    .collect();
                write_csv(path, &["samples", "average", "target", "abs_error"], &csv)?;
            }
            report.wiener = Some(rows);
        }
        ProbeKind::Ballmass => {
            report.levels = Some(args.levels);
            report.criterion = "ball-mass-growth".into();
            let measure = truncate(&system, args.levels)?;
            let centers = sampled_centers(&measure, 64);
            let mut rows = Vec::new();
            for k in 4..=10u32 {
                let radius = Rational::new(1, 2i64.pow(k));
                let mut max_ratio = f64::NEG_INFINITY;
                let mut argmax = centers[0].clone();
                for center in &centers {
                    let ratio = (measure.ball_mass(center, &radius).to_f64()) / radius.to_f64();
                    if ratio > max_ratio {
                        max_ratio = ratio;
                        argmax = center.clone();
                    }
                }
                rows.push(BallMassRow {
                    radius,
                    max_ratio,
                    argmax_center: argmax,
                });
            }
            if let Some(path) = &args.out {
                let csv: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.radius.to_string(),
                            format!("{}", r.max_ratio),
                            r.argmax_center.to_string(),
                        ]
                    })
                    .collect();
                write_csv(path, &["radius", "max_ratio", "argmax_center"], &csv)?;
            }
            report.ball_mass = Some(rows);
        }
        ProbeKind::Tailbound => {
            report.criterion = "tail-product-floor".into();
            let tb = tail_lower_bound(&system, args.start, args.m)?;
            let grid_points = 100;
            let product_depth = args.depth.max(200);
            let mut min_product = f64::INFINITY;
            for i in 0..grid_points {
                let xi = -args.m + 2.0 * args.m * (i as f64 + 0.5) / grid_points as f64;
                let mut scale = 1.0f64;
                for j in 1..=tb.j0 {
                    scale *= system.level(args.start + j)?.p() as f64;
                }
                let mut product = 1.0f64;
                for j in (tb.j0 + 1)..=(tb.j0 + product_depth) {
                    scale *= system.level(args.start + j)?.p() as f64;
                    product *= mask_eval(system.level(args.start + j)?.digits(), xi / scale).norm();
                }
                min_product = min_product.min(product);
            }
            report.tail_bound = Some(TailBoundReport {
                j0: tb.j0,
                bound: tb.bound,
                scaled_reach: tb.scaled_reach,
                scale_check: tb.scale_check,
                grid_points,
                product_depth,
                min_tail_product: min_product,
            });
        }
        ProbeKind::Equipos => {
            report.criterion = "uniform-translate-floor".into();
            let mut grid = unit_grid(args.grid_step);
            grid.extend(args.grid_extra.iter().copied());
            let estimate = equi_positivity_estimate(
                &system,
                &args.indices,
                args.depth,
                &grid,
                args.epsilon,
                args.kmax,
            )?;
            if let Some(path) = &args.out {
                let csv: Vec<Vec<String>> = estimate
                    .entries
                    .iter()
                    .map(|e| {
                        vec![
                            format!("{}", e.x),
                            e.n.to_string(),
                            format!("{}", e.best_bound),
                            e.best_k.to_string(),
                            e.first_k_reaching_epsilon
                                .map(|k| k.to_string())
                                .unwrap_or_default(),
                        ]
                    })
                    .collect();
                write_csv(
                    path,
                    &["x", "n", "best_bound", "best_k", "first_k_reaching_epsilon"],
                    &csv,
                )?;
            }
            report.equi_positivity = Some(EquiPosSummary {
                depth: estimate.depth,
                j0: estimate.j0,
                tail_factor: estimate.tail_factor,
                epsilon: estimate.epsilon,
                k_max: estimate.k_max,
                achieved_min: estimate.achieved_min,
                worst_x: estimate.worst_x,
                worst_n: estimate.worst_n,
                counterexample_count: estimate.counterexamples.len(),
                counterexamples: estimate.counterexamples,
            });
        }
    }
    emit(&report);
    eprintln!("probe {}: done", report.probe);
    Ok(EXIT_OK)
}

/// Deterministic sample of at most `limit` atom positions, by stride.
fn sampled_centers(measure: &AtomicMeasure, limit: usize) -> Vec<Rational> {
    let positions: Vec<Rational> = measure.atoms().map(|(x, _)| x.clone()).collect();
    let stride = positions.len().div_ceil(limit).max(1);
    positions.into_iter().step_by(stride).collect()
}
