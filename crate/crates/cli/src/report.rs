use std::f64::consts::TAU;

use plank_core::ball::{lifted_diagnostics, multiplier_point, pair_point};
use plank_core::cheb::{big_g_eval, convergence_report, g_n_eval, g_nk_eval, grid, scaled_cheb, scaled_cheb_limit};
use plank_core::complex::{verify_theorem2, verify_theorem6, ComplexHomogPoly, ComplexReport, WeightedSystem};
use plank_core::covering::{refute_cover_ball, refute_cover_sphere, Plank, RefutationResult, SphericalSegment};
use plank_core::optimize::GENERATOR;
use plank_core::poly::RealPolynomial;
use plank_core::sphere::{maximize_abs_on_sphere, verify_theorem1};
use plank_core::trig::{circular_distance, interlacing_check, lemma1_certificate_with_degree, trig_zeros, TrigPoly};
use plank_core::Error;
use serde::Serialize;

use crate::input::InputError;
use crate::{Format, Settings};

pub struct Outcome {
    pub body: Vec<u8>,
    pub passed: bool,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    generator: &'a str,
    seed: u64,
    starts: usize,
    tol: f64,
    passed: bool,
    report: T,
}

fn json<T: Serialize>(command: &str, settings: &Settings, passed: bool, report: T) -> Outcome {
    let env = Envelope { command, generator: GENERATOR, seed: settings.seed, starts: settings.starts, tol: settings.tol, passed, report };
    let mut body = serde_json::to_vec_pretty(&env).expect("reports serialize");
    body.push(b'\n');
    Outcome { body, passed }
}

fn csv_body(header: &[String], rows: &[Vec<String>]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn emit<T: Serialize>(
    command: &str,
    settings: &Settings,
    passed: bool,
    report: T,
    table: impl FnOnce(&T) -> (Vec<String>, Vec<Vec<String>>),
) -> Outcome {
    match settings.format {
        Format::Json => json(command, settings, passed, report),
        Format::Csv => {
            let (header, rows) = table(&report);
            Outcome { body: csv_body(&header, &rows), passed }
        }
    }
}

fn names(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|s| s.to_string()).collect()
}

fn coord_names(prefix: &str, d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("{prefix}{i}")).collect()
}

fn fmt_all(xs: &[f64]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

#[derive(Serialize)]
struct FailureReport {
    error: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    clearance: Option<f64>,
}

/// Bad instances are usage errors; a failed search or verification is
/// reported with exit code 2.
fn core_failure(command: &str, settings: &Settings, e: Error) -> Result<Outcome, InputError> {
    let (error, index, clearance) = match &e {
        Error::VerificationFailed { index, clearance } => ("verification_failed", Some(*index), Some(*clearance)),
        Error::OptimizationFailed(_) => ("optimization_failed", None, None),
        Error::EigenSolver(_) => ("eigen_solver", None, None),
        _ => return Err(e.into()),
    };
    let report = FailureReport { error, message: e.to_string(), index, clearance };
    Ok(json(command, settings, false, report))
}

macro_rules! attempt {
    ($cmd:expr, $settings:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return core_failure($cmd, $settings, err),
        }
    };
}

#[derive(Serialize)]
struct TrigReport {
    degree: usize,
    certificate: plank_core::trig::Lemma1Report,
    zeros: plank_core::trig::CircleZeroSet,
    interlacing: plank_core::trig::Interlacing,
}

fn trig_table(t: &TrigPoly, r: &TrigReport) -> (Vec<String>, Vec<Vec<String>>) {
    let mut events: Vec<(f64, &str)> = r.zeros.thetas().map(|th| (th, "zero")).collect();
    events.extend(r.certificate.max_points.iter().map(|&th| (th, "max")));
    events.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut rows = Vec::new();
    for (i, &(th, kind)) in events.iter().enumerate() {
        let next = events[(i + 1) % events.len()].0;
        let arc = if events.len() == 1 { TAU } else { circular_distance(th, next) };
        rows.push(vec![kind.to_string(), th.to_string(), t.eval(th).to_string(), arc.to_string()]);
    }
    const SAMPLES: usize = 720;
    for j in 0..SAMPLES {
        let th = TAU * j as f64 / SAMPLES as f64;
        rows.push(vec!["sample".into(), th.to_string(), t.eval(th).to_string(), String::new()]);
    }
    (names(&["kind", "theta", "value", "arc"]), rows)
}

pub fn trig_verify((t, n): (TrigPoly, usize), settings: &Settings) -> Result<Outcome, InputError> {
    const CMD: &str = "trig-verify";
    let certificate = attempt!(CMD, settings, lemma1_certificate_with_degree(&t, n));
    let zeros = attempt!(CMD, settings, trig_zeros(&t));
    let interlacing = attempt!(CMD, settings, interlacing_check(&t));
    let passed = certificate.min_distance >= certificate.bound - settings.tol;
    let report = TrigReport { degree: n, certificate, zeros, interlacing };
    Ok(emit(CMD, settings, passed, report, |r| trig_table(&t, r)))
}

pub fn sphere_max(poly: Box<dyn RealPolynomial>, settings: &Settings) -> Result<Outcome, InputError> {
    const CMD: &str = "sphere-max";
    let result = attempt!(CMD, settings, maximize_abs_on_sphere(poly.as_ref(), settings.starts, settings.seed));
    Ok(emit(CMD, settings, true, result, |r| {
        let mut header = coord_names("x", poly.dim());
        header.push("abs_value".into());
        let rows = r
            .all_near_max
            .iter()
            .map(|p| {
                let mut row = fmt_all(p.coords());
                row.push(poly.value_at(p.coords()).abs().to_string());
                row
            })
            .collect();
        (header, rows)
    }))
}

pub fn theorem1(poly: Box<dyn RealPolynomial>, settings: &Settings) -> Result<Outcome, InputError> {
    const CMD: &str = "theorem1";
    let report = attempt!(CMD, settings, verify_theorem1(poly.as_ref(), settings.starts, settings.seed));
    let passed = report.distance >= report.bound - settings.tol;
    Ok(emit(CMD, settings, passed, report, |r| {
        let mut header = names(&["degree", "distance", "bound", "passed"]);
        header.extend(coord_names("x", poly.dim()));
        let mut row = vec![r.degree.to_string(), r.distance.to_string(), r.bound.to_string(), passed.to_string()];
        row.extend(fmt_all(r.maximizer.coords()));
        (header, vec![row])
    }))
}

fn complex_passed(r: &ComplexReport, tol: f64) -> bool {
    let forms = r.distances.iter().zip(&r.bounds).all(|(d, b)| *d >= b - tol);
    let cp1 = r.cp1.as_ref().is_none_or(|c| c.a_squared >= c.bound - tol);
    forms && cp1
}

fn complex_table(r: &ComplexReport) -> (Vec<String>, Vec<Vec<String>>) {
    let rows = (0..r.distances.len())
        .map(|i| {
            vec![
                i.to_string(),
                r.degrees[i].to_string(),
                r.distances[i].to_string(),
                r.bounds[i].to_string(),
                r.euclidean_distances[i].to_string(),
                r.passed[i].to_string(),
            ]
        })
        .collect();
    (names(&["index", "degree", "distance", "bound", "euclidean_distance", "passed"]), rows)
}

pub fn complex_verify(poly: ComplexHomogPoly, settings: &Settings) -> Result<Outcome, InputError> {
    const CMD: &str = "complex-verify";
    let report = attempt!(CMD, settings, verify_theorem2(&poly, settings.starts, settings.seed));
    let passed = complex_passed(&report, settings.tol);
    Ok(emit(CMD, settings, passed, report, complex_table))
}

pub fn weighted_verify(system: WeightedSystem, settings: &Settings) -> Result<Outcome, InputError> {
    const CMD: &str = "weighted-verify";
    let report = attempt!(CMD, settings, verify_theorem6(&system, settings.starts, settings.seed));
    let passed = complex_passed(&report, settings.tol);
    Ok(emit(CMD, settings, passed, report, complex_table))
}

pub fn ball_pair(poly: Box<dyn RealPolynomial>, settings: &Settings) -> Result<Outcome, InputError> {
    const CMD: &str = "ball-pair";
    let cert = attempt!(CMD, settings, pair_point(poly.as_ref(), settings.starts, settings.seed));
    let passed = cert.ball_distance >= cert.bound - settings.tol;
    Ok(emit(CMD, settings, passed, cert, |c| {
        let mut header = names(&["degree", "norm_sq", "sphere_distance", "sphere_bound", "ball_distance", "bound", "passed"]);
        header.extend(coord_names("x", poly.dim()));
        let mut row = vec![
            c.degree.to_string(),
            c.norm_sq.to_string(),
            c.sphere_distance.to_string(),
            c.sphere_bound.to_string(),
            c.ball_distance.to_string(),
            c.bound.to_string(),
            passed.to_string(),
        ];
        row.extend(fmt_all(&c.chosen));
        (header, vec![row])
    }))
}

pub fn ball_multiplier(poly: Box<dyn RealPolynomial>, settings: &Settings) -> Result<Outcome, InputError> {
    const CMD: &str = "ball-multiplier";
    let result = attempt!(CMD, settings, multiplier_point(poly.as_ref(), settings.starts, settings.seed));
    let passed = result.distance >= result.bound - settings.tol;
    let n = result.degree;
    Ok(emit(CMD, settings, passed, result, |_| {
        let reach = 1.0 + 2.0 / n as f64;
        let rows = grid(reach, 401)
            .into_iter()
            .map(|x| vec![x.to_string(), big_g_eval(n, x).to_string()])
            .collect();
        (names(&["x", "big_g_n"]), rows)
    }))
}

fn refutation_table(r: &RefutationResult) -> (Vec<String>, Vec<Vec<String>>) {
    let rows = r.clearances.iter().enumerate().map(|(i, c)| vec![i.to_string(), c.to_string()]).collect();
    (names(&["piece", "clearance"]), rows)
}

pub fn refute_sphere(segments: Vec<SphericalSegment>, margin: Option<f64>, settings: &Settings) -> Result<Outcome, InputError> {
    const CMD: &str = "refute-sphere";
    let r = attempt!(CMD, settings, refute_cover_sphere(&segments, settings.starts, settings.seed, margin));
    Ok(emit(CMD, settings, true, r, refutation_table))
}

pub fn refute_ball(planks: Vec<Plank>, margin: Option<f64>, settings: &Settings) -> Result<Outcome, InputError> {
    const CMD: &str = "refute-ball";
    let r = attempt!(CMD, settings, refute_cover_ball(&planks, settings.starts, settings.seed, margin));
    Ok(emit(CMD, settings, true, r, refutation_table))
}

#[derive(Serialize)]
struct ChebRow {
    x: f64,
    scaled_t_k: f64,
    limit: f64,
    g_nk: f64,
    g_n: f64,
    big_g_n: f64,
}

#[derive(Serialize)]
struct ChebTable {
    n: usize,
    k: usize,
    x_max: f64,
    rows: Vec<ChebRow>,
}

pub fn cheb_table(n: usize, k: usize, x_max: f64, points: usize, settings: &Settings) -> Result<Outcome, InputError> {
    if !(x_max > 0.0 && x_max.is_finite()) || points < 2 {
        return Err(InputError("--x-max must be positive and --points at least 2".into()));
    }
    let rows = grid(x_max, points)
        .into_iter()
        .map(|x| {
            Ok(ChebRow {
                x,
                scaled_t_k: scaled_cheb(k, x),
                limit: scaled_cheb_limit(k, x),
                g_nk: g_nk_eval(n, k, x)?,
                g_n: g_n_eval(n, x),
                big_g_n: big_g_eval(n, x),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let table = ChebTable { n, k, x_max, rows };
    Ok(emit("cheb-table", settings, true, table, |t| {
        let rows = t
            .rows
            .iter()
            .map(|r| fmt_all(&[r.x, r.scaled_t_k, r.limit, r.g_nk, r.g_n, r.big_g_n]))
            .collect();
        (names(&["x", "scaled_t_k", "limit", "g_nk", "g_n", "big_g_n"]), rows)
    }))
}

pub fn lifted_diag(n: usize, k: usize, settings: &Settings) -> Result<Outcome, InputError> {
    let diag = lifted_diagnostics(n, k)?;
    Ok(emit("lifted-diag", settings, true, diag, |d| {
        let rows = d
            .latitudes
            .iter()
            .enumerate()
            .map(|(i, lat)| vec![i.to_string(), lat.to_string(), d.spacing.to_string(), d.cap_radius.to_string()])
            .collect();
        (names(&["index", "latitude", "spacing", "cap_radius"]), rows)
    }))
}

pub fn convergence(n: usize, ks: &[usize], x_max: f64, settings: &Settings) -> Result<Outcome, InputError> {
    let report = convergence_report(n, ks, x_max)?;
    Ok(emit("convergence", settings, true, report, |r| {
        let rows = (0..r.ks.len())
            .map(|i| vec![r.ks[i].to_string(), r.claim1_errors[i].to_string(), r.claim2_errors[i].to_string()])
            .collect();
        (names(&["k", "claim1_error", "claim2_error"]), rows)
    }))
}
