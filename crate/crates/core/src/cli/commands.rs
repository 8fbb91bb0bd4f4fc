use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::config::{Command, RunConfig};
use crate::error::{Error, Result};
use crate::measures::{
    densify, loglog_slope, orbit_measure, orbit_sum, within_orbit_sum_bound, DynamicalSystem,
    FiniteMeasure, Location, Space, DEFAULT_SLACK,
};
use crate::repsynth::{
    heisenberg_generators, semidirect_rep_pipeline, GroupElement, PipelineSpec, SemidirectElement,
};
use crate::solenoid::{
    is_periodic, nearest_periodic, periodic_bound, periodic_modulus, rho, sample::random_exact,
    SolenoidPair, SolenoidPoint,
};
use crate::tracelab::{
    heisenberg_window, nilpotent_trace_approx, rep_defect, semidirect_window, trace_match,
    trivial_extension, Provenance, TraceTable,
};

/// A finished run: overall verdict, JSON report and CSV rows.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub pass: bool,
    pub json: String,
    pub csv: String,
}

fn finish<R: Serialize>(
    command: Command,
    config: &RunConfig,
    pass: bool,
    summary: Value,
    rows: &[R],
) -> Result<Outcome> {
    // the output directory does not affect the results
    let config = RunConfig {
        out: None,
        ..config.clone()
    };
    let report = json!({
        "command": command.name(),
        "seed": config.seed,
        "pass": pass,
        "config": config,
        "summary": summary,
        "rows": rows,
    });
    let json = serde_json::to_string_pretty(&report).map_err(|e| Error::Io(e.to_string()))? + "\n";
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    let csv = String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?)
        .expect("csv is utf-8");
    Ok(Outcome { pass, json, csv })
}

pub fn execute(command: Command, config: &RunConfig) -> Result<Outcome> {
    config.validate(command)?;
    match command {
        Command::ApproxPoint => approx_point(config),
        Command::Densify => densify_cmd(config),
        Command::Nilpotent => nilpotent(config),
        Command::Semidirect => semidirect(config),
    }
}

#[derive(Serialize)]
struct PointRow {
    point: String,
    n: u32,
    rho_lower: f64,
    rho_upper: f64,
    bound: f64,
    periodic: bool,
    orbit_sum: f64,
    orbit_bound: f64,
    pass: bool,
}

fn approx_point(config: &RunConfig) -> Result<Outcome> {
    let points = if config.points.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        (0..config.samples)
            .map(|_| random_exact(&mut rng, config.bits))
            .collect()
    } else {
        config.points.clone()
    };
    let (lo, hi) = config.n_range(Command::ApproxPoint);
    let mult = BigRational::from_float(config.bound_multiplier).expect("validated finite");
    let system = DynamicalSystem::forward();
    let mut rows = Vec::new();
    for p in &points {
        for n in lo..=hi {
            let q = nearest_periodic(p, n)?;
            let r = rho(p, &q);
            let bound = periodic_bound(n) * &mult;
            let periodic = is_periodic(&q, 2 * n as u64 + 1)?;
            let s = orbit_sum(&system, &Location::Point(p.clone()), &Location::Point(q), n)?;
            let within = within_orbit_sum_bound(&s);
            rows.push(PointRow {
                point: p.to_string(),
                n,
                rho_lower: r.lower_f64(),
                rho_upper: r.upper_f64(),
                bound: bound.to_f64().unwrap_or(f64::INFINITY),
                periodic,
                orbit_sum: s.to_f64().unwrap_or(f64::INFINITY),
                orbit_bound: system.orbit_sum_bound(),
                pass: r.upper <= bound && periodic && within,
            });
        }
    }
    let failures = rows.iter().filter(|r| !r.pass).count();
    let summary = json!({
        "points": points.len(),
        "n_min": lo,
        "n_max": hi,
        "failures": failures,
        "max_orbit_sum": rows.iter().map(|r| r.orbit_sum).fold(0.0, f64::max),
    });
    finish(Command::ApproxPoint, config, failures == 0, summary, &rows)
}

/// `(1/3) delta_(0,0) + (2/3)` the uniform measure on the 2-cycle through
/// `(1/3, 1/3)` of `(x, y) -> (2x, y/2)`.
pub fn default_measure() -> FiniteMeasure {
    let sys = DynamicalSystem::product();
    let third = SolenoidPoint::exact(1, 3).expect("odd");
    let a = FiniteMeasure::dirac(SolenoidPair::identity());
    let b = orbit_measure(
        &Location::Pair(SolenoidPair::new(third.clone(), third)),
        2,
        &sys,
    )
    .expect("periodic");
    FiniteMeasure::mixture(&[(1.0 / 3.0, &a), (2.0 / 3.0, &b)]).expect("probability weights")
}

#[derive(Serialize)]
struct DensifyCsvRow {
    n: u32,
    function: String,
    lipschitz: f64,
    measured: f64,
    bound: f64,
    pass: bool,
}

fn densify_cmd(config: &RunConfig) -> Result<Outcome> {
    let mu = config.measure.clone().unwrap_or_else(default_measure);
    let system = match mu.space() {
        Space::Solenoid => DynamicalSystem::forward(),
        Space::SolenoidSquare => DynamicalSystem::product(),
    };
    let slack = config.tolerance.max(DEFAULT_SLACK);
    let (lo, hi) = config.n_range(Command::Densify);
    let mut rows = Vec::new();
    let mut curve = Vec::new();
    let mut pass = true;
    for n in lo..=hi {
        let d = densify(&mu, &system, n, slack, None)?;
        pass &= d.passes();
        curve.push(json!({
            "n": n,
            "max_measured": d.max_measured(),
            "max_orbit_sum": d.max_orbit_sum,
            "orbit_sums_within_bound": d.orbit_sums_within_bound,
            "atoms": d.measure.atoms().len(),
        }));
        for r in d.rows {
            rows.push(DensifyCsvRow {
                n,
                pass: r.measured <= r.bound,
                function: r.function,
                lipschitz: r.lipschitz,
                measured: r.measured,
                bound: r.bound,
            });
        }
    }
    let xs: Vec<f64> = (lo..=hi).map(f64::from).collect();
    let ys: Vec<f64> = curve
        .iter()
        .map(|c| c["max_measured"].as_f64().unwrap_or(0.0))
        .collect();
    let summary = json!({
        "space": mu.space(),
        "atoms": mu.atoms().len(),
        "orbit_sum_bound": system.orbit_sum_bound(),
        "loglog_slope": loglog_slope(&xs, &ys),
        "curve": curve,
    });
    finish(Command::Densify, config, pass, summary, &rows)
}

fn nilpotent(config: &RunConfig) -> Result<Outcome> {
    let chi = config.chi.clone().unwrap_or(SolenoidPoint::exact(1, 7)?);
    let (lo, hi) = config.n_range(Command::Nilpotent);
    let window = heisenberg_window(&config.window.coordinates);
    let depth_of =
        |k: u64| (1..=crate::tracelab::MAX_DEPTH).find(|&n| periodic_modulus(n) == k.into());
    let mut depths = Vec::new();
    for &k in &config.levels {
        depths.push(
            depth_of(k).ok_or_else(|| {
                Error::Config(format!("level {k} is not of the form 2^(2N+1) - 1"))
            })?,
        );
    }
    let max_depth = depths.iter().copied().max().unwrap_or(hi);
    let approx = nilpotent_trace_approx(&chi, &window, max_depth)?;
    let keep = |d: u32| {
        if depths.is_empty() {
            d >= lo
        } else {
            depths.contains(&d)
        }
    };
    let rows: Vec<_> = approx
        .rows
        .iter()
        .filter(|r| keep(r.depth))
        .cloned()
        .collect();
    let tol = config.tolerance;
    let pass = rows.iter().all(|r| r.error <= r.bound + tol);
    let levels: Vec<Value> = approx
        .levels
        .iter()
        .filter(|l| keep(l.depth))
        .map(|l| {
            let max = rows
                .iter()
                .filter(|r| r.level == l.level)
                .map(|r| r.error)
                .fold(0.0, f64::max);
            json!({"depth": l.depth, "level": l.level, "chi": l.chi.to_string(), "max_error": max})
        })
        .collect();
    let summary = json!({
        "chi": chi.to_string(),
        "window": window.len(),
        "levels": levels,
        "monotone": approx.monotone(tol),
        "noncentral_vanish": approx.noncentral_vanish(tol),
    });
    finish(Command::Nilpotent, config, pass, summary, &rows)
}

#[derive(Serialize)]
struct SemidirectRow {
    k: u64,
    n: usize,
    dimension: usize,
    period: u64,
    covariance_residual: f64,
    defect: f64,
    unitarity_residual: f64,
    trace_error: f64,
    /// Largest deviation from the trivial extension at `|m| >= n`, where
    /// the two are not expected to agree.
    outside_deviation: f64,
    pass: bool,
}

/// All ordered pairs of fiber generators, `u` and `u^{-1}`.
fn generator_pairs(n_max: u32) -> Vec<(SemidirectElement, SemidirectElement)> {
    let mut gens: Vec<_> = heisenberg_generators(n_max)
        .into_iter()
        .map(|(_, g)| SemidirectElement::new(g, 0))
        .collect();
    gens.push(SemidirectElement::u());
    gens.push(SemidirectElement::u().inverse());
    gens.iter()
        .flat_map(|a| gens.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

fn semidirect(config: &RunConfig) -> Result<Outcome> {
    let (lo, hi) = config.n_range(Command::Semidirect);
    let levels = if config.levels.is_empty() {
        vec![3, 5]
    } else {
        config.levels.clone()
    };
    let spectrum = config
        .spectrum
        .clone()
        .unwrap_or_else(SolenoidPair::identity);
    let window = semidirect_window(&config.window.coordinates, config.window.m_max);
    let tol = config.tolerance;
    let mut rows = Vec::new();
    for &k in &levels {
        let chi = SolenoidPoint::exact(config.chi_numerator, k)?;
        let chi_exact = chi.as_exact().expect("exact").clone();
        for n in lo as usize..=hi as usize {
            let spec = PipelineSpec::new(k, n, chi.clone(), spectrum.clone());
            let cp = semidirect_rep_pipeline::<f64>(&spec)?;
            let pairs = generator_pairs(spec.n_max);
            let defect = rep_defect(&cp.rep, &pairs)?;
            let table = TraceTable::from_fn(
                Provenance::TrivialExtension {
                    level: k,
                    blocks: n,
                },
                &window,
                |e| Ok(trivial_extension(&chi_exact, &cp.spectrum, n, e)),
            )?;
            let report = trace_match(&table, &cp.rep)?;
            let (mut inside, mut outside) = (0.0f64, 0.0f64);
            for ((e, _), r) in table.entries().iter().zip(&report.rows) {
                if e.m.unsigned_abs() < n as u64 {
                    inside = inside.max(r.error);
                } else {
                    outside = outside.max(r.error);
                }
            }
            let unitarity = cp.rep.unitarity_residual();
            rows.push(SemidirectRow {
                k,
                n,
                dimension: cp.rep.dimension(),
                period: cp.period,
                covariance_residual: cp.covariance_residual,
                defect,
                unitarity_residual: unitarity,
                trace_error: inside,
                outside_deviation: outside,
                pass: cp.covariance_residual <= tol
                    && defect <= tol
                    && unitarity <= tol
                    && inside <= tol,
            });
        }
    }
    let pass = rows.iter().all(|r| r.pass);
    let summary = json!({
        "levels": levels,
        "spectrum": spectrum.to_string(),
        "window": window.len(),
        "u": SemidirectElement::u().to_string(),
    });
    finish(Command::Semidirect, config, pass, summary, &rows)
}
