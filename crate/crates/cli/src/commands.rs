//! Report builders for the commands that do not read δ-vectors from input.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use ssnn::analysis::{
    admissible_b_interval, max_nonreal_offset, quartic_analysis, quartic_roots, BoundKind,
    QuarticAnalysis,
};
use ssnn::catalog::{
    all_entries, counterexample_deltas, gorenstein_deltas, CatalogEntry, CATALOG_VERSION,
};
use ssnn::poly::{from_delta, DeltaVector};
use ssnn::rational::format_rational;
use ssnn::realize::{
    construct, realized_roots_exact, solve_parameter, solve_parameter_approx, threshold,
    ParameterSolution,
};
use ssnn::roots::solve;
use ssnn::{BigFloat, BigRational, Error};

use crate::batch::{analyze_delta, delta_strings, run_ordered, Check, RunConfig};
use crate::report::{CheckReport, RunReport, TOOL_VERSION};

const CLOSED_FORM_TOL: f64 = 1e-12;
const CROSS_CHECK_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogCheck {
    Strip,
    ClosedForm,
    Norm,
}

fn closed_form_json(e: &CatalogEntry) -> Value {
    match &e.closed_form_roots {
        Some(cf) => json!({
            "rational_roots": cf.rational.iter().map(format_rational).collect::<Vec<_>>(),
            "pair_center": format_rational(&cf.pair.center),
            "pair_radicand": format_rational(&cf.pair.radicand),
            "pair": cf.pair.to_string(),
        }),
        None => Value::Null,
    }
}

fn entry_json(e: &CatalogEntry) -> Value {
    json!({
        "label": e.label,
        "family": e.family.name(),
        "parameter": e.parameter,
        "delta": delta_strings(e.delta.entries()),
        "closed_form_roots": closed_form_json(e),
        "published_roots": e.published_roots.iter().map(|(re, im)| json!([re, im])).collect::<Vec<_>>(),
        "delta1_inequality": e.delta1_inequality,
        "note": e.note,
    })
}

/// Versioned JSON document with every built-in entry.
pub fn catalog_export() -> Value {
    json!({
        "catalog_version": CATALOG_VERSION,
        "tool_version": TOOL_VERSION,
        "entries": all_entries().iter().map(entry_json).collect::<Vec<_>>(),
    })
}

/// Largest distance from each closed-form root to the nearest computed root.
fn closed_form_deviation(e: &CatalogEntry, r: &RunReport) -> Option<f64> {
    let cf = e.closed_form_roots.as_ref()?;
    let mut expected: Vec<(f64, f64)> = cf
        .rational
        .iter()
        .map(|q| (ssnn::rational::to_f64(q), 0.0))
        .collect();
    expected.extend(cf.pair.to_f64());
    let worst = expected
        .iter()
        .map(|&(x, y)| {
            r.roots
                .iter()
                .map(|root| (root.re - x).abs().max((root.im - y).abs()))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    Some(worst)
}

pub fn catalog_reports(
    dim: Option<usize>,
    checks: &[CatalogCheck],
    cfg: &RunConfig,
) -> Result<Vec<RunReport>, Error> {
    let entries = match dim {
        Some(d) => gorenstein_deltas(d)?,
        None => all_entries(),
    };
    let mut base: Vec<Check> = Vec::new();
    if checks.contains(&CatalogCheck::Strip) {
        base.push(Check::Strip(BoundKind::HalfStrip));
    }
    if checks.contains(&CatalogCheck::Norm) {
        base.push(Check::Norm);
    }
    Ok(run_ordered(&entries, cfg.jobs, |seq, e| {
        let mut r = analyze_delta(seq, "catalog", e.delta.entries(), &base, true, cfg);
        r.label = Some(e.label.clone());
        r.details = Some(entry_json(e));
        if checks.contains(&CatalogCheck::ClosedForm) {
            if let Some(dev) = closed_form_deviation(e, &r) {
                let mut c = CheckReport::simple("closed_form", dev <= CLOSED_FORM_TOL);
                c.min_margin = Some(CLOSED_FORM_TOL - dev);
                r.checks.push(c);
            }
        }
        r.finish()
    }))
}

pub fn counterexample_reports(cfg: &RunConfig) -> Vec<RunReport> {
    let entries = counterexample_deltas();
    let checks = [Check::Strip(BoundKind::HalfStrip), Check::Norm];
    run_ordered(&entries, cfg.jobs, |seq, e| {
        let mut r = analyze_delta(seq, "counterexample", e.delta.entries(), &checks, true, cfg);
        r.label = Some(e.label.clone());
        let deviation = e
            .published_roots
            .iter()
            .map(|&(x, y)| {
                r.roots
                    .iter()
                    .map(|root| (root.re - x).abs().max((root.im - y).abs()))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max);
        let mut details = entry_json(e);
        details["published_root_deviation"] = json!(deviation);
        r.details = Some(details);
        r
    })
}

/// Target given either exactly (`p/q`) or as a decimal, which is flagged
/// approximate.
#[derive(Clone, Debug)]
pub enum Target {
    Exact(BigRational),
    Approx(f64),
}

pub fn realize_report(d: usize, target: &Target, cfg: &RunConfig) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport::new(0, "realize");
    report.precision_bits = cfg.precision_bits;
    report.max_iterations = cfg.max_iterations;
    report.degree = Some(d);
    let result = (|| -> Result<(), Error> {
        let (a, target_json, approximate) = match target {
            Target::Exact(t) => match solve_parameter(d, t)? {
                ParameterSolution::Parameter(a) => (a, json!(format_rational(t)), false),
                ParameterSolution::Boundary { delta, label } => {
                    let f = from_delta(&delta);
                    report.delta = Some(delta_strings(delta.entries()));
                    report.set_roots(&solve(&f, &cfg.solver())?);
                    report.checks.push(CheckReport::simple(
                        "target_is_root",
                        f.eval(t) == BigRational::from_integer(0.into()),
                    ));
                    report.details =
                        Some(json!({ "target": format_rational(t), "boundary": label }));
                    return Ok(());
                }
            },
            Target::Approx(t) => {
                let a = solve_parameter_approx(d, *t)?;
                (BigFloat::from_f64(a, 64).to_rational(), json!(t), true)
            }
        };
        let plan = construct(d, &a)?;
        let f = from_delta(&plan.delta);
        report.delta = Some(delta_strings(plan.delta.entries()));
        let rs = solve(&f, &cfg.solver())?;
        report.set_roots(&rs);
        let exact = realized_roots_exact(&plan);
        let exact_roots: Vec<String> = match exact.rational_roots() {
            Some((lo, hi)) => vec![format_rational(&lo), format_rational(&hi)],
            None => exact
                .real_roots()
                .map(|(lo, hi)| vec![lo.to_string(), hi.to_string()])
                .unwrap_or_default(),
        };
        match target {
            Target::Exact(t) => {
                let hit = exact
                    .rational_roots()
                    .is_some_and(|(lo, hi)| &lo == t || &hi == t);
                report.checks.push(CheckReport::simple(
                    "target_is_root",
                    hit && f.eval(t) == BigRational::from_integer(0.into()),
                ));
            }
            Target::Approx(t) => {
                let dist = rs.nearest(*t, 0.0).map_or(f64::INFINITY, |(_, dist)| dist);
                report.checks.push(CheckReport::simple(
                    "target_is_root",
                    dist <= CROSS_CHECK_TOL,
                ));
            }
        }
        report.details = Some(json!({
            "target": target_json,
            "approximate": approximate,
            "a": format_rational(&a),
            "threshold": format_rational(&threshold(d)?),
            "reduced_quadratic": plan.reduced_quadratic.iter().map(format_rational).collect::<Vec<_>>(),
            "realized_roots": exact_roots,
            "realized_offset": plan.realized_offset.to_string(),
        }));
        Ok(())
    })();
    if let Err(e) = result {
        report.fail_with(e);
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    report.finish()
}

fn quartic_json(qa: &QuarticAnalysis) -> Value {
    let interval = admissible_b_interval(qa.d, &qa.c)
        .ok()
        .flatten()
        .map(|iv| iv.to_string());
    json!({
        "b": format_rational(&qa.b),
        "c": format_rational(&qa.c),
        "region": qa.region.name(),
        "g_coeffs": qa.g_coeffs.iter().map(format_rational).collect::<Vec<_>>(),
        "discriminant": format_rational(&qa.discriminant),
        "b_interval": interval,
        "r": qa.r,
        "r_cos_theta": qa.r_cos_theta,
        "real_part_magnitude": qa.real_part_magnitude,
        "bound": qa.bound,
    })
}

/// Closed-form verdict plus an independent solve of the same quartic.
pub fn quartic_report(
    seq: usize,
    b: &BigRational,
    c: &BigRational,
    d: usize,
    cfg: &RunConfig,
) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport::new(seq, "quartic");
    report.precision_bits = cfg.precision_bits;
    report.max_iterations = cfg.max_iterations;
    report.label = Some(format!("b={} c={}", format_rational(b), format_rational(c)));
    let result = (|| -> Result<(), Error> {
        let qa = quartic_analysis(b, c, d)?;
        report.details = Some(quartic_json(&qa));
        let rs = quartic_roots(b, c, d, &cfg.solver())?;
        report.delta = Some(delta_strings(&ssnn::analysis::quartic_delta(b, c, d)?));
        report.set_roots(&rs);
        report
            .checks
            .push(CheckReport::simple("quartic_bound", qa.pass));
        let solver = max_nonreal_offset(&rs);
        let agree = match (qa.region.is_complex(), qa.real_part_magnitude, solver) {
            (true, Some(m), Some(s)) => (m - s).abs() <= CROSS_CHECK_TOL,
            (false, _, _) => true,
            _ => false,
        };
        report
            .checks
            .push(CheckReport::simple("solver_agreement", agree));
        Ok(())
    })();
    if let Err(e) = result {
        report.fail_with(e);
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    report.finish()
}

/// Inclusive arithmetic range `start:stop:step`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Range {
    pub start: BigRational,
    pub stop: BigRational,
    pub step: BigRational,
}

impl Range {
    pub fn parse(s: &str) -> Result<Range, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts[..] else {
            return Err(format!("expected start:stop:step, got {s:?}"));
        };
        let p = |x: &str| ssnn::rational::parse_rational(x).map_err(|e| e.to_string());
        let r = Range {
            start: p(start)?,
            stop: p(stop)?,
            step: p(step)?,
        };
        if r.step <= BigRational::from_integer(0.into()) {
            return Err("step must be positive".into());
        }
        Ok(r)
    }

    pub fn values(&self) -> Vec<BigRational> {
        let mut out = Vec::new();
        let mut x = self.start.clone();
        while x <= self.stop {
            out.push(x.clone());
            x = &x + &self.step;
        }
        out
    }
}

pub fn grid_reports(d: usize, b: &Range, c: &Range, cfg: &RunConfig) -> Vec<RunReport> {
    let points: Vec<(BigRational, BigRational)> = c
        .values()
        .into_iter()
        .flat_map(|cv| b.values().into_iter().map(move |bv| (bv, cv.clone())))
        .collect();
    run_ordered(&points, cfg.jobs, |seq, (bv, cv)| {
        quartic_report(seq, bv, cv, d, cfg)
    })
}

#[derive(Clone, Debug)]
pub struct RandomParams {
    pub count: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    /// Numerators are drawn from `0..=max_numerator`.
    pub max_numerator: i64,
    /// Denominators are drawn from `1..=max_denominator`.
    pub max_denominator: i64,
    pub allow_zero_head: bool,
}

/// Symmetric δ-vectors with entries that are ratios of bounded random
/// integers; `δ₀ = 1` unless zero heads are allowed.
pub fn random_deltas(params: &RandomParams, seed: u64) -> Vec<Vec<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(params.count);
    while out.len() < params.count {
        let d = rng.gen_range(params.min_degree..=params.max_degree);
        let mut v = vec![BigRational::from_integer(0.into()); d + 1];
        for i in 0..=d / 2 {
            let x = BigRational::new(
                rng.gen_range(0..=params.max_numerator).into(),
                rng.gen_range(1..=params.max_denominator).into(),
            );
            v[i] = x.clone();
            v[d - i] = x;
        }
        if !params.allow_zero_head {
            v[0] = BigRational::from_integer(1.into());
            v[d] = v[0].clone();
        }
        if DeltaVector::new(v.clone()).is_ok() {
            out.push(v);
        }
    }
    out
}

pub fn random_reports(params: &RandomParams, checks: &[Check], cfg: &RunConfig) -> Vec<RunReport> {
    let deltas = random_deltas(params, cfg.seed);
    run_ordered(&deltas, cfg.jobs, |seq, v| {
        let mut r = analyze_delta(seq, "sweep", v, checks, true, cfg);
        r.label = Some(format!("seed{}_{}", cfg.seed, seq));
        r
    })
}
