use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use ssnn::analysis::{norm_check, strip_check, BoundKind, MAX_PRECISION_BITS};
use ssnn::certify::certify_real_strip;
use ssnn::poly::{check_functional_equation, from_delta, DeltaVector};
use ssnn::rational::format_rational;
use ssnn::roots::{solve, RootSet, SolverConfig};
use ssnn::{BigRational, Error};

use crate::input::{ParseError, Record};
use crate::report::{CheckReport, RunReport};

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub max_iterations: usize,
    pub seed: u64,
    /// Worker threads; 0 picks the machine's parallelism.
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_bits: 128,
            max_iterations: 200,
            seed: 0,
            jobs: 0,
        }
    }
}

impl RunConfig {
    pub fn solver(&self) -> SolverConfig {
        SolverConfig::new(self.precision_bits, self.max_iterations)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Strip(BoundKind),
    Norm,
    FunctionalEquation,
    /// Exact Sturm certificate for the floor strip.
    RealStrip,
}

impl Check {
    fn needs_roots(self) -> bool {
        matches!(self, Check::Strip(_) | Check::Norm)
    }
}

/// Maps `f` over `items` on a pool of `jobs` workers; output order matches
/// input order.
pub fn run_ordered<T, F>(items: &[T], jobs: usize, f: F) -> Vec<RunReport>
where
    T: Sync,
    F: Fn(usize, &T) -> RunReport + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| {
        let mut out: Vec<(usize, RunReport)> = items
            .par_iter()
            .enumerate()
            .map(|(i, x)| (i, f(i, x)))
            .collect();
        out.sort_by_key(|(i, _)| *i);
        out.into_iter().map(|(_, r)| r).collect()
    })
}

pub fn delta_strings(delta: &[BigRational]) -> Vec<String> {
    delta.iter().map(format_rational).collect()
}

/// Solves and runs the root-based checks, doubling precision while a
/// strip verdict is inconclusive.
fn solve_and_check(
    v: &DeltaVector,
    checks: &[Check],
    cfg: &RunConfig,
) -> Result<(RootSet, Vec<CheckReport>), Error> {
    let p = from_delta(v);
    let mut solver = cfg.solver();
    loop {
        let rs = solve(&p, &solver)?;
        let mut out = Vec::new();
        let mut retry = None;
        for c in checks {
            match c {
                Check::Strip(kind) => match strip_check(&rs, *kind) {
                    Ok(b) => out.push(CheckReport::from_bound(&b)),
                    Err(e @ Error::Inconclusive { .. }) => {
                        retry = Some(e);
                        break;
                    }
                    Err(e) => return Err(e),
                },
                Check::Norm => out.push(CheckReport::from_bound(&norm_check(&rs))),
                _ => {}
            }
        }
        match retry {
            None => return Ok((rs, out)),
            Some(e) if solver.precision_bits * 2 > MAX_PRECISION_BITS => return Err(e),
            Some(_) => solver = solver.with_precision(solver.precision_bits * 2),
        }
    }
}

/// Report for one δ-vector under `checks`; `roots` forces a solve even
/// without root-based checks.
pub fn analyze_delta(
    seq: usize,
    command: &str,
    delta: &[BigRational],
    checks: &[Check],
    roots: bool,
    cfg: &RunConfig,
) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport::new(seq, command);
    report.delta = Some(delta_strings(delta));
    report.precision_bits = cfg.precision_bits;
    report.max_iterations = cfg.max_iterations;
    let result = (|| -> Result<(), Error> {
        let v = DeltaVector::new(delta.to_vec())?;
        report.degree = Some(v.degree());
        if roots || checks.iter().any(|c| c.needs_roots()) {
            let (rs, reports) = solve_and_check(&v, checks, cfg)?;
            report.set_roots(&rs);
            report.checks.extend(reports);
        }
        for c in checks {
            match c {
                Check::FunctionalEquation => report.checks.push(CheckReport::simple(
                    "functional_equation",
                    check_functional_equation(&from_delta(&v)),
                )),
                Check::RealStrip => {
                    let mut cr = CheckReport::from_bound(&certify_real_strip(&v)?);
                    cr.kind = "real_strip".into();
                    report.checks.push(cr);
                }
                _ => {}
            }
        }
        Ok(())
    })();
    if let Err(e) = result {
        report.fail_with(e);
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    report.finish()
}

fn parse_error_report(seq: usize, command: &str, e: &ParseError, cfg: &RunConfig) -> RunReport {
    let mut r = RunReport::new(seq, command);
    r.line = Some(e.line);
    r.precision_bits = cfg.precision_bits;
    r.max_iterations = cfg.max_iterations;
    r.fail_with(e);
    r.finish()
}

/// One report per input record, in input order. Parse failures become
/// error reports carrying their line number.
pub fn run_batch(
    records: &[Result<Record, ParseError>],
    command: &str,
    checks: &[Check],
    cfg: &RunConfig,
) -> Vec<RunReport> {
    let roots = command == "roots";
    run_ordered(records, cfg.jobs, |seq, rec| match rec {
        Ok(rec) => {
            let mut r = analyze_delta(seq, command, &rec.delta, checks, roots, cfg);
            r.line = Some(rec.line);
            r.label = rec.label.clone();
            r
        }
        Err(e) => parse_error_report(seq, command, e, cfg),
    })
}
