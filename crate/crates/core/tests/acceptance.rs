//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ssnn::analysis::{
    admissible_b_interval, c_thresholds, max_nonreal_offset, norm_check, norm_radius,
    quartic_analysis, quartic_bound, quartic_roots, strip_check, BoundKind, Region, Violator,
};
use ssnn::catalog::{counterexample_deltas, gorenstein_deltas};
use ssnn::certify::certify_real_strip;
use ssnn::poly::{check_functional_equation, delta_from_polynomial, from_delta, DeltaVector};
use ssnn::realize::{construct, realized_roots_exact, solve_parameter, ParameterSolution};
use ssnn::roots::{solve, RootSet, SolverConfig};

const ROOT_TOL: f64 = 1e-6;
const CLOSED_FORM_TOL: f64 = 1e-12;
const SWEEP_TOL: f64 = 1e-9;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> BigRational {
    rat(n, 1)
}

fn f64_of(q: &BigRational) -> f64 {
    q.numer().to_string().parse::<f64>().unwrap() / q.denom().to_string().parse::<f64>().unwrap()
}

/// Every root set produced by the suite, for the norm-disk criterion.
#[derive(Default)]
struct NormLog {
    checked: usize,
    failures: Vec<String>,
}

impl NormLog {
    fn record(&mut self, label: &str, rs: &RootSet) {
        self.checked += 1;
        let check = norm_check(rs);
        if !check.pass {
            self.failures
                .push(format!("{label}: {:?}", check.violators));
        }
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:.2?}, limit {limit:?}")
    })
}

fn match_published(rs: &RootSet, published: &[(f64, f64)]) -> Result<f64, String> {
    let mut worst = 0.0f64;
    for &(re, im) in published {
        let (i, _) = rs.nearest(re, im).ok_or("empty root set")?;
        let (x, y) = rs.roots[i].to_f64();
        let err = (x - re).abs().max((y - im).abs());
        ensure(err <= ROOT_TOL, || {
            format!("published root {re}+{im}i off by {err:e}")
        })?;
        worst = worst.max(err);
    }
    Ok(worst)
}

fn criterion_1(cfg: &SolverConfig, log: &mut NormLog) -> Outcome {
    let start = Instant::now();
    let entry = counterexample_deltas()
        .into_iter()
        .find(|e| e.delta.degree() == 8)
        .unwrap();
    ensure(
        entry.delta == DeltaVector::from_ints(&[1, 0, 0, 0, 14, 0, 0, 0, 1]).unwrap(),
        || "wrong d=8 vector".into(),
    )?;
    let rs = solve(&from_delta(&entry.delta), cfg).map_err(|e| e.to_string())?;
    let check = strip_check(&rs, BoundKind::HalfStrip).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    log.record("d8 counterexample", &rs);

    ensure(rs.roots.len() == 8, || format!("{} roots", rs.roots.len()))?;
    let worst = match_published(&rs, &entry.published_roots)?;
    ensure(!check.pass, || "half-strip check passed".into())?;
    let margin = check.min_margin().unwrap();
    ensure((margin + 0.00099518).abs() <= ROOT_TOL, || {
        format!("margin {margin}")
    })?;
    within_time(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "max root error {worst:.1e}, half-strip margin {margin:.8}, {elapsed:.2?}"
    ))
}

fn criterion_2(cfg: &SolverConfig, log: &mut NormLog) -> Outcome {
    let start = Instant::now();
    let entry = counterexample_deltas()
        .into_iter()
        .find(|e| e.delta.degree() == 10)
        .unwrap();
    let rs = solve(&from_delta(&entry.delta), cfg).map_err(|e| e.to_string())?;
    let check = strip_check(&rs, BoundKind::HalfStrip).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    log.record("d10 candidate", &rs);

    let worst = match_published(&rs, &[(4.02470021, 8.22732653)])?;
    ensure(check.upper == Some(int(4)), || {
        format!("upper bound {:?}", check.upper)
    })?;
    ensure(!check.pass, || "half-strip check passed".into())?;
    let above = check
        .violators
        .iter()
        .any(|v| matches!(v, Violator::Root { re, .. } if *re > 4.0));
    ensure(above, || "no violator beyond Re = 4".into())?;
    within_time(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "root error {worst:.1e}, {} violators, {elapsed:.2?}",
        check.violators.len()
    ))
}

/// Closed-form pair `−1/2 ± (1/2)√(num/den)` as floating values.
fn closed_pair(num: f64, den: f64) -> [(f64, f64); 2] {
    let s = num / den;
    let h = 0.5 * s.abs().sqrt();
    if s >= 0.0 {
        [(-0.5 - h, 0.0), (-0.5 + h, 0.0)]
    } else {
        [(-0.5, -h), (-0.5, h)]
    }
}

fn match_closed(rs: &RootSet, expected: &[(f64, f64)], label: &str) -> Result<f64, String> {
    let mut worst = 0.0f64;
    for &(re, im) in expected {
        let (i, _) = rs.nearest(re, im).ok_or("empty root set")?;
        let (x, y) = rs.roots[i].to_f64();
        let err = (x - re).abs().max((y - im).abs());
        ensure(err <= CLOSED_FORM_TOL, || {
            format!("{label}: root {re}+{im}i off by {err:e}")
        })?;
        worst = worst.max(err);
    }
    Ok(worst)
}

fn criterion_3(cfg: &SolverConfig, log: &mut NormLog) -> Outcome {
    let entries = gorenstein_deltas(2).map_err(|e| e.to_string())?;
    ensure(entries.len() == 7, || format!("{} entries", entries.len()))?;
    let mut worst = 0.0f64;
    for e in &entries {
        let b = e.parameter.unwrap() as f64;
        let rs = solve(&from_delta(&e.delta), cfg).map_err(|err| err.to_string())?;
        log.record(&e.label, &rs);
        ensure(rs.roots.len() == 2, || {
            format!("{}: {} roots", e.label, rs.roots.len())
        })?;
        worst = worst.max(match_closed(&rs, &closed_pair(b - 6.0, b + 2.0), &e.label)?);
    }
    let b7 = entries.iter().find(|e| e.parameter == Some(7)).unwrap();
    let exact = b7.closed_form_roots.as_ref().unwrap().pair.rational_roots();
    ensure(exact == Some((rat(-2, 3), rat(-1, 3))), || {
        format!("b=7 exact roots {exact:?}")
    })?;
    let f = from_delta(&b7.delta);
    ensure(
        f.eval(&rat(-2, 3)).is_zero() && f.eval(&rat(-1, 3)).is_zero(),
        || "b=7 roots do not vanish".into(),
    )?;
    Ok(format!(
        "7 entries, max error {worst:.1e}, b=7 -> {{-2/3, -1/3}} exactly"
    ))
}

fn criterion_4(cfg: &SolverConfig, log: &mut NormLog) -> Outcome {
    let entries = gorenstein_deltas(3).map_err(|e| e.to_string())?;
    ensure(entries.len() == 33, || format!("{} entries", entries.len()))?;
    ensure(
        entries
            .iter()
            .all(|e| !matches!(e.parameter, Some(33) | Some(34))),
        || "b in {33, 34} present".into(),
    )?;
    let mut worst = 0.0f64;
    for e in &entries {
        let b = e.parameter.unwrap() as f64;
        let f = from_delta(&e.delta);
        ensure(f.eval(&rat(-1, 2)).is_zero(), || {
            format!("{}: f(-1/2) != 0", e.label)
        })?;
        let cf = e.closed_form_roots.as_ref().unwrap();
        ensure(cf.rational == vec![rat(-1, 2)], || {
            format!("{}: closed form lacks -1/2", e.label)
        })?;
        let rs = solve(&f, cfg).map_err(|err| err.to_string())?;
        log.record(&e.label, &rs);
        ensure(rs.roots.len() == 3, || {
            format!("{}: {} roots", e.label, rs.roots.len())
        })?;
        let mut expected = closed_pair(b - 23.0, b + 1.0).to_vec();
        expected.push((-0.5, 0.0));
        worst = worst.max(match_closed(&rs, &expected, &e.label)?);
    }
    Ok(format!(
        "33 entries, -1/2 exact in all, max pair error {worst:.1e}"
    ))
}

fn random_entry(rng: &mut ChaCha8Rng) -> BigRational {
    if rng.gen_bool(0.2) {
        return BigRational::zero();
    }
    rat(rng.gen_range(0..=30), rng.gen_range(1..=7))
}

fn random_symmetric(rng: &mut ChaCha8Rng, d: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); d + 1];
    for i in 0..=d / 2 {
        let x = if i == 0 {
            rat(rng.gen_range(1..=5), rng.gen_range(1..=3))
        } else {
            random_entry(rng)
        };
        v[i] = x.clone();
        v[d - i] = x;
    }
    v
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..1000 {
        let d = rng.gen_range(1..=15);
        let v = random_symmetric(&mut rng, d);
        ensure(check_functional_equation(&from_delta_entries(&v)), || {
            format!("symmetric trial {trial}: identity fails for {v:?}")
        })?;
    }
    for trial in 0..1000 {
        let d = rng.gen_range(1..=15);
        let mut v = random_symmetric(&mut rng, d);
        let i = rng.gen_range(0..=d);
        let j = d - i;
        let bump = rat(rng.gen_range(1..=9), rng.gen_range(1..=4));
        let i = if i == j { 0 } else { i };
        v[i] = &v[i] + bump;
        ensure(!check_functional_equation(&from_delta_entries(&v)), || {
            format!("asymmetric trial {trial}: identity holds for {v:?}")
        })?;
    }
    let elapsed = start.elapsed();
    within_time(elapsed, Duration::from_secs(10))?;
    Ok(format!(
        "1000 symmetric hold, 1000 asymmetric fail, {elapsed:.2?}"
    ))
}

fn from_delta_entries(v: &[BigRational]) -> ssnn::poly::RationalPolynomial {
    ssnn::poly::from_delta_entries(v)
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut real_roots = 0usize;
    for trial in 0..500 {
        let d = rng.gen_range(1..=20);
        let v = DeltaVector::new(random_symmetric(&mut rng, d)).unwrap();
        let check = certify_real_strip(&v).map_err(|e| e.to_string())?;
        ensure(check.pass, || {
            format!(
                "trial {trial}: {v} has real roots outside: {:?}",
                check.violators
            )
        })?;
        real_roots += ssnn::certify::sturm_sequence(&from_delta(&v)).total_real_roots();
    }
    let elapsed = start.elapsed();
    within_time(elapsed, Duration::from_secs(60))?;
    Ok(format!(
        "500 vectors, {real_roots} distinct real roots all inside, {elapsed:.2?}"
    ))
}

/// Rational `b` drawn uniformly (to 1e-6) from the admissible complex
/// interval at `c`.
fn sample_b(rng: &mut ChaCha8Rng, d: usize, c: &BigRational) -> Option<BigRational> {
    let iv = admissible_b_interval(d, c).ok()??;
    let lo = iv.lower.as_ref().map_or(0.0, |s| s.to_f64());
    let hi = iv.upper.to_f64();
    for _ in 0..20 {
        let x = lo + rng.gen::<f64>() * (hi - lo);
        let b = rat((x * 1e6).round() as i64, 1_000_000);
        if iv.contains(&b) {
            return Some(b);
        }
    }
    None
}

fn criterion_7(cfg: &SolverConfig, log: &mut NormLog) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut summary = Vec::new();
    for d in [4usize, 5] {
        let (t_lo, _) = c_thresholds(d).map_err(|e| e.to_string())?;
        let c_min = t_lo.to_f64();
        let bound = quartic_bound(d);
        let (mut n, mut first, mut second, mut worst) = (0usize, 0usize, 0usize, 0.0f64);
        while n < 10_000 {
            let c_f = c_min + rng.gen::<f64>() * (400.0 - c_min);
            let c = rat((c_f * 1000.0).round() as i64, 1000);
            let Some(b) = sample_b(&mut rng, d, &c) else {
                continue;
            };
            let qa = quartic_analysis(&b, &c, d).map_err(|e| e.to_string())?;
            ensure(qa.region.is_complex(), || {
                format!("d={d} b={b} c={c}: region {:?}", qa.region)
            })?;
            let mag = qa.real_part_magnitude.unwrap();
            ensure(mag <= bound + SWEEP_TOL && qa.pass, || {
                format!("d={d} b={b} c={c}: magnitude {mag}")
            })?;

            let rs =
                quartic_roots(&b, &c, d, cfg).map_err(|e| format!("d={d} b={b} c={c}: {e}"))?;
            log.record("quartic sweep", &rs);
            let offset = max_nonreal_offset(&rs)
                .ok_or_else(|| format!("d={d} b={b} c={c}: no complex roots"))?;
            let solver_pass = offset <= bound + SWEEP_TOL;
            ensure(solver_pass == qa.pass, || {
                format!("d={d} b={b} c={c}: verdicts disagree")
            })?;
            ensure((offset - mag).abs() <= SWEEP_TOL, || {
                format!("d={d} b={b} c={c}: solver {offset} vs analysis {mag}")
            })?;
            worst = worst.max(mag);
            first += usize::from(qa.region == Region::FirstComplex);
            second += usize::from(qa.region == Region::SecondComplex);
            n += 1;
        }
        summary.push(format!(
            "d={d}: max |Re+1/2| {worst:.9} <= {bound:.9} ({first} first / {second} second regime)"
        ));
    }
    Ok(format!("{}; {:.2?}", summary.join(", "), start.elapsed()))
}

fn criterion_8(cfg: &SolverConfig, log: &mut NormLog) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut solver_worst = 0.0f64;
    for d in 4..=12usize {
        let k = (d / 2) as i64;
        let mut seen = 0;
        while seen < 50 {
            let den = rng.gen_range(2..=40);
            let num = rng.gen_range(-k * den + 1..(k - 1) * den);
            let target = rat(num, den);
            let ParameterSolution::Parameter(a) =
                solve_parameter(d, &target).map_err(|e| e.to_string())?
            else {
                return Err(format!(
                    "d={d} target {target}: interior target treated as boundary"
                ));
            };
            let plan = construct(d, &a).map_err(|e| format!("d={d} target {target}: {e}"))?;
            let roots = realized_roots_exact(&plan).rational_roots();
            let (lo, hi) =
                roots.ok_or_else(|| format!("d={d} target {target}: irrational roots"))?;
            ensure(lo == target || hi == target, || {
                format!("d={d} target {target}: got {lo}, {hi}")
            })?;
            let f = from_delta(&plan.delta);
            ensure(f.eval(&target).is_zero(), || {
                format!("d={d} target {target}: f(target) != 0")
            })?;

            let rs = solve(&f, cfg).map_err(|e| e.to_string())?;
            log.record("realization", &rs);
            let t = f64_of(&target);
            let (i, _) = rs.nearest(t, 0.0).unwrap();
            let (x, y) = rs.roots[i].to_f64();
            let err = (x - t).abs().max(y.abs());
            ensure(err <= SWEEP_TOL, || {
                format!("d={d} target {target}: solver off by {err:e}")
            })?;
            solver_worst = solver_worst.max(err);
            seen += 1;
        }
    }
    Ok(format!(
        "450 targets recovered exactly, solver max error {solver_worst:.1e}"
    ))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..1000 {
        let d = rng.gen_range(0..=20);
        let mut v: Vec<BigRational> = (0..=d).map(|_| random_entry(&mut rng)).collect();
        if v.iter().all(Zero::is_zero) {
            v[0] = int(1);
        }
        let back = delta_from_polynomial(&from_delta_entries(&v));
        ensure(back == v, || format!("trial {trial}: {v:?} -> {back:?}"))?;
    }
    Ok("1000 vectors round-trip exactly".into())
}

fn criterion_10(log: &NormLog) -> Outcome {
    ensure(norm_radius(4) == int(14), || {
        format!("d=4 radius {}", norm_radius(4))
    })?;
    ensure(norm_radius(5) == rat(45, 2), || {
        format!("d=5 radius {}", norm_radius(5))
    })?;
    ensure(log.checked > 0, || "no root sets recorded".into())?;
    ensure(log.failures.is_empty(), || {
        format!(
            "{} failures, first: {}",
            log.failures.len(),
            log.failures[0]
        )
    })?;
    Ok(format!(
        "{} root sets inside the disk; radii 14 and 45/2",
        log.checked
    ))
}

fn main() -> ExitCode {
    let cfg = SolverConfig::default();
    let mut log = NormLog::default();
    let mut failed = 0;
    let mut report = |n: u32, name: &str, outcome: Outcome| match outcome {
        Ok(detail) => println!("PASS [{n:>2}] {name}: {detail}"),
        Err(why) => {
            failed += 1;
            println!("FAIL [{n:>2}] {name}: {why}");
        }
    };
    report(1, "d=8 counterexample roots", criterion_1(&cfg, &mut log));
    report(2, "d=10 candidate root", criterion_2(&cfg, &mut log));
    report(3, "dimension-2 catalog", criterion_3(&cfg, &mut log));
    report(4, "dimension-3 catalog", criterion_4(&cfg, &mut log));
    report(5, "functional equation", criterion_5());
    report(6, "real roots in floor strip", criterion_6());
    report(7, "quartic real-part sweep", criterion_7(&cfg, &mut log));
    report(8, "realization round trip", criterion_8(&cfg, &mut log));
    report(9, "delta round trip", criterion_9());
    report(10, "norm disk", criterion_10(&log));
    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 10 criteria failed");
        ExitCode::FAILURE
    }
}
