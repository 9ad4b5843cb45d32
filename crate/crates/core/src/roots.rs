//! All complex roots of a rational polynomial.
//!
//! The polynomial is first split into squarefree factors (Yun). Linear
//! factors are solved exactly; the others go through Ehrlich–Aberth
//! simultaneous iteration in [`BigFloat`] arithmetic. Every root carries
//! an a posteriori inclusion radius: for a squarefree factor `q` of degree
//! `m`, some root of `q` lies within `m·|q(z)|/|q'(z)|` of `z`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::bigfloat::{BigComplex, BigFloat};
use crate::certify::{count_real_roots, sturm_sequence};
use crate::error::{Error, Result};
use crate::poly::RationalPolynomial;

/// Fraction of a turn added to every starting angle.
const ANGLE_OFFSET: f64 = 0.7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub precision_bits: u32,
    pub max_iterations: usize,
    /// A root is converged once its correction is below
    /// `convergence_factor · max(1, |z|)`.
    pub convergence_factor: BigRational,
}

impl SolverConfig {
    /// Convergence factor `2^(−precision_bits/2)`.
    pub fn new(precision_bits: u32, max_iterations: usize) -> Self {
        assert!(
            precision_bits >= 53,
            "working precision must be at least 53 bits"
        );
        assert!(max_iterations >= 1, "max_iterations must be positive");
        let convergence_factor = BigRational::new(
            BigInt::one(),
            BigInt::one() << (precision_bits / 2) as usize,
        );
        SolverConfig {
            precision_bits,
            max_iterations,
            convergence_factor,
        }
    }

    pub fn with_precision(&self, precision_bits: u32) -> Self {
        SolverConfig::new(precision_bits, self.max_iterations)
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig::new(128, 200)
    }
}

#[derive(Clone, Debug)]
pub struct ComplexRoot {
    pub re: BigFloat,
    pub im: BigFloat,
    /// Coefficient-scaled residual `|p(z)| / (1 + Σ|a_k||z|^k)`.
    pub residual: f64,
    pub error_radius: BigFloat,
    /// Size of the last Newton correction `|q(z)/q'(z)|`.
    pub newton_correction: f64,
    pub multiplicity: usize,
    pub is_real_certified: bool,
    pub converged: bool,
    /// Roots sharing an id are copies of one root of multiplicity > 1.
    pub distinct_id: usize,
}

impl ComplexRoot {
    pub fn value(&self) -> BigComplex {
        BigComplex::new(self.re.clone(), self.im.clone())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn error_radius_f64(&self) -> f64 {
        self.error_radius.to_f64()
    }
}

#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<ComplexRoot>,
    pub degree: usize,
    pub precision_bits: u32,
    pub iterations: usize,
    pub poly: RationalPolynomial,
}

impl RootSet {
    pub fn certified_real_count(&self) -> usize {
        let mut ids: Vec<usize> = self
            .roots
            .iter()
            .filter(|r| r.is_real_certified)
            .map(|r| r.distinct_id)
            .collect();
        ids.dedup();
        ids.len()
    }

    pub fn to_f64(&self) -> Vec<(f64, f64)> {
        self.roots.iter().map(ComplexRoot::to_f64).collect()
    }

    /// Index of the root nearest to `(re, im)`.
    pub fn nearest(&self, re: f64, im: f64) -> Option<(usize, f64)> {
        self.roots
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let (x, y) = r.to_f64();
                (i, ((x - re).powi(2) + (y - im).powi(2)).sqrt())
            })
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// `(p(z), p'(z))` by a single Horner pass over float coefficients.
fn horner_with_derivative(coeffs: &[BigFloat], z: &BigComplex) -> (BigComplex, BigComplex) {
    let prec = z.precision();
    let mut p = BigComplex::zero(prec);
    let mut dp = BigComplex::zero(prec);
    for c in coeffs.iter().rev() {
        dp = &(&dp * z) + &p;
        p = &p * z;
        p.re = &p.re + c;
    }
    (p, dp)
}

/// `Σ |a_k| |z|^k`
fn abs_horner(coeffs: &[BigFloat], zabs: &BigFloat) -> BigFloat {
    let prec = zabs.precision();
    coeffs
        .iter()
        .rev()
        .fold(BigFloat::zero(prec), |acc, c| &(&acc * zabs) + &c.abs())
}

pub fn residual(p: &RationalPolynomial, z: &BigComplex) -> f64 {
    let prec = z.precision();
    let value = p.eval_complex(z, prec).norm();
    let coeffs: Vec<BigFloat> = p
        .coeffs()
        .iter()
        .map(|c| BigFloat::from_rational(c, prec))
        .collect();
    let scale = &BigFloat::one(prec) + &abs_horner(&coeffs, &z.norm());
    value.div(&scale).to_f64()
}

/// `p(z)` with coefficients rounded to `prec` bits.
pub fn evaluate_complex(p: &RationalPolynomial, z: &BigComplex, prec: u32) -> BigComplex {
    assert!(prec >= 53, "working precision must be at least 53 bits");
    p.eval_complex(
        &BigComplex::new(z.re.with_precision(prec), z.im.with_precision(prec)),
        prec,
    )
}

struct FactorRoot {
    z: BigComplex,
    radius: BigFloat,
    correction: f64,
    converged: bool,
}

/// Integer coefficients of `q` divided by the largest one in magnitude.
fn scaled_coefficients(q: &RationalPolynomial, prec: u32) -> Vec<BigFloat> {
    let ints = q.primitive_part().integer_coefficients();
    let max = ints
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::one);
    let max = BigFloat::from_bigint(&max, prec);
    ints.iter()
        .map(|c| BigFloat::from_bigint(c, prec).div(&max))
        .collect()
}

fn inclusion_radius(coeffs: &[BigFloat], z: &BigComplex) -> (BigFloat, f64) {
    let prec = z.precision();
    let m = coeffs.len() - 1;
    let (pv, dv) = horner_with_derivative(coeffs, z);
    let eval_err = abs_horner(coeffs, &z.norm()).mul_pow2(-(prec as i64) + 1);
    let eval_err = &eval_err * &BigFloat::from_int(2 * (m as i64 + 1), prec);
    let dnorm = dv.norm();
    let pnorm = pv.norm();
    if dnorm.is_zero() {
        return (BigFloat::from_f64(f64::MAX, prec), f64::INFINITY);
    }
    let correction = pnorm.div(&dnorm).to_f64();
    let radius = (&pnorm + &eval_err).div(&dnorm);
    (&radius * &BigFloat::from_int(m as i64, prec), correction)
}

fn initial_guesses(coeffs: &[BigFloat], prec: u32) -> Vec<BigComplex> {
    let m = coeffs.len() - 1;
    let lead = coeffs[m].log2_abs();
    // Fujiwara-type radius 2·max |a_{m−k}/a_m|^{1/k}
    let mut log_radius = f64::NEG_INFINITY;
    for k in 1..=m {
        let l = (coeffs[m - k].log2_abs() - lead) / k as f64;
        log_radius = log_radius.max(l);
    }
    let radius = if log_radius.is_finite() {
        2f64.powf(log_radius + 1.0)
    } else {
        1.0
    };
    let centroid = -coeffs[m - 1].div(&coeffs[m]).to_f64() / m as f64;
    let radius = radius + centroid.abs();
    (0..m)
        .map(|k| {
            let theta = std::f64::consts::TAU * (k as f64 / m as f64) + ANGLE_OFFSET;
            BigComplex::from_f64(centroid + radius * theta.cos(), radius * theta.sin(), prec)
        })
        .collect()
}

fn aberth(q: &RationalPolynomial, cfg: &SolverConfig) -> (Vec<FactorRoot>, usize) {
    let prec = cfg.precision_bits;
    let coeffs = scaled_coefficients(q, prec);
    let m = coeffs.len() - 1;
    let tol = crate::rational::to_f64(&cfg.convergence_factor);
    let mut z = initial_guesses(&coeffs, prec);
    let mut done = vec![false; m];
    let mut iterations = 0;
    while iterations < cfg.max_iterations && done.iter().any(|d| !d) {
        iterations += 1;
        for i in 0..m {
            if done[i] {
                continue;
            }
            let (pv, dv) = horner_with_derivative(&coeffs, &z[i]);
            if pv.is_zero() {
                done[i] = true;
                continue;
            }
            let mut sum = BigComplex::zero(prec);
            for j in 0..m {
                if j != i {
                    let diff = &z[i] - &z[j];
                    if !diff.is_zero() {
                        sum = &sum + &diff.recip();
                    }
                }
            }
            let step = if dv.is_zero() {
                // Stationary point: nudge off it.
                BigComplex::from_f64(tol.sqrt(), tol.sqrt(), prec)
            } else {
                let ratio = pv.div(&dv);
                let denom = &BigComplex::from_real(BigFloat::one(prec)) - &(&ratio * &sum);
                if denom.is_zero() {
                    ratio
                } else {
                    ratio.div(&denom)
                }
            };
            z[i] = &z[i] - &step;
            let size = step.norm().to_f64();
            let scale = z[i].norm().to_f64().max(1.0);
            if size < tol * scale {
                done[i] = true;
            }
        }
    }
    let roots = z
        .into_iter()
        .zip(done)
        .map(|(z, converged)| {
            let (radius, correction) = inclusion_radius(&coeffs, &z);
            let scale = z.norm().to_f64().max(1.0);
            let converged = converged && correction < tol * scale;
            FactorRoot {
                z,
                radius,
                correction,
                converged,
            }
        })
        .collect();
    (roots, iterations)
}

fn linear_root(q: &RationalPolynomial, prec: u32) -> FactorRoot {
    let root = -q.coeff(0) / q.coeff(1);
    let re = BigFloat::from_rational(&root, prec);
    let err = (re.to_rational() - &root).abs();
    FactorRoot {
        z: BigComplex::from_real(re),
        radius: BigFloat::from_rational(&err, prec),
        correction: 0.0,
        converged: true,
    }
}

/// Roots within `2^(−prec/4)·max(1,|z|)` of each other share the radius
/// `max r + diameter` of their cluster.
fn inflate_clusters(roots: &mut [ComplexRoot], prec: u32) {
    let n = roots.len();
    let threshold = 2f64.powi(-(prec as i32) / 4);
    let values: Vec<(f64, f64)> = roots.iter().map(ComplexRoot::to_f64).collect();
    let mut cluster: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while c[i] != i {
            c[i] = c[c[i]];
            i = c[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if roots[i].distinct_id == roots[j].distinct_id {
                continue;
            }
            let (a, b) = (values[i], values[j]);
            let dist = ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
            let scale = (a.0.hypot(a.1)).max(1.0);
            if dist < threshold * scale {
                let (ri, rj) = (find(&mut cluster, i), find(&mut cluster, j));
                cluster[ri] = rj;
            }
        }
    }
    for root in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| find(&mut cluster, i) == root).collect();
        if members
            .iter()
            .map(|&i| roots[i].distinct_id)
            .collect::<std::collections::BTreeSet<_>>()
            .len()
            < 2
        {
            continue;
        }
        let mut diameter = BigFloat::zero(prec);
        let mut rmax = BigFloat::zero(prec);
        for &i in &members {
            if roots[i].error_radius > rmax {
                rmax = roots[i].error_radius.clone();
            }
            for &j in &members {
                let d = (&roots[i].value() - &roots[j].value()).norm();
                if d > diameter {
                    diameter = d;
                }
            }
        }
        let shared = &rmax + &diameter;
        for &i in &members {
            roots[i].error_radius = shared.clone();
        }
    }
}

/// Replaces each conjugate pair by an exactly conjugate pair.
fn pair_conjugates(roots: &mut [ComplexRoot]) {
    let n = roots.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] || roots[i].im.abs() <= roots[i].error_radius || roots[i].im.signum() < 0 {
            continue;
        }
        let target = roots[i].value().conj();
        let partner = (0..n)
            .filter(|&j| {
                !used[j]
                    && j != i
                    && roots[j].im.signum() < 0
                    && roots[j].im.abs() > roots[j].error_radius
            })
            .min_by(|&a, &b| {
                let da = (&roots[a].value() - &target).norm();
                let db = (&roots[b].value() - &target).norm();
                da.partial_cmp(&db).unwrap_or(Ordering::Equal)
            });
        if let Some(j) = partner {
            let prec = roots[i].re.precision();
            let half = BigFloat::one(prec).mul_pow2(-1);
            let re = &(&roots[i].re + &roots[j].re) * &half;
            let im = &(&roots[i].im - &roots[j].im) * &half;
            let gap = (&roots[j].value() - &target).norm().mul_pow2(-1);
            let radius = {
                let r = if roots[i].error_radius > roots[j].error_radius {
                    roots[i].error_radius.clone()
                } else {
                    roots[j].error_radius.clone()
                };
                &r + &gap
            };
            roots[i].re = re.clone();
            roots[i].im = im.clone();
            roots[j].re = re;
            roots[j].im = -&im;
            roots[i].error_radius = radius.clone();
            roots[j].error_radius = radius;
            used[i] = true;
            used[j] = true;
        }
    }
}

/// Finds all `deg p` roots with multiplicity, sorted by `(re, im)`.
pub fn find_roots(p: &RationalPolynomial, cfg: &SolverConfig) -> Result<RootSet> {
    if p.degree() == 0 {
        return Err(Error::DegenerateInput);
    }
    let prec = cfg.precision_bits;
    let mut roots = Vec::with_capacity(p.degree());
    let mut iterations = 0;
    let mut next_id = 0;
    for (factor, multiplicity) in p.squarefree_factors() {
        let found = if factor.degree() == 1 {
            vec![linear_root(&factor, prec)]
        } else {
            let (found, its) = aberth(&factor, cfg);
            iterations = iterations.max(its);
            found
        };
        for r in found {
            for _ in 0..multiplicity {
                roots.push(ComplexRoot {
                    re: r.z.re.clone(),
                    im: r.z.im.clone(),
                    residual: residual(p, &r.z),
                    error_radius: r.radius.clone(),
                    newton_correction: r.correction,
                    multiplicity,
                    is_real_certified: false,
                    converged: r.converged,
                    distinct_id: next_id,
                });
            }
            next_id += 1;
        }
    }
    inflate_clusters(&mut roots, prec);
    pair_conjugates(&mut roots);
    sort_roots(&mut roots);
    let set = RootSet {
        roots,
        degree: p.degree(),
        precision_bits: prec,
        iterations,
        poly: p.clone(),
    };
    if set.roots.iter().any(|r| !r.converged) {
        return Err(Error::NoConvergence {
            iterations,
            partial: Box::new(set),
        });
    }
    Ok(set)
}

fn sort_roots(roots: &mut [ComplexRoot]) {
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
    });
}

/// Marks roots that a Sturm count proves real and snaps their imaginary
/// part to zero.
///
/// Candidates are roots with `|im| ≤ error_radius`; overlapping candidate
/// intervals are grouped, and a group is certified when the exact count
/// of real roots in its interval equals its number of distinct roots.
pub fn classify_roots(rs: &RootSet) -> Result<RootSet> {
    let mut out = rs.clone();
    let chain = sturm_sequence(&rs.poly);
    let mut candidates: Vec<(BigRational, BigRational, usize)> = out
        .roots
        .iter()
        .enumerate()
        .filter(|(_, r)| r.im.abs() <= r.error_radius)
        .map(|(i, r)| {
            // Double the radius so rounding of the interval ends cannot
            // push the root outside.
            let rad = r.error_radius.mul_pow2(1);
            let rad = if rad.is_zero() {
                r.re.abs().mul_pow2(-(r.re.precision() as i64) + 2)
            } else {
                rad
            };
            let rad = if rad.is_zero() {
                BigFloat::one(r.re.precision()).mul_pow2(-(r.re.precision() as i64))
            } else {
                rad
            };
            (
                (&r.re - &rad).to_rational(),
                (&r.re + &rad).to_rational(),
                i,
            )
        })
        .collect();
    candidates.sort_by(|a, b| a.0.cmp(&b.0));

    let mut groups: Vec<(BigRational, BigRational, Vec<usize>)> = Vec::new();
    for (lo, hi, i) in candidates {
        match groups.last_mut() {
            Some(g) if lo <= g.1 => {
                if hi > g.1 {
                    g.1 = hi;
                }
                g.2.push(i);
            }
            _ => groups.push((lo, hi, vec![i])),
        }
    }
    for (lo, hi, members) in groups {
        let mut ids: Vec<usize> = members.iter().map(|&i| out.roots[i].distinct_id).collect();
        ids.sort_unstable();
        ids.dedup();
        // Half-open count; include lo itself if it happens to be a root.
        let count =
            count_real_roots(&chain, &lo, &hi) + usize::from(chain.base().sign_at(&lo) == 0);
        if count == ids.len() {
            for &i in &members {
                let prec = out.roots[i].im.precision();
                out.roots[i].im = BigFloat::zero(prec);
                out.roots[i].is_real_certified = true;
            }
        } else if count != 0 {
            return Err(Error::AmbiguousClassification {
                near: out.roots[members[0]].re.to_f64(),
            });
        }
    }
    sort_roots(&mut out.roots);
    Ok(out)
}

/// [`find_roots`] followed by [`classify_roots`].
pub fn solve(p: &RationalPolynomial, cfg: &SolverConfig) -> Result<RootSet> {
    classify_roots(&find_roots(p, cfg)?)
}
