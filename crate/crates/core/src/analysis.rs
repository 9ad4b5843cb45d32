//! Strip and norm verdicts over computed roots, and the reduced-quadratic
//! analysis for degrees 4 and 5.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;

use crate::bigfloat::BigFloat;
use crate::certify::{count_real_roots, floor_strip, sturm_sequence};
use crate::error::{Error, Result};
use crate::poly::{from_delta, half_shift, parity_reduce, DeltaVector};
use crate::radical::Surd;
use crate::rational::{int, rat};
use crate::roots::{solve, ComplexRoot, RootSet, SolverConfig};

/// Highest precision tried before a straddling root is reported.
pub const MAX_PRECISION_BITS: u32 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// `−d ≤ Re α ≤ d − 1`
    FullStrip,
    /// `−d/2 ≤ Re α ≤ d/2 − 1`
    HalfStrip,
    /// `−⌊d/2⌋ ≤ Re α ≤ ⌊d/2⌋ − 1`
    FloorStrip,
    /// `|α + 1/2| ≤ d(2d − 1)/2`
    NormDisk,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::FullStrip => "full_strip",
            BoundKind::HalfStrip => "half_strip",
            BoundKind::FloorStrip => "floor_strip",
            BoundKind::NormDisk => "norm_disk",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Violator {
    Root {
        re: f64,
        im: f64,
        margin: f64,
    },
    /// `count` distinct real roots in `(lo, hi)`, found by exact counting.
    RealRoots {
        lo: BigRational,
        hi: BigRational,
        count: usize,
    },
}

#[derive(Clone, Debug)]
pub struct BoundCheck {
    pub kind: BoundKind,
    pub lower: Option<BigRational>,
    pub upper: Option<BigRational>,
    pub radius: Option<BigRational>,
    /// Signed distance of each root to the boundary, negative outside.
    pub margins: Vec<f64>,
    pub violators: Vec<Violator>,
    pub pass: bool,
    /// The norm radius formula was applied outside degrees 4 and 5.
    pub extrapolated: bool,
}

impl BoundCheck {
    pub fn min_margin(&self) -> Option<f64> {
        self.margins.iter().copied().reduce(f64::min)
    }
}

pub fn strip_bounds(kind: BoundKind, d: usize) -> (BigRational, BigRational) {
    let d_q = int(d as i64);
    match kind {
        BoundKind::FullStrip => (-&d_q, &d_q - int(1)),
        BoundKind::HalfStrip => (-&d_q / int(2), &d_q / int(2) - int(1)),
        BoundKind::FloorStrip => floor_strip(d),
        BoundKind::NormDisk => panic!("norm disk has no strip bounds"),
    }
}

/// `d(2d − 1)/2`
pub fn norm_radius(d: usize) -> BigRational {
    rat((d * (2 * d - 1)) as i64, 2)
}

/// Which side of `boundary` the certified real root of `root` lies on,
/// decided exactly. `Equal` means the root is the boundary.
fn real_root_side(rs: &RootSet, root: &ComplexRoot, boundary: &BigRational) -> Ordering {
    if rs.poly.sign_at(boundary) == 0 {
        return Ordering::Equal;
    }
    let rad = root.error_radius.mul_pow2(1);
    let lo = (&root.re - &rad).to_rational();
    let hi = (&root.re + &rad).to_rational();
    let chain = sturm_sequence(&rs.poly);
    if count_real_roots(&chain, &lo, boundary) > 0 {
        Ordering::Less
    } else if count_real_roots(&chain, boundary, &hi) > 0 {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// Per-root strip verdict. A root only counts as a violator when its real
/// part is outside by more than its error radius.
pub fn strip_check(rs: &RootSet, kind: BoundKind) -> Result<BoundCheck> {
    let d = rs.degree;
    let (lo, hi) = strip_bounds(kind, d);
    let prec = rs.precision_bits;
    let lo_f = BigFloat::from_rational(&lo, prec + 8);
    let hi_f = BigFloat::from_rational(&hi, prec + 8);
    let mut margins = Vec::with_capacity(rs.roots.len());
    let mut violators = Vec::new();
    for root in &rs.roots {
        let below = &root.re - &lo_f;
        let above = &hi_f - &root.re;
        let (margin, boundary) = if below < above {
            (below, &lo)
        } else {
            (above, &hi)
        };
        let mut margin_f = margin.to_f64();
        let r = &root.error_radius;
        let straddles = margin.abs() <= *r;
        if straddles {
            if root.is_real_certified {
                let side = real_root_side(rs, root, boundary);
                let inside = match side {
                    Ordering::Equal => true,
                    Ordering::Less => boundary == &hi,
                    Ordering::Greater => boundary == &lo,
                };
                if side == Ordering::Equal {
                    margin_f = 0.0;
                }
                if !inside {
                    let (re, im) = root.to_f64();
                    violators.push(Violator::Root {
                        re,
                        im,
                        margin: margin_f.min(-f64::MIN_POSITIVE),
                    });
                }
            } else {
                return Err(Error::Inconclusive {
                    re: root.re.to_f64(),
                    radius: r.to_f64(),
                    boundary: crate::rational::to_f64(boundary),
                });
            }
        } else if margin.signum() < 0 {
            let (re, im) = root.to_f64();
            violators.push(Violator::Root {
                re,
                im,
                margin: margin_f,
            });
        }
        margins.push(margin_f);
    }
    Ok(BoundCheck {
        kind,
        lower: Some(lo),
        upper: Some(hi),
        radius: None,
        margins,
        pass: violators.is_empty(),
        violators,
        extrapolated: false,
    })
}

/// Solves `v`'s polynomial and checks the strip, doubling the working
/// precision on inconclusive roots up to [`MAX_PRECISION_BITS`].
pub fn strip_verdict(
    v: &DeltaVector,
    kind: BoundKind,
    cfg: &SolverConfig,
) -> Result<(RootSet, BoundCheck)> {
    let p = from_delta(v);
    let mut cfg = cfg.clone();
    loop {
        let rs = solve(&p, &cfg)?;
        match strip_check(&rs, kind) {
            Ok(check) => return Ok((rs, check)),
            Err(Error::Inconclusive { .. }) if cfg.precision_bits * 2 <= MAX_PRECISION_BITS => {
                cfg = cfg.with_precision(cfg.precision_bits * 2);
            }
            Err(e) => return Err(e),
        }
    }
}

/// `|α + 1/2| ≤ d(2d − 1)/2 + error_radius` for every root.
pub fn norm_check(rs: &RootSet) -> BoundCheck {
    let d = rs.degree;
    let radius = norm_radius(d);
    let prec = rs.precision_bits;
    let radius_f = BigFloat::from_rational(&radius, prec);
    let half = BigFloat::from_rational(&rat(1, 2), prec);
    let mut margins = Vec::new();
    let mut violators = Vec::new();
    for root in &rs.roots {
        let mut shifted = root.value();
        shifted.re = &shifted.re + &half;
        let margin = &radius_f - &shifted.norm();
        if &margin + &root.error_radius < BigFloat::zero(prec) {
            let (re, im) = root.to_f64();
            violators.push(Violator::Root {
                re,
                im,
                margin: margin.to_f64(),
            });
        }
        margins.push(margin.to_f64());
    }
    BoundCheck {
        kind: BoundKind::NormDisk,
        lower: None,
        upper: None,
        radius: Some(radius),
        margins,
        pass: violators.is_empty(),
        violators,
        extrapolated: !(4..=5).contains(&d),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// `D(G) ≥ 0`: every root of the shifted quartic is real or purely imaginary.
    Real,
    /// `D(G) < 0` with `c` up to the upper threshold.
    FirstComplex,
    /// `D(G) < 0` with `c` beyond the upper threshold.
    SecondComplex,
    /// Negative `b` or `c`.
    Inadmissible,
}

impl Region {
    pub fn name(self) -> &'static str {
        match self {
            Region::Real => "real_regime",
            Region::FirstComplex => "first_complex_regime",
            Region::SecondComplex => "second_complex_regime",
            Region::Inadmissible => "inadmissible",
        }
    }

    pub fn is_complex(self) -> bool {
        matches!(self, Region::FirstComplex | Region::SecondComplex)
    }
}

/// Open-above interval of `b` where `D(G) < 0` for a fixed `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BInterval {
    /// `None` means the interval is closed at `b = 0`.
    pub lower: Option<Surd>,
    pub upper: Surd,
}

impl BInterval {
    pub fn contains(&self, b: &BigRational) -> bool {
        let above_lower = match &self.lower {
            None => !b.is_negative(),
            Some(lo) => lo.cmp_rational(b) == Ordering::Less,
        };
        above_lower && self.upper.cmp_rational(b) == Ordering::Greater
    }
}

impl fmt::Display for BInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lower {
            None => write!(f, "[0, {})", self.upper),
            Some(lo) => write!(f, "({}, {})", lo, self.upper),
        }
    }
}

/// The `c`-threshold `lower` and the regime split `upper`, as surds.
pub fn c_thresholds(d: usize) -> Result<(Surd, Surd)> {
    match d {
        4 => Ok((
            Surd::new(int(34), int(-12), int(5)),
            Surd::new(int(34), int(12), int(5)),
        )),
        5 => Ok((
            Surd::new(int(89), int(-60), int(2)),
            Surd::new(int(89), int(60), int(2)),
        )),
        _ => Err(Error::UnsupportedDegree(d)),
    }
}

pub fn admissible_b_interval(d: usize, c: &BigRational) -> Result<Option<BInterval>> {
    // Roots in b of D(G)/const: center ± coeff·√(radicand).
    let (center, coeff, radicand) = match d {
        4 => ((c - int(16)) / int(4), rat(6, 4), c - int(5)),
        5 => (
            (int(3) * c - int(67)) / int(27),
            rat(20, 27),
            int(3) * c - int(5),
        ),
        _ => return Err(Error::UnsupportedDegree(d)),
    };
    if !radicand.is_positive() {
        return Ok(None);
    }
    let upper = Surd::new(center.clone(), coeff.clone(), radicand.clone());
    if upper.signum() <= 0 {
        return Ok(None);
    }
    let lower = Surd::new(center, -coeff, radicand);
    let lower = (lower.signum() > 0).then_some(lower);
    Ok(Some(BInterval { lower, upper }))
}

/// Reduced-quadratic record for `δ = (1,b,c,b,1)` or `(1,b,c,c,b,1)`.
#[derive(Clone, Debug)]
pub struct QuarticAnalysis {
    pub b: BigRational,
    pub c: BigRational,
    pub d: usize,
    /// `[X², X, 1]` coefficients of `G(X)`.
    pub g_coeffs: [BigRational; 3],
    pub discriminant: BigRational,
    pub region: Region,
    /// Modulus of the complex roots of `G`.
    pub r: Option<f64>,
    /// Real part of the complex roots of `G`.
    pub r_cos_theta: Option<f64>,
    /// `√((r + r·cosθ)/2)`: the largest `|Re|` among the shifted roots.
    pub real_part_magnitude: Option<f64>,
    pub bound: f64,
    /// Exact `real_part_magnitude ≤ bound`; vacuously true in the real
    /// regime, false when inadmissible.
    pub pass: bool,
}

fn bound_surd_squared(d: usize) -> Surd {
    match d {
        // ((2√5 + 1)^{1/2} / 2)² = (1 + 2√5)/4
        4 => Surd::new(rat(1, 4), rat(1, 2), int(5)),
        // (2√14/7)² = 8/7
        _ => Surd::rational(rat(8, 7)),
    }
}

/// Decides `√modulus_sq + real ≤ 2·bound²` exactly.
fn magnitude_within_bound(modulus_sq: &BigRational, real: &BigRational, d: usize) -> bool {
    // (r + rc)/2 ≤ β²  ⟺  r ≤ 2β² − rc =: s, with r = √(modulus_sq).
    let s = bound_surd_squared(d).scale(&int(2)).add_rational(&-real);
    if s.signum() < 0 {
        return false;
    }
    // s² − modulus_sq ≥ 0, where s² = a² + b²n + 2ab√n
    let square = Surd::new(
        &s.rational * &s.rational + &s.coeff * &s.coeff * &s.radicand,
        int(2) * &s.rational * &s.coeff,
        s.radicand.clone(),
    );
    square.add_rational(&-modulus_sq).signum() >= 0
}

pub fn quartic_bound(d: usize) -> f64 {
    match d {
        4 => (2.0 * 5f64.sqrt() + 1.0).sqrt() / 2.0,
        _ => 2.0 * 14f64.sqrt() / 7.0,
    }
}

pub fn quartic_delta(b: &BigRational, c: &BigRational, d: usize) -> Result<Vec<BigRational>> {
    let one = int(1);
    match d {
        4 => Ok(vec![one.clone(), b.clone(), c.clone(), b.clone(), one]),
        5 => Ok(vec![
            one.clone(),
            b.clone(),
            c.clone(),
            c.clone(),
            b.clone(),
            one,
        ]),
        _ => Err(Error::UnsupportedDegree(d)),
    }
}

pub fn quartic_analysis(b: &BigRational, c: &BigRational, d: usize) -> Result<QuarticAnalysis> {
    let entries = quartic_delta(b, c, d)?;
    let f = crate::poly::from_delta_entries(&entries);
    let reduced = parity_reduce(&half_shift(&f))?.reduced;
    let g_coeffs = [reduced.coeff(2), reduced.coeff(1), reduced.coeff(0)];
    let [a2, a1, a0] = &g_coeffs;
    let discriminant = a1 * a1 - int(4) * a2 * a0;
    let bound = quartic_bound(d);

    let region = if b.is_negative() || c.is_negative() {
        Region::Inadmissible
    } else if !discriminant.is_negative() {
        Region::Real
    } else {
        let (_, split) = c_thresholds(d)?;
        if split.cmp_rational(c) == Ordering::Less {
            Region::SecondComplex
        } else {
            Region::FirstComplex
        }
    };

    let mut out = QuarticAnalysis {
        b: b.clone(),
        c: c.clone(),
        d,
        g_coeffs: g_coeffs.clone(),
        discriminant: discriminant.clone(),
        region,
        r: None,
        r_cos_theta: None,
        real_part_magnitude: None,
        bound,
        pass: region == Region::Real,
    };
    if region.is_complex() {
        let prec = 256;
        let modulus_sq = a0 / a2;
        let real = -a1 / (int(2) * a2);
        let r = BigFloat::from_rational(&modulus_sq, prec).sqrt();
        let rc = BigFloat::from_rational(&real, prec);
        let mag = (&r + &rc).mul_pow2(-1).sqrt();
        out.r = Some(r.to_f64());
        out.r_cos_theta = Some(rc.to_f64());
        out.real_part_magnitude = Some(mag.to_f64());
        out.pass = magnitude_within_bound(&modulus_sq, &real, d);
    }
    Ok(out)
}

/// Largest `|Re α + 1/2|` over the non-real roots of a root set.
pub fn max_nonreal_offset(rs: &RootSet) -> Option<f64> {
    rs.roots
        .iter()
        .filter(|r| !r.is_real_certified)
        .map(|r| (r.re.to_f64() + 0.5).abs())
        .reduce(f64::max)
}

/// Convenience: quartic analysis cross-checked against the root finder.
pub fn quartic_roots(
    b: &BigRational,
    c: &BigRational,
    d: usize,
    cfg: &SolverConfig,
) -> Result<RootSet> {
    let v = DeltaVector::new(quartic_delta(b, c, d)?)?;
    solve(&from_delta(&v), cfg)
}
