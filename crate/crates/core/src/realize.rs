//! SSNN polynomials with a prescribed real root.
//!
//! Even `d = 2k`: `f₀ = C(n+k+1,d) + a·C(n+k,d) + C(n+k−1,d)`, whose
//! remaining quadratic factor is `(a+2)n² + (a+2)n + ak(1−k) + 2k²`.
//! Odd `d = 2k+1`: `f₁ = C(n+k+2,d) + a·C(n+k+1,d) + a·C(n+k,d) + C(n+k−1,d)`
//! with quadratic factor `(a+1)n² + (a+1)n + ak(1−k) + 3k(k+1)`.
//! Above the parameter threshold both quadratics have real roots
//! `−1/2 ± h(a)`, and `h` sweeps `[0, k − 1/2)` as `a` grows.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{
    binomial_basis, delta_from_polynomial_with_degree, DeltaVector, RationalPolynomial,
};
use crate::radical::{quadratic_roots_exact, QuadraticRoots, Surd};
use crate::rational::{format_rational, int, rat};

#[derive(Clone, Debug)]
pub struct RealizationPlan {
    pub d: usize,
    pub k: usize,
    pub odd: bool,
    pub a: BigRational,
    pub delta: DeltaVector,
    /// `[n², n, 1]` coefficients of the quadratic factor.
    pub reduced_quadratic: [BigRational; 3],
    pub realized_offset: Surd,
}

fn half_k(d: usize) -> Result<usize> {
    if d < 2 {
        return Err(Error::UnsupportedDegree(d));
    }
    Ok(d / 2)
}

/// Smallest `a` for which the quadratic factor has real roots.
pub fn threshold(d: usize) -> Result<BigRational> {
    let k = half_k(d)? as i64;
    Ok(if d.is_multiple_of(2) {
        rat(2 * (2 * k + 1), 2 * k - 1)
    } else {
        rat(12 * k * k + 12 * k - 1, (2 * k - 1) * (2 * k - 1))
    })
}

/// `f₀` or `f₁` summed directly from binomial polynomials.
pub fn family_polynomial(d: usize, a: &BigRational) -> Result<RationalPolynomial> {
    let k = half_k(d)? as i64;
    let terms: Vec<(i64, BigRational)> = if d.is_multiple_of(2) {
        vec![(k + 1, int(1)), (k, a.clone()), (k - 1, int(1))]
    } else {
        vec![
            (k + 2, int(1)),
            (k + 1, a.clone()),
            (k, a.clone()),
            (k - 1, int(1)),
        ]
    };
    Ok(terms
        .iter()
        .fold(RationalPolynomial::zero(), |acc, (shift, coeff)| {
            &acc + &binomial_basis(*shift, d).scale(coeff)
        }))
}

/// `Π_{j=2−k}^{k−1} (n + j)`, times `(2n + 1)` for odd `d`.
pub fn extracted_factor(d: usize) -> Result<RationalPolynomial> {
    let k = half_k(d)? as i64;
    let mut out = RationalPolynomial::from_ints(&[1]);
    for j in (2 - k)..=(k - 1) {
        out = &out * &RationalPolynomial::from_ints(&[j, 1]);
    }
    if d % 2 == 1 {
        out = &out * &RationalPolynomial::from_ints(&[1, 2]);
    }
    Ok(out)
}

pub fn construct(d: usize, a: &BigRational) -> Result<RealizationPlan> {
    let k = half_k(d)?;
    let min = threshold(d)?;
    if a < &min {
        return Err(Error::ParameterBelowThreshold {
            a: format_rational(a),
            threshold: format_rational(&min),
        });
    }
    let f = family_polynomial(d, a)?;
    // Coordinates read off the polynomial itself rather than assumed.
    let delta = DeltaVector::new(delta_from_polynomial_with_degree(&f, d))?;
    debug_assert!(delta.is_symmetric());

    let ki = int(k as i64);
    let base = -(a * &ki * (&ki - int(1)));
    let reduced_quadratic = if d.is_multiple_of(2) {
        let lead = a + int(2);
        [lead.clone(), lead, base + int(2) * &ki * &ki]
    } else {
        let lead = a + int(1);
        [lead.clone(), lead, base + int(3) * &ki * (&ki + int(1))]
    };
    let roots = quadratic_roots_exact(
        &reduced_quadratic[0],
        &reduced_quadratic[1],
        &reduced_quadratic[2],
    );
    Ok(RealizationPlan {
        d,
        k,
        odd: d % 2 == 1,
        a: a.clone(),
        delta,
        realized_offset: roots.offset(),
        reduced_quadratic,
    })
}

/// Roots `−1/2 ± h(a)` of the plan's quadratic factor.
pub fn realized_roots_exact(plan: &RealizationPlan) -> QuadraticRoots {
    let [a2, a1, a0] = &plan.reduced_quadratic;
    quadratic_roots_exact(a2, a1, a0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParameterSolution {
    /// Build the family polynomial with this `a`.
    Parameter(BigRational),
    /// The target is an end of the interval; this vector has it as a root.
    Boundary { delta: DeltaVector, label: String },
}

impl fmt::Display for ParameterSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParameterSolution::Parameter(a) => write!(f, "a = {}", format_rational(a)),
            ParameterSolution::Boundary { label, .. } => write!(f, "boundary: {label}"),
        }
    }
}

/// `[−⌊d/2⌋, ⌊d/2⌋ − 1]`
pub fn realizable_interval(d: usize) -> Result<(BigRational, BigRational)> {
    let k = half_k(d)? as i64;
    Ok((int(-k), int(k - 1)))
}

/// Parameter `a` whose family polynomial has `target` as a root.
pub fn solve_parameter(d: usize, target: &BigRational) -> Result<ParameterSolution> {
    let (lo, hi) = realizable_interval(d)?;
    if target < &lo || target > &hi {
        return Err(Error::TargetOutOfRange {
            target: format_rational(target),
            lo: format_rational(&lo),
            hi: format_rational(&hi),
        });
    }
    let k = half_k(d)?;
    if target == &lo || target == &hi {
        let mut entries = vec![0i64; d + 1];
        let label = if d.is_multiple_of(2) {
            // C(n+k, d)
            entries[d - k] = 1;
            format!("C(n+{k},{d})")
        } else {
            // C(n+k+1, d) + C(n+k, d)
            entries[d - k - 1] = 1;
            entries[d - k] = 1;
            format!("C(n+{},{d}) + C(n+{k},{d})", k + 1)
        };
        return Ok(ParameterSolution::Boundary {
            delta: DeltaVector::from_ints(&entries)?,
            label,
        });
    }
    let ki = int(k as i64);
    let t = (target + rat(1, 2)).abs();
    let t2 = &t * &t;
    let two_k_minus_1 = int(2) * &ki - int(1);
    let den = &two_k_minus_1 * &two_k_minus_1 - int(4) * &t2;
    let num = if d.is_multiple_of(2) {
        int(8) * &t2 + int(2) * (int(4) * &ki * &ki - int(1))
    } else {
        int(4) * &t2 + int(12) * &ki * &ki + int(12) * &ki - int(1)
    };
    debug_assert!(!den.is_zero());
    Ok(ParameterSolution::Parameter(num / den))
}

/// Floating-point inversion for irrational targets; the result is
/// approximate.
pub fn solve_parameter_approx(d: usize, target: f64) -> Result<f64> {
    let k = half_k(d)? as f64;
    if !(target > -k && target < k - 1.0) {
        return Err(Error::TargetOutOfRange {
            target: target.to_string(),
            lo: (-k).to_string(),
            hi: (k - 1.0).to_string(),
        });
    }
    let t2 = (target + 0.5).powi(2);
    let den = (2.0 * k - 1.0).powi(2) - 4.0 * t2;
    let num = if d.is_multiple_of(2) {
        8.0 * t2 + 2.0 * (4.0 * k * k - 1.0)
    } else {
        4.0 * t2 + 12.0 * k * k + 12.0 * k - 1.0
    };
    Ok(num / den)
}
