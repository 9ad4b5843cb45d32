//! Exact polynomials over the rationals and their δ-vector coordinates.
//!
//! A δ-vector `(δ_0, …, δ_d)` describes the polynomial
//! `f(n) = Σ_j δ_j · C(n + d − j, d)`. When the vector is symmetric the
//! polynomial satisfies `f(n) = (−1)^d f(−n − 1)`, so its roots are
//! mirrored across the line `Re z = −1/2`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bigfloat::{BigComplex, BigFloat};
use crate::error::{Error, Result};
use crate::rational::{binomial, common_denominator, factorial, format_rational, int, rat};

/// Nonnegative rational coordinates in the shifted binomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaVector {
    entries: Vec<BigRational>,
    symmetric: bool,
}

impl DeltaVector {
    pub fn new(entries: Vec<BigRational>) -> Result<Self> {
        validate_delta(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Result<Self> {
        validate_delta(entries.iter().map(|&e| int(e)).collect())
    }

    pub fn degree(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }
}

impl fmt::Display for DeltaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn validate_delta(entries: Vec<BigRational>) -> Result<DeltaVector> {
    if entries.is_empty() {
        return Err(Error::EmptyDelta);
    }
    if let Some((index, value)) = entries.iter().enumerate().find(|(_, e)| e.is_negative()) {
        return Err(Error::NegativeEntry {
            index,
            value: format_rational(value),
        });
    }
    if entries.iter().all(Zero::is_zero) {
        return Err(Error::AllZero);
    }
    let d = entries.len() - 1;
    let symmetric = (0..=d / 2).all(|i| entries[i] == entries[d - i]);
    Ok(DeltaVector { entries, symmetric })
}

/// Power-basis polynomial with rational coefficients, constant term first.
///
/// Trailing zeros are always trimmed, so the last stored coefficient is
/// the leading one. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `n + c`
    pub fn linear(c: BigRational) -> Self {
        Self::new(vec![c, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Sign of `p(x)` as -1, 0 or 1.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Horner evaluation at `z` with every coefficient rounded to `prec` bits.
    pub fn eval_complex(&self, z: &BigComplex, prec: u32) -> BigComplex {
        let mut acc = BigComplex::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = &acc * z;
            acc.re = &acc.re + &BigFloat::from_rational(c, prec);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return (Self::zero(), self.clone());
        }
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    /// Same polynomial scaled to coprime integer coefficients with the sign
    /// of the leading coefficient kept.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let ints = self.integer_coefficients();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Self::new(
            ints.into_iter()
                .map(|c| BigRational::from_integer(c / &content))
                .collect(),
        )
    }

    /// Coefficients multiplied by the common denominator.
    pub fn integer_coefficients(&self) -> Vec<BigInt> {
        let den = common_denominator(&self.coeffs);
        self.coeffs
            .iter()
            .map(|c| (c * &den).to_integer())
            .collect()
    }

    /// `self(scale·n + shift)`
    pub fn compose_linear(&self, scale: &BigRational, shift: &BigRational) -> Self {
        let inner = Self::new(vec![shift.clone(), scale.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &inner) + &Self::constant(c.clone())
        })
    }

    /// Squarefree decomposition `p = lc · Π q_i^i` (Yun). Returns the
    /// nonconstant monic factors `q_i` paired with their multiplicity `i`.
    pub fn squarefree_factors(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let p = self.monic();
        let dp = p.derivative();
        let mut a = p.gcd(&dp);
        let mut b = p.div_rem(&a).0;
        let mut c = dp.div_rem(&a).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree() > 0 {
            a = b.gcd(&d);
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            if a.degree() > 0 {
                out.push((a.monic(), i));
            }
            i += 1;
        }
        out
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Cauchy bound `1 + max |a_i / a_d|`; every root has modulus below it.
    pub fn cauchy_bound(&self) -> BigRational {
        let lead = self.leading().abs();
        let max = self.coeffs[..self.degree()]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(BigRational::zero);
        max + BigRational::one()
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = format_rational(&c.abs());
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "({mag})n")?,
                _ => write!(f, "({mag})n^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

/// `Π_{j=0}^{len-1} (n + top − j)`
fn falling_product(top: &BigRational, len: usize) -> RationalPolynomial {
    (0..len).fold(
        RationalPolynomial::constant(BigRational::one()),
        |acc, j| &acc * &RationalPolynomial::linear(top - int(j as i64)),
    )
}

/// `C(n + shift, d)` as a polynomial in `n`.
pub fn binomial_basis(shift: i64, d: usize) -> RationalPolynomial {
    falling_product(&int(shift), d).scale(&BigRational::new(BigInt::one(), factorial(d)))
}

/// `Σ_j δ_j · C(n + d − j, d)` expanded in the power basis.
pub fn from_delta(v: &DeltaVector) -> RationalPolynomial {
    from_delta_entries(v.entries())
}

/// Same expansion for an unvalidated coordinate sequence.
pub fn from_delta_entries(entries: &[BigRational]) -> RationalPolynomial {
    let d = entries.len() - 1;
    let mut sum = RationalPolynomial::zero();
    for (j, delta) in entries.iter().enumerate() {
        if delta.is_zero() {
            continue;
        }
        sum = &sum + &falling_product(&int((d - j) as i64), d).scale(delta);
    }
    sum.scale(&BigRational::new(BigInt::one(), factorial(d)))
}

/// Inverse of [`from_delta`] for a polynomial of degree `p.degree()`.
pub fn delta_from_polynomial(p: &RationalPolynomial) -> Vec<BigRational> {
    delta_from_polynomial_with_degree(p, p.degree())
}

/// Coordinates of `p` in the degree-`d` binomial basis: the first `d + 1`
/// coefficients of `(1 − λ)^{d+1} Σ_n p(n) λ^n`, which only involve
/// `p(0), …, p(d)`.
pub fn delta_from_polynomial_with_degree(p: &RationalPolynomial, d: usize) -> Vec<BigRational> {
    let values: Vec<BigRational> = (0..=d).map(|n| p.eval(&int(n as i64))).collect();
    (0..=d)
        .map(|j| {
            (0..=j).fold(BigRational::zero(), |acc, i| {
                let term = &values[j - i] * BigRational::from_integer(binomial(d + 1, i));
                if i % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

/// `N_i(n)`: the pair of products attached to `δ_i = δ_{d−i}`, or the lone
/// middle product when `d` is even and `i = d/2`.
pub fn symmetric_basis(d: usize, i: usize) -> Result<RationalPolynomial> {
    if d == 0 || i > d / 2 {
        return Err(Error::IndexOutOfRange {
            degree: d,
            index: i,
        });
    }
    let upper = falling_product(&int((d - i) as i64), d);
    if d.is_multiple_of(2) && i == d / 2 {
        return Ok(upper);
    }
    Ok(&upper + &falling_product(&int(i as i64), d))
}

/// `(−1)^d · p(−n − 1)`
pub fn reflect(p: &RationalPolynomial) -> RationalPolynomial {
    let r = p.compose_linear(&int(-1), &int(-1));
    if p.degree().is_multiple_of(2) {
        r
    } else {
        -&r
    }
}

pub fn check_functional_equation(p: &RationalPolynomial) -> bool {
    reflect(p) == *p
}

/// `d! · p(n − 1/2)`
pub fn half_shift(p: &RationalPolynomial) -> RationalPolynomial {
    let d = p.degree();
    p.compose_linear(&BigRational::one(), &rat(-1, 2))
        .scale(&BigRational::from_integer(factorial(d)))
}

/// An even or odd polynomial rewritten through `X = n²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityReduction {
    /// `G(X)` with `g(n) = G(n²)` (even) or `g(n) = n · G(n²)` (odd).
    pub reduced: RationalPolynomial,
    pub odd: bool,
    /// The factor divided out before reducing: `n` for odd input.
    pub extracted_factor: Option<RationalPolynomial>,
}

pub fn parity_reduce(g: &RationalPolynomial) -> Result<ParityReduction> {
    let odd = g.degree() % 2 == 1;
    let bad: Vec<usize> = g
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(k, c)| (k % 2 == 1) != odd && !c.is_zero())
        .map(|(k, _)| k)
        .collect();
    if !bad.is_empty() {
        return Err(Error::ParityViolation(format!(
            "degree {} polynomial has nonzero coefficients at n^{:?}",
            g.degree(),
            bad
        )));
    }
    let offset = usize::from(odd);
    let reduced =
        RationalPolynomial::new(g.coeffs().iter().skip(offset).step_by(2).cloned().collect());
    Ok(ParityReduction {
        reduced,
        odd,
        extracted_factor: odd.then(|| RationalPolynomial::from_ints(&[0, 1])),
    })
}
