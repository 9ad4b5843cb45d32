//! Quadratic surds `a + b·√n` and exact roots of rational quadratics.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bigfloat::{BigComplex, BigFloat};
use crate::rational::{exact_sqrt, format_rational, int, rat};

/// `rational + coeff · √radicand` with `radicand ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub rational: BigRational,
    pub coeff: BigRational,
    pub radicand: BigRational,
}

fn sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl Surd {
    pub fn new(rational: BigRational, coeff: BigRational, radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "surd radicand must be nonnegative");
        if coeff.is_zero() || radicand.is_zero() {
            return Self::rational(rational);
        }
        if let Some(root) = exact_sqrt(&radicand) {
            return Self::rational(rational + coeff * root);
        }
        Surd {
            rational,
            coeff,
            radicand,
        }
    }

    pub fn rational(q: BigRational) -> Self {
        Surd {
            rational: q,
            coeff: BigRational::zero(),
            radicand: BigRational::zero(),
        }
    }

    /// `√q` for `q ≥ 0`.
    pub fn sqrt(q: BigRational) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), q)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeff.is_zero().then_some(&self.rational)
    }

    pub fn signum(&self) -> i32 {
        let sa = sign(&self.rational);
        let sb = sign(&self.coeff);
        if sb == 0 {
            return sa;
        }
        if sa * sb >= 0 {
            return if sa != 0 { sa } else { sb };
        }
        let a2 = &self.rational * &self.rational;
        let b2n = &self.coeff * &self.coeff * &self.radicand;
        match a2.cmp(&b2n) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn add_rational(&self, q: &BigRational) -> Self {
        Surd {
            rational: &self.rational + q,
            ..self.clone()
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.rational * k, &self.coeff * k, self.radicand.clone())
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        self.add_rational(&-q).signum().cmp(&0)
    }

    /// Exact comparison; the two surds must share a radicand unless one
    /// of them is rational.
    pub fn cmp_surd(&self, other: &Surd) -> Ordering {
        if let Some(q) = other.as_rational() {
            return self.cmp_rational(q);
        }
        if let Some(q) = self.as_rational() {
            return other.cmp_rational(q).reverse();
        }
        assert_eq!(
            self.radicand, other.radicand,
            "surds over different radicands"
        );
        Surd::new(
            &self.rational - &other.rational,
            &self.coeff - &other.coeff,
            self.radicand.clone(),
        )
        .signum()
        .cmp(&0)
    }

    pub fn to_bigfloat(&self, prec: u32) -> BigFloat {
        let a = BigFloat::from_rational(&self.rational, prec);
        if self.coeff.is_zero() {
            return a;
        }
        let root = BigFloat::from_rational(&self.radicand, prec).sqrt();
        &a + &(&BigFloat::from_rational(&self.coeff, prec) * &root)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_bigfloat(96).to_f64()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "{}", format_rational(&self.rational));
        }
        let mag = self.coeff.abs();
        let radicand = format_rational(&self.radicand);
        let radical = if mag.is_one() {
            format!("sqrt({radicand})")
        } else {
            format!("{}*sqrt({radicand})", format_rational(&mag))
        };
        let negative = self.coeff.is_negative();
        if self.rational.is_zero() {
            write!(f, "{}{radical}", if negative { "-" } else { "" })
        } else {
            let op = if negative { "-" } else { "+" };
            write!(f, "{} {op} {radical}", format_rational(&self.rational))
        }
    }
}

/// Roots `center ± (1/2)·√radicand` of a rational quadratic, where
/// `radicand = (a1² − 4·a2·a0) / a2²`. A negative radicand means the pair
/// is `center ± (1/2)·√(−radicand)·i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticRoots {
    pub center: BigRational,
    pub radicand: BigRational,
}

pub fn quadratic_roots_exact(
    a2: &BigRational,
    a1: &BigRational,
    a0: &BigRational,
) -> QuadraticRoots {
    assert!(
        !a2.is_zero(),
        "leading coefficient of a quadratic must be nonzero"
    );
    let disc = a1 * a1 - int(4) * a2 * a0;
    QuadraticRoots {
        center: -a1 / (int(2) * a2),
        radicand: disc / (a2 * a2),
    }
}

impl QuadraticRoots {
    /// Sign of the discriminant.
    pub fn discriminant_sign(&self) -> i32 {
        sign(&self.radicand)
    }

    pub fn is_real(&self) -> bool {
        !self.radicand.is_negative()
    }

    /// Half the distance between the roots (real case) or the modulus of the
    /// imaginary part (complex case).
    pub fn offset(&self) -> Surd {
        Surd::new(BigRational::zero(), rat(1, 2), self.radicand.abs())
    }

    /// `(smaller, larger)` when both roots are real.
    pub fn real_roots(&self) -> Option<(Surd, Surd)> {
        if !self.is_real() {
            return None;
        }
        let off = self.offset();
        Some((
            off.neg().add_rational(&self.center),
            off.add_rational(&self.center),
        ))
    }

    pub fn rational_roots(&self) -> Option<(BigRational, BigRational)> {
        let (lo, hi) = self.real_roots()?;
        Some((lo.as_rational()?.clone(), hi.as_rational()?.clone()))
    }

    /// Both roots at `prec` bits, lower (or negative imaginary part) first.
    pub fn to_complex(&self, prec: u32) -> [BigComplex; 2] {
        let center = BigFloat::from_rational(&self.center, prec);
        let off = self.offset().to_bigfloat(prec);
        if self.is_real() {
            [
                BigComplex::from_real(&center - &off),
                BigComplex::from_real(&center + &off),
            ]
        } else {
            [
                BigComplex::new(center.clone(), -&off),
                BigComplex::new(center, off),
            ]
        }
    }

    pub fn to_f64(&self) -> [(f64, f64); 2] {
        let [a, b] = self.to_complex(96);
        [a.to_f64(), b.to_f64()]
    }
}

impl fmt::Display for QuadraticRoots {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = format_rational(&self.center);
        if self.radicand.is_zero() {
            write!(f, "{c} (double)")
        } else if self.is_real() {
            write!(f, "{c} ± (1/2)sqrt({})", format_rational(&self.radicand))
        } else {
            write!(f, "{c} ± (1/2)sqrt({})i", format_rational(&-&self.radicand))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surd_signs() {
        // 34 − 12√5 ≈ 7.167
        let t = Surd::new(int(34), int(-12), int(5));
        assert_eq!(t.signum(), 1);
        assert_eq!(t.cmp_rational(&int(7)), Ordering::Greater);
        assert_eq!(t.cmp_rational(&rat(717, 100)), Ordering::Less);
        assert!((t.to_f64() - (34.0 - 12.0 * 5f64.sqrt())).abs() < 1e-12);
        // 3 − √9 collapses to 0
        assert_eq!(Surd::new(int(3), int(-1), int(9)).signum(), 0);
        let lo = Surd::new(int(1), int(-1), int(2));
        let hi = Surd::new(int(1), int(1), int(2));
        assert_eq!(lo.cmp_surd(&hi), Ordering::Less);
    }

    #[test]
    fn quadratic_examples() {
        // (b+2, b+2, 2) at b = 7
        let r = quadratic_roots_exact(&int(9), &int(9), &int(2));
        assert_eq!(r.rational_roots(), Some((rat(-2, 3), rat(-1, 3))));
        // b = 1: −1/2 ± (1/2)√(5/3) i
        let r = quadratic_roots_exact(&int(3), &int(3), &int(2));
        assert!(!r.is_real());
        assert_eq!(r.center, rat(-1, 2));
        assert_eq!(r.radicand, rat(-5, 3));
        let r = quadratic_roots_exact(&int(1), &int(0), &int(-1));
        assert_eq!(r.rational_roots(), Some((int(-1), int(1))));
        assert_eq!(r.to_string(), "0 ± (1/2)sqrt(4)");
    }

    #[test]
    fn surd_display() {
        assert_eq!(
            Surd::new(int(-1), int(6), int(95))
                .scale(&rat(1, 4))
                .to_string(),
            "-1/4 + 3/2*sqrt(95)"
        );
        assert_eq!(Surd::sqrt(int(2)).to_string(), "sqrt(2)");
    }
}
