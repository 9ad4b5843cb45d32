//! Binary floating point with a configurable mantissa width.
//!
//! A [`BigFloat`] stores `mantissa * 2^exponent` with `|mantissa| < 2^prec`.
//! Every arithmetic result is rounded to nearest at the wider precision of
//! its operands. [`BigComplex`] pairs two of them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn bit_len(m: &BigInt) -> i64 {
    m.bits() as i64
}

/// Rounds `m` to at most `prec` significant bits, returning the shift applied.
fn round_mantissa(m: BigInt, prec: u32) -> (BigInt, i64) {
    let bits = bit_len(&m);
    let excess = bits - prec as i64;
    if excess <= 0 {
        return (m, 0);
    }
    let negative = m.is_negative();
    let mag = if negative { -m } else { m };
    let half = BigInt::one() << (excess - 1) as usize;
    let mut mag = (mag + half) >> excess as usize;
    let mut shift = excess;
    // Rounding can carry into a new top bit.
    if bit_len(&mag) > prec as i64 {
        mag >>= 1usize;
        shift += 1;
    }
    (if negative { -mag } else { mag }, shift)
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_parts(BigInt::one(), 0, prec)
    }

    /// `mant * 2^exp`, rounded to `prec` bits.
    pub fn from_parts(mant: BigInt, exp: i64, prec: u32) -> Self {
        assert!(prec >= 2, "precision must be at least 2 bits");
        if mant.is_zero() {
            return Self::zero(prec);
        }
        let (mant, shift) = round_mantissa(mant, prec);
        BigFloat {
            mant,
            exp: exp + shift,
            prec,
        }
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Self::from_parts(BigInt::from(v), 0, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Self::from_parts(v.clone(), 0, prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        if q.is_zero() {
            return Self::zero(prec);
        }
        let num = q.numer();
        let den = q.denom();
        let shift = prec as i64 + 2 + bit_len(den) - bit_len(num);
        let mant = if shift >= 0 {
            (num << shift as usize).div_floor(den)
        } else {
            num.div_floor(&(den << (-shift) as usize))
        };
        Self::from_parts(mant, -shift, prec)
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        assert!(x.is_finite(), "cannot convert a non-finite f64");
        if x == 0.0 {
            return Self::zero(prec);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & 0x000f_ffff_ffff_ffff;
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1 << 52), raw_exp - 1075)
        };
        Self::from_parts(BigInt::from(m) * sign, e, prec)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        Self::from_parts(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Multiplies by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat {
            mant: self.mant.clone(),
            exp: self.exp + k,
            prec: self.prec,
        }
    }

    /// Binary exponent of the leading bit plus one; `None` for zero.
    /// For nonzero `x`, `2^(magnitude-1) <= |x| < 2^magnitude`.
    pub fn magnitude(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + bit_len(&self.mant))
        }
    }

    /// `log2 |x|` in double precision; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = bit_len(&self.mant);
        let drop = (bits - 53).max(0);
        let top = (self.mant.abs() >> drop as usize)
            .to_f64()
            .expect("53-bit value");
        top.log2() + (self.exp + drop) as f64
    }

    pub fn recip(&self) -> Self {
        BigFloat::one(self.prec).div(self)
    }

    pub fn div(&self, rhs: &BigFloat) -> Self {
        assert!(!rhs.is_zero(), "BigFloat division by zero");
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return Self::zero(prec);
        }
        let shift = (prec as i64 + 2 + bit_len(&rhs.mant) - bit_len(&self.mant)).max(0);
        let q = (&self.mant << shift as usize) / &rhs.mant;
        Self::from_parts(q, self.exp - rhs.exp - shift, prec)
    }

    pub fn sqrt(&self) -> Self {
        assert!(self.signum() >= 0, "square root of a negative BigFloat");
        if self.is_zero() {
            return self.clone();
        }
        let want = 2 * self.prec as i64 + 4;
        let mut shift = (want - bit_len(&self.mant)).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let root = (&self.mant << shift as usize).sqrt();
        Self::from_parts(root, (self.exp - shift) / 2, self.prec)
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Fixed-point decimal with `digits` places, rounded half away from zero.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scaled =
            self.to_rational() * BigRational::from_integer(BigInt::from(10).pow(digits as u32));
        let n = scaled.round().to_integer();
        let neg = n.is_negative();
        let s = n.abs().to_string();
        let s = if s.len() <= digits {
            format!("{}{s}", "0".repeat(digits + 1 - s.len()))
        } else {
            s
        };
        let (int_part, frac) = s.split_at(s.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    }

    /// Decimal places that the mantissa width supports.
    pub fn decimal_digits(&self) -> usize {
        (self.prec as f64 * std::f64::consts::LOG10_2).floor() as usize
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = bit_len(&self.mant);
        let (m, e) = if bits > 62 {
            let (m, s) = round_mantissa(self.mant.clone(), 62);
            (m, self.exp + s)
        } else {
            (self.mant.clone(), self.exp)
        };
        let m = m.to_i64().expect("62-bit mantissa fits i64") as f64;
        scale_pow2(m, e)
    }

    fn exact_cmp(&self, other: &BigFloat) -> Ordering {
        match (self.signum(), other.signum()) {
            (a, b) if a != b => return a.cmp(&b),
            (0, 0) => return Ordering::Equal,
            _ => {}
        }
        let (ma, mb) = (self.magnitude(), other.magnitude());
        if ma != mb {
            let by_size = ma.cmp(&mb);
            return if self.signum() > 0 {
                by_size
            } else {
                by_size.reverse()
            };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }

    fn add_impl(&self, rhs: &BigFloat, negate_rhs: bool) -> BigFloat {
        let prec = self.prec.max(rhs.prec);
        let rhs_mant = if negate_rhs {
            -&rhs.mant
        } else {
            rhs.mant.clone()
        };
        if rhs.is_zero() {
            return self.with_precision(prec);
        }
        if self.is_zero() {
            return Self::from_parts(rhs_mant, rhs.exp, prec);
        }
        let top_a = self.exp + bit_len(&self.mant);
        let top_b = rhs.exp + bit_len(&rhs.mant);
        let guard = prec as i64 + 3;
        if top_a - top_b > guard {
            return self.with_precision(prec);
        }
        if top_b - top_a > guard {
            return Self::from_parts(rhs_mant, rhs.exp, prec);
        }
        let e = self.exp.min(rhs.exp);
        let m = (&self.mant << (self.exp - e) as usize) + (rhs_mant << (rhs.exp - e) as usize);
        Self::from_parts(m, e, prec)
    }
}

fn scale_pow2(m: f64, e: i64) -> f64 {
    let mut v = m;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
        if v.is_infinite() {
            return v;
        }
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
        if v == 0.0 {
            return v;
        }
    }
    v * 2f64.powi(e as i32)
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.exact_cmp(other) == Ordering::Equal
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.exact_cmp(other))
    }
}

impl Add for &BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: &BigFloat) -> BigFloat {
        self.add_impl(rhs, false)
    }
}

impl Sub for &BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: &BigFloat) -> BigFloat {
        self.add_impl(rhs, true)
    }
}

impl Mul for &BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: &BigFloat) -> BigFloat {
        let prec = self.prec.max(rhs.prec);
        BigFloat::from_parts(&self.mant * &rhs.mant, self.exp + rhs.exp, prec)
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// Complex number over [`BigFloat`].
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex::new(BigFloat::zero(prec), BigFloat::zero(prec))
    }

    pub fn from_real(re: BigFloat) -> Self {
        let prec = re.precision();
        BigComplex::new(re, BigFloat::zero(prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        BigComplex::new(BigFloat::from_f64(re, prec), BigFloat::from_f64(im, prec))
    }

    pub fn precision(&self) -> u32 {
        self.re.precision().max(self.im.precision())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> BigFloat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn norm(&self) -> BigFloat {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: &BigFloat) -> Self {
        BigComplex::new(&self.re * k, &self.im * k)
    }

    pub fn div(&self, rhs: &BigComplex) -> Self {
        let den = rhs.norm_sqr();
        let re = &(&self.re * &rhs.re) + &(&self.im * &rhs.im);
        let im = &(&self.im * &rhs.re) - &(&self.re * &rhs.im);
        BigComplex::new(re.div(&den), im.div(&den))
    }

    pub fn recip(&self) -> Self {
        BigComplex::from_real(BigFloat::one(self.precision())).div(self)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        BigComplex::new(re, im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_round_trip_is_close() {
        let x = BigFloat::from_rational(&q(1, 3), 128);
        let err = (x.to_rational() - q(1, 3)).abs();
        assert!(err < BigRational::new(1.into(), BigInt::one() << 127usize));
        assert!((x.to_f64() - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn decimal_strings() {
        assert_eq!(BigFloat::from_f64(-0.375, 64).to_decimal(2), "-0.38");
        assert_eq!(BigFloat::from_f64(12.5, 64).to_decimal(0), "13");
        assert_eq!(BigFloat::from_f64(0.0625, 64).to_decimal(3), "0.063");
        let third = BigFloat::from_rational(&BigRational::new(1.into(), 3.into()), 128);
        assert_eq!(third.to_decimal(30), format!("0.{}", "3".repeat(30)));
        assert_eq!(third.decimal_digits(), 38);
    }

    #[test]
    fn sqrt_two_matches_f64() {
        let two = BigFloat::from_int(2, 200);
        let r = two.sqrt();
        assert!((r.to_f64() - 2f64.sqrt()).abs() < 1e-15);
        let sq = &r * &r;
        let diff = (&sq - &two).abs();
        assert!(diff.magnitude().is_none_or(|m| m < -195));
    }

    #[test]
    fn cancellation_and_ordering() {
        let a = BigFloat::from_f64(1.5, 64);
        let b = BigFloat::from_f64(1.25, 64);
        assert_eq!((&a - &b).to_f64(), 0.25);
        assert!(a > b);
        assert!(-&a < b);
        assert_eq!(&a - &a, BigFloat::zero(64));
        let tiny = BigFloat::from_f64(1e-300, 64);
        assert_eq!((&a + &tiny).to_f64(), 1.5);
    }

    #[test]
    fn rounding_carry_keeps_width() {
        // 2^8 - 1 rounded to 4 bits carries into 2^8.
        let x = BigFloat::from_parts(BigInt::from(255), 0, 4);
        assert_eq!(x.to_f64(), 256.0);
        assert!(x.mant.bits() <= 4);
    }

    #[test]
    fn complex_division_inverts_multiplication() {
        let a = BigComplex::from_f64(1.0, 2.0, 128);
        let b = BigComplex::from_f64(-3.0, 0.5, 128);
        let back = (&a * &b).div(&b);
        let (re, im) = back.to_f64();
        assert!((re - 1.0).abs() < 1e-30 && (im - 2.0).abs() < 1e-30);
        assert!((a.norm().to_f64() - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn f64_extremes() {
        for x in [f64::MIN_POSITIVE, 1e-310, 1e300, -7.25] {
            assert_eq!(BigFloat::from_f64(x, 64).to_f64(), x);
        }
    }
}
