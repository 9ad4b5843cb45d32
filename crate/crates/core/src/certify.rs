//! Exact real-root counting with Sturm sequences.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::analysis::{BoundCheck, BoundKind, Violator};
use crate::error::{Error, Result};
use crate::poly::{from_delta, DeltaVector, RationalPolynomial};
use crate::rational::int;

/// `p, p', −rem(p, p'), …` built on the squarefree part of the input.
///
/// Each element is stored as its primitive integer multiple, which
/// rescales the negated-remainder recurrence by positive constants only
/// and leaves every sign pattern intact.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<RationalPolynomial>,
    had_repeated_roots: bool,
}

impl SturmChain {
    pub fn polynomials(&self) -> &[RationalPolynomial] {
        &self.polys
    }

    /// Whether the input had to be reduced to its squarefree part.
    pub fn had_repeated_roots(&self) -> bool {
        self.had_repeated_roots
    }

    pub fn base(&self) -> &RationalPolynomial {
        &self.polys[0]
    }

    /// Sign changes of the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &BigRational) -> usize {
        count_changes(self.polys.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        count_changes(self.polys.iter().map(|p| {
            let s = if p.leading() > BigRational::zero() {
                1
            } else {
                -1
            };
            if positive || p.degree() % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Number of distinct real roots on the whole line.
    pub fn total_real_roots(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

fn count_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

pub fn sturm_sequence(p: &RationalPolynomial) -> SturmChain {
    assert!(p.degree() >= 1, "Sturm sequence of a constant");
    let base = p.squarefree_part();
    let had_repeated_roots = base.degree() < p.degree();
    let mut polys = vec![base.primitive_part(), base.derivative().primitive_part()];
    loop {
        let n = polys.len();
        let (_, rem) = polys[n - 2].div_rem(&polys[n - 1]);
        if rem.is_zero() {
            break;
        }
        polys.push((-&rem).primitive_part());
    }
    SturmChain {
        polys,
        had_repeated_roots,
    }
}

/// Distinct real roots in the half-open interval `(lo, hi]`.
///
/// Endpoints may themselves be roots: with zeros skipped the variation
/// count at a root equals the count just to its right, so a root at `lo`
/// is excluded and a root at `hi` is included.
pub fn count_real_roots(chain: &SturmChain, lo: &BigRational, hi: &BigRational) -> usize {
    if lo >= hi {
        return 0;
    }
    chain.variations(lo) - chain.variations(hi)
}

/// `⌊d/2⌋` strip `[−⌊d/2⌋, ⌊d/2⌋ − 1]`. For `d = 1` the floor form is
/// empty, so the half-strip point `[−1/2, −1/2]` is used instead.
pub fn floor_strip(d: usize) -> (BigRational, BigRational) {
    if d == 1 {
        let half = BigRational::new((-1).into(), 2.into());
        return (half.clone(), half);
    }
    let k = (d / 2) as i64;
    (int(-k), int(k - 1))
}

/// Certifies, in exact arithmetic, that every real root of the SSNN
/// polynomial of `v` lies in the floor strip. Roots on the strip
/// boundary are allowed.
pub fn certify_real_strip(v: &DeltaVector) -> Result<BoundCheck> {
    if !v.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let p = from_delta(v);
    let chain = sturm_sequence(&p);
    let (lo, hi) = floor_strip(v.degree());
    let outer = p.cauchy_bound() + BigRational::one();
    let neg_outer = -&outer;

    let mut violators = Vec::new();
    let below = count_real_roots(&chain, &neg_outer, &lo) - usize::from(p.sign_at(&lo) == 0);
    if below > 0 {
        violators.push(Violator::RealRoots {
            lo: neg_outer.clone(),
            hi: lo.clone(),
            count: below,
        });
    }
    let above = count_real_roots(&chain, &hi, &outer);
    if above > 0 {
        violators.push(Violator::RealRoots {
            lo: hi.clone(),
            hi: outer,
            count: above,
        });
    }
    Ok(BoundCheck {
        kind: BoundKind::FloorStrip,
        lower: Some(lo),
        upper: Some(hi),
        radius: None,
        margins: Vec::new(),
        pass: violators.is_empty(),
        violators,
        extrapolated: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::binomial_basis;

    #[test]
    fn simple_counts() {
        let chain = sturm_sequence(&RationalPolynomial::from_ints(&[-1, 0, 1]));
        assert_eq!(chain.variations(&int(-2)) - chain.variations(&int(2)), 2);
        let chain = sturm_sequence(&binomial_basis(2, 2));
        assert_eq!(count_real_roots(&chain, &int(-3), &int(0)), 2);
        // roots −2 and −1: (−2, −1] holds only −1
        assert_eq!(count_real_roots(&chain, &int(-2), &int(-1)), 1);
        assert_eq!(chain.total_real_roots(), 2);
    }

    #[test]
    fn dim2_b7_has_two_real_roots_in_unit_interval() {
        let p = from_delta(&DeltaVector::from_ints(&[1, 7, 1]).unwrap());
        let chain = sturm_sequence(&p);
        assert_eq!(count_real_roots(&chain, &int(-1), &int(0)), 2);
    }

    #[test]
    fn counterexample_has_no_real_roots() {
        let p = from_delta(&DeltaVector::from_ints(&[1, 0, 0, 0, 14, 0, 0, 0, 1]).unwrap());
        let chain = sturm_sequence(&p);
        assert_eq!(count_real_roots(&chain, &int(-100), &int(100)), 0);
        assert_eq!(chain.total_real_roots(), 0);
    }

    #[test]
    fn repeated_roots_are_counted_once() {
        // (n + 1/2)² · (n − 3)
        let a = RationalPolynomial::from_ints(&[1, 2]);
        let p = &(&a * &a) * &RationalPolynomial::from_ints(&[-3, 1]);
        let chain = sturm_sequence(&p);
        assert!(chain.had_repeated_roots());
        assert_eq!(chain.total_real_roots(), 2);
    }

    #[test]
    fn boundary_binomial_passes() {
        // C(n+k, d) with d = 2k has its roots exactly at −k, …, k−1.
        for k in 1..6usize {
            let d = 2 * k;
            let mut e = vec![0i64; d + 1];
            e[k] = 1;
            let check = certify_real_strip(&DeltaVector::from_ints(&e).unwrap()).unwrap();
            assert!(check.pass, "k = {k}");
        }
    }

    #[test]
    fn real_strip_rejects_asymmetric_input() {
        assert!(matches!(
            certify_real_strip(&DeltaVector::from_ints(&[1, 2, 0]).unwrap()),
            Err(Error::NotSymmetric)
        ));
    }
}
