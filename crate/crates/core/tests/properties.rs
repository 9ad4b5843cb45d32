use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use ssnn::analysis::{admissible_b_interval, quartic_analysis, Region};
use ssnn::certify::{count_real_roots, sturm_sequence};
use ssnn::poly::{
    delta_from_polynomial, from_delta_entries, half_shift, parity_reduce, reflect, symmetric_basis,
    RationalPolynomial,
};
use ssnn::realize::{construct, extracted_factor, threshold};
use ssnn::roots::{solve, SolverConfig};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn entry() -> impl Strategy<Value = BigRational> {
    prop_oneof![Just(0i64), 0i64..40].prop_flat_map(|n| (1i64..6).prop_map(move |d| rat(n, d)))
}

fn delta(max_d: usize) -> impl Strategy<Value = Vec<BigRational>> {
    (1..=max_d)
        .prop_flat_map(|d| prop::collection::vec(entry(), d + 1))
        .prop_filter("not all zero", |v| v.iter().any(|x| !x.is_zero()))
}

fn symmetric_delta(max_d: usize) -> impl Strategy<Value = Vec<BigRational>> {
    (1..=max_d).prop_flat_map(|d| {
        prop::collection::vec(entry(), d / 2 + 1).prop_map(move |half| {
            let mut v = vec![BigRational::zero(); d + 1];
            for (i, x) in half.into_iter().enumerate() {
                v[d - i] = x.clone();
                v[i] = x;
            }
            v[0] = &v[0] + BigRational::one();
            v[d] = v[0].clone();
            v
        })
    })
}

/// `C(m, d)` for any integer `m`, by the falling factorial.
fn binom_int(m: i64, d: usize) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..d as i64 {
        num *= m - i;
        den *= i + 1;
    }
    BigRational::new(num, den)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn from_delta_matches_binomial_sums(v in delta(12), n in -20i64..20) {
        let d = v.len() - 1;
        let expected = v.iter().enumerate().fold(BigRational::zero(), |acc, (j, x)| {
            acc + x * binom_int(n + (d - j) as i64, d)
        });
        prop_assert_eq!(from_delta_entries(&v).eval(&BigRational::from_integer(n.into())), expected);
    }

    #[test]
    fn generating_series_recovers_delta(v in delta(10)) {
        // (1 − λ)^{d+1} Σ f(n) λ^n, truncated after λ^d, computed term by term
        let d = v.len() - 1;
        let f = from_delta_entries(&v);
        let mut series: Vec<BigRational> =
            (0..=d).map(|n| f.eval(&BigRational::from_integer((n as i64).into()))).collect();
        for _ in 0..=d {
            for k in (1..=d).rev() {
                series[k] = &series[k] - &series[k - 1];
            }
        }
        prop_assert_eq!(series, v);
    }

    #[test]
    fn round_trip(v in delta(15)) {
        prop_assert_eq!(delta_from_polynomial(&from_delta_entries(&v)), v);
    }

    #[test]
    fn symmetry_iff_functional_equation(v in delta(12)) {
        let d = v.len() - 1;
        let symmetric = (0..=d).all(|i| v[i] == v[d - i]);
        let f = from_delta_entries(&v);
        prop_assert_eq!(reflect(&f) == f, symmetric);
    }

    #[test]
    fn symmetric_basis_decomposition(v in symmetric_delta(12)) {
        let d = v.len() - 1;
        let mut sum = RationalPolynomial::zero();
        for (i, x) in v.iter().enumerate().take(d / 2 + 1) {
            sum = &sum + &symmetric_basis(d, i).unwrap().scale(x);
        }
        let fact: BigInt = (1..=d as i64).map(BigInt::from).product();
        prop_assert_eq!(sum, from_delta_entries(&v).scale(&BigRational::from_integer(fact)));
    }

    #[test]
    fn half_shift_is_even_or_odd(v in symmetric_delta(14)) {
        let d = v.len() - 1;
        let g = half_shift(&from_delta_entries(&v));
        let red = parity_reduce(&g).unwrap();
        prop_assert_eq!(red.odd, d.is_odd());
        // rebuild g from G(n²)
        let mut rebuilt = RationalPolynomial::zero();
        for (k, c) in red.reduced.coeffs().iter().enumerate() {
            let mut coeffs = vec![BigRational::zero(); 2 * k + usize::from(red.odd) + 1];
            *coeffs.last_mut().unwrap() = c.clone();
            rebuilt = &rebuilt + &RationalPolynomial::new(coeffs);
        }
        prop_assert_eq!(rebuilt, g);
    }

    #[test]
    fn asymmetric_half_shift_has_no_parity(v in delta(10)) {
        let d = v.len() - 1;
        prop_assume!((0..=d).any(|i| v[i] != v[d - i]));
        let g = half_shift(&from_delta_entries(&v));
        prop_assert!(parity_reduce(&g).is_err());
    }

    #[test]
    fn realize_factorization(d in 2usize..12, num in 0i64..200, den in 1i64..9) {
        let a = threshold(d).unwrap() + rat(num, den);
        let plan = construct(d, &a).unwrap();
        let fact: BigInt = (1..=d as i64).map(BigInt::from).product();
        let q = RationalPolynomial::new(plan.reduced_quadratic.iter().rev().cloned().collect());
        prop_assert_eq!(
            &q * &extracted_factor(d).unwrap(),
            from_delta_entries(plan.delta.entries()).scale(&BigRational::from_integer(fact))
        );
        prop_assert!(plan.delta.entries().iter().all(|x| !x.is_negative()));
        prop_assert!(plan.delta.is_symmetric());
    }

    #[test]
    fn region_matches_interval_membership(num_b in 0i64..4000, num_c in 0i64..4000, d in 4usize..=5) {
        let b = rat(num_b, 20);
        let c = rat(num_c, 20);
        let qa = quartic_analysis(&b, &c, d).unwrap();
        let inside = admissible_b_interval(d, &c).unwrap().is_some_and(|iv| iv.contains(&b));
        prop_assert_eq!(qa.region.is_complex(), inside);
        prop_assert_eq!(qa.discriminant.is_negative(), inside);
        if qa.region != Region::Real {
            prop_assert!(qa.pass);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn roots_reflect_about_minus_half(v in symmetric_delta(10)) {
        let rs = solve(&from_delta_entries(&v), &SolverConfig::default()).unwrap();
        prop_assert_eq!(rs.roots.len(), v.len() - 1);
        for r in &rs.roots {
            let (x, y) = r.to_f64();
            let (_, dist) = rs.nearest(-1.0 - x, y).unwrap();
            prop_assert!(dist < 1e-6 + 2.0 * r.error_radius_f64(), "no partner for {x}+{y}i");
        }
    }

    #[test]
    fn vieta_sum(v in delta(10)) {
        let f = from_delta_entries(&v);
        let d = f.degree();
        prop_assume!(d >= 1);
        let rs = solve(&f, &SolverConfig::default()).unwrap();
        let (sum_re, sum_im) = rs.to_f64().iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
        let exact = -(f.coeff(d - 1) / f.leading());
        let exact = exact.numer().to_string().parse::<f64>().unwrap()
            / exact.denom().to_string().parse::<f64>().unwrap();
        prop_assert!((sum_re - exact).abs() < 1e-6 * (1.0 + exact.abs()));
        prop_assert!(sum_im.abs() < 1e-6);
    }

    #[test]
    fn sturm_count_matches_certified_roots(v in delta(10)) {
        let f = from_delta_entries(&v);
        prop_assume!(f.degree() >= 1);
        let rs = solve(&f, &SolverConfig::default()).unwrap();
        let chain = sturm_sequence(&f);
        let bound = f.cauchy_bound() + BigRational::one();
        prop_assert_eq!(count_real_roots(&chain, &-&bound, &bound), rs.certified_real_count());
        prop_assert_eq!(chain.total_real_roots(), rs.certified_real_count());
    }
}
