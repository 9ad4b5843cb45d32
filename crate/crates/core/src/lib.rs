//! Exact construction and root analysis of SSNN polynomials.
//!
//! An SSNN polynomial is `f(n) = Σ_j δ_j · C(n + d − j, d)` for a
//! symmetric, nonnegative δ-vector; Ehrhart polynomials of reflexive
//! polytopes are the motivating examples. The crate builds these
//! polynomials exactly, finds all of their complex roots in configurable
//! precision, certifies real roots with Sturm sequences, and checks the
//! strip and disk bounds on the roots' locations.

pub mod analysis;
pub mod bigfloat;
pub mod catalog;
pub mod certify;
pub mod error;
pub mod poly;
pub mod radical;
pub mod rational;
pub mod realize;
pub mod roots;

pub use analysis::{
    admissible_b_interval, norm_check, quartic_analysis, strip_check, strip_verdict, BInterval,
    BoundCheck, BoundKind, QuarticAnalysis, Region, Violator,
};
pub use bigfloat::{BigComplex, BigFloat};
pub use catalog::{counterexample_deltas, gorenstein_deltas, CatalogEntry, Family};
pub use certify::{certify_real_strip, count_real_roots, sturm_sequence, SturmChain};
pub use error::{Error, Result};
pub use poly::{
    check_functional_equation, delta_from_polynomial, from_delta, half_shift, parity_reduce,
    reflect, symmetric_basis, validate_delta, DeltaVector, ParityReduction, RationalPolynomial,
};
pub use radical::{quadratic_roots_exact, QuadraticRoots, Surd};
pub use realize::{
    construct, realized_roots_exact, solve_parameter, ParameterSolution, RealizationPlan,
};
pub use roots::{classify_roots, find_roots, residual, solve, ComplexRoot, RootSet, SolverConfig};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
