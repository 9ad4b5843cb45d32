//! Built-in δ-vectors: the reflexive polygons and 3-polytopes, with their
//! closed-form roots, and the two degree 8 / 10 counterexample vectors.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::DeltaVector;
use crate::radical::{quadratic_roots_exact, QuadraticRoots};
use crate::rational::{int, rat};

/// Version tag written into catalog exports.
pub const CATALOG_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `(1, b, 1)`, `b ∈ {1, …, 7}`
    GorensteinDim2,
    /// `(1, b, b, 1)`, `b ∈ {1, …, 35} \ {33, 34}`
    GorensteinDim3,
    /// Symmetric nonnegative vector with roots outside the half strip.
    SsnnCounterexample,
    /// Candidate counterexample for Gorenstein Fano polytopes.
    GorensteinCandidate,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::GorensteinDim2 => "gorenstein_dim2",
            Family::GorensteinDim3 => "gorenstein_dim3",
            Family::SsnnCounterexample => "ssnn_counterexample",
            Family::GorensteinCandidate => "gorenstein_candidate",
        }
    }
}

/// Exact roots: the listed rationals plus a quadratic pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormRoots {
    pub rational: Vec<BigRational>,
    pub pair: QuadraticRoots,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: String,
    pub delta: DeltaVector,
    pub family: Family,
    /// The family parameter `b`, when there is one.
    pub parameter: Option<i64>,
    pub closed_form_roots: Option<ClosedFormRoots>,
    /// Previously published approximate roots `(re, im)`.
    pub published_roots: Vec<(f64, f64)>,
    /// `δ_1 ≥ δ_d` holds. Every lattice polytope satisfies it, so `false`
    /// rules the vector out as a polytope's δ-vector.
    pub delta1_inequality: bool,
    pub note: Option<String>,
}

fn delta1_inequality(v: &DeltaVector) -> bool {
    let e = v.entries();
    e.len() < 2 || e[1] >= e[e.len() - 1]
}

/// Roots of `2f(n) = (b+2)n² + (b+2)n + 2`: `−1/2 ± (1/2)√((b−6)/(b+2))`.
pub fn closed_form_roots_dim2(b: &BigRational) -> ClosedFormRoots {
    let lead = b + int(2);
    ClosedFormRoots {
        rational: Vec::new(),
        pair: quadratic_roots_exact(&lead, &lead, &int(2)),
    }
}

/// `3!f(n) = (2n+1)((b+1)n² + (b+1)n + 6)`: `−1/2` and
/// `−1/2 ± (1/2)√((b−23)/(b+1))`.
pub fn closed_form_roots_dim3(b: &BigRational) -> ClosedFormRoots {
    let lead = b + int(1);
    ClosedFormRoots {
        rational: vec![rat(-1, 2)],
        pair: quadratic_roots_exact(&lead, &lead, &int(6)),
    }
}

pub fn gorenstein_deltas(d: usize) -> Result<Vec<CatalogEntry>> {
    let entry = |family, b: i64, entries: &[i64], roots| {
        let delta = DeltaVector::from_ints(entries).expect("catalog vectors are valid");
        CatalogEntry {
            label: format!("{}_b{b}", family_prefix(family)),
            delta1_inequality: delta1_inequality(&delta),
            delta,
            family,
            parameter: Some(b),
            closed_form_roots: Some(roots),
            published_roots: Vec::new(),
            note: None,
        }
    };
    match d {
        2 => Ok((1..=7)
            .map(|b| {
                entry(
                    Family::GorensteinDim2,
                    b,
                    &[1, b, 1],
                    closed_form_roots_dim2(&int(b)),
                )
            })
            .collect()),
        3 => Ok((1..=35)
            .filter(|b| !matches!(b, 33 | 34))
            .map(|b| {
                entry(
                    Family::GorensteinDim3,
                    b,
                    &[1, b, b, 1],
                    closed_form_roots_dim3(&int(b)),
                )
            })
            .collect()),
        _ => Err(Error::UnsupportedDimension(d)),
    }
}

fn family_prefix(f: Family) -> &'static str {
    match f {
        Family::GorensteinDim2 => "dim2",
        Family::GorensteinDim3 => "dim3",
        Family::SsnnCounterexample => "ssnn_d8",
        Family::GorensteinCandidate => "candidate_d10",
    }
}

pub fn counterexample_deltas() -> Vec<CatalogEntry> {
    let d8 = DeltaVector::from_ints(&[1, 0, 0, 0, 14, 0, 0, 0, 1]).expect("valid");
    let d10 = DeltaVector::from_ints(&[1, 1, 1, 1, 1, 23, 1, 1, 1, 1, 1]).expect("valid");
    let pm = |re: f64, im: f64| [(re, -im), (re, im)];
    let d8_roots: Vec<(f64, f64)> = [
        pm(-0.5, 0.44480014),
        pm(-0.5, 1.78738687),
        pm(3.00099518, 5.29723208),
        pm(-4.00099518, 5.29723208),
    ]
    .concat();
    vec![
        CatalogEntry {
            label: family_prefix(Family::SsnnCounterexample).to_string(),
            delta1_inequality: delta1_inequality(&d8),
            delta: d8,
            family: Family::SsnnCounterexample,
            parameter: None,
            closed_form_roots: None,
            published_roots: d8_roots,
            note: Some("delta_1 < delta_8, so not the delta-vector of any lattice polytope".into()),
        },
        CatalogEntry {
            label: family_prefix(Family::GorensteinCandidate).to_string(),
            delta1_inequality: delta1_inequality(&d10),
            delta: d10,
            family: Family::GorensteinCandidate,
            parameter: None,
            closed_form_roots: None,
            published_roots: vec![(4.02470021, 8.22732653)],
            note: Some("symmetric with delta_1 >= delta_10; root outside the half strip".into()),
        },
    ]
}

/// Every built-in entry: dimension 2, dimension 3, then the counterexamples.
pub fn all_entries() -> Vec<CatalogEntry> {
    let mut out = gorenstein_deltas(2).expect("dim 2");
    out.extend(gorenstein_deltas(3).expect("dim 3"));
    out.extend(counterexample_deltas());
    out
}
