//! Bounds from the genus formula on curves `C ∈ |pL|`.
//!
//! On a surface with `ρ = 1` every curve is numerically `pL`, so its
//! arithmetic genus is `1 + p(p+r)L²/2` and a point of multiplicity `m`
//! needs `m(m−1)/2 ≤ p_a(C)`. The Seshadri quotient `pL²/m` of such a curve
//! is therefore bounded below in terms of `p`, `r` and `L²` alone.

use std::cmp::Ordering;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{ExactScalar, ScalarError};
use crate::surface::{PolarizedSurface, SurfaceClass};

/// Default truncation of the curve-class search.
pub const DEFAULT_P_MAX: u64 = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error("degree multiple p must be at least 1")]
    ZeroMultiple,
    #[error("p(p+r)L^2 = {value} is odd for p = {p}: the surface fails the parity rule")]
    Parity { p: u64, value: i128 },
    #[error("curves in |{p}L| would have negative arithmetic genus: the surface is inconsistent")]
    NegativeGenus { p: u64 },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A numerical curve candidate: `C ∈ |pL|` with a point of multiplicity `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveClass {
    pub p: u64,
    pub m: u64,
}

impl CurveClass {
    /// `m(m−1) ≤ 2 + p(p+r)L²`, i.e. the genus drop fits in `p_a(C)`.
    pub fn is_admissible(&self, s: &PolarizedSurface) -> bool {
        self.p >= 1 && self.m >= 1 && {
            let m = i128::from(self.m);
            m * (m - 1) <= 2 + degree_term(self.p, s)
        }
    }

    /// `L·C / m = pL²/m`.
    pub fn quotient(&self, s: &PolarizedSurface) -> ExactScalar {
        ExactScalar::rational(BigRational::new(
            BigInt::from(self.p) * BigInt::from(s.l2()),
            BigInt::from(self.m),
        ))
    }
}

/// Where a bound on `ε(L, x)` is claimed to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointScope {
    AllPoints,
    GeneralPoint,
    /// A reference value, not a lower bound.
    Reference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundSource {
    TheoremS,
    TheoremG,
    GenusPerP,
    GenusOracle,
    ReiderRule,
    LemmaLow,
    PencilK2One,
    Steffens,
    FdBLiteral,
    FdBRederived,
    NaiveScaling,
    ChallengeThreshold,
}

impl BoundSource {
    pub fn label(self) -> &'static str {
        match self {
            BoundSource::TheoremS => "closed form, not general type",
            BoundSource::TheoremG => "closed form, general type",
            BoundSource::GenusPerP => "genus bound at fixed p",
            BoundSource::GenusOracle => "curve-class oracle",
            BoundSource::ReiderRule => "bicanonical base-point freeness",
            BoundSource::LemmaLow => "low K^2 classification",
            BoundSource::PencilK2One => "K^2 = 1 pencil argument",
            BoundSource::Steffens => "Steffens general-point bound",
            BoundSource::FdBLiteral => "effective Matsusaka corollary (as printed)",
            BoundSource::FdBRederived => "effective Matsusaka (rederived)",
            BoundSource::NaiveScaling => "canonical bound divided by r",
            BoundSource::ChallengeThreshold => "challenge threshold",
        }
    }
}

/// A lower bound together with where it came from and what it rests on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub value: ExactScalar,
    pub source: BoundSource,
    pub scope: PointScope,
    /// The value is attained on this surface.
    pub sharp: bool,
    pub assumptions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<CurveClass>,
}

impl BoundCertificate {
    pub fn new(source: BoundSource, value: ExactScalar) -> Self {
        debug_assert!(value.is_positive(), "certificate value must be positive");
        BoundCertificate {
            value,
            source,
            scope: PointScope::AllPoints,
            sharp: false,
            assumptions: Vec::new(),
            witness: None,
        }
    }

    pub fn assume(mut self, text: impl Into<String>) -> Self {
        self.assumptions.push(text.into());
        self
    }

    pub fn scope(mut self, scope: PointScope) -> Self {
        self.scope = scope;
        self
    }

    pub fn sharp(mut self, sharp: bool) -> Self {
        self.sharp = sharp;
        self
    }

    pub fn witness(mut self, witness: CurveClass) -> Self {
        self.witness = Some(witness);
        self
    }
}

/// `p(p+r)L²`.
fn degree_term(p: u64, s: &PolarizedSurface) -> i128 {
    let p = i128::from(p);
    p * (p + i128::from(s.r())) * i128::from(s.l2())
}

fn check_p(p: u64) -> Result<(), GenusError> {
    if p == 0 {
        Err(GenusError::ZeroMultiple)
    } else {
        Ok(())
    }
}

/// `p_a(C) = 1 + p(p+r)L²/2` for `C ∈ |pL|`.
pub fn arithmetic_genus(p: u64, s: &PolarizedSurface) -> Result<u64, GenusError> {
    check_p(p)?;
    let value = degree_term(p, s);
    if value % 2 != 0 {
        return Err(GenusError::Parity { p, value });
    }
    let genus = 1 + value / 2;
    u64::try_from(genus).map_err(|_| GenusError::NegativeGenus { p })
}

/// Largest `m` with `m(m−1) ≤ 2 + p(p+r)L²`.
pub fn max_multiplicity(p: u64, s: &PolarizedSurface) -> Result<u64, GenusError> {
    check_p(p)?;
    let cap = 2 + degree_term(p, s);
    if cap < 0 {
        return Err(GenusError::NegativeGenus { p });
    }
    // m ≤ (1 + √(1 + 4·cap)) / 2
    let disc = (1 + 4 * cap) as u128;
    let mut m = disc.isqrt().div_ceil(2);
    while m * (m + 1) <= cap as u128 {
        m += 1;
    }
    while m > 1 && m * (m - 1) > cap as u128 {
        m -= 1;
    }
    Ok(m.max(1) as u64)
}

/// `pL² / m_max(p)`: the smallest quotient any class in `|pL|` can have.
pub fn per_p_bound_integer(p: u64, s: &PolarizedSurface) -> Result<ExactScalar, GenusError> {
    let m = max_multiplicity(p, s)?;
    Ok(CurveClass { p, m }.quotient(s))
}

/// `2pL² / (1 + √(9 + 4p(p+r)L²))`, the bound before rounding `m` down.
pub fn per_p_bound_real(p: u64, s: &PolarizedSurface) -> Result<ExactScalar, GenusError> {
    check_p(p)?;
    let radicand = 9 + 4 * degree_term(p, s);
    if radicand < 1 {
        return Err(GenusError::NegativeGenus { p });
    }
    let root = ExactScalar::rational(BigRational::from_integer(BigInt::from(radicand))).sqrt()?;
    let numer = ExactScalar::rational(BigRational::from_integer(BigInt::from(2 * p) * BigInt::from(s.l2())));
    Ok(numer.checked_div(&(ExactScalar::one() + root))?)
}

/// Minimum of `pL²/m` over admissible classes with `p ≤ p_max`.
///
/// This bounds `ε(L, x)` from below at every point, assuming only that a
/// curve computing the constant lies in some `|pL|` with `p ≤ p_max`.
/// For `r ≥ 0` the real-valued per-`p` bound is nondecreasing (see
/// [`monotonicity_check`]), so once it reaches the running minimum no larger
/// `p` can undercut it and the scan stops early.
pub fn oracle_infimum(s: &PolarizedSurface, p_max: u64) -> Result<BoundCertificate, GenusError> {
    check_p(p_max)?;
    let mut best: Option<(ExactScalar, CurveClass)> = None;
    let mut scanned = 0;
    for p in 1..=p_max {
        scanned = p;
        let m = max_multiplicity(p, s)?;
        let class = CurveClass { p, m };
        let value = class.quotient(s);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, class));
        }
        if s.r() >= 0 {
            let floor = per_p_bound_real(p, s)?;
            if best.as_ref().is_some_and(|(b, _)| floor >= *b) {
                break;
            }
        }
    }
    let (value, witness) = best.ok_or(GenusError::ZeroMultiple)?;
    Ok(BoundCertificate::new(BoundSource::GenusOracle, value)
        .witness(witness)
        .assume("only numerical admissibility m(m-1) <= 2 + p(p+r)L^2 is used; existence of curves is not checked")
        .assume(format!("curves computing the constant lie in |pL| with p <= {p_max}"))
        .assume(format!("scan stopped at p = {scanned}")))
}

/// The closed-form bound: 1 off general type, `1/(1 + ⁴√K²)` on it.
pub fn theorem_bound(s: &PolarizedSurface) -> Result<BoundCertificate, GenusError> {
    let cert = match s.class() {
        SurfaceClass::ProjectivePlane => BoundCertificate::new(BoundSource::TheoremS, ExactScalar::one())
            .sharp(true)
            .assume("S = P^2, L = O(1): lines through x give epsilon = 1 at every point"),
        SurfaceClass::Abelian => BoundCertificate::new(BoundSource::TheoremS, ExactScalar::one())
            .assume("abelian surfaces are homogeneous, so epsilon(L, x) does not depend on x")
            .assume(EIN_LAZARSFELD),
        SurfaceClass::K3 => BoundCertificate::new(BoundSource::TheoremS, ExactScalar::one()).assume(
            "rho = 1 leaves no (-2)-curves, so ample L is globally generated and |L| defines a finite morphism",
        ),
        SurfaceClass::GeneralType => {
            let k2 = general_type_bound(s.canonical_degree())?;
            let attained = s.canonical_degree() == 1 && s.pg() == Some(2);
            BoundCertificate::new(BoundSource::TheoremG, k2)
                .sharp(attained)
                .assume("S of general type with rho = 1, K_S = rL with r >= 1")
                .assume("K^2 <= 4 handled by the low-K^2 classification, K^2 >= 5 by the genus bound at p = 1")
        }
    };
    Ok(cert.assume("rho(S) = 1 and L is the ample generator"))
}

/// `1 / (1 + ⁴√k2)`.
pub fn general_type_bound(k2: u64) -> Result<ExactScalar, ScalarError> {
    let root = ExactScalar::rational(BigRational::from_integer(k2.into())).fourth_root()?;
    (ExactScalar::one() + root).recip()
}

pub(crate) const EIN_LAZARSFELD: &str =
    "Ein-Lazarsfeld: epsilon(L, x) >= 1 for every x outside an at most countable set";
pub(crate) const OGUISO: &str = "Oguiso: for each delta > 0 only finitely many x have epsilon(L, x) <= 1 - delta";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub nondecreasing: bool,
    /// First `p` with `bound(p + 1) < bound(p)`.
    pub first_violation: Option<u64>,
}

/// Whether [`per_p_bound_real`] is nondecreasing over `p_range`, by exact
/// comparison of consecutive values.
pub fn monotonicity_check(
    s: &PolarizedSurface,
    p_range: RangeInclusive<u64>,
) -> Result<MonotonicityReport, GenusError> {
    let (start, end) = (*p_range.start(), *p_range.end());
    check_p(start)?;
    let mut prev = per_p_bound_real(start, s)?;
    for p in start..end {
        let next = per_p_bound_real(p + 1, s)?;
        if next.compare(&prev) == Ordering::Less {
            return Ok(MonotonicityReport {
                nondecreasing: false,
                first_violation: Some(p),
            });
        }
        prev = next;
    }
    Ok(MonotonicityReport {
        nondecreasing: true,
        first_violation: None,
    })
}
