//! Lower bounds for `ε(K_S, x)` on general-type surfaces with `ρ = 1`.
//!
//! | K²        | rule                                   | bound |
//! |-----------|----------------------------------------|-------|
//! | ≥ 5       | `|2K_S|` base point free               | 1/2   |
//! | 3, 4      | no point with `ε < 1` exists           | 1     |
//! | 2         | the exceptional value is exactly 2/3   | 2/3   |
//! | 1, pg ≤ 1 | bicanonical pencil                     | 1/2   |
//! | 1, pg = 2 | canonical pencil, attained             | 1/2   |

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genus::{BoundCertificate, BoundSource, CurveClass};
use crate::scalar::{ratio, ExactScalar};
use crate::surface::{PolarizedSurface, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifierError {
    #[error("the bicanonical rule needs K^2 >= 5, got K^2 = {0}")]
    ReiderInapplicable(u64),
    #[error("p_g = {0} violates the Noether inequality for K^2 = 1 (p_g <= 2)")]
    NoetherViolation(u64),
    #[error("expected a canonically polarized general-type surface (class=gt, r=1)")]
    NotCanonical,
    #[error("surface fails validation: {}", .0.violations.iter().map(|v| v.message.as_str()).collect::<Vec<_>>().join("; "))]
    InvalidSurface(ValidationReport),
    #[error("K^2 = 1 needs p_g to pick the pencil argument")]
    MissingGeometricGenus,
    #[error("scaling factor r must be at least 1, got {0}")]
    BadScale(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CanonicalCase {
    ReiderK2ge5,
    LemmaLowK2eq2,
    LemmaLowK2eq3or4,
    K2OnePgLow,
    K2OnePgTwo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalCaseTrace {
    pub case: CanonicalCase,
    pub bound: ExactScalar,
    pub sharp: bool,
    pub narrative: String,
    pub certificate: BoundCertificate,
}

/// `K² ≥ 5`: `|2K_S|` is base point free, so `ε(2K_S, x) ≥ 1`.
pub fn reider_rule(k2: u64) -> Result<BoundCertificate, ClassifierError> {
    if k2 < 5 {
        return Err(ClassifierError::ReiderInapplicable(k2));
    }
    Ok(BoundCertificate::new(BoundSource::ReiderRule, ratio(1, 2))
        .assume("|2K_S| base point free => epsilon(2K_S, x) >= 1")
        .assume("Reider's theorem applied to K_S; its exceptional configurations need curves of small K-degree, impossible for rho = 1 and K^2 >= 5"))
}

/// Pairs `(K², p)` with `p²(K²)² ≤ 2 + p²K²`.
///
/// These are the only degrees where a curve in `|pK_S|` could have
/// `K_S·C < mult_x C` without exceeding its arithmetic genus.
pub fn lemma_low_enumerate(k2_max: u64, p_max: u64) -> BTreeSet<(u64, u64)> {
    let mut out = BTreeSet::new();
    for k2 in 1..=k2_max {
        for p in 1..=p_max {
            let (k, p2) = (u128::from(k2), u128::from(p) * u128::from(p));
            if p2 * k * k <= 2 + p2 * k {
                out.insert((k2, p));
            }
        }
    }
    out
}

/// `K² = 2`: a point with `ε < 1` is computed by a canonical curve with a
/// triple point, so the minimum over all points is exactly 2/3.
pub fn k2_two_bound() -> BoundCertificate {
    BoundCertificate::new(BoundSource::LemmaLow, ratio(2, 3))
        .sharp(true)
        .witness(CurveClass { p: 1, m: 3 })
        .assume("K_S primitive, K^2 = 2, rho = 1")
        .assume("a point with epsilon < 1 forces equality in the genus bound: p = 1, m = 3, so epsilon = 2/3 there")
        .assume("every other point has epsilon(K_S, x) >= 1; the bound is the minimum over all points")
}

/// `K² = 1`, `q = 0`, by the geometric genus.
pub fn k2_one_bound(pg: u64) -> Result<BoundCertificate, ClassifierError> {
    let base = BoundCertificate::new(BoundSource::PencilK2One, ratio(1, 2)).assume("K^2 = 1, q = 0 (Bombieri)");
    match pg {
        0 | 1 => Ok(base
            .assume("Riemann-Roch gives at least a pencil of bicanonical divisors with base locus of points only")
            .assume("through each x passes an irreducible D_x in |2K_S|: 2K_S.C >= mult_x C for other curves C")
            .assume("D_x has arithmetic genus 4, so mult_x D_x <= 3 and K_S.D_x / mult_x D_x >= 2/3")),
        2 => Ok(base
            .sharp(true)
            .witness(CurveClass { p: 1, m: 2 })
            .assume("canonical pencil of genus-2 curves; curves outside it have quotient >= 1")
            .assume("not every pencil member is smooth (Euler characteristic / isotriviality), and genus 2 allows at most a double point")
            .assume("a canonical curve D with mult_x D = 2 gives epsilon(K_S, x) = 1/2 exactly")),
        _ => Err(ClassifierError::NoetherViolation(pg)),
    }
}

/// Dispatches a canonically polarized surface (`r = 1`) to its case.
pub fn canonical_seshadri_lower(s: &PolarizedSurface) -> Result<CanonicalCaseTrace, ClassifierError> {
    if !s.is_general_type() || s.r() != 1 {
        return Err(ClassifierError::NotCanonical);
    }
    let report = s.validate();
    if !report.is_valid() {
        return Err(ClassifierError::InvalidSurface(report));
    }
    let k2 = s.canonical_degree();
    let (case, certificate, narrative) = match k2 {
        5.. => (
            CanonicalCase::ReiderK2ge5,
            reider_rule(k2)?,
            format!("K^2 = {k2} >= 5: bicanonical system is base point free, epsilon(K_S, x) >= 1/2"),
        ),
        3 | 4 => (
            CanonicalCase::LemmaLowK2eq3or4,
            BoundCertificate::new(BoundSource::LemmaLow, ExactScalar::one())
                .assume("K_S primitive (forced for K^2 <= 4)")
                .assume("epsilon(K_S, x) < 1 would force K^2 in {1, 2}; no pair (K^2, p) with K^2 in {3, 4} passes the genus test"),
            format!("K^2 = {k2}: no point has epsilon(K_S, x) < 1"),
        ),
        2 => (
            CanonicalCase::LemmaLowK2eq2,
            k2_two_bound(),
            "K^2 = 2: the only possible value below 1 is 2/3, via a canonical curve with a triple point".to_owned(),
        ),
        _ => {
            let pg = s.pg().ok_or(ClassifierError::MissingGeometricGenus)?;
            let cert = k2_one_bound(pg)?;
            if pg == 2 {
                (
                    CanonicalCase::K2OnePgTwo,
                    cert,
                    "K^2 = 1, p_g = 2: a singular member of the canonical pencil has a double point, epsilon = 1/2 there"
                        .to_owned(),
                )
            } else {
                (
                    CanonicalCase::K2OnePgLow,
                    cert,
                    format!("K^2 = 1, p_g = {pg}: bicanonical pencil gives epsilon(K_S, x) >= 1/2"),
                )
            }
        }
    };
    Ok(CanonicalCaseTrace {
        case,
        bound: certificate.value.clone(),
        sharp: certificate.sharp,
        narrative,
        certificate,
    })
}

/// `ε(L, x) = ε(K_S, x) / r` when `K_S = rL`.
pub fn epsilon_scaling(canonical_bound: &ExactScalar, r: i64) -> Result<ExactScalar, ClassifierError> {
    if r < 1 {
        return Err(ClassifierError::BadScale(r));
    }
    Ok(canonical_bound * &ratio(1, r))
}
