//! Formal invariants of surfaces `S_d ⊂ P(w₀, w₁, w₂, w₃)`.
//!
//! By adjunction `K_S = O_S(d − Σwᵢ)`, so `K_S² = (d − Σwᵢ)²·d / Πwᵢ` and
//! `p_g` counts monomials of weighted degree `d − Σwᵢ`. Well-formedness and
//! quasi-smoothness are not checked; a non-integral `K²` is flagged instead.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical::{k2_one_bound, ClassifierError};
use crate::comparative::challenge_threshold;
use crate::genus::{general_type_bound, BoundCertificate};
use crate::scalar::{ExactScalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WpsError {
    #[error("weights must be positive integers")]
    ZeroWeight,
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("expected four comma-separated weights, got {0:?}")]
    MalformedWeights(String),
    #[error("Steenbrink's criterion is stated for weights (1,1,a,b), got {0:?}")]
    NotOneOneAB([u64; 4]),
    #[error("sharpness example check failed: {0}")]
    ExampleMismatch(String),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weights(pub [u64; 4]);

impl Weights {
    pub fn new(w: [u64; 4]) -> Result<Self, WpsError> {
        if w.contains(&0) {
            return Err(WpsError::ZeroWeight);
        }
        Ok(Weights(w))
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn product(&self) -> u64 {
        self.0.iter().product()
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a},{b},{c},{d}")
    }
}

/// Parses `w0,w1,w2,w3`.
impl FromStr for Weights {
    type Err = WpsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<u64> = s
            .split(',')
            .map(|p| p.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| WpsError::MalformedWeights(s.to_owned()))?;
        let arr: [u64; 4] = parts.try_into().map_err(|_| WpsError::MalformedWeights(s.to_owned()))?;
        Weights::new(arr)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedHypersurface {
    pub weights: Weights,
    pub degree: u64,
}

impl WeightedHypersurface {
    pub fn new(weights: Weights, degree: u64) -> Result<Self, WpsError> {
        if degree == 0 {
            return Err(WpsError::ZeroDegree);
        }
        Ok(WeightedHypersurface { weights, degree })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersurfaceInvariants {
    /// `d − Σwᵢ`, so that `K_S = O_S(canonical_coefficient)`.
    pub canonical_coefficient: i64,
    pub k2: ExactScalar,
    pub pg: u128,
    pub integrality_warning: bool,
}

/// Number of `(a, b, c, e) ≥ 0` with `a·w₀ + b·w₁ + c·w₂ + e·w₃ = degree`.
pub fn count_monomials(weights: &Weights, degree: u64) -> u128 {
    let n = degree as usize;
    let mut ways = vec![0u128; n + 1];
    ways[0] = 1;
    for &w in &weights.0 {
        let w = w as usize;
        for k in w..=n {
            ways[k] += ways[k - w];
        }
    }
    ways[n]
}

pub fn hypersurface_invariants(h: &WeightedHypersurface) -> HypersurfaceInvariants {
    let coefficient = h.degree as i64 - h.weights.sum() as i64;
    let k2 = BigRational::new(
        BigInt::from(coefficient).pow(2) * BigInt::from(h.degree),
        BigInt::from(h.weights.product()),
    );
    let pg = if coefficient >= 0 {
        count_monomials(&h.weights, coefficient as u64)
    } else {
        0
    };
    HypersurfaceInvariants {
        canonical_coefficient: coefficient,
        integrality_warning: !k2.is_integer(),
        k2: ExactScalar::rational(k2),
        pg,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteenbrinkCheck {
    pub picard_one: bool,
    pub reasons: Vec<String>,
}

/// A general `S_d ⊂ P(1,1,a,b)` has `ρ = 1` when `gcd(a,b) = 1` and `d ≥ 2 + a + b`.
pub fn steenbrink_check(weights: &Weights, degree: u64) -> Result<SteenbrinkCheck, WpsError> {
    let [w0, w1, a, b] = weights.0;
    if w0 != 1 || w1 != 1 {
        return Err(WpsError::NotOneOneAB(weights.0));
    }
    let mut reasons = Vec::new();
    let g = a.gcd(&b);
    if g != 1 {
        reasons.push(format!("gcd(a, b) = gcd({a}, {b}) = {g}, not 1"));
    }
    if degree < 2 + a + b {
        reasons.push(format!("degree {degree} < 2 + a + b = {}", 2 + a + b));
    }
    Ok(SteenbrinkCheck {
        picard_one: reasons.is_empty(),
        reasons,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpnessExample {
    pub hypersurface: WeightedHypersurface,
    pub invariants: HypersurfaceInvariants,
    pub steenbrink: SteenbrinkCheck,
    /// Lower bound for `ε(K_S, x)` over all points, attained somewhere.
    pub certificate: BoundCertificate,
    pub theorem_bound: ExactScalar,
    pub challenge_threshold: ExactScalar,
}

/// The degree-10 surface in `P(1,1,2,5)`: `K² = 1`, `p_g = 2`, `ρ = 1`, and
/// `ε(K_S, x) = 1/2` at some point.
pub fn sharpness_example() -> Result<SharpnessExample, WpsError> {
    let hypersurface = WeightedHypersurface::new(Weights::new([1, 1, 2, 5])?, 10)?;
    let invariants = hypersurface_invariants(&hypersurface);
    let steenbrink = steenbrink_check(&hypersurface.weights, hypersurface.degree)?;

    let mismatch = |what: &str| Err(WpsError::ExampleMismatch(what.to_owned()));
    if invariants.k2 != ExactScalar::one() || invariants.integrality_warning {
        return mismatch("K^2 != 1");
    }
    if invariants.pg != 2 {
        return mismatch("p_g != 2");
    }
    if !steenbrink.picard_one {
        return mismatch("Steenbrink criterion not met");
    }

    let certificate = k2_one_bound(2)?
        .assume("S general of degree 10 in P(1,1,2,5); quasi-smoothness not verified")
        .assume("q = 0 assumed (K^2 = 1)")
        .assume("rho(S) = 1 by Steenbrink's criterion");
    let theorem_bound = general_type_bound(1)?;
    if certificate.value != theorem_bound || !certificate.sharp {
        return mismatch("pencil bound is not the sharp closed-form value");
    }
    let challenge_threshold = challenge_threshold(1);
    if challenge_threshold >= certificate.value {
        return mismatch("challenge threshold not below the attained value");
    }
    Ok(SharpnessExample {
        hypersurface,
        invariants,
        steenbrink,
        certificate,
        theorem_bound,
        challenge_threshold,
    })
}
