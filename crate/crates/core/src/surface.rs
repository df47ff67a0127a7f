//! Numerical models of smooth projective surfaces with Picard number one.
//!
//! A surface is described by its ample generator `L` through `L²`, the
//! canonical multiple `r` with `K_S = rL`, its place in the classification,
//! and optionally `p_g` and `q`. Properly elliptic and Enriques surfaces have
//! Picard number larger than one and have no variant here.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceClass {
    ProjectivePlane,
    Abelian,
    K3,
    GeneralType,
}

impl SurfaceClass {
    /// The short name used in surface specifications.
    pub fn code(self) -> &'static str {
        match self {
            SurfaceClass::ProjectivePlane => "p2",
            SurfaceClass::Abelian => "abelian",
            SurfaceClass::K3 => "k3",
            SurfaceClass::GeneralType => "gt",
        }
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for SurfaceClass {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "p2" => Ok(SurfaceClass::ProjectivePlane),
            "abelian" => Ok(SurfaceClass::Abelian),
            "k3" => Ok(SurfaceClass::K3),
            "gt" => Ok(SurfaceClass::GeneralType),
            other => Err(SurfaceError::UnknownClass(other.to_owned())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("L^2 must be a positive integer")]
    NonPositiveDegree,
    #[error("unknown surface class {0:?} (expected gt, p2, abelian or k3)")]
    UnknownClass(String),
    #[error("malformed field {0:?} (expected key=value)")]
    MalformedField(String),
    #[error("unknown field {0:?}")]
    UnknownField(String),
    #[error("field {0} given twice")]
    DuplicateField(String),
    #[error("invalid value {value:?} for {key}")]
    InvalidValue { key: String, value: String },
    #[error("missing required field {0}")]
    MissingField(&'static str),
    #[error("the primitivity rule is only claimed for 1 <= K^2 <= 4, got {0}")]
    PrimitivityNotClaimed(u64),
}

/// `(S, L)` with `ρ(S) = 1`, `L` the ample generator and `K_S = rL`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolarizedSurface {
    class: SurfaceClass,
    l2: u64,
    r: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pg: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<u64>,
}

impl PolarizedSurface {
    /// Only `L² > 0` is enforced here; everything else is reported by
    /// [`PolarizedSurface::validate`].
    pub fn new(class: SurfaceClass, l2: u64, r: i64) -> Result<Self, SurfaceError> {
        if l2 == 0 {
            return Err(SurfaceError::NonPositiveDegree);
        }
        Ok(PolarizedSurface {
            class,
            l2,
            r,
            pg: None,
            q: None,
        })
    }

    pub fn projective_plane() -> Self {
        PolarizedSurface {
            class: SurfaceClass::ProjectivePlane,
            l2: 1,
            r: -3,
            pg: None,
            q: None,
        }
    }

    pub fn general_type(l2: u64, r: i64) -> Result<Self, SurfaceError> {
        Self::new(SurfaceClass::GeneralType, l2, r)
    }

    pub fn with_pg(mut self, pg: u64) -> Self {
        self.pg = Some(pg);
        self
    }

    pub fn with_q(mut self, q: u64) -> Self {
        self.q = Some(q);
        self
    }

    pub fn class(&self) -> SurfaceClass {
        self.class
    }

    pub fn l2(&self) -> u64 {
        self.l2
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn pg(&self) -> Option<u64> {
        self.pg
    }

    pub fn q(&self) -> Option<u64> {
        self.q
    }

    pub fn is_general_type(&self) -> bool {
        self.class == SurfaceClass::GeneralType
    }

    /// `K_S² = r²·L²`.
    pub fn canonical_degree(&self) -> u64 {
        let r = self.r.unsigned_abs();
        r * r * self.l2
    }

    /// The same surface polarized by `K_S = rL` itself (only meaningful for
    /// general type, where `K_S` is ample).
    pub fn canonically_polarized(&self) -> Result<Self, SurfaceError> {
        let mut s = Self::new(SurfaceClass::GeneralType, self.canonical_degree(), 1)?;
        s.pg = self.pg;
        s.q = self.q;
        Ok(s)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        // L·(L + K) = L²(1 + r) is twice p_a(C) − 2 for C ∈ |L|; equivalently
        // χ(L) − χ(O_S) = L²(1 − r)/2 must be an integer.
        let parity = i128::from(self.l2) * (1 + i128::from(self.r));
        if parity % 2 != 0 {
            violations.push(Violation {
                rule: RuleId::Parity,
                message: format!(
                    "L^2(1+r) = {parity} is odd; Riemann-Roch for L requires L^2(1-r)/2 to be an integer \
                     (the rule is inferred from integrality of chi(L) and of the arithmetic genus of curves in |L|)"
                ),
                reference: "Riemann-Roch / adjunction integrality".into(),
            });
        }

        let class_problem = match self.class {
            SurfaceClass::ProjectivePlane if self.l2 != 1 || self.r != -3 => Some(format!(
                "P^2 with its hyperplane class has L^2 = 1 and r = -3, got L^2 = {}, r = {}",
                self.l2, self.r
            )),
            SurfaceClass::Abelian | SurfaceClass::K3 if self.r != 0 => Some(format!(
                "{} surfaces have trivial canonical class, so r = 0; got r = {}",
                self.class, self.r
            )),
            SurfaceClass::GeneralType if self.r < 1 => Some(format!(
                "K_S is ample on a general-type surface with Picard number 1, so r >= 1; got r = {}",
                self.r
            )),
            _ => None,
        };
        if let Some(message) = class_problem {
            violations.push(Violation {
                rule: RuleId::ClassConsistency,
                message,
                reference: "Enriques-Kodaira classification with Picard number 1".into(),
            });
        }

        if self.is_general_type() {
            let k2 = self.canonical_degree();
            if let Some(pg) = self.pg {
                // p_g <= K^2/2 + 2
                if 2 * pg > k2 + 4 {
                    violations.push(Violation {
                        rule: RuleId::Noether,
                        message: format!("p_g = {pg} exceeds K^2/2 + 2 = {}", (k2 as f64) / 2.0 + 2.0),
                        reference: "Noether inequality".into(),
                    });
                }
            }
            if k2 == 1 {
                if let Some(q) = self.q.filter(|&q| q != 0) {
                    violations.push(Violation {
                        rule: RuleId::Bombieri,
                        message: format!("K^2 = 1 forces q = 0, got q = {q}"),
                        reference: "Bombieri: minimal surfaces of general type with K^2 = 1 are regular".into(),
                    });
                }
            }
        }

        ValidationReport { violations }
    }
}

impl fmt::Display for PolarizedSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class={} l2={} r={}", self.class, self.l2, self.r)?;
        if let Some(pg) = self.pg {
            write!(f, " pg={pg}")?;
        }
        if let Some(q) = self.q {
            write!(f, " q={q}")?;
        }
        Ok(())
    }
}

/// Parses `class=<gt|p2|abelian|k3> l2=<int> r=<int> [pg=<int>] [q=<int>]`.
///
/// `p2` defaults to `l2=1 r=-3`; `abelian` and `k3` default to `r=0`.
impl FromStr for PolarizedSurface {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut class = None;
        let mut l2 = None;
        let mut r = None;
        let mut pg = None;
        let mut q = None;

        fn set<T>(slot: &mut Option<T>, key: &str, value: T) -> Result<(), SurfaceError> {
            if slot.replace(value).is_some() {
                return Err(SurfaceError::DuplicateField(key.to_owned()));
            }
            Ok(())
        }
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T, SurfaceError> {
            value.parse().map_err(|_| SurfaceError::InvalidValue {
                key: key.to_owned(),
                value: value.to_owned(),
            })
        }

        for field in s.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| SurfaceError::MalformedField(field.to_owned()))?;
            match key {
                "class" => set(&mut class, key, value.parse::<SurfaceClass>()?)?,
                "l2" => set(&mut l2, key, num::<u64>(key, value)?)?,
                "r" => set(&mut r, key, num::<i64>(key, value)?)?,
                "pg" => set(&mut pg, key, num::<u64>(key, value)?)?,
                "q" => set(&mut q, key, num::<u64>(key, value)?)?,
                _ => return Err(SurfaceError::UnknownField(key.to_owned())),
            }
        }

        let class = class.ok_or(SurfaceError::MissingField("class"))?;
        let (l2, r) = match class {
            SurfaceClass::ProjectivePlane => (l2.unwrap_or(1), r.unwrap_or(-3)),
            SurfaceClass::Abelian | SurfaceClass::K3 => (l2.ok_or(SurfaceError::MissingField("l2"))?, r.unwrap_or(0)),
            SurfaceClass::GeneralType => (
                l2.ok_or(SurfaceError::MissingField("l2"))?,
                r.ok_or(SurfaceError::MissingField("r"))?,
            ),
        };
        let mut surface = PolarizedSurface::new(class, l2, r)?;
        surface.pg = pg;
        surface.q = q;
        Ok(surface)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleId {
    Parity,
    ClassConsistency,
    Noether,
    Bombieri,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: RuleId,
    pub message: String,
    pub reference: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: RuleId) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

/// Forced canonical multiple when `1 ≤ K² ≤ 4`: `K_S` must be primitive.
///
/// The only non-primitive option, `K_S = 2L` with `L² = 1`, fails the parity
/// rule.
pub fn primitive_canonical_rule(k2: u64) -> Result<i64, SurfaceError> {
    if !(1..=4).contains(&k2) {
        return Err(SurfaceError::PrimitivityNotClaimed(k2));
    }
    let survivors = canonical_multiple_candidates(k2);
    debug_assert_eq!(survivors, vec![(1, k2)]);
    Ok(1)
}

/// All `(r, L²)` with `r ≥ 1`, `r²·L² = k2` and `L²(1 + r)` even.
pub fn canonical_multiple_candidates(k2: u64) -> Vec<(i64, u64)> {
    (1u64..)
        .take_while(|r| r * r <= k2)
        .filter(|r| k2.is_multiple_of(r * r))
        .map(|r| (r, k2 / (r * r)))
        .filter(|(r, l2)| (l2 * (1 + r)) % 2 == 0)
        .map(|(r, l2)| (r as i64, l2))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gt(l2: u64, r: i64) -> PolarizedSurface {
        PolarizedSurface::general_type(l2, r).unwrap()
    }

    #[test]
    fn canonical_degree_examples() {
        assert_eq!(gt(2, 1).canonical_degree(), 2);
        assert_eq!(PolarizedSurface::projective_plane().canonical_degree(), 9);
        assert_eq!(gt(1, 3).canonical_degree(), 9);
        for r in -5..=5 {
            assert_eq!(gt(3, r).canonical_degree(), gt(3, -r).canonical_degree());
        }
    }

    #[test]
    fn validate_flags_each_rule() {
        let report = gt(1, 2).validate();
        assert!(report.has(RuleId::Parity));
        assert!(report.violations[0].message.contains("Riemann-Roch"));

        let report = gt(1, 1).with_pg(3).validate();
        assert_eq!(report.violations.len(), 1);
        assert!(report.has(RuleId::Noether));

        let report = gt(1, 1).with_q(1).validate();
        assert_eq!(report.violations.len(), 1);
        assert!(report.has(RuleId::Bombieri));

        assert!(gt(1, 0).validate().has(RuleId::ClassConsistency));
        let bad_plane = PolarizedSurface::new(SurfaceClass::ProjectivePlane, 4, -3).unwrap();
        assert!(bad_plane.validate().has(RuleId::ClassConsistency));
        let bad_k3 = PolarizedSurface::new(SurfaceClass::K3, 2, 1).unwrap();
        assert!(bad_k3.validate().has(RuleId::ClassConsistency));
    }

    #[test]
    fn reference_surfaces_validate() {
        assert!(PolarizedSurface::projective_plane().validate().is_valid());
        for l2 in [2, 4, 10] {
            assert!(PolarizedSurface::new(SurfaceClass::K3, l2, 0)
                .unwrap()
                .validate()
                .is_valid());
        }
        assert!(gt(1, 1).with_pg(2).with_q(0).validate().is_valid());
        assert!(gt(2, 1).validate().is_valid());
        // Noether boundary: p_g = K^2/2 + 2 is allowed.
        assert!(gt(2, 1).with_pg(3).validate().is_valid());
    }

    #[test]
    fn primitive_rule() {
        assert_eq!(primitive_canonical_rule(4), Ok(1));
        assert_eq!(primitive_canonical_rule(1), Ok(1));
        assert_eq!(primitive_canonical_rule(3), Ok(1));
        assert_eq!(primitive_canonical_rule(5), Err(SurfaceError::PrimitivityNotClaimed(5)));
        assert_eq!(canonical_multiple_candidates(4), vec![(1, 4)]);
        assert_eq!(canonical_multiple_candidates(8), vec![(1, 8), (2, 2)]);
        assert_eq!(canonical_multiple_candidates(9), vec![(1, 9), (3, 1)]);
    }

    #[test]
    fn parse_specs() {
        let s: PolarizedSurface = "class=gt l2=1 r=1 pg=2".parse().unwrap();
        assert_eq!(s, gt(1, 1).with_pg(2));
        let p2: PolarizedSurface = "class=p2".parse().unwrap();
        assert_eq!(p2, PolarizedSurface::projective_plane());
        let k3: PolarizedSurface = "class=k3 l2=4".parse().unwrap();
        assert_eq!(k3.r(), 0);
        assert_eq!(s.to_string().parse::<PolarizedSurface>().unwrap(), s);

        assert_eq!(
            "class=gt l2=1".parse::<PolarizedSurface>(),
            Err(SurfaceError::MissingField("r"))
        );
        assert_eq!(
            "class=gt l2=0 r=1".parse::<PolarizedSurface>(),
            Err(SurfaceError::NonPositiveDegree)
        );
        assert!(matches!(
            "class=foo".parse::<PolarizedSurface>(),
            Err(SurfaceError::UnknownClass(_))
        ));
        assert!(matches!(
            "class=gt l2=x r=1".parse::<PolarizedSurface>(),
            Err(SurfaceError::InvalidValue { .. })
        ));
        assert!(matches!(
            "class=gt l2 r=1".parse::<PolarizedSurface>(),
            Err(SurfaceError::MalformedField(_))
        ));
        assert!(matches!(
            "class=gt l2=1 l2=2 r=1".parse::<PolarizedSurface>(),
            Err(SurfaceError::DuplicateField(_))
        ));
        assert!(matches!(
            "class=gt l2=1 r=1 k=2".parse::<PolarizedSurface>(),
            Err(SurfaceError::UnknownField(_))
        ));
    }
}
