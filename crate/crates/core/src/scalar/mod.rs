//! Exact real numbers built from rationals with `+`, `×` and square roots
//! nested at most twice.
//!
//! Every bound in this crate lives in this class: rationals, `√n`,
//! `√(a + √b)`, `⁴√n` and their quotients. Values are stored as multilinear
//! polynomials in radical atoms (see [`poly`]); reciprocals are formed by
//! conjugate rationalization so the class stays closed under division.
//!
//! Ordering is decided exactly. Dyadic interval enclosures at 64, 128 and
//! 256 bits resolve the sign of a difference in the common case; ties and
//! near-ties fall through to an algebraic sign procedure that never guesses.

mod integer;
mod interval;
mod parse;
mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use interval::Precision;
use poly::Poly;

pub use parse::ParseScalarError;

/// Deepest square-root nesting a scalar may carry.
pub const MAX_SQRT_DEPTH: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative value: {0}")]
    NegativeRadicand(String),
    #[error("square-root nesting depth {depth} exceeds the limit of {MAX_SQRT_DEPTH}")]
    DepthExceeded { depth: usize },
}

/// An exact real number from the depth-2 radical class.
///
/// Equality and ordering compare values, not representations:
/// `sqrt(4) == 2` holds.
#[derive(Clone)]
pub struct ExactScalar(Poly);

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar(Poly::zero())
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(n: i64) -> Self {
        ExactScalar(Poly::constant(BigRational::from_integer(n.into())))
    }

    /// `n / d` in lowest terms with a positive denominator.
    pub fn from_ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self, ScalarError> {
        let d = d.into();
        if d.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        Ok(Self::rational(BigRational::new(n.into(), d)))
    }

    pub fn rational(q: BigRational) -> Self {
        ExactScalar(Poly::constant(q))
    }

    /// The rational value, when the representation is a bare constant.
    ///
    /// A scalar such as `sqrt(3 + 2*sqrt(2)) - sqrt(2)` has value 1 but may
    /// not be recognized here; use [`ExactScalar::compare`] for value tests.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.0.as_rational()
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Square-root nesting depth of the stored form.
    pub fn depth(&self) -> usize {
        self.0.depth()
    }

    pub fn signum(&self) -> Ordering {
        self.0.signum()
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn sqrt(&self) -> Result<Self, ScalarError> {
        match self.signum() {
            Ordering::Less => return Err(ScalarError::NegativeRadicand(self.to_string())),
            Ordering::Equal => return Ok(Self::zero()),
            Ordering::Greater => {}
        }
        let root = self.0.sqrt_nonneg();
        let depth = root.depth();
        if depth > MAX_SQRT_DEPTH {
            return Err(ScalarError::DepthExceeded { depth });
        }
        Ok(ExactScalar(root))
    }

    pub fn fourth_root(&self) -> Result<Self, ScalarError> {
        self.sqrt()?.sqrt()
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        self.0.recip().map(ExactScalar).ok_or(ScalarError::DivisionByZero)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn compare(&self, other: &Self) -> Ordering {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => self.0.sub(&other.0).signum(),
        }
    }

    /// Decimal expansion with `digits` places after the point, correctly
    /// rounded (ties away from zero).
    pub fn to_decimal(&self, digits: usize) -> String {
        let negative = self.signum() == Ordering::Less;
        let magnitude = if negative { self.0.neg() } else { self.0.clone() };
        let ten_pow = BigInt::from(10u8).pow(digits as u32);
        let scaled = magnitude.scale(&BigRational::from_integer(ten_pow.clone()));
        let rounded = round_half_up(&scaled, digits);

        let (int_part, frac_part) = rounded.div_rem(&ten_pow);
        let mut out = String::new();
        if negative && !rounded.is_zero() {
            out.push('-');
        }
        out.push_str(&int_part.to_string());
        if digits > 0 {
            out.push('.');
            out.push_str(&format!("{:0>width$}", frac_part.to_string(), width = digits));
        }
        out
    }

    /// Nearest `f64`; for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        let iv = self.0.enclose(Precision::bits(80));
        let mid = (iv.lo() + iv.hi()) / BigRational::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Same stored form, not merely the same value.
    pub fn is_identical(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

/// The integer `c` with `c − ½ ≤ x < c + ½`, for `x ≥ 0`.
fn round_half_up(x: &Poly, digits: usize) -> BigInt {
    let half = BigRational::new(1.into(), 2.into());
    let bits = 64 + (digits as u32) * 4;
    let iv = x.enclose(Precision::bits(bits));
    let mut c = (iv.lo() + &half).floor().to_integer();
    let c_hi = (iv.hi() + &half).floor().to_integer();
    if c == c_hi && iv.lo() >= BigRational::from_integer(c.clone()) - &half {
        // The whole enclosure rounds to c.
        return c;
    }
    loop {
        let lower = BigRational::from_integer(c.clone()) - &half;
        if x.sub(&Poly::constant(lower)).signum() == Ordering::Less {
            c -= 1;
            continue;
        }
        let upper = BigRational::from_integer(c.clone()) + &half;
        if x.sub(&Poly::constant(upper)).signum() != Ordering::Less {
            c += 1;
            continue;
        }
        return c;
    }
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for ExactScalar {}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactScalar({})", self.0)
    }
}

impl FromStr for ExactScalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(q: BigRational) -> Self {
        Self::rational(q)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| ExactScalar(a.0.add(&b.0)));
forward_binop!(Sub, sub, |a, b| ExactScalar(a.0.sub(&b.0)));
forward_binop!(Mul, mul, |a, b| ExactScalar(a.0.mul(&b.0)));
// Panics on a zero divisor, like integer division; see `checked_div`.
forward_binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division of ExactScalar by zero"));

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(self.0.neg())
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(self.0.neg())
    }
}

/// Shorthand for an integer ratio known to have a nonzero denominator.
pub fn ratio(n: i64, d: i64) -> ExactScalar {
    assert!(d != 0, "ratio with zero denominator");
    ExactScalar::rational(BigRational::new(n.into(), d.into()))
}

#[cfg(test)]
mod tests;
