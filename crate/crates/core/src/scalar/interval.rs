//! Closed intervals with dyadic endpoints `n·2^-bits`, rounded outward.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::integer::isqrt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Precision(u32);

impl Precision {
    pub(crate) fn bits(bits: u32) -> Self {
        Precision(bits)
    }
}

/// `[lo·2^-bits, hi·2^-bits]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn shr_floor(n: &BigInt, bits: u32) -> BigInt {
    let (q, _) = n.div_mod_floor(&(BigInt::from(1u8) << bits));
    q
}

fn shr_ceil(n: &BigInt, bits: u32) -> BigInt {
    -shr_floor(&-n, bits)
}

impl Interval {
    pub(crate) fn point(q: &BigRational, prec: Precision) -> Self {
        let scaled = q.numer() << prec.0;
        let (lo, rem) = scaled.div_mod_floor(q.denom());
        let hi = if rem.is_zero() { lo.clone() } else { &lo + 1 };
        Interval { lo, hi, bits: prec.0 }
    }

    pub(crate) fn zero(prec: Precision) -> Self {
        Interval {
            lo: BigInt::zero(),
            hi: BigInt::zero(),
            bits: prec.0,
        }
    }

    pub(crate) fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub(crate) fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub(crate) fn lo(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::from(1u8) << self.bits)
    }

    pub(crate) fn hi(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::from(1u8) << self.bits)
    }

    pub(crate) fn add(&self, other: &Interval) -> Interval {
        debug_assert_eq!(self.bits, other.bits);
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            bits: self.bits,
        }
    }

    pub(crate) fn mul(&self, other: &Interval) -> Interval {
        debug_assert_eq!(self.bits, other.bits);
        let (lo, hi) = if !self.lo.is_negative() && !other.lo.is_negative() {
            (&self.lo * &other.lo, &self.hi * &other.hi)
        } else {
            let products = [
                &self.lo * &other.lo,
                &self.lo * &other.hi,
                &self.hi * &other.lo,
                &self.hi * &other.hi,
            ];
            let lo = products.iter().min().expect("four products").clone();
            let hi = products.iter().max().expect("four products").clone();
            (lo, hi)
        };
        Interval {
            lo: shr_floor(&lo, self.bits),
            hi: shr_ceil(&hi, self.bits),
            bits: self.bits,
        }
    }

    /// Encloses `√x` for every `x ≥ 0` in `self`.
    pub(crate) fn sqrt(&self) -> Interval {
        let root = |n: &BigInt| BigInt::from(isqrt(&(n.magnitude() << self.bits)));
        let lo = if self.lo.is_positive() {
            root(&self.lo)
        } else {
            BigInt::zero()
        };
        let hi = if self.hi.is_positive() {
            root(&self.hi) + 1
        } else {
            BigInt::zero()
        };
        Interval {
            lo,
            hi,
            bits: self.bits,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn sqrt_encloses_two() {
        let iv = Interval::point(&int(2), Precision::bits(40)).sqrt();
        assert!(iv.lo() * iv.lo() <= int(2));
        assert!(iv.hi() * iv.hi() >= int(2));
        assert!(iv.hi() - iv.lo() <= BigRational::new(1.into(), BigInt::from(1u64 << 38)));
    }

    #[test]
    fn point_rounds_outward() {
        let third = BigRational::new(1.into(), 3.into());
        let iv = Interval::point(&third, Precision::bits(10));
        assert!(iv.lo() < third && third < iv.hi());
        let neg = Interval::point(&-third.clone(), Precision::bits(10));
        assert!(neg.lo() < -third.clone() && -third < neg.hi());
    }

    #[test]
    fn mul_handles_mixed_signs() {
        let p = Precision::bits(8);
        let a = Interval {
            lo: BigInt::from(-2) << 8,
            hi: BigInt::from(3) << 8,
            bits: 8,
        };
        let b = Interval {
            lo: BigInt::from(-5) << 8,
            hi: BigInt::from(1) << 8,
            bits: 8,
        };
        let prod = a.mul(&b);
        assert_eq!(prod.lo(), int(-15));
        assert_eq!(prod.hi(), int(10));
        let tiny = Interval::point(&BigRational::new((-1).into(), 1000.into()), p);
        let sq = tiny.mul(&tiny);
        assert!(sq.lo() <= BigRational::new(1.into(), 1_000_000.into()));
        assert!(sq.hi() >= BigRational::new(1.into(), 1_000_000.into()));
    }
}
