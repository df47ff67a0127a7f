//! Integer helpers: square parts and exact rational square roots.

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Trial-division cap. Integers up to `TRIAL_LIMIT³` (10¹⁵) are split
/// exactly; past that the residue is accepted as the squarefree part, which
/// keeps the radical form correct, just not minimal.
const TRIAL_LIMIT: u64 = 100_000;

/// Writes `n = s² · t`, with `t` squarefree whenever `n ≤ 10¹⁵`.
pub(crate) fn square_part(n: &BigUint) -> (BigUint, BigUint) {
    if let Some(small) = n.to_u128() {
        let (s, t) = square_part_u128(small);
        return (BigUint::from(s), BigUint::from(t));
    }
    let mut rest = n.clone();
    let mut s = BigUint::one();
    let mut t = BigUint::one();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && pb_sq(p) <= rest {
        let pb = BigUint::from(p);
        let mut exp = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            exp += 1;
        }
        s *= pb.pow(exp / 2);
        if exp % 2 == 1 {
            t *= &pb;
        }
        p += 1;
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        s *= root;
    } else {
        t *= rest;
    }
    (s, t)
}

fn pb_sq(p: u64) -> BigUint {
    BigUint::from(p) * BigUint::from(p)
}

fn square_part_u128(n: u128) -> (u128, u128) {
    if n == 0 {
        return (0, 1);
    }
    let mut rest = n;
    let mut s = 1u128;
    let mut t = 1u128;
    let mut p = 2u128;
    // Primes above the cube root of n occur at most twice in total.
    while p <= TRIAL_LIMIT as u128 && p.checked_pow(3).is_some_and(|c| c <= n) && p * p <= rest {
        let mut exp = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            exp += 1;
        }
        s *= p.pow(exp / 2);
        if exp % 2 == 1 {
            t *= p;
        }
        p += 1;
    }
    let root = rest.sqrt();
    if root * root == rest {
        s *= root;
    } else {
        t *= rest;
    }
    (s, t)
}

/// `√q = outside · √t` for `q ≥ 0`; `t` is `None` when `q` is a perfect square.
pub(crate) fn rational_sqrt_parts(q: &BigRational) -> (BigRational, Option<BigInt>) {
    debug_assert!(q >= &BigRational::zero());
    if q.is_zero() {
        return (BigRational::zero(), None);
    }
    // √(n/d) = √(n·d) / d
    let nd = (q.numer() * q.denom()).magnitude().clone();
    let (s, t) = square_part(&nd);
    let outside = BigRational::new(BigInt::from(s), q.denom().clone());
    if t.is_one() {
        (outside, None)
    } else {
        (outside, Some(BigInt::from(t)))
    }
}

/// The rational square root of `q`, if it has one.
pub(crate) fn rational_sqrt_exact(q: &BigRational) -> Option<BigRational> {
    if q < &BigRational::zero() {
        return None;
    }
    let n = q.numer().magnitude();
    let d = q.denom().magnitude();
    let rn = n.sqrt();
    let rd = d.sqrt();
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(BigInt::from(rn), BigInt::from(rd)))
}

/// Largest `m ≥ 0` with `m² ≤ n`.
pub(crate) fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}
