//! Helpers shared by the integration test targets.

#![allow(dead_code)]

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use seshadri_core::scalar::ratio;
use seshadri_core::{ExactScalar, PolarizedSurface, SurfaceClass};

fn small_ratio<R: Rng>(rng: &mut R) -> ExactScalar {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn positive_ratio<R: Rng>(rng: &mut R) -> ExactScalar {
    ratio(rng.gen_range(1..=30), rng.gen_range(1..=4))
}

/// A single term: a rational, a square root of a rational, or a square root
/// of `a + b√c`.
fn atom<R: Rng>(rng: &mut R) -> ExactScalar {
    match rng.gen_range(0..3) {
        0 => small_ratio(rng),
        1 => positive_ratio(rng).sqrt().unwrap(),
        _ => {
            let inner = positive_ratio(rng) + small_ratio(rng) * positive_ratio(rng).sqrt().unwrap();
            let inner = if inner.signum() == Ordering::Less {
                -inner
            } else {
                inner
            };
            inner.sqrt().unwrap()
        }
    }
}

/// A random real with square roots nested at most twice.
pub fn random_expression<R: Rng>(rng: &mut R) -> ExactScalar {
    let mut x = small_ratio(rng) * atom(rng);
    for _ in 0..rng.gen_range(0..3) {
        let y = atom(rng);
        x = match rng.gen_range(0..3) {
            0 => x + y,
            1 => x - y,
            _ => x * y,
        };
    }
    x
}

/// Parses a plain decimal string such as `-0.4568` into an exact rational.
pub fn decimal_to_rational(s: &str) -> BigRational {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    let digits: BigInt = format!("{int_part}{frac_part}").parse().unwrap();
    let scale = BigInt::from(10).pow(frac_part.len() as u32);
    let q = BigRational::new(digits, scale);
    if neg {
        -q
    } else {
        q
    }
}

/// A random surface that passes validation.
pub fn random_valid_surface<R: Rng>(rng: &mut R) -> PolarizedSurface {
    loop {
        let s = match rng.gen_range(0..4) {
            0 => PolarizedSurface::projective_plane(),
            1 => PolarizedSurface::new(SurfaceClass::Abelian, 2 * rng.gen_range(1..=20), 0).unwrap(),
            2 => PolarizedSurface::new(SurfaceClass::K3, 2 * rng.gen_range(1..=20), 0).unwrap(),
            _ => PolarizedSurface::general_type(rng.gen_range(1..=30), rng.gen_range(1..=12)).unwrap(),
        };
        if s.validate().is_valid() {
            return s;
        }
    }
}

/// Minimum of `pL²/m` over `p ≤ p_max` and every `m ≥ 1` with
/// `m(m−1) ≤ 2 + p(p+r)L²`, in plain rationals.
pub fn brute_force_infimum(s: &PolarizedSurface, p_max: u64) -> BigRational {
    let l2 = BigInt::from(s.l2());
    let r = BigInt::from(s.r());
    let mut best: Option<BigRational> = None;
    for p in 1..=p_max {
        let p = BigInt::from(p);
        let cap = BigInt::from(2) + &p * (&p + &r) * &l2;
        let mut m = BigInt::from(1);
        while &m * (&m - 1) <= cap {
            let q = BigRational::new(&p * &l2, m.clone());
            if best.as_ref().is_none_or(|b| q < *b) {
                best = Some(q);
            }
            m += 1;
        }
    }
    best.expect("p_max >= 1")
}
