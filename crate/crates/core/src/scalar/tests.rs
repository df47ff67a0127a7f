use super::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn s(text: &str) -> ExactScalar {
    text.parse().unwrap()
}

#[test]
fn make_rational_canonicalizes() {
    assert_eq!(ExactScalar::from_ratio(1, 2).unwrap().as_rational(), Some(q(1, 2)));
    assert_eq!(ExactScalar::from_ratio(2, 4).unwrap().as_rational(), Some(q(1, 2)));
    assert_eq!(ExactScalar::from_ratio(-3, -6).unwrap().as_rational(), Some(q(1, 2)));
    assert_eq!(ExactScalar::from_ratio(1, 0).unwrap_err(), ScalarError::ZeroDenominator);
}

#[test]
fn sqrt_simplifies_perfect_squares() {
    assert_eq!(ratio(9, 4).sqrt().unwrap().as_rational(), Some(q(3, 2)));
    assert_eq!(
        ExactScalar::integer(81).fourth_root().unwrap().as_rational(),
        Some(q(3, 1))
    );
    assert_eq!(
        ExactScalar::integer(16).fourth_root().unwrap().as_rational(),
        Some(q(2, 1))
    );
    assert_eq!(ExactScalar::integer(8).sqrt().unwrap().to_string(), "2*sqrt(2)");
    assert_eq!(ratio(1, 2).sqrt().unwrap().to_string(), "1/2*sqrt(2)");
}

#[test]
fn sqrt_errors() {
    assert!(matches!(
        ExactScalar::integer(-1).sqrt(),
        Err(ScalarError::NegativeRadicand(_))
    ));
    let r = ExactScalar::integer(2).fourth_root().unwrap();
    assert_eq!(r.depth(), 2);
    assert_eq!(r.sqrt().unwrap_err(), ScalarError::DepthExceeded { depth: 3 });
    // Value-level simplification happens before the depth check.
    let v = ExactScalar::integer(256).fourth_root().unwrap().sqrt().unwrap();
    assert_eq!(v.as_rational(), Some(q(2, 1)));
}

#[test]
fn denesting() {
    // √(3 + 2√2) = 1 + √2
    let x = s("sqrt(3 + 2*sqrt(2))");
    assert!(x.is_identical(&s("1 + sqrt(2)")));
    assert_eq!(x.depth(), 1);
    assert_eq!(s("sqrt(13 + sqrt(25))").to_string(), "3*sqrt(2)");
}

#[test]
fn fourth_root_of_two_decimal_prefix() {
    let r = ExactScalar::integer(2).fourth_root().unwrap();
    assert_eq!(r.to_decimal(4), "1.1892");
    // Oracle: rounding to 1.1892 means 1.18915 ≤ ⁴√2 < 1.18925.
    let lo = q(118915, 100000);
    let hi = q(118925, 100000);
    let two = q(2, 1);
    assert!(lo.pow(4) <= two && two < hi.pow(4));
}

#[test]
fn compare_examples() {
    let fourth16 = ExactScalar::integer(16).fourth_root().unwrap();
    assert_eq!(
        (ExactScalar::one() + fourth16).recip().unwrap().compare(&ratio(1, 3)),
        Ordering::Equal
    );

    let lhs = s("2/(1 + sqrt(13 + sqrt(25)))");
    let rhs = ExactScalar::one() / (ExactScalar::one() + ExactScalar::integer(25).fourth_root().unwrap());
    assert_eq!(lhs.compare(&rhs), Ordering::Greater);
    // Oracle in floating point: the gap is far above f64 error.
    let lf = 2.0 / (1.0 + (13.0f64 + 5.0).sqrt());
    let rf = 1.0 / (1.0 + 25f64.powf(0.25));
    assert!((lf - 0.3815).abs() < 1e-4 && (rf - 0.3090).abs() < 1e-4);

    assert_eq!(s("2/(1 + sqrt(17))").compare(&ratio(1, 2)), Ordering::Less);
}

#[test]
fn to_decimal_examples() {
    assert_eq!(ratio(1, 2).to_decimal(3), "0.500");
    assert_eq!(ratio(2, 3).to_decimal(2), "0.67");
    assert_eq!(ratio(-2, 3).to_decimal(2), "-0.67");
    assert_eq!(ratio(1, 8).to_decimal(2), "0.13");
    assert_eq!(ratio(-1, 1000).to_decimal(2), "0.00");
    assert_eq!(ExactScalar::integer(7).to_decimal(0), "7");

    let x = s("1/(1 + sqrt(sqrt(2)))");
    assert_eq!(x.to_decimal(4), "0.4568");
    // Oracle: 0.45675 ≤ x < 0.45685  ⇔  1/0.45685 − 1 < ⁴√2 ≤ 1/0.45675 − 1.
    let t_lo = q(100000, 45685) - q(1, 1);
    let t_hi = q(100000, 45675) - q(1, 1);
    assert!(t_lo.pow(4) < q(2, 1) && q(2, 1) <= t_hi.pow(4));
}

#[test]
fn decimal_ties_round_away_from_zero_exactly() {
    // 1/2 + tiny irrational offsets either way of a tie at 1 digit.
    assert_eq!(ratio(1, 4).to_decimal(1), "0.3");
    assert_eq!(ratio(-1, 4).to_decimal(1), "-0.3");
    let below = ratio(1, 4) - s("sqrt(2)") * ratio(1, 10i64.pow(12));
    assert_eq!(below.to_decimal(1), "0.2");
}

#[test]
fn value_equal_forms_compare_equal() {
    assert_eq!(s("sqrt(4)"), ExactScalar::integer(2));
    assert_eq!(s("sqrt(3 + 2*sqrt(2)) - sqrt(2)"), ExactScalar::one());
    assert_eq!(s("sqrt(2)*sqrt(3)"), s("sqrt(6)"));
    assert_eq!(s("sqrt(sqrt(2))*sqrt(sqrt(2))"), s("sqrt(2)"));
    let a = s("sqrt(5 + sqrt(3))");
    assert_eq!(&a * &a, s("5 + sqrt(3)"));
}

#[test]
fn reciprocal_roundtrip() {
    for text in [
        "1 + sqrt(sqrt(2))",
        "2 - sqrt(3)",
        "sqrt(13 + sqrt(7)) + sqrt(5)",
        "3/7",
    ] {
        let x = s(text);
        let inv = x.recip().unwrap();
        assert_eq!(&x * &inv, ExactScalar::one(), "{text}");
    }
    assert_eq!(s("sqrt(2) - sqrt(2)").recip().unwrap_err(), ScalarError::DivisionByZero);
    assert_eq!(
        s("sqrt(3 + 2*sqrt(2)) - 1 - sqrt(2)").recip().unwrap_err(),
        ScalarError::DivisionByZero
    );
}

#[test]
fn algebraic_sign_on_dependent_radicals() {
    // √(1+√2)·√(√2−1) = 1, but the stored form keeps both nested radicals.
    let prod = s("sqrt(1 + sqrt(2)) * sqrt(sqrt(2) - 1)");
    assert!(!prod.is_rational());
    let zero = &prod - ExactScalar::one();
    assert_eq!(zero.signum(), Ordering::Equal);
    assert_eq!(prod, ExactScalar::one());
    let eps = ratio(1, 10i64.pow(18));
    let tiny = &zero + &(&eps * &eps * &eps * &eps * &eps) * &s("sqrt(sqrt(3))");
    assert_eq!(tiny.signum(), Ordering::Greater);
    let tiny_neg = &zero - &(&eps * &eps * &eps * &eps * &eps) * &s("sqrt(sqrt(3))");
    assert_eq!(tiny_neg.signum(), Ordering::Less);
    assert!(zero.recip().is_err());
    assert_eq!(prod.recip().unwrap(), ExactScalar::one());
}

#[test]
fn parse_rejects_garbage() {
    assert!("".parse::<ExactScalar>().is_err());
    assert!("1 +".parse::<ExactScalar>().is_err());
    assert!("sqrt 2".parse::<ExactScalar>().is_err());
    assert!("1/0".parse::<ExactScalar>().is_err());
    assert!("sqrt(-2)".parse::<ExactScalar>().is_err());
    assert!("2 3".parse::<ExactScalar>().is_err());
    assert_eq!(s("1.25"), ratio(5, 4));
}

#[test]
fn reciprocal_with_dependent_surds() {
    // √29·√795 = √23055: eliminating √23055 alone would bring it back.
    let x = s("-2446/25 + 4892/125*sqrt(29) + 16/5*sqrt(795) - 32/25*sqrt(23055)");
    let r = x.recip().unwrap();
    assert_eq!(&r * &x, ExactScalar::one());
    let y = s("sqrt(6) + sqrt(10) + sqrt(15)");
    assert_eq!(&y.recip().unwrap() * &y, ExactScalar::one());
    assert_eq!((&y - &y).signum(), Ordering::Equal);
}
