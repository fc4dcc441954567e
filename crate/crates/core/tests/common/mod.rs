//! Strategies and property checks shared by the property tests and the
//! acceptance runner.
#![allow(dead_code)]

use gwcalc::arith::binomial;
use gwcalc::quantum::{small_qmul, RingElement};
use gwcalc::series::TruncatedSeries;
use gwcalc::{BigInt, Degree, GwEngine, InvariantKey, Rational, TargetSpace};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-2000i64..2000, 1i64..500).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
    while b != BigInt::from(0) {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}

fn is_canonical(x: &Rational) -> bool {
    let num = x.numer().clone();
    let num = if num < BigInt::from(0) { -num } else { num };
    x.denom() > &BigInt::from(0) && gcd(num, x.denom().clone()) == BigInt::from(1)
}

/// Field operations stay in lowest terms and survive both text forms.
pub fn check_rational_closure(a: &Rational, b: &Rational) -> Result<(), TestCaseError> {
    let mut results = vec![a + b, a - b, a * b, -a.clone()];
    if !b.is_zero() {
        results.push(a.checked_div(b).unwrap());
    }
    for x in results {
        prop_assert!(is_canonical(&x), "{x:?} not canonical");
        prop_assert_eq!(&x.to_string().parse::<Rational>().unwrap(), &x);
        prop_assert_eq!(&x.to_fraction_string().parse::<Rational>().unwrap(), &x);
    }
    prop_assert_eq!(&(a + b), &(b + a));
    prop_assert_eq!(&(a * b), &(b * a));
    Ok(())
}

pub fn check_pascal(n: i64, k: i64) -> Result<(), TestCaseError> {
    prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    Ok(())
}

/// Random series in `nvars` variables truncated at `order`.
pub fn series(nvars: usize, order: u32) -> impl Strategy<Value = TruncatedSeries> {
    let term = (proptest::collection::vec(0..=order, nvars), -20i64..20, 1i64..6);
    proptest::collection::vec(term, 0..12).prop_map(move |terms| {
        TruncatedSeries::from_terms(
            nvars,
            order.into(),
            terms
                .into_iter()
                .map(|(e, n, d)| (e, Rational::new(n, d).unwrap())),
        )
        .unwrap()
    })
}

pub fn series_pair() -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries, usize)> {
    (1usize..4, 1u32..6).prop_flat_map(|(m, order)| (series(m, order), series(m, order), 0..m))
}

pub fn check_leibniz(a: &TruncatedSeries, b: &TruncatedSeries, var: usize) -> Result<(), TestCaseError> {
    let lhs = a.checked_mul(b).unwrap().partial_derivative(var).unwrap();
    let da = a.partial_derivative(var).unwrap();
    let db = b.partial_derivative(var).unwrap();
    let rhs = da
        .checked_mul(b)
        .unwrap()
        .checked_add(&a.checked_mul(&db).unwrap())
        .unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn check_mixed_partials(a: &TruncatedSeries, i: usize, j: usize) -> Result<(), TestCaseError> {
    prop_assert_eq!(
        a.partial_derivatives(&[i, j]).unwrap(),
        a.partial_derivatives(&[j, i]).unwrap()
    );
    Ok(())
}

pub fn series_with_two_vars() -> impl Strategy<Value = (TruncatedSeries, usize, usize)> {
    (1usize..4, 2u32..7).prop_flat_map(|(m, order)| (series(m, order), 0..m, 0..m))
}

/// A class list on a small target together with a shuffled copy.
pub fn shuffled_classes() -> impl Strategy<Value = (TargetSpace, Degree, Vec<usize>, Vec<usize>)> {
    let projective = (2u32..=4, 0u32..=2).prop_flat_map(|(r, d)| {
        proptest::collection::vec(0..=r as usize, 1..8).prop_map(move |c| {
            (TargetSpace::Projective(r), Degree::Single(d), c)
        })
    });
    let quadric = (0u32..=2, 0u32..=2).prop_flat_map(|(d, e)| {
        proptest::collection::vec(0usize..4, 1..8).prop_map(move |c| {
            (TargetSpace::P1xP1, Degree::Bi(gwcalc::Bidegree::new(d, e)), c)
        })
    });
    prop_oneof![projective, quadric].prop_flat_map(|(t, d, c)| {
        (Just(t), Just(d), Just(c.clone()), Just(c).prop_shuffle())
    })
}

pub fn check_permutation_invariance(
    engine: &GwEngine,
    t: TargetSpace,
    d: Degree,
    classes: &[usize],
    shuffled: &[usize],
) -> Result<(), TestCaseError> {
    let a = InvariantKey::from_classes(t, d, classes).unwrap();
    let b = InvariantKey::from_classes(t, d, shuffled).unwrap();
    prop_assert_eq!(&a, &b);
    prop_assert_eq!(engine.gw(&a).unwrap(), engine.gw(&b).unwrap());
    Ok(())
}

/// A random element of a small quantum ring.
pub fn ring_element(target: TargetSpace) -> impl Strategy<Value = RingElement> {
    let m = target.basis_len();
    let params = match target {
        TargetSpace::Projective(_) => 1,
        TargetSpace::P1xP1 => 2,
    };
    proptest::collection::vec(
        (0..m, proptest::collection::vec(0u32..3, params), -9i64..10),
        0..5,
    )
    .prop_map(move |terms| {
        terms.into_iter().fold(RingElement::zero(target), |acc, (i, p, c)| {
            let t = RingElement::term(target, i, p, Rational::from(c)).unwrap();
            acc.checked_add(&t).unwrap()
        })
    })
}

pub fn ring_triple() -> impl Strategy<Value = (RingElement, RingElement, RingElement)> {
    let targets = prop_oneof![
        (2u32..=6).prop_map(TargetSpace::Projective),
        Just(TargetSpace::P1xP1)
    ];
    targets.prop_flat_map(|t| (ring_element(t), ring_element(t), ring_element(t)))
}

pub fn check_small_associativity(a: &RingElement, b: &RingElement, c: &RingElement) -> Result<(), TestCaseError> {
    let left = small_qmul(&small_qmul(a, b).unwrap(), c).unwrap();
    let right = small_qmul(a, &small_qmul(b, c).unwrap()).unwrap();
    prop_assert_eq!(left, right);
    prop_assert_eq!(small_qmul(a, b).unwrap(), small_qmul(b, a).unwrap());
    Ok(())
}
