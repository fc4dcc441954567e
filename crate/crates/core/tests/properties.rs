mod common;

use common::*;
use gwcalc::boundary::{enumerate_partitions, partition_count, MarkSet};
use gwcalc::gw::{dimension_admissible, gw_p1};
use gwcalc::surfaces::CurveCounts;
use gwcalc::{Bidegree, Degree, ExponentVector, GwEngine, InvariantKey, KeyMode, Rational, TargetSpace};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rationals_stay_canonical(a in rational(), b in rational()) {
        check_rational_closure(&a, &b)?;
    }

    #[test]
    fn pascal_identity(n in 1i64..90, k in -3i64..95) {
        check_pascal(n, k)?;
    }

    #[test]
    fn leibniz_rule((a, b, var) in series_pair()) {
        check_leibniz(&a, &b, var)?;
    }

    #[test]
    fn mixed_partials_commute((a, i, j) in series_with_two_vars()) {
        check_mixed_partials(&a, i, j)?;
    }

    #[test]
    fn invariants_ignore_input_order((t, d, classes, shuffled) in shuffled_classes()) {
        check_permutation_invariance(GwEngine::global(), t, d, &classes, &shuffled)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn small_quantum_rings_are_associative((a, b, c) in ring_triple()) {
        check_small_associativity(&a, &b, &c)?;
    }

    #[test]
    fn inadmissible_keys_vanish((t, d, classes, _s) in shuffled_classes()) {
        let key = InvariantKey::from_classes(t, d, &classes).unwrap();
        if !dimension_admissible(&key) {
            prop_assert!(GwEngine::global().gw(&key).unwrap().is_zero());
        }
    }

    #[test]
    fn p1_invariants_vanish_off_the_two_families(d in 0u32..6, a0 in 0u32..6, a1 in 0u32..9) {
        let key = InvariantKey::new(
            TargetSpace::Projective(1),
            d.into(),
            ExponentVector::from_counts(vec![a0, a1]),
        ).unwrap();
        let on_family = (d == 0 && a0 == 2 && a1 == 1) || (d == 1 && a0 == 0 && a1 >= 1);
        let expected = if on_family { Rational::one() } else { Rational::zero() };
        prop_assert_eq!(gw_p1(&key).unwrap(), expected);
    }
}

/// Counts boundary terms by scanning every subset of the marks.
fn brute_force_partitions(n: u32, degree: Degree) -> usize {
    let splits: Vec<(bool, bool)> = match degree {
        Degree::Single(d) => (0..=d).map(|a| (a == 0, a == d)).collect(),
        Degree::Bi(b) => (0..=b.d)
            .flat_map(|x| (0..=b.e).map(move |y| (x == 0 && y == 0, x == b.d && y == b.e)))
            .collect(),
    };
    let mut count = 0;
    for mask in 0u32..(1 << n) {
        let in_a = |i: u32| mask >> i & 1 == 1;
        // marks 0, 1 pinned to A, marks 2, 3 pinned to B
        if !(in_a(0) && in_a(1) && !in_a(2) && !in_a(3)) {
            continue;
        }
        let size_a = mask.count_ones();
        let size_b = n - size_a;
        for &(a_zero, b_zero) in &splits {
            if (!a_zero || size_a >= 2) && (!b_zero || size_b >= 2) {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn partition_enumeration_matches_brute_force() {
    let pins = ["m1", "m2", "p1", "p2"];
    for n in 4..=10u32 {
        for d in 0..=3u32 {
            let listed = enumerate_partitions(&MarkSet::standard(n), d.into(), pins).unwrap();
            assert_eq!(listed.len(), brute_force_partitions(n, d.into()));
            assert_eq!(partition_count(n, d.into()).unwrap(), listed.len().into());
            assert!(listed.iter().all(|p| p.is_stable()));
        }
        for (d, e) in [(1, 0), (1, 1), (2, 1), (0, 3)] {
            let deg = Degree::Bi(Bidegree::new(d, e));
            let listed = enumerate_partitions(&MarkSet::standard(n), deg, pins).unwrap();
            assert_eq!(listed.len(), brute_force_partitions(n, deg));
        }
        // bidegree (d, 0) behaves like degree d
        let flat = enumerate_partitions(&MarkSet::standard(n), Bidegree::new(2, 0).into(), pins).unwrap();
        assert_eq!(flat.len(), brute_force_partitions(n, Degree::Single(2)));
    }
}

#[test]
fn quadric_counts_are_symmetric() {
    let oriented = CurveCounts::new(KeyMode::Oriented);
    for total in 1..=8i64 {
        for d in 0..=total {
            let e = total - d;
            assert_eq!(oriented.n_de(d, e).unwrap(), oriented.n_de(e, d).unwrap());
        }
    }
}

#[test]
fn three_point_invariants_are_normalised() {
    let engine = GwEngine::new();
    for r in 2..=5u32 {
        let t = TargetSpace::Projective(r);
        for i in 0..=r as usize {
            for j in i..=r as usize {
                for k in j..=r as usize {
                    for d in 0..=2u32 {
                        let key = InvariantKey::from_classes(t, d, &[i, j, k]).unwrap();
                        let v = engine.gw_pr(&key).unwrap();
                        let expected = if dimension_admissible(&key) { Rational::one() } else { Rational::zero() };
                        assert_eq!(v, expected, "{key}");
                    }
                }
            }
        }
    }
}
