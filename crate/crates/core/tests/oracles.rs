//! Cross-checks against values computed by independent means.

use gwcalc::arith::binomial;
use gwcalc::gw::{collected_invariant, dimension_admissible};
use gwcalc::surfaces::{n_d, n_de};
use gwcalc::{BigInt, Bidegree, ExponentVector, GwEngine, InvariantKey, Rational, TargetSpace};

/// Plane counts from the textbook form of the recursion,
/// `N_d = Σ N_a N_b (a²b² C(3d-4, 3a-2) - a³b C(3d-4, 3a-1))`.
fn kontsevich_textbook(max_d: i64) -> Vec<BigInt> {
    let mut n = vec![BigInt::from(0), BigInt::from(1)];
    for d in 2..=max_d {
        let mut acc = BigInt::from(0);
        for a in 1..d {
            let b = d - a;
            let t1 = BigInt::from(a * a * b * b) * binomial(3 * d - 4, 3 * a - 2);
            let t2 = BigInt::from(a * a * a * b) * binomial(3 * d - 4, 3 * a - 1);
            acc += &n[a as usize] * &n[b as usize] * (t1 - t2);
        }
        n.push(acc);
    }
    n
}

#[test]
fn plane_counts_match_textbook_form() {
    let oracle = kontsevich_textbook(12);
    for d in 1..=12 {
        assert_eq!(n_d(d).unwrap(), oracle[d as usize], "N_{d}");
    }
}

/// Degree of a product of special Schubert classes `σ_k` in `G(2, r+1)`,
/// by repeated Pieri. A line meets a general codimension-`c` linear space
/// along `σ_{c-1}`.
fn schubert_line_count(r: u32, specials: &[u32]) -> BigInt {
    let top = r - 1;
    let mut classes: std::collections::BTreeMap<(u32, u32), BigInt> = Default::default();
    classes.insert((0, 0), BigInt::from(1));
    for &k in specials {
        let mut next: std::collections::BTreeMap<(u32, u32), BigInt> = Default::default();
        for (&(l1, l2), c) in &classes {
            for m1 in l1..=top {
                let m2 = (l1 + l2 + k) as i64 - m1 as i64;
                if m2 < l2 as i64 || m2 > l1 as i64 || m2 > m1 as i64 {
                    continue;
                }
                *next.entry((m1, m2 as u32)).or_default() += c;
            }
        }
        classes = next;
    }
    classes.get(&(top, top)).cloned().unwrap_or_default()
}

#[test]
fn schubert_oracle_sanity() {
    // lines meeting four lines in ℙ³
    assert_eq!(schubert_line_count(3, &[1, 1, 1, 1]), BigInt::from(2));
    assert_eq!(schubert_line_count(2, &[1, 1]), BigInt::from(1));
}

fn exponent_vectors(len: usize, total: u32) -> Vec<Vec<u32>> {
    if len == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|a| {
            exponent_vectors(len - 1, total - a).into_iter().map(move |mut rest| {
                rest.insert(0, a);
                rest
            })
        })
        .collect()
}

#[test]
fn line_invariants_match_schubert_calculus() {
    let engine = GwEngine::new();
    for r in 2..=5u32 {
        let t = TargetSpace::Projective(r);
        for n in 2..=8u32 {
            for exps in exponent_vectors(r as usize + 1, n) {
                // divisors and the fundamental class are handled by reduction
                if exps[0] > 0 || exps[1] > 0 {
                    continue;
                }
                let key = InvariantKey::new(t, 1.into(), ExponentVector::from_counts(exps.clone()))
                    .unwrap();
                if !dimension_admissible(&key) {
                    continue;
                }
                let specials: Vec<u32> = key
                    .exponents()
                    .to_classes()
                    .into_iter()
                    .map(|c| c as u32 - 1)
                    .collect();
                let expected = schubert_line_count(r, &specials);
                assert_eq!(engine.gw_pr(&key).unwrap(), Rational::from(expected), "{key}");
            }
        }
    }
}

#[test]
fn classical_space_curve_counts() {
    let p3 = TargetSpace::Projective(3);
    let e = GwEngine::new();
    let key = |d: u32, powers: &[(usize, u32)]| InvariantKey::from_powers(p3, d, powers).unwrap();
    // conics meeting eight general lines
    assert_eq!(e.gw_pr(&key(2, &[(2, 8)])).unwrap(), Rational::from(92));
    // twisted cubics through six points
    assert_eq!(e.gw_pr(&key(3, &[(3, 6)])).unwrap(), Rational::from(1));
    // twisted cubics meeting twelve general lines
    assert_eq!(e.gw_pr(&key(3, &[(2, 12)])).unwrap(), Rational::from(80160));
}

#[test]
fn plane_invariants_agree_with_counts() {
    let e = GwEngine::new();
    let p2 = TargetSpace::Projective(2);
    for d in 1..=5u32 {
        let key = InvariantKey::from_powers(p2, d, &[(2, 3 * d - 1)]).unwrap();
        assert_eq!(e.gw_pr(&key).unwrap(), Rational::from(n_d(d.into()).unwrap()));
    }
}

#[test]
fn quadric_invariants_agree_with_counts() {
    let e = GwEngine::new();
    for total in 1..=5u32 {
        for d in 0..=total {
            let b = Bidegree::new(d, total - d);
            let key = InvariantKey::from_powers(TargetSpace::P1xP1, b, &[(3, 2 * total - 1)]).unwrap();
            let expect = n_de(d.into(), (total - d).into()).unwrap();
            assert_eq!(e.gw_p1x1(&key).unwrap(), Rational::from(expect));
        }
    }
}

#[test]
fn collected_invariants() {
    let p2 = TargetSpace::Projective(2);
    let ev = |v: Vec<u32>| ExponentVector::from_counts(v);
    // (h²)^8·(h¹)^2 selects d = 3 and picks up 3² from the divisors
    assert_eq!(collected_invariant(p2, &ev(vec![0, 2, 8])).unwrap(), Rational::from(108));
    assert_eq!(collected_invariant(p2, &ev(vec![0, 0, 8])).unwrap(), Rational::from(12));
    assert_eq!(collected_invariant(p2, &ev(vec![5, 0, 0])).unwrap(), Rational::from(0));
    assert_eq!(
        collected_invariant(TargetSpace::P1xP1, &ev(vec![0, 0, 0, 3])).unwrap(),
        Rational::from(1)
    );
}

#[test]
fn memoised_and_cold_engines_agree() {
    let warm = GwEngine::new();
    let p3 = TargetSpace::Projective(3);
    let keys: Vec<InvariantKey> = [
        &[(2u32, 8u32)][..],
        &[(3, 2), (2, 4)],
        &[(3, 1), (2, 6)],
        &[(3, 4)],
    ]
    .iter()
    .map(|pw| {
        let powers: Vec<(usize, u32)> = pw.iter().map(|&(i, a)| (i as usize, a)).collect();
        InvariantKey::from_powers(p3, 2, &powers).unwrap()
    })
    .collect();
    let warm_values: Vec<Rational> = keys.iter().map(|k| warm.gw_pr(k).unwrap()).collect();
    for (k, v) in keys.iter().zip(&warm_values) {
        assert_eq!(&GwEngine::new().gw_pr(k).unwrap(), v);
        assert_eq!(&warm.gw_pr(k).unwrap(), v);
    }
}
