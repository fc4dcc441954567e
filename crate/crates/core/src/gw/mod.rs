//! Genus-zero Gromov–Witten invariants of ℙʳ and ℙ¹×ℙ¹.
//!
//! Every evaluation starts with the dimension gate: an invariant vanishes
//! unless the codimensions of its inputs add up to the dimension of the
//! space of stable maps. Fundamental classes and divisors are then stripped
//! (the first kills the invariant outside degree zero, each divisor
//! contributes its intersection number with the curve class). What is left
//! on ℙ¹×ℙ¹ is a pure point-class invariant, i.e. a curve count `N_(d,e)`.
//! On ℙʳ the remaining classes all have codimension at least two and are
//! fed to the reconstruction recursion in [`GwEngine`].

mod key;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

pub use key::{ExponentVector, InvariantKey};

use crate::arith::{binomial, BigInt, Rational};
use crate::error::GeometryError;
use crate::space::{Bidegree, Degree, TargetSpace};
use crate::surfaces::CurveCounts;

/// Dimension of the space of `n`-pointed genus-zero stable maps.
pub fn dim_moduli(target: TargetSpace, degree: Degree, n: u32) -> Result<i64, GeometryError> {
    if !degree.matches(target) {
        return Err(GeometryError::DegreeMismatch {
            target: target.to_string(),
            degree: degree.to_string(),
        });
    }
    if degree.is_zero() && n < 3 {
        return Err(GeometryError::NoStableMaps(n));
    }
    let n = i64::from(n);
    Ok(match (target, degree) {
        (TargetSpace::Projective(r), Degree::Single(d)) => {
            let (r, d) = (i64::from(r), i64::from(d));
            r * d + r + d + n - 3
        }
        (TargetSpace::P1xP1, Degree::Bi(b)) => n + 2 * i64::from(b.d) + 2 * i64::from(b.e) - 1,
        _ => unreachable!("checked by Degree::matches"),
    })
}

/// Whether the input codimensions fill the moduli space exactly.
pub fn dimension_admissible(key: &InvariantKey) -> bool {
    match dim_moduli(key.target(), key.degree(), key.n()) {
        Ok(dim) => dim >= 0 && key.codim_sum() == dim as u64,
        Err(_) => false,
    }
}

/// Strips fundamental classes and divisors from `key`.
///
/// Returns the scalar picked up along the way and a key whose inputs all
/// have codimension at least two. Degree-zero three-point keys are returned
/// unchanged. A zero multiplier means the invariant vanishes.
pub fn reduce_invariant(key: &InvariantKey) -> (BigInt, InvariantKey) {
    let target = key.target();
    let n = key.n();
    if key.degree().is_zero() && n == 3 {
        return (BigInt::one(), key.clone());
    }
    let mut exps = key.exponents().clone();
    let mut mult = if exps.get(0) > 0 || key.degree().is_zero() {
        BigInt::zero()
    } else {
        BigInt::one()
    };
    exps.set(0, 0);
    match (target, key.degree()) {
        (TargetSpace::Projective(_), Degree::Single(d)) => {
            mult *= BigInt::from(d).pow(exps.get(1));
            exps.set(1, 0);
        }
        (TargetSpace::P1xP1, Degree::Bi(b)) => {
            // T_1 meets a (d, e) curve in e points, T_2 in d points; a rule
            // class against a zero degree component admits no maps at all
            mult *= BigInt::from(b.e).pow(exps.get(1));
            mult *= BigInt::from(b.d).pow(exps.get(2));
            exps.set(1, 0);
            exps.set(2, 0);
        }
        _ => unreachable!("key construction enforces matching degree"),
    }
    (mult, key.with_exponents(exps))
}

/// Closed form for ℙ¹: only `I_0(h¹·h⁰·h⁰)` and `I_1((h¹)ⁿ)`, `n ≥ 1`,
/// are non-zero, and both equal one.
pub fn gw_p1(key: &InvariantKey) -> Result<Rational, GeometryError> {
    if key.target() != TargetSpace::Projective(1) {
        return Err(GeometryError::UnsupportedTarget(key.target().to_string()));
    }
    let a = key.exponents().counts();
    let hit = match key.degree() {
        Degree::Single(0) => a == [2, 1],
        Degree::Single(1) => a[0] == 0 && a[1] >= 1,
        _ => false,
    };
    Ok(if hit { Rational::one() } else { Rational::zero() })
}

/// Reduced ℙʳ cache key `(r, d, exponents)`.
pub type PrKey = (u32, u32, Vec<u32>);

/// Memoising evaluator for genus-zero invariants.
///
/// The ℙʳ cache stores reduced keys only (no fundamental or divisor
/// classes), each written once.
#[derive(Debug)]
pub struct GwEngine {
    counts: Arc<CurveCounts>,
    pr_cache: Mutex<HashMap<PrKey, Rational>>,
}

impl Default for GwEngine {
    fn default() -> Self {
        GwEngine::new()
    }
}

impl GwEngine {
    pub fn new() -> Self {
        GwEngine::with_counts(Arc::new(CurveCounts::default()))
    }

    pub fn with_counts(counts: Arc<CurveCounts>) -> Self {
        GwEngine {
            counts,
            pr_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn global() -> &'static GwEngine {
        static GLOBAL: OnceLock<GwEngine> = OnceLock::new();
        GLOBAL.get_or_init(GwEngine::new)
    }

    pub fn counts(&self) -> &CurveCounts {
        &self.counts
    }

    /// Any genus-zero invariant, dispatched on the target.
    pub fn gw(&self, key: &InvariantKey) -> Result<Rational, GeometryError> {
        match key.target() {
            TargetSpace::Projective(1) => gw_p1(key),
            TargetSpace::Projective(_) => self.gw_pr(key),
            TargetSpace::P1xP1 => self.gw_p1x1(key),
        }
    }

    /// Invariants of ℙʳ for `r ≥ 2`.
    pub fn gw_pr(&self, key: &InvariantKey) -> Result<Rational, GeometryError> {
        let r = match key.target() {
            TargetSpace::Projective(r) if r >= 2 => r,
            other => return Err(GeometryError::UnsupportedTarget(other.to_string())),
        };
        let Degree::Single(d) = key.degree() else {
            unreachable!("key construction enforces matching degree");
        };
        Ok(self.pr_value(r, d, key.exponents().counts()))
    }

    fn pr_value(&self, r: u32, d: u32, exps: &[u32]) -> Rational {
        let n: u32 = exps.iter().sum();
        let codim: u64 = exps
            .iter()
            .enumerate()
            .map(|(i, &a)| i as u64 * u64::from(a))
            .sum();
        if d == 0 {
            // constant maps: three inputs cupping to the point class
            return if n == 3 && codim == u64::from(r) {
                Rational::one()
            } else {
                Rational::zero()
            };
        }
        let dim = i64::from(r * d + r + d + n) - 3;
        if codim as i64 != dim {
            return Rational::zero();
        }
        if exps[0] > 0 {
            return Rational::zero();
        }
        let divisor_factor = BigInt::from(d).pow(exps[1]);
        let mut reduced = exps.to_vec();
        reduced[1] = 0;
        Rational::from(divisor_factor) * self.pr_reduced(r, d, reduced)
    }

    /// `d > 0`, admissible, and every input of codimension ≥ 2.
    fn pr_reduced(&self, r: u32, d: u32, exps: Vec<u32>) -> Rational {
        let cache_key = (r, d, exps);
        if let Some(v) = self.pr_cache.lock().unwrap().get(&cache_key) {
            return v.clone();
        }
        let (_, _, exps) = &cache_key;
        let value = self.reconstruct(r, d, exps);
        self.pr_cache
            .lock()
            .unwrap()
            .entry(cache_key)
            .or_insert(value)
            .clone()
    }

    /// One step of the reconstruction recursion.
    ///
    /// The smallest-codimension input `h^c` is split as `h¹ ∪ h^(c-1)`; the
    /// two halves go on marks `m_1, m_2`, two further inputs on `p_1, p_2`,
    /// and the equivalence of the boundary divisors `D(m_1 m_2 | p_1 p_2)`
    /// and `D(m_1 p_1 | m_2 p_2)` is expanded with the splitting formula.
    /// The target invariant occurs once, on the left, paired with
    /// `I_0(h¹·h^(c-1)·h^(r-c)) = 1`.
    fn reconstruct(&self, r: u32, d: u32, exps: &[u32]) -> Rational {
        let n: u32 = exps.iter().sum();
        if n < 3 {
            // only I_1(h^r·h^r) survives with fewer than three inputs
            let hit = n == 2 && d == 1 && exps[r as usize] == 2;
            return if hit { Rational::one() } else { Rational::zero() };
        }
        let len = exps.len();
        let c = (2..len).find(|&i| exps[i] > 0).expect("n ≥ 3 inputs");
        let mut spare = exps.to_vec();
        spare[c] -= 1;
        let g1 = (0..len).rev().find(|&i| spare[i] > 0).unwrap();
        spare[g1] -= 1;
        let g2 = (0..len).rev().find(|&i| spare[i] > 0).unwrap();
        spare[g2] -= 1;
        let (l1, l2) = (1, c - 1);

        let lhs = self.boundary_sum(r, d, &spare, [l1, l2], [g1, g2], Some(r as usize - c));
        let rhs = self.boundary_sum(r, d, &spare, [l1, g1], [l2, g2], None);
        rhs - lhs
    }

    /// Sum over all weighted splits of the spare inputs and the degree of
    /// `I_{d_A}(pins_a · T · h^e) · I_{d_B}(pins_b · T' · h^f)`, `e + f = r`.
    /// `skip_target` omits the `(T = ∅, d_A = 0, e)` term.
    fn boundary_sum(
        &self,
        r: u32,
        d: u32,
        spare: &[u32],
        pins_a: [usize; 2],
        pins_b: [usize; 2],
        skip_target: Option<usize>,
    ) -> Rational {
        let len = spare.len();
        let mut total = Rational::zero();
        let mut take = vec![0u32; len];
        loop {
            let mult: BigInt = (0..len)
                .map(|i| binomial(i64::from(spare[i]), i64::from(take[i])))
                .product();
            let taken: u32 = take.iter().sum();
            let nothing_taken = taken == 0;
            for da in 0..=d {
                let mut side_a = take.clone();
                side_a[pins_a[0]] += 1;
                side_a[pins_a[1]] += 1;
                let n_a = taken + 3;
                let codim_a: i64 = side_a
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| i as i64 * i64::from(a))
                    .sum();
                // the gluing class h^e is fixed by the dimension constraint
                let e = i64::from(r * da + r + da + n_a) - 3 - codim_a;
                if e < 0 || e > i64::from(r) {
                    continue;
                }
                let e = e as usize;
                if nothing_taken && da == 0 && skip_target == Some(e) {
                    continue;
                }
                side_a[e] += 1;
                let va = self.pr_value(r, da, &side_a);
                if va.is_zero() {
                    continue;
                }
                let mut side_b: Vec<u32> = (0..len).map(|i| spare[i] - take[i]).collect();
                side_b[pins_b[0]] += 1;
                side_b[pins_b[1]] += 1;
                side_b[r as usize - e] += 1;
                let vb = self.pr_value(r, d - da, &side_b);
                if vb.is_zero() {
                    continue;
                }
                total += Rational::from(mult.clone()) * va * vb;
            }
            // next sub-multiset of `spare`
            let mut i = 0;
            loop {
                if i == len {
                    return total;
                }
                if take[i] < spare[i] {
                    take[i] += 1;
                    break;
                }
                take[i] = 0;
                i += 1;
            }
        }
    }

    /// Invariants of ℙ¹×ℙ¹, by complete reduction to `N_(d,e)`.
    pub fn gw_p1x1(&self, key: &InvariantKey) -> Result<Rational, GeometryError> {
        if key.target() != TargetSpace::P1xP1 {
            return Err(GeometryError::UnsupportedTarget(key.target().to_string()));
        }
        if !dimension_admissible(key) {
            return Ok(Rational::zero());
        }
        let Degree::Bi(b) = key.degree() else {
            unreachable!("key construction enforces matching degree");
        };
        let a = key.exponents();
        if b.is_zero() {
            // T_1 ∪ T_1 = T_2 ∪ T_2 = 0
            let hit = key.n() == 3 && a.get(1) <= 1 && a.get(2) <= 1;
            return Ok(if hit { Rational::one() } else { Rational::zero() });
        }
        let (mult, reduced) = reduce_invariant(key);
        if mult.is_zero() {
            return Ok(Rational::zero());
        }
        debug_assert_eq!(reduced.n(), 2 * b.total() - 1);
        let count = self.counts.n_de(b.d.into(), b.e.into())?;
        Ok(Rational::from(mult * count))
    }

    /// Sum of the invariant over all degrees; at most one degree of ℙʳ
    /// (one total degree of ℙ¹×ℙ¹) passes the dimension gate.
    pub fn collected_invariant(
        &self,
        target: TargetSpace,
        exponents: &ExponentVector,
    ) -> Result<Rational, GeometryError> {
        if exponents.len() != target.basis_len() {
            return Err(GeometryError::BasisMismatch {
                expected: target.basis_len(),
                found: exponents.len(),
            });
        }
        let n = i64::from(exponents.total());
        let codim = exponents.codim_sum(target) as i64;
        match target {
            TargetSpace::Projective(r) => {
                let r = i64::from(r);
                let num = codim - r - n + 3;
                if num < 0 || num % (r + 1) != 0 {
                    return Ok(Rational::zero());
                }
                let d = (num / (r + 1)) as u32;
                self.gw(&InvariantKey::new(target, d.into(), exponents.clone())?)
            }
            TargetSpace::P1xP1 => {
                let num = codim - n + 1;
                if num < 0 || num % 2 != 0 {
                    return Ok(Rational::zero());
                }
                let s = (num / 2) as u32;
                let mut acc = Rational::zero();
                for d in 0..=s {
                    let b = Bidegree::new(d, s - d);
                    acc += self.gw(&InvariantKey::new(target, b.into(), exponents.clone())?)?;
                }
                Ok(acc)
            }
        }
    }

    /// Number of reduced ℙʳ keys in the cache.
    pub fn cache_len(&self) -> usize {
        self.pr_cache.lock().unwrap().len()
    }

    /// Snapshot of the reduced ℙʳ cache as `((r, d, exponents), value)`.
    pub fn pr_entries(&self) -> Vec<(PrKey, Rational)> {
        let mut v: Vec<_> = self
            .pr_cache
            .lock()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// Seeds the cache with a reduced key. Keys that are not in reduced
    /// form (codimension 0 or 1 entries, or wrong length) are ignored.
    pub fn preload_pr(&self, r: u32, d: u32, exps: Vec<u32>, value: Rational) -> bool {
        let ok = r >= 2
            && d > 0
            && exps.len() == r as usize + 1
            && exps[0] == 0
            && exps[1] == 0;
        if ok {
            self.pr_cache
                .lock()
                .unwrap()
                .entry((r, d, exps))
                .or_insert(value);
        }
        ok
    }
}

pub fn gw(key: &InvariantKey) -> Result<Rational, GeometryError> {
    GwEngine::global().gw(key)
}

pub fn gw_pr(key: &InvariantKey) -> Result<Rational, GeometryError> {
    GwEngine::global().gw_pr(key)
}

pub fn gw_p1x1(key: &InvariantKey) -> Result<Rational, GeometryError> {
    GwEngine::global().gw_p1x1(key)
}

pub fn collected_invariant(
    target: TargetSpace,
    exponents: &ExponentVector,
) -> Result<Rational, GeometryError> {
    GwEngine::global().collected_invariant(target, exponents)
}
