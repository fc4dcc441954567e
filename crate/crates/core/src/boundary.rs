//! Boundary divisors of the spaces of stable maps.
//!
//! A boundary divisor `D(A, B; β_A, β_B)` parametrises maps from a
//! two-component curve: the marks split as `A ⊔ B` and the curve class as
//! `β_A + β_B`. The divisor `D(ij|kl)` is the sum of all of them with
//! `i, j ∈ A` and `k, l ∈ B`.

use std::collections::HashSet;

use serde_json::{json, Value};

use crate::arith::{binomial, factorial, BigInt};
use crate::error::BoundaryError;
use crate::space::{Bidegree, Degree};

/// An ordered set of distinct mark labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkSet {
    labels: Vec<String>,
}

impl MarkSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, BoundaryError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(BoundaryError::DuplicateLabel(l.clone()));
            }
        }
        Ok(MarkSet { labels })
    }

    /// `m1, m2, p1, ..., p_{n-2}`: two marks carrying the split class and
    /// the remaining point conditions.
    pub fn standard(n: u32) -> Self {
        let labels = (0..n)
            .map(|i| if i < 2 { format!("m{}", i + 1) } else { format!("p{}", i - 1) })
            .collect();
        MarkSet { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// One boundary divisor: a split of the marks and of the curve class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPartition {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub degree_a: Degree,
    pub degree_b: Degree,
}

impl WeightedPartition {
    /// A component carrying no curve class must hold at least two marks;
    /// the node is its third special point.
    pub fn is_stable(&self) -> bool {
        (!self.degree_a.is_zero() || self.a.len() >= 2) && (!self.degree_b.is_zero() || self.b.len() >= 2)
    }

    pub fn to_json(&self) -> Value {
        match (self.degree_a, self.degree_b) {
            (Degree::Single(da), Degree::Single(db)) => {
                json!({"A": self.a, "B": self.b, "dA": da, "dB": db})
            }
            (Degree::Bi(x), Degree::Bi(y)) => json!({
                "A": self.a, "B": self.b,
                "dA": x.d, "dB": y.d, "eA": x.e, "eB": y.e,
            }),
            _ => unreachable!("both sides share the degree type"),
        }
    }
}

/// Every way of splitting `degree` into an ordered pair of classes.
fn degree_splits(degree: Degree) -> Vec<(Degree, Degree)> {
    match degree {
        Degree::Single(d) => (0..=d).map(|a| (Degree::Single(a), Degree::Single(d - a))).collect(),
        Degree::Bi(b) => (0..=b.d)
            .flat_map(|da| {
                (0..=b.e).map(move |ea| {
                    (
                        Degree::Bi(Bidegree::new(da, ea)),
                        Degree::Bi(Bidegree::new(b.d - da, b.e - ea)),
                    )
                })
            })
            .collect(),
    }
}

fn resolve_pins(marks: &MarkSet, pins: [&str; 4]) -> Result<[usize; 4], BoundaryError> {
    let mut idx = [0; 4];
    for (slot, p) in idx.iter_mut().zip(pins) {
        *slot = marks
            .index_of(p)
            .ok_or_else(|| BoundaryError::UnknownPin(p.to_string()))?;
    }
    let distinct: HashSet<_> = idx.iter().collect();
    if distinct.len() != 4 {
        return Err(BoundaryError::RepeatedPin);
    }
    Ok(idx)
}

/// All stable weighted partitions with `pins[0], pins[1] ∈ A` and
/// `pins[2], pins[3] ∈ B`, ordered by `A` (as mark positions) and then by
/// the degree of `A`.
pub fn enumerate_partitions(
    marks: &MarkSet,
    degree: Degree,
    pins: [&str; 4],
) -> Result<Vec<WeightedPartition>, BoundaryError> {
    let pin_idx = resolve_pins(marks, pins)?;
    let spare: Vec<usize> = (0..marks.len()).filter(|i| !pin_idx.contains(i)).collect();
    let splits = degree_splits(degree);
    let mut sides: Vec<(Vec<usize>, Vec<usize>)> = Vec::with_capacity(1 << spare.len());
    for mask in 0u64..(1u64 << spare.len()) {
        let mut a = vec![pin_idx[0], pin_idx[1]];
        let mut b = vec![pin_idx[2], pin_idx[3]];
        for (bit, &s) in spare.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                a.push(s);
            } else {
                b.push(s);
            }
        }
        a.sort_unstable();
        b.sort_unstable();
        sides.push((a, b));
    }
    sides.sort();
    let name = |v: &[usize]| v.iter().map(|&i| marks.labels[i].clone()).collect::<Vec<_>>();
    let mut out = Vec::new();
    for (a, b) in &sides {
        for &(degree_a, degree_b) in &splits {
            let p = WeightedPartition {
                a: name(a),
                b: name(b),
                degree_a,
                degree_b,
            };
            if p.is_stable() {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Number of terms of `D(ij|kl)` on `n` marks: (degree splits) × 2^(n-4).
pub fn partition_count(n: u32, degree: Degree) -> Result<BigInt, BoundaryError> {
    if n < 4 {
        return Err(BoundaryError::TooFewMarks { needed: 4, found: n });
    }
    let splits = match degree {
        Degree::Single(d) => BigInt::from(d) + 1,
        Degree::Bi(b) => BigInt::from((u64::from(b.d) + 1) * (u64::from(b.e) + 1)),
    };
    Ok(splits * (BigInt::from(1) << (n - 4) as usize))
}

pub fn partitions_to_json(parts: &[WeightedPartition]) -> Value {
    Value::Array(parts.iter().map(WeightedPartition::to_json).collect())
}

/// Dimension `n - 3 - δ` of the stratum of `M̄_{0,n}` whose curves have
/// `δ` nodes.
pub fn stratum_dimension(n: u32, delta: u32) -> Result<u32, BoundaryError> {
    if n < 3 || delta > n - 3 {
        return Err(BoundaryError::DeltaOutOfRange { n, delta });
    }
    Ok(n - 3 - delta)
}

/// Number of boundary divisors of `M̄_{0,n}`: unordered splits with both
/// sides of size at least two, `2^(n-1) - 1 - n`.
pub fn boundary_divisor_count_m0n(n: u32) -> Result<BigInt, BoundaryError> {
    if n < 4 {
        return Err(BoundaryError::TooFewMarks { needed: 4, found: n });
    }
    Ok((BigInt::from(1) << (n - 1) as usize) - 1 - n)
}

/// Ways to distribute `n` labelled marks on two twigs of sizes `a` and `b`.
pub fn count_labeled_configurations(n: u32, a: u32, b: u32) -> Result<BigInt, BoundaryError> {
    if a + b != n {
        return Err(BoundaryError::InvalidShape { n, a, b });
    }
    let value = factorial(n.into()) / (factorial(a.into()) * factorial(b.into()));
    debug_assert_eq!(value, binomial(n.into(), a.into()));
    Ok(value)
}
