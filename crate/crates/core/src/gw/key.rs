use std::fmt;

use crate::error::GeometryError;
use crate::space::{Degree, TargetSpace};

/// Occurrence counts of each basis class among the inputs of an invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn zeros(len: usize) -> Self {
        ExponentVector(vec![0; len])
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        ExponentVector(counts)
    }

    /// Counts the classes in an unordered list of basis indices.
    pub fn from_classes(len: usize, classes: &[usize]) -> Result<Self, GeometryError> {
        let mut counts = vec![0; len];
        for &c in classes {
            if c >= len {
                return Err(GeometryError::BasisMismatch {
                    expected: len,
                    found: c + 1,
                });
            }
            counts[c] += 1;
        }
        Ok(ExponentVector(counts))
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> u32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    /// Number of inputs `n`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&mut self, index: usize, count: u32) {
        self.0[index] += count;
    }

    pub fn remove(&mut self, index: usize, count: u32) {
        self.0[index] -= count;
    }

    pub fn set(&mut self, index: usize, count: u32) {
        self.0[index] = count;
    }

    pub fn codim_sum(&self, target: TargetSpace) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &a)| u64::from(a) * u64::from(target.codim(i)))
            .sum()
    }

    /// The inputs as a sorted list of basis indices.
    pub fn to_classes(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| std::iter::repeat_n(i, a as usize))
            .collect()
    }
}

/// Identifies one invariant `I_β(γ_1 ⋯ γ_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantKey {
    target: TargetSpace,
    degree: Degree,
    exponents: ExponentVector,
}

impl InvariantKey {
    pub fn new(
        target: TargetSpace,
        degree: Degree,
        exponents: ExponentVector,
    ) -> Result<Self, GeometryError> {
        if let TargetSpace::Projective(0) = target {
            return Err(GeometryError::InvalidTarget("P^0".into()));
        }
        if !degree.matches(target) {
            return Err(GeometryError::DegreeMismatch {
                target: target.to_string(),
                degree: degree.to_string(),
            });
        }
        if exponents.len() != target.basis_len() {
            return Err(GeometryError::BasisMismatch {
                expected: target.basis_len(),
                found: exponents.len(),
            });
        }
        Ok(InvariantKey {
            target,
            degree,
            exponents,
        })
    }

    /// Key from an unordered list of basis indices.
    pub fn from_classes(
        target: TargetSpace,
        degree: impl Into<Degree>,
        classes: &[usize],
    ) -> Result<Self, GeometryError> {
        let exps = ExponentVector::from_classes(target.basis_len(), classes)?;
        InvariantKey::new(target, degree.into(), exps)
    }

    /// Key from `(basis index, count)` pairs.
    pub fn from_powers(
        target: TargetSpace,
        degree: impl Into<Degree>,
        powers: &[(usize, u32)],
    ) -> Result<Self, GeometryError> {
        let mut exps = ExponentVector::zeros(target.basis_len());
        for &(i, a) in powers {
            target.check_index(i)?;
            exps.add(i, a);
        }
        InvariantKey::new(target, degree.into(), exps)
    }

    pub fn target(&self) -> TargetSpace {
        self.target
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn exponents(&self) -> &ExponentVector {
        &self.exponents
    }

    pub fn n(&self) -> u32 {
        self.exponents.total()
    }

    pub fn codim_sum(&self) -> u64 {
        self.exponents.codim_sum(self.target)
    }

    pub(crate) fn with_exponents(&self, exponents: ExponentVector) -> Self {
        InvariantKey {
            target: self.target,
            degree: self.degree,
            exponents,
        }
    }
}

impl fmt::Display for InvariantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I_{}(", self.degree)?;
        let mut first = true;
        for (i, &a) in self.exponents.counts().iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "·")?;
            }
            first = false;
            write!(f, "{}", self.target.class_name(i))?;
            if a > 1 {
                write!(f, "^{a}")?;
            }
        }
        write!(f, ") on {}", self.target)
    }
}
