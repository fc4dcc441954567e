//! Target spaces, their cohomology bases and curve degrees.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;

/// A curve class on ℙ¹×ℙ¹: `d` is the degree against the horizontal rule
/// class, `e` against the vertical one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub d: u32,
    pub e: u32,
}

impl Bidegree {
    pub const fn new(d: u32, e: u32) -> Self {
        Bidegree { d, e }
    }

    pub fn total(self) -> u32 {
        self.d + self.e
    }

    pub fn is_zero(self) -> bool {
        self.d == 0 && self.e == 0
    }

    pub fn transpose(self) -> Self {
        Bidegree { d: self.e, e: self.d }
    }

    /// Intersection number `d_A e_B + e_A d_B` of two curve classes.
    pub fn intersect(self, other: Bidegree) -> u64 {
        u64::from(self.d) * u64::from(other.e) + u64::from(self.e) * u64::from(other.d)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d, self.e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TargetSpace {
    /// ℙʳ with basis `h^0, ..., h^r`.
    Projective(u32),
    /// ℙ¹×ℙ¹ with basis `T_0` (fundamental), `T_1` (vertical rule),
    /// `T_2` (horizontal rule), `T_3` (point).
    P1xP1,
}

impl TargetSpace {
    pub fn projective(r: u32) -> Result<Self, GeometryError> {
        if r == 0 {
            return Err(GeometryError::InvalidTarget("P^0".into()));
        }
        Ok(TargetSpace::Projective(r))
    }

    pub fn basis_len(self) -> usize {
        match self {
            TargetSpace::Projective(r) => r as usize + 1,
            TargetSpace::P1xP1 => 4,
        }
    }

    /// Complex dimension of the target; also the codimension of a point.
    pub fn dim(self) -> u32 {
        match self {
            TargetSpace::Projective(r) => r,
            TargetSpace::P1xP1 => 2,
        }
    }

    pub fn codim(self, index: usize) -> u32 {
        match self {
            TargetSpace::Projective(_) => index as u32,
            TargetSpace::P1xP1 => match index {
                0 => 0,
                1 | 2 => 1,
                _ => 2,
            },
        }
    }

    /// Index of the Poincaré dual basis class.
    pub fn dual_index(self, index: usize) -> usize {
        self.basis_len() - 1 - index
    }

    pub fn check_index(self, index: usize) -> Result<(), GeometryError> {
        if index < self.basis_len() {
            Ok(())
        } else {
            Err(GeometryError::ClassOutOfRange {
                target: self.to_string(),
                index,
            })
        }
    }

    pub fn class_name(self, index: usize) -> String {
        match self {
            TargetSpace::Projective(_) => format!("h{index}"),
            TargetSpace::P1xP1 => format!("T{index}"),
        }
    }

    /// Parses `h<i>` for ℙʳ and `T<i>` for ℙ¹×ℙ¹.
    pub fn parse_class(self, name: &str) -> Result<usize, GeometryError> {
        let prefix = match self {
            TargetSpace::Projective(_) => 'h',
            TargetSpace::P1xP1 => 'T',
        };
        let bad = || GeometryError::InvalidTarget(format!("bad class name {name:?} for {self}"));
        let rest = name.trim().strip_prefix(prefix).ok_or_else(bad)?;
        let index: usize = rest.parse().map_err(|_| bad())?;
        self.check_index(index)?;
        Ok(index)
    }

    pub fn zero_degree(self) -> Degree {
        match self {
            TargetSpace::Projective(_) => Degree::Single(0),
            TargetSpace::P1xP1 => Degree::Bi(Bidegree::new(0, 0)),
        }
    }
}

impl fmt::Display for TargetSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetSpace::Projective(r) => write!(f, "P{r}"),
            TargetSpace::P1xP1 => write!(f, "P1xP1"),
        }
    }
}

/// Degree of a curve class: an integer on ℙʳ, a bidegree on ℙ¹×ℙ¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Degree {
    Single(u32),
    Bi(Bidegree),
}

impl Degree {
    pub fn is_zero(self) -> bool {
        match self {
            Degree::Single(d) => d == 0,
            Degree::Bi(b) => b.is_zero(),
        }
    }

    pub fn matches(self, target: TargetSpace) -> bool {
        matches!(
            (self, target),
            (Degree::Single(_), TargetSpace::Projective(_)) | (Degree::Bi(_), TargetSpace::P1xP1)
        )
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Single(d) => write!(f, "{d}"),
            Degree::Bi(b) => write!(f, "{b}"),
        }
    }
}

impl From<u32> for Degree {
    fn from(d: u32) -> Self {
        Degree::Single(d)
    }
}

impl From<Bidegree> for Degree {
    fn from(b: Bidegree) -> Self {
        Degree::Bi(b)
    }
}
