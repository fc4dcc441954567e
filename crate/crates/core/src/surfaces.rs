//! Counts of rational curves on ℙ² and ℙ¹×ℙ¹ through general points.
//!
//! Both counts come from a balance equation between two boundary
//! configurations of a one-dimensional family of stable maps. In each the
//! unknown count appears exactly once with coefficient one, so it is
//! obtained by moving every product of lower-degree counts to the other side.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::arith::{binomial, BigInt};
use crate::error::GeometryError;
use crate::space::{Bidegree, Degree, TargetSpace};

/// How the ℙ¹×ℙ¹ memo table keys its entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyMode {
    /// `(d, e)` and `(e, d)` share one entry.
    Symmetric,
    /// Every orientation is computed and stored separately.
    Oriented,
}

/// Memoised curve counts. Entries are written once per key and never
/// change afterwards, so concurrent callers always observe the same value.
#[derive(Debug)]
pub struct CurveCounts {
    mode: KeyMode,
    plane: Mutex<HashMap<u32, BigInt>>,
    quadric: Mutex<HashMap<(u32, u32), BigInt>>,
}

impl Default for CurveCounts {
    fn default() -> Self {
        CurveCounts::new(KeyMode::Symmetric)
    }
}

impl CurveCounts {
    pub fn new(mode: KeyMode) -> Self {
        CurveCounts {
            mode,
            plane: Mutex::new(HashMap::new()),
            quadric: Mutex::new(HashMap::new()),
        }
    }

    /// Process-wide table shared by the free functions of this module.
    pub fn global() -> &'static CurveCounts {
        static GLOBAL: OnceLock<CurveCounts> = OnceLock::new();
        GLOBAL.get_or_init(CurveCounts::default)
    }

    pub fn mode(&self) -> KeyMode {
        self.mode
    }

    /// `N_d`: rational plane curves of degree `d` through `3d - 1` points.
    pub fn n_d(&self, d: i64) -> Result<BigInt, GeometryError> {
        if d < 1 {
            return Err(GeometryError::InvalidDegree(d));
        }
        let d = d as u32;
        if let Some(v) = self.plane.lock().unwrap().get(&d) {
            return Ok(v.clone());
        }
        // fill bottom-up; every level only reads strictly smaller degrees
        let mut known: Vec<BigInt> = vec![BigInt::zero()];
        for k in 1..=d {
            let cached = self.plane.lock().unwrap().get(&k).cloned();
            let value = match cached {
                Some(v) => v,
                None => {
                    let v = plane_step(k, |j| known[j as usize].clone());
                    self.plane
                        .lock()
                        .unwrap()
                        .entry(k)
                        .or_insert(v)
                        .clone()
                }
            };
            known.push(value);
        }
        Ok(known.pop().unwrap())
    }

    /// `N_(d,e)`: rational curves of bidegree `(d, e)` through
    /// `2d + 2e - 1` points.
    pub fn n_de(&self, d: i64, e: i64) -> Result<BigInt, GeometryError> {
        if d < 0 || e < 0 {
            return Err(GeometryError::InvalidDegree(d.min(e)));
        }
        if d == 0 && e == 0 {
            return Err(GeometryError::UndefinedInvariant);
        }
        Ok(self.quadric_cached(d as u32, e as u32))
    }

    fn quadric_key(&self, d: u32, e: u32) -> (u32, u32) {
        match self.mode {
            KeyMode::Symmetric => (d.min(e), d.max(e)),
            KeyMode::Oriented => (d, e),
        }
    }

    fn quadric_cached(&self, d: u32, e: u32) -> BigInt {
        let key = self.quadric_key(d, e);
        if let Some(v) = self.quadric.lock().unwrap().get(&key) {
            return v.clone();
        }
        let value = quadric_step(d, e, |a, b| self.quadric_cached(a, b));
        self.quadric
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(value)
            .clone()
    }

    /// Number of cached ℙ¹×ℙ¹ entries.
    pub fn quadric_cache_len(&self) -> usize {
        self.quadric.lock().unwrap().len()
    }

    /// Snapshot of every memoised value, for persistence.
    pub fn plane_entries(&self) -> Vec<(u32, BigInt)> {
        let mut v: Vec<_> = self
            .plane
            .lock()
            .unwrap()
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        v.sort();
        v
    }

    pub fn quadric_entries(&self) -> Vec<((u32, u32), BigInt)> {
        let mut v: Vec<_> = self
            .quadric
            .lock()
            .unwrap()
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        v.sort();
        v
    }

    /// Seeds the plane table with a previously computed value.
    pub fn preload_plane(&self, d: u32, value: BigInt) {
        self.plane.lock().unwrap().entry(d).or_insert(value);
    }

    pub fn preload_quadric(&self, d: u32, e: u32, value: BigInt) {
        let key = self.quadric_key(d, e);
        self.quadric.lock().unwrap().entry(key).or_insert(value);
    }
}

/// One step of the ℙ² recursion; `lower(j)` must return `N_j` for `j < d`.
fn plane_step(d: u32, lower: impl Fn(u32) -> BigInt) -> BigInt {
    if d == 1 {
        return BigInt::one();
    }
    let d = i64::from(d);
    let mut acc = BigInt::zero();
    for da in 1..d {
        let db = d - da;
        let na = lower(da as u32);
        let nb = lower(db as u32);
        let glue = BigInt::from(da * db);
        let base = &na * &nb * glue;
        // both marked lines on one twig vs. split across the twigs
        let same_twig = binomial(3 * d - 4, 3 * da - 1) * BigInt::from(da * da);
        let split = binomial(3 * d - 4, 3 * da - 2) * BigInt::from(da * db);
        acc += base * (split - same_twig);
    }
    acc
}

/// One step of the ℙ¹×ℙ¹ recursion; `lower` must return `N_(a,b)` for
/// every `(a, b) ≠ (0, 0)` strictly below `(d, e)`.
fn quadric_step(d: u32, e: u32, lower: impl Fn(u32, u32) -> BigInt) -> BigInt {
    match (d, e) {
        (1, 0) | (0, 1) => return BigInt::one(),
        (_, 0) | (0, _) => return BigInt::zero(),
        _ => {}
    }
    let total = i64::from(d + e);
    let mut acc = BigInt::zero();
    for da in 0..=d {
        for ea in 0..=e {
            let (db, eb) = (d - da, e - ea);
            if (da == 0 && ea == 0) || (db == 0 && eb == 0) {
                continue;
            }
            let pairing = Bidegree::new(da, ea).intersect(Bidegree::new(db, eb));
            if pairing == 0 {
                continue;
            }
            let (x, y, z) = (i64::from(da), i64::from(ea), i64::from(eb));
            let same_twig = binomial(2 * total - 4, 2 * (x + y) - 1) * BigInt::from(x * y);
            let split = binomial(2 * total - 4, 2 * (x + y) - 2) * BigInt::from(x * z);
            let coeff = split - same_twig;
            if coeff.is_zero() {
                continue;
            }
            acc += coeff * BigInt::from(pairing) * lower(da, ea) * lower(db, eb);
        }
    }
    acc
}

/// `N_d` without any memoisation; exponential time, for cross-checks.
pub fn n_d_uncached(d: i64) -> Result<BigInt, GeometryError> {
    if d < 1 {
        return Err(GeometryError::InvalidDegree(d));
    }
    fn go(d: u32) -> BigInt {
        plane_step(d, go)
    }
    Ok(go(d as u32))
}

/// `N_(d,e)` without any memoisation; exponential time, for cross-checks.
pub fn n_de_uncached(d: i64, e: i64) -> Result<BigInt, GeometryError> {
    if d < 0 || e < 0 {
        return Err(GeometryError::InvalidDegree(d.min(e)));
    }
    if d == 0 && e == 0 {
        return Err(GeometryError::UndefinedInvariant);
    }
    fn go(d: u32, e: u32) -> BigInt {
        quadric_step(d, e, go)
    }
    Ok(go(d as u32, e as u32))
}

pub fn n_d(d: i64) -> Result<BigInt, GeometryError> {
    CurveCounts::global().n_d(d)
}

pub fn n_de(d: i64, e: i64) -> Result<BigInt, GeometryError> {
    CurveCounts::global().n_de(d, e)
}

/// Number of general points that cut the rational curves of the given
/// degree down to finitely many.
pub fn required_points(target: TargetSpace, degree: Degree) -> Result<u32, GeometryError> {
    match (target, degree) {
        (TargetSpace::Projective(2), Degree::Single(d)) if d >= 1 => Ok(3 * d - 1),
        (TargetSpace::P1xP1, Degree::Bi(b)) if b.total() >= 1 => Ok(2 * b.total() - 1),
        (TargetSpace::Projective(2), Degree::Single(d)) => Err(GeometryError::InvalidDegree(d.into())),
        (TargetSpace::P1xP1, Degree::Bi(_)) => Err(GeometryError::UndefinedInvariant),
        (TargetSpace::Projective(_), Degree::Single(_)) => {
            Err(GeometryError::UnsupportedTarget(target.to_string()))
        }
        _ => Err(GeometryError::DegreeMismatch {
            target: target.to_string(),
            degree: degree.to_string(),
        }),
    }
}

/// Geometric genus of a plane curve of degree `d` with `delta` nodes.
pub fn genus_nodal_p2(d: i64, delta: i64) -> Result<i64, GeometryError> {
    if d < 1 {
        return Err(GeometryError::InvalidDegree(d));
    }
    let g = (d - 1) * (d - 2) / 2 - delta;
    if g < 0 || delta < 0 {
        return Err(GeometryError::NegativeGenus { degree: d, delta });
    }
    Ok(g)
}

/// Genus of a smooth curve of bidegree `(d, e)`.
pub fn genus_smooth_p1x1(d: i64, e: i64) -> Result<i64, GeometryError> {
    if d < 1 || e < 1 {
        return Err(GeometryError::InvalidDegree(d.min(e)));
    }
    Ok((d - 1) * (e - 1))
}

pub fn bidegree_intersection(a: Bidegree, b: Bidegree) -> u64 {
    a.intersect(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigInt {
        s.parse().unwrap()
    }

    #[test]
    fn plane_counts() {
        assert_eq!(n_d(1).unwrap(), big("1"));
        assert_eq!(n_d(3).unwrap(), big("12"));
        assert_eq!(n_d(4).unwrap(), big("620"));
        assert_eq!(n_d(10).unwrap(), big("40739017561997799680"));
        assert_eq!(n_d(0), Err(GeometryError::InvalidDegree(0)));
        assert_eq!(n_d(-3), Err(GeometryError::InvalidDegree(-3)));
    }

    #[test]
    fn quadric_counts() {
        assert_eq!(n_de(1, 1).unwrap(), big("1"));
        assert_eq!(n_de(2, 2).unwrap(), big("12"));
        assert_eq!(n_de(3, 3).unwrap(), big("3510"));
        assert_eq!(n_de(0, 2).unwrap(), big("0"));
        assert_eq!(n_de(5, 1).unwrap(), big("1"));
        assert_eq!(n_de(0, 0), Err(GeometryError::UndefinedInvariant));
    }

    #[test]
    fn uncached_agrees_with_memo() {
        let oriented = CurveCounts::new(KeyMode::Oriented);
        for d in 1..=5 {
            assert_eq!(n_d_uncached(d).unwrap(), n_d(d).unwrap());
        }
        for d in 0..=3 {
            for e in 0..=3 {
                if d + e == 0 {
                    continue;
                }
                assert_eq!(n_de_uncached(d, e).unwrap(), n_de(d, e).unwrap());
                assert_eq!(oriented.n_de(d, e).unwrap(), n_de(d, e).unwrap());
            }
        }
    }

    #[test]
    fn symmetric_mode_halves_the_table() {
        let sym = CurveCounts::new(KeyMode::Symmetric);
        let ori = CurveCounts::new(KeyMode::Oriented);
        sym.n_de(3, 3).unwrap();
        ori.n_de(3, 3).unwrap();
        assert!(sym.quadric_cache_len() < ori.quadric_cache_len());
    }

    #[test]
    fn point_counts() {
        let p2 = TargetSpace::Projective(2);
        assert_eq!(required_points(p2, Degree::Single(3)).unwrap(), 8);
        assert_eq!(required_points(p2, Degree::Single(1)).unwrap(), 2);
        let q = TargetSpace::P1xP1;
        assert_eq!(required_points(q, Bidegree::new(1, 1).into()).unwrap(), 3);
        assert!(required_points(q, Degree::Single(1)).is_err());
    }

    #[test]
    fn genus_formulas() {
        assert_eq!(genus_nodal_p2(3, 1).unwrap(), 0);
        assert_eq!(genus_nodal_p2(1, 0).unwrap(), 0);
        assert_eq!(genus_nodal_p2(4, 0).unwrap(), 3);
        assert!(matches!(
            genus_nodal_p2(3, 2),
            Err(GeometryError::NegativeGenus { .. })
        ));
        assert_eq!(genus_smooth_p1x1(1, 1).unwrap(), 0);
        assert_eq!(genus_smooth_p1x1(2, 3).unwrap(), 2);
        assert_eq!(genus_smooth_p1x1(3, 3).unwrap(), 4);
    }

    #[test]
    fn intersection_pairing() {
        for (d, e) in [(0, 0), (2, 7), (5, 1)] {
            let b = Bidegree::new(d, e);
            assert_eq!(bidegree_intersection(b, Bidegree::new(1, 0)), u64::from(e));
            assert_eq!(bidegree_intersection(b, Bidegree::new(1, 1)), u64::from(d + e));
        }
    }
}
