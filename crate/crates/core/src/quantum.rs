//! Classical, small quantum and big quantum products.
//!
//! Small quantum rings are computed from their closed-form product rules:
//! `h^i * h^j = q^{⌊(i+j)/(r+1)⌋}·h^{(i+j) mod (r+1)}` on ℙʳ, and the
//! ℙ¹×ℙ¹ table generated by `T_1 * T_1 = q_v`, `T_2 * T_2 = q_h`. The
//! deformation parameters are polynomial generators. The big product uses
//! the third partials of the truncated potential as structure constants.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::Rational;
use crate::error::{GeometryError, QuantumError};
use crate::gw::{GwEngine, InvariantKey};
use crate::potentials::{classical_potential_with, gw_potential_with, third_partials};
use crate::series::TruncatedSeries;
use crate::space::{Bidegree, TargetSpace};

/// A polynomial in the deformation parameters: `q` on ℙʳ, `(q_v, q_h)` on
/// ℙ¹×ℙ¹. Keys are exponent tuples; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParamPoly(BTreeMap<Vec<u32>, Rational>);

impl ParamPoly {
    pub fn monomial(exps: Vec<u32>, c: Rational) -> Self {
        let mut p = ParamPoly::default();
        p.add_term(exps, c);
        p
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(exps.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.0.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.0.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &ParamPoly) -> ParamPoly {
        let mut p = self.clone();
        for (e, c) in other.terms() {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn mul(&self, other: &ParamPoly) -> ParamPoly {
        let mut p = ParamPoly::default();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(exps, ca * cb);
            }
        }
        p
    }
}

fn param_count(target: TargetSpace) -> usize {
    match target {
        TargetSpace::Projective(_) => 1,
        TargetSpace::P1xP1 => 2,
    }
}

fn param_names(target: TargetSpace) -> &'static [&'static str] {
    match target {
        TargetSpace::Projective(_) => &["q"],
        TargetSpace::P1xP1 => &["qv", "qh"],
    }
}

/// An element of the (small quantum) cohomology ring: basis index mapped
/// to a parameter polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    target: TargetSpace,
    coeffs: BTreeMap<usize, ParamPoly>,
}

impl RingElement {
    pub fn zero(target: TargetSpace) -> Self {
        RingElement {
            target,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis class with index `i`.
    pub fn basis(target: TargetSpace, i: usize) -> Result<Self, QuantumError> {
        RingElement::term(target, i, vec![0; param_count(target)], Rational::one())
    }

    /// `c·q^params·T_i`.
    pub fn term(
        target: TargetSpace,
        i: usize,
        params: Vec<u32>,
        c: Rational,
    ) -> Result<Self, QuantumError> {
        check_class(target, i)?;
        assert_eq!(params.len(), param_count(target), "parameter count");
        let mut x = RingElement::zero(target);
        x.add_term(i, params, c);
        Ok(x)
    }

    fn add_term(&mut self, i: usize, params: Vec<u32>, c: Rational) {
        let poly = self.coeffs.entry(i).or_default();
        poly.add_term(params, c);
        if poly.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn target(&self) -> TargetSpace {
        self.target
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, i: usize) -> ParamPoly {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (&usize, &ParamPoly)> {
        self.coeffs.iter()
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<Self, QuantumError> {
        check_same(self.target, other.target)?;
        let mut x = self.clone();
        for (&i, p) in &other.coeffs {
            for (e, c) in p.terms() {
                x.add_term(i, e.clone(), c.clone());
            }
        }
        Ok(x)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut x = RingElement::zero(self.target);
        for (&i, p) in &self.coeffs {
            for (e, v) in p.terms() {
                x.add_term(i, e.clone(), v * c);
            }
        }
        x
    }

    /// Bilinear extension of a basis product rule.
    fn bilinear(
        &self,
        other: &RingElement,
        rule: impl Fn(usize, usize) -> RingElement,
    ) -> Result<RingElement, QuantumError> {
        check_same(self.target, other.target)?;
        let mut out = RingElement::zero(self.target);
        for (&i, pa) in &self.coeffs {
            for (&j, pb) in &other.coeffs {
                let scalar = pa.mul(pb);
                for (&k, pk) in &rule(i, j).coeffs {
                    for (e, c) in scalar.mul(pk).terms() {
                        out.add_term(k, e.clone(), c.clone());
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let names = param_names(self.target);
        let mut first = true;
        for (&i, poly) in &self.coeffs {
            for (exps, c) in poly.terms() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                if !c.is_one() {
                    write!(f, "{c}·")?;
                }
                for (name, &a) in names.iter().zip(exps) {
                    match a {
                        0 => {}
                        1 => write!(f, "{name}·")?,
                        _ => write!(f, "{name}^{a}·")?,
                    }
                }
                write!(f, "{}", self.target.class_name(i))?;
            }
        }
        Ok(())
    }
}

fn check_class(target: TargetSpace, i: usize) -> Result<(), QuantumError> {
    if i < target.basis_len() {
        Ok(())
    } else {
        Err(QuantumError::ClassOutOfRange {
            target: target.to_string(),
            index: i,
        })
    }
}

fn check_same(a: TargetSpace, b: TargetSpace) -> Result<(), QuantumError> {
    if a == b {
        Ok(())
    } else {
        Err(QuantumError::TargetMismatch(a.to_string(), b.to_string()))
    }
}

fn basis_term(target: TargetSpace, i: usize, params: Vec<u32>) -> RingElement {
    RingElement::term(target, i, params, Rational::one()).expect("index in range")
}

/// Cup product `h^i ∪ h^j` in `H*(ℙʳ)`.
pub fn cup_pr(i: usize, j: usize, r: u32) -> Result<RingElement, QuantumError> {
    let target = TargetSpace::projective(r)?;
    check_class(target, i)?;
    check_class(target, j)?;
    Ok(if i + j <= r as usize {
        basis_term(target, i + j, vec![0])
    } else {
        RingElement::zero(target)
    })
}

/// Cup product `T_i ∪ T_j` in `H*(ℙ¹×ℙ¹)`.
pub fn cup_p1x1(i: usize, j: usize) -> Result<RingElement, QuantumError> {
    let target = TargetSpace::P1xP1;
    check_class(target, i)?;
    check_class(target, j)?;
    Ok(match (i.min(j), i.max(j)) {
        (0, k) => basis_term(target, k, vec![0, 0]),
        (1, 2) => basis_term(target, 3, vec![0, 0]),
        _ => RingElement::zero(target),
    })
}

fn small_rule_pr(r: u32, i: usize, j: usize) -> RingElement {
    let target = TargetSpace::Projective(r);
    let s = i + j;
    let top = r as usize;
    if s <= top {
        basis_term(target, s, vec![0])
    } else {
        basis_term(target, s - top - 1, vec![1])
    }
}

fn small_rule_p1x1(i: usize, j: usize) -> RingElement {
    let t = TargetSpace::P1xP1;
    match (i.min(j), i.max(j)) {
        (0, k) => basis_term(t, k, vec![0, 0]),
        (1, 1) => basis_term(t, 0, vec![1, 0]),
        (2, 2) => basis_term(t, 0, vec![0, 1]),
        (1, 2) => basis_term(t, 3, vec![0, 0]),
        (1, 3) => basis_term(t, 2, vec![1, 0]),
        (2, 3) => basis_term(t, 1, vec![0, 1]),
        (3, 3) => basis_term(t, 0, vec![1, 1]),
        _ => unreachable!("indices checked"),
    }
}

/// Small quantum product on ℙʳ.
pub fn small_qmul_pr(a: &RingElement, b: &RingElement, r: u32) -> Result<RingElement, QuantumError> {
    let target = TargetSpace::projective(r)?;
    check_same(a.target, target)?;
    a.bilinear(b, |i, j| small_rule_pr(r, i, j))
}

/// Small quantum product on ℙ¹×ℙ¹.
pub fn small_qmul_p1x1(a: &RingElement, b: &RingElement) -> Result<RingElement, QuantumError> {
    check_same(a.target, TargetSpace::P1xP1)?;
    a.bilinear(b, small_rule_p1x1)
}

/// Small quantum product on either supported target.
pub fn small_qmul(a: &RingElement, b: &RingElement) -> Result<RingElement, QuantumError> {
    match a.target {
        TargetSpace::Projective(r) => small_qmul_pr(a, b, r),
        TargetSpace::P1xP1 => small_qmul_p1x1(a, b),
    }
}

/// `T_i * T_j` assembled directly from three-point invariants:
/// `Σ_f Σ_β q^β I_β(T_i·T_j·T_f^∨) T_f`.
pub fn small_product_from_invariants(
    engine: &GwEngine,
    target: TargetSpace,
    i: usize,
    j: usize,
) -> Result<RingElement, QuantumError> {
    check_class(target, i)?;
    check_class(target, j)?;
    let mut out = RingElement::zero(target);
    for f in 0..target.basis_len() {
        let classes = [i, j, target.dual_index(f)];
        let codim: u32 = classes.iter().map(|&c| target.codim(c)).sum();
        match target {
            TargetSpace::Projective(r) => {
                for d in 0..=codim / (r + 1) {
                    let key = InvariantKey::from_classes(target, d, &classes)?;
                    out.add_term(f, vec![d], engine.gw(&key)?);
                }
            }
            TargetSpace::P1xP1 => {
                for total in 0..=codim / 2 {
                    for d in 0..=total {
                        let b = Bidegree::new(d, total - d);
                        let key = InvariantKey::from_classes(target, b, &classes)?;
                        out.add_term(f, vec![b.e, b.d], engine.gw(&key)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// An element of `ℚ[[x]] ⊗ H*(X)`: one truncated series per basis class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigQuantumElement {
    target: TargetSpace,
    order: i64,
    coeffs: Vec<TruncatedSeries>,
}

impl BigQuantumElement {
    pub fn new(target: TargetSpace, coeffs: Vec<TruncatedSeries>) -> Result<Self, QuantumError> {
        let m = target.basis_len();
        if coeffs.len() != m {
            return Err(GeometryError::BasisMismatch {
                expected: m,
                found: coeffs.len(),
            }
            .into());
        }
        let order = coeffs[0].order();
        for c in &coeffs {
            if c.nvars() != m {
                return Err(crate::error::SeriesError::VariableMismatch(m, c.nvars()).into());
            }
            if c.order() != order {
                return Err(crate::error::SeriesError::OrderMismatch(order, c.order()).into());
            }
        }
        Ok(BigQuantumElement {
            target,
            order,
            coeffs,
        })
    }

    pub fn zero(target: TargetSpace, order: i64) -> Self {
        let m = target.basis_len();
        BigQuantumElement {
            target,
            order,
            coeffs: vec![TruncatedSeries::zero(m, order); m],
        }
    }

    /// The basis class `T_i` with constant coefficient one.
    pub fn basis(target: TargetSpace, i: usize, order: i64) -> Result<Self, QuantumError> {
        check_class(target, i)?;
        let mut x = BigQuantumElement::zero(target, order);
        x.coeffs[i] = TruncatedSeries::constant(target.basis_len(), order, Rational::one());
        Ok(x)
    }

    pub fn target(&self) -> TargetSpace {
        self.target
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coefficient(&self, i: usize) -> &TruncatedSeries {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(TruncatedSeries::is_zero)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, QuantumError> {
        check_same(self.target, other.target)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<Vec<_>, _>>()?;
        BigQuantumElement::new(self.target, coeffs)
    }
}

impl fmt::Display for BigQuantumElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})·{}", self.target.class_name(i))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Structure constants `Φ_ijk` of the big quantum product at a fixed
/// truncation order, from the potential computed to `order + 3`.
#[derive(Debug, Clone)]
pub struct BigQuantumRing {
    target: TargetSpace,
    order: u32,
    phi: Vec<Vec<Vec<TruncatedSeries>>>,
    classical: Vec<Vec<Vec<TruncatedSeries>>>,
}

impl BigQuantumRing {
    pub fn new(engine: &GwEngine, target: TargetSpace, order: u32) -> Result<Self, QuantumError> {
        let potential = gw_potential_with(engine, target, order + 3)?;
        let classical = match classical_potential_with(engine, target) {
            Ok(c) => c.exact_to(i64::from(order) + 3),
            Err(_) => {
                // beyond the tabulated targets: degree-zero part of the potential
                let mut c = TruncatedSeries::zero(target.basis_len(), i64::from(order) + 3);
                for (e, v) in potential.terms() {
                    if e.iter().sum::<u32>() == 3 {
                        let key = InvariantKey::new(
                            target,
                            target.zero_degree(),
                            crate::gw::ExponentVector::from_counts(e.clone()),
                        )?;
                        if !engine.gw(&key)?.is_zero() {
                            c.add_term(e.clone(), v.clone());
                        }
                    }
                }
                c
            }
        };
        Ok(BigQuantumRing {
            target,
            order,
            phi: third_partials(&potential),
            classical: third_partials(&classical),
        })
    }

    pub fn target(&self) -> TargetSpace {
        self.target
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `Φ_ijk` truncated at the ring order.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &TruncatedSeries {
        &self.phi[i][j][k]
    }

    /// `T_i * T_j = Σ_e Φ_ije T_e^∨`.
    pub fn basis_product(&self, i: usize, j: usize) -> Result<BigQuantumElement, QuantumError> {
        self.product_with(&self.phi, i, j)
    }

    /// The part of `T_i * T_j` coming from the classical potential.
    pub fn classical_product(&self, i: usize, j: usize) -> Result<BigQuantumElement, QuantumError> {
        self.product_with(&self.classical, i, j)
    }

    fn product_with(
        &self,
        table: &[Vec<Vec<TruncatedSeries>>],
        i: usize,
        j: usize,
    ) -> Result<BigQuantumElement, QuantumError> {
        check_class(self.target, i)?;
        check_class(self.target, j)?;
        let m = self.target.basis_len();
        let mut coeffs = vec![TruncatedSeries::zero(m, self.order.into()); m];
        for (e, phi) in table[i][j].iter().enumerate() {
            coeffs[self.target.dual_index(e)] = phi.truncate(self.order.into());
        }
        BigQuantumElement::new(self.target, coeffs)
    }

    /// Bilinear product over truncated series.
    pub fn mul(
        &self,
        a: &BigQuantumElement,
        b: &BigQuantumElement,
    ) -> Result<BigQuantumElement, QuantumError> {
        check_same(a.target, self.target)?;
        check_same(b.target, self.target)?;
        if a.order != b.order {
            return Err(crate::error::SeriesError::OrderMismatch(a.order, b.order).into());
        }
        let m = self.target.basis_len();
        let order = a.order.min(self.order.into());
        let mut coeffs = vec![TruncatedSeries::zero(m, order); m];
        for i in 0..m {
            if a.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if b.coeffs[j].is_zero() {
                    continue;
                }
                let scalar = a.coeffs[i].checked_mul(&b.coeffs[j])?;
                for e in 0..m {
                    let s = &self.phi[i][j][e];
                    if s.is_zero() {
                        continue;
                    }
                    let f = self.target.dual_index(e);
                    coeffs[f] = coeffs[f].checked_add(&scalar.checked_mul(s)?)?;
                }
            }
        }
        for c in &mut coeffs {
            *c = c.truncate(order);
        }
        BigQuantumElement::new(self.target, coeffs)
    }
}

/// One-shot big quantum product; builds the structure constants first.
pub fn big_qmul(
    target: TargetSpace,
    a: &BigQuantumElement,
    b: &BigQuantumElement,
    order: u32,
) -> Result<BigQuantumElement, QuantumError> {
    BigQuantumRing::new(GwEngine::global(), target, order)?.mul(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: u32) -> TargetSpace {
        TargetSpace::Projective(r)
    }

    fn h(r: u32, i: usize) -> RingElement {
        RingElement::basis(p(r), i).unwrap()
    }

    fn t(i: usize) -> RingElement {
        RingElement::basis(TargetSpace::P1xP1, i).unwrap()
    }

    #[test]
    fn cups() {
        assert_eq!(cup_pr(1, 1, 2).unwrap(), h(2, 2));
        assert!(cup_pr(2, 2, 3).unwrap().is_zero());
        assert_eq!(cup_pr(0, 3, 5).unwrap(), h(5, 3));
        assert!(cup_pr(3, 0, 2).is_err());
        assert_eq!(cup_p1x1(1, 2).unwrap(), t(3));
        assert!(cup_p1x1(1, 1).unwrap().is_zero());
        assert_eq!(cup_p1x1(0, 3).unwrap(), t(3));
    }

    #[test]
    fn small_products() {
        for r in 1..6 {
            let x = small_qmul_pr(&h(r, 1), &h(r, r as usize), r).unwrap();
            assert_eq!(x.to_string(), "q·h0");
        }
        assert_eq!(small_qmul_pr(&h(2, 1), &h(2, 1), 2).unwrap(), h(2, 2));
        assert_eq!(small_qmul_p1x1(&t(1), &t(1)).unwrap().to_string(), "qv·T0");
        assert_eq!(small_qmul_p1x1(&t(3), &t(3)).unwrap().to_string(), "qv·qh·T0");
        assert!(small_qmul_pr(&h(2, 1), &t(1), 2).is_err());
    }

    #[test]
    fn closed_forms_match_invariants() {
        let engine = GwEngine::new();
        for r in 1..=4 {
            for i in 0..=r as usize {
                for j in 0..=r as usize {
                    let direct = small_product_from_invariants(&engine, p(r), i, j).unwrap();
                    assert_eq!(direct, small_rule_pr(r, i, j), "r={r} {i}*{j}");
                }
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                let direct =
                    small_product_from_invariants(&engine, TargetSpace::P1xP1, i, j).unwrap();
                assert_eq!(direct, small_rule_p1x1(i, j), "T{i}*T{j}");
            }
        }
    }

    #[test]
    fn big_product_basics() {
        let ring = BigQuantumRing::new(&GwEngine::new(), p(2), 4).unwrap();
        let one = BigQuantumElement::basis(p(2), 0, 4).unwrap();
        for i in 0..3 {
            let hi = BigQuantumElement::basis(p(2), i, 4).unwrap();
            assert_eq!(ring.mul(&one, &hi).unwrap(), hi);
            assert_eq!(ring.classical_product(0, i).unwrap(), hi);
        }
        let h1 = BigQuantumElement::basis(p(2), 1, 4).unwrap();
        let sq = ring.mul(&h1, &h1).unwrap();
        // h¹*h¹ = h² + Γ_112·h⁰ + Γ_111·h¹; Γ_112 starts with N_1·x_2
        assert_eq!(sq.coefficient(2).constant_term(), Rational::one());
        assert!(sq.coefficient(0).constant_term().is_zero());
        assert_eq!(sq.coefficient(0).coefficient(&[0, 0, 1]), Rational::one());
    }
}
