//! Gromov–Witten potentials as truncated series, and WDVV residuals.
//!
//! The potential of a target with basis `T_0, ..., T_m` is
//! `Φ = Σ_a x^a/a! · I(T^a)`, a series in `x_0, ..., x_m`. Its third
//! partials `Φ_ijk` are the structure constants of the big quantum product
//! and satisfy the WDVV equations.

use crate::arith::{factorial, BigInt, Rational};
use crate::error::{GeometryError, SeriesError};
use crate::gw::{ExponentVector, GwEngine, InvariantKey};
use crate::series::{multi_factorial, TruncatedSeries};
use crate::space::TargetSpace;
use crate::surfaces::CurveCounts;

/// All exponent vectors of the given length with total degree ≤ `max_total`,
/// in lexicographic order.
pub fn exponent_vectors(len: usize, max_total: u32) -> Vec<Vec<u32>> {
    fn go(len: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for a in 0..=budget {
            prefix.push(a);
            go(len, budget - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(len, max_total, &mut Vec::with_capacity(len), &mut out);
    out
}

fn inv_factorial(n: u64) -> Rational {
    Rational::from(factorial(n)).inverse().expect("n! > 0")
}

/// The degree-zero part `Φ^cl = Σ x_i x_j x_k/3! · I_0(T_i T_j T_k)`.
pub fn classical_potential_with(
    engine: &GwEngine,
    target: TargetSpace,
) -> Result<TruncatedSeries, GeometryError> {
    match target {
        TargetSpace::Projective(1..=3) | TargetSpace::P1xP1 => {}
        other => return Err(GeometryError::UnsupportedTarget(other.to_string())),
    }
    let len = target.basis_len();
    let mut phi = TruncatedSeries::zero(len, 3);
    for exps in exponent_vectors(len, 3) {
        if exps.iter().sum::<u32>() != 3 {
            continue;
        }
        let key = InvariantKey::new(
            target,
            target.zero_degree(),
            ExponentVector::from_counts(exps.clone()),
        )?;
        let value = engine.gw(&key)?;
        let coeff = value * multi_factorial(&exps).inverse().unwrap();
        phi.add_term(exps, coeff);
    }
    Ok(phi)
}

pub fn classical_potential(target: TargetSpace) -> Result<TruncatedSeries, GeometryError> {
    classical_potential_with(GwEngine::global(), target)
}

/// The full potential `Φ` truncated at `order`, from collected invariants.
pub fn gw_potential_with(
    engine: &GwEngine,
    target: TargetSpace,
    order: u32,
) -> Result<TruncatedSeries, GeometryError> {
    let len = target.basis_len();
    let mut phi = TruncatedSeries::zero(len, order.into());
    for exps in exponent_vectors(len, order) {
        let value = engine.collected_invariant(target, &ExponentVector::from_counts(exps.clone()))?;
        if value.is_zero() {
            continue;
        }
        let coeff = value * multi_factorial(&exps).inverse().unwrap();
        phi.add_term(exps, coeff);
    }
    Ok(phi)
}

pub fn gw_potential(target: TargetSpace, order: u32) -> Result<TruncatedSeries, GeometryError> {
    gw_potential_with(GwEngine::global(), target, order)
}

/// `½x_0²x_1 + exp(x_1)` for ℙ¹, truncated at `order`.
pub fn gw_potential_p1(order: u32) -> TruncatedSeries {
    let order = i64::from(order);
    let mut phi = TruncatedSeries::exp_linear(2, &[Rational::zero(), Rational::one()], order)
        .expect("two coefficients");
    phi.add_term(vec![2, 1], Rational::new(1, 2).unwrap());
    phi
}

/// The one-variable series `Γ_ijk(x)`, `i, j, k ∈ {1, 2}`, of ℙ²: the
/// positive-degree potential with `x_0 = x_1 = 0` and `x = x_2`.
#[derive(Debug, Clone)]
pub struct PlaneGammas {
    order: u32,
    // indexed by the number of h¹ among (i, j, k)
    by_divisors: [TruncatedSeries; 4],
}

impl PlaneGammas {
    /// `Γ_ijk`; an index outside `{1, 2}` gives the zero series.
    pub fn get(&self, i: usize, j: usize, k: usize) -> TruncatedSeries {
        let idx = [i, j, k];
        if idx.iter().any(|&t| t == 0 || t > 2) {
            return TruncatedSeries::zero(1, self.order.into());
        }
        let ones = idx.iter().filter(|&&t| t == 1).count();
        self.by_divisors[ones].clone()
    }

    pub fn order(&self) -> u32 {
        self.order
    }
}

/// `Γ_ijk(x)` from an arbitrary table of plane counts `n(d)`.
///
/// The coefficient of `x^m/m!` in `Γ_ijk` is `I_d((h²)^m·h^i·h^j·h^k)`,
/// which is non-zero only for `m = 3d + 2 - i - j - k`, where the divisor
/// equation turns it into `d^{#(h¹)}·N_d`.
pub fn quantum_potential_p2_reduced_with(
    order: u32,
    n: impl Fn(u32) -> BigInt,
) -> PlaneGammas {
    let by_divisors = std::array::from_fn(|ones: usize| {
        let codims = (3 - ones) * 2 + ones;
        let mut s = TruncatedSeries::zero(1, order.into());
        for d in 1u32.. {
            let m = 3 * d as i64 + 2 - codims as i64;
            if m > i64::from(order) {
                break;
            }
            if m < 0 {
                continue;
            }
            let value = BigInt::from(d).pow(ones as u32) * n(d);
            s.add_term(vec![m as u32], Rational::from(value) * inv_factorial(m as u64));
        }
        s
    });
    PlaneGammas { order, by_divisors }
}

pub fn quantum_potential_p2_reduced(order: u32) -> PlaneGammas {
    let counts = CurveCounts::global();
    quantum_potential_p2_reduced_with(order, |d| counts.n_d(d.into()).expect("d ≥ 1"))
}

/// `Γ = Σ_{d+e>0} N_(d,e) x_3^m/m! · exp(e x_1 + d x_2)`, `m = 2(d+e) - 1`,
/// from an arbitrary table of counts.
///
/// The series has four variables so that `x_i` stays dual to `T_i`; `x_0`
/// never occurs.
pub fn quantum_potential_p1x1_with(
    order: u32,
    n: impl Fn(u32, u32) -> BigInt,
) -> TruncatedSeries {
    let ord = i64::from(order);
    let mut gamma = TruncatedSeries::zero(4, ord);
    for total in 1u32.. {
        let m = 2 * total - 1;
        if m > order {
            break;
        }
        let rest = ord - i64::from(m);
        for d in 0..=total {
            let e = total - d;
            let count = n(d, e);
            if count == BigInt::from(0) {
                continue;
            }
            let coeff = Rational::from(count) * inv_factorial(m.into());
            let head = TruncatedSeries::monomial(ord, vec![0, 0, 0, m], coeff);
            let exp = TruncatedSeries::exp_linear(
                4,
                &[Rational::zero(), Rational::from(e), Rational::from(d), Rational::zero()],
                rest,
            )
            .expect("four coefficients");
            // exp is only needed up to the remaining degree budget
            let mut widened = TruncatedSeries::zero(4, ord);
            for (exps, c) in exp.terms() {
                widened.add_term(exps.clone(), c.clone());
            }
            let term = head.checked_mul(&widened).expect("same variables");
            gamma = gamma.checked_add(&term).expect("same variables");
        }
    }
    gamma
}

pub fn quantum_potential_p1x1(order: u32) -> TruncatedSeries {
    let counts = CurveCounts::global();
    quantum_potential_p1x1_with(order, |d, e| counts.n_de(d.into(), e.into()).expect("(d,e) ≠ (0,0)"))
}

/// `Γ_222 + Γ_111·Γ_122 - Γ_112²` for the given `Γ` family.
pub fn wdvv_residual_p2_from(g: &PlaneGammas) -> TruncatedSeries {
    let lhs = g.get(2, 2, 2)
        .checked_add(&g.get(1, 1, 1).checked_mul(&g.get(1, 2, 2)).unwrap())
        .unwrap();
    let g112 = g.get(1, 1, 2);
    lhs.checked_sub(&g112.checked_mul(&g112).unwrap()).unwrap()
}

pub fn wdvv_residual_p2(order: u32) -> TruncatedSeries {
    wdvv_residual_p2_from(&quantum_potential_p2_reduced(order))
}

/// `Γ_333 + Γ_112Γ_233 + Γ_122Γ_133 - Γ_123² - Γ_223Γ_113`, where the
/// `Γ_ijk` are third partials of `gamma`; the result has `gamma`'s order
/// minus three.
pub fn wdvv_residual_p1x1_from(gamma: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    let g = |i: usize, j: usize, k: usize| gamma.partial_derivatives(&[i, j, k]);
    let prod = |a: [usize; 3], b: [usize; 3]| -> Result<TruncatedSeries, SeriesError> {
        g(a[0], a[1], a[2])?.checked_mul(&g(b[0], b[1], b[2])?)
    };
    g(3, 3, 3)?
        .checked_add(&prod([1, 1, 2], [2, 3, 3])?)?
        .checked_add(&prod([1, 2, 2], [1, 3, 3])?)?
        .checked_sub(&prod([1, 2, 3], [1, 2, 3])?)?
        .checked_sub(&prod([2, 2, 3], [1, 1, 3])?)
}

pub fn wdvv_residual_p1x1(order: u32) -> TruncatedSeries {
    wdvv_residual_p1x1_from(&quantum_potential_p1x1(order + 3)).expect("four variables")
}

/// All third partials `Φ_ijk` of a potential, indexed `[i][j][k]`.
pub fn third_partials(phi: &TruncatedSeries) -> Vec<Vec<Vec<TruncatedSeries>>> {
    let m = phi.nvars();
    (0..m)
        .map(|i| {
            let pi = phi.partial_derivative(i).unwrap();
            (0..m)
                .map(|j| {
                    let pij = pi.partial_derivative(j).unwrap();
                    (0..m).map(|k| pij.partial_derivative(k).unwrap()).collect()
                })
                .collect()
        })
        .collect()
}

/// `Σ_{e+f=r} (Φ_ije·Φ_fkl - Φ_jke·Φ_ifl)` on ℙʳ, `r ∈ {2, 3}`, from the
/// full potential computed by the invariant engine.
pub fn wdvv_general_pr_with(
    engine: &GwEngine,
    r: u32,
    idx: [usize; 4],
    order: u32,
) -> Result<TruncatedSeries, GeometryError> {
    if !(2..=3).contains(&r) {
        return Err(GeometryError::UnsupportedTarget(format!("P{r}")));
    }
    let target = TargetSpace::Projective(r);
    for &t in &idx {
        target.check_index(t)?;
    }
    let phi = gw_potential_with(engine, target, order + 3)?;
    let [i, j, k, l] = idx;
    let p = |a: usize, b: usize, c: usize| phi.partial_derivatives(&[a, b, c]).unwrap();
    let mut acc = TruncatedSeries::zero(target.basis_len(), order.into());
    for e in 0..=r as usize {
        let f = r as usize - e;
        let plus = p(i, j, e).checked_mul(&p(f, k, l)).unwrap();
        let minus = p(j, k, e).checked_mul(&p(i, f, l)).unwrap();
        acc = acc.checked_add(&plus).unwrap().checked_sub(&minus).unwrap();
    }
    Ok(acc)
}

pub fn wdvv_general_pr(r: u32, idx: [usize; 4], order: u32) -> Result<TruncatedSeries, GeometryError> {
    wdvv_general_pr_with(GwEngine::global(), r, idx, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn classical_potentials() {
        assert_eq!(
            classical_potential(TargetSpace::Projective(1)).unwrap().to_string(),
            "1/2·x0^2·x1"
        );
        assert_eq!(
            classical_potential(TargetSpace::P1xP1).unwrap().to_string(),
            "x0·x1·x2 + 1/2·x0^2·x3"
        );
        assert_eq!(
            classical_potential(TargetSpace::Projective(2)).unwrap().to_string(),
            "1/2·x0·x1^2 + 1/2·x0^2·x2"
        );
        let p3 = classical_potential(TargetSpace::Projective(3)).unwrap();
        assert_eq!(p3.coefficient(&[2, 0, 0, 1]), r(1, 2));
        assert_eq!(p3.coefficient(&[1, 1, 1, 0]), r(1, 1));
        assert!(classical_potential(TargetSpace::Projective(4)).is_err());
    }

    #[test]
    fn p1_potential() {
        assert_eq!(gw_potential_p1(0).to_string(), "1");
        assert_eq!(
            gw_potential_p1(3).to_string(),
            "1 + x1 + 1/2·x1^2 + 1/6·x1^3 + 1/2·x0^2·x1"
        );
        // the generic expansion misses only the unmarked line
        let generic = gw_potential(TargetSpace::Projective(1), 7).unwrap();
        let one = TruncatedSeries::constant(2, 7, Rational::one());
        assert_eq!(generic.checked_add(&one).unwrap(), gw_potential_p1(7));
    }

    #[test]
    fn plane_gammas() {
        let g = quantum_potential_p2_reduced(8);
        let g222 = g.get(2, 2, 2);
        for (d, nd) in [(2u32, 1i64), (3, 12), (4, 620)] {
            assert_eq!(g222.egf_coefficient(&[3 * d - 4]), Rational::from(nd));
        }
        assert_eq!(g.get(1, 1, 1).egf_coefficient(&[2]), Rational::one());
        assert!(g.get(0, 1, 2).is_zero());
    }

    #[test]
    fn quadric_gamma() {
        let g = quantum_potential_p1x1(4);
        assert_eq!(g.coefficient(&[0, 0, 0, 1]), Rational::from(2));
        assert_eq!(g.coefficient(&[0, 1, 0, 1]), Rational::one());
        assert!(quantum_potential_p1x1(0).is_zero());
        // the closed form is the positive-degree part of the full potential
        let full = gw_potential(TargetSpace::P1xP1, 6).unwrap();
        let cl = classical_potential(TargetSpace::P1xP1).unwrap();
        assert_eq!(full, cl.exact_to(6).checked_add(&quantum_potential_p1x1(6)).unwrap());
    }

    #[test]
    fn residuals_vanish() {
        assert!(wdvv_residual_p2(8).is_zero());
        assert!(wdvv_residual_p2(0).is_zero());
        assert!(wdvv_residual_p1x1(4).is_zero());
        assert!(wdvv_residual_p1x1(1).is_zero());
        assert!(wdvv_general_pr(2, [1, 1, 2, 2], 4).unwrap().is_zero());
        assert!(wdvv_general_pr(4, [1, 1, 2, 2], 4).is_err());
    }

    #[test]
    fn perturbed_tables_break_wdvv() {
        let counts = CurveCounts::global();
        let g = quantum_potential_p2_reduced_with(8, |d| {
            if d == 3 { BigInt::from(13) } else { counts.n_d(d.into()).unwrap() }
        });
        assert!(!wdvv_residual_p2_from(&g).is_zero());
    }
}
