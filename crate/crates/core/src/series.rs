//! Multivariate power series truncated by total degree.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{factorial, Rational};
use crate::error::SeriesError;

/// A power series in `x_0, ..., x_{m-1}` known up to total degree `order`.
///
/// A negative order means no coefficient is trustworthy; such series carry
/// no terms. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    nvars: usize,
    order: i64,
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn degree(exps: &[u32]) -> i64 {
    exps.iter().map(|&a| i64::from(a)).sum()
}

/// `a!` for a multi-index.
pub fn multi_factorial(exps: &[u32]) -> Rational {
    exps.iter().map(|&a| Rational::from(factorial(a.into()))).product()
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, order: i64) -> Self {
        TruncatedSeries {
            nvars,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, order: i64, c: Rational) -> Self {
        let mut s = TruncatedSeries::zero(nvars, order);
        s.add_term(vec![0; nvars], c);
        s
    }

    /// The coordinate function `x_var`.
    pub fn variable(nvars: usize, var: usize, order: i64) -> Result<Self, SeriesError> {
        if var >= nvars {
            return Err(SeriesError::VariableOutOfRange { index: var, nvars });
        }
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        Ok(TruncatedSeries::monomial(order, exps, Rational::one()))
    }

    pub fn monomial(order: i64, exps: Vec<u32>, c: Rational) -> Self {
        let mut s = TruncatedSeries::zero(exps.len(), order);
        s.add_term(exps, c);
        s
    }

    /// Builds a series from `(exponents, coefficient)` pairs; repeated
    /// exponents are summed and terms above the order dropped.
    pub fn from_terms(
        nvars: usize,
        order: i64,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self, SeriesError> {
        let mut s = TruncatedSeries::zero(nvars, order);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(SeriesError::VariableMismatch(nvars, exps.len()));
            }
            s.add_term(exps, c);
        }
        Ok(s)
    }

    /// `exp(Σ c_i x_i)` truncated at `order`.
    pub fn exp_linear(nvars: usize, coeffs: &[Rational], order: i64) -> Result<Self, SeriesError> {
        if coeffs.len() != nvars {
            return Err(SeriesError::VariableMismatch(nvars, coeffs.len()));
        }
        let mut total = TruncatedSeries::constant(nvars, order, Rational::one());
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut one_var = TruncatedSeries::zero(nvars, order);
            for k in 0..=order.max(-1) {
                let mut exps = vec![0; nvars];
                exps[i] = k as u32;
                let coeff = c.pow(k as u32) * Rational::from(factorial(k as u64)).inverse().unwrap();
                one_var.add_term(exps, coeff);
            }
            total = total.checked_mul(&one_var)?;
        }
        Ok(total)
    }

    /// Adds `c·x^exps` in place, respecting the order and the no-zero rule.
    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.nvars, "exponent length");
        if c.is_zero() || degree(&exps) > self.order {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Ordinary coefficient of `x^exps`.
    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of `x^exps / exps!`.
    pub fn egf_coefficient(&self, exps: &[u32]) -> Rational {
        self.coefficient(exps) * multi_factorial(exps)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.nvars])
    }

    /// Lowest-degree non-zero term, ties broken lexicographically.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().min_by(|a, b| {
            degree(a.0)
                .cmp(&degree(b.0))
                .then_with(|| a.0.cmp(b.0))
        })
    }

    /// Drops everything above `order` (never raises the order).
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        let mut s = TruncatedSeries::zero(self.nvars, order);
        for (e, c) in &self.terms {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    /// Re-labels an exact polynomial as known up to a higher order.
    ///
    /// Only valid when every term above the current order is known to
    /// vanish, e.g. for the cubic classical potential.
    pub fn exact_to(&self, order: i64) -> Self {
        TruncatedSeries {
            nvars: self.nvars,
            order: order.max(self.order),
            terms: self.terms.clone(),
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), SeriesError> {
        if self.nvars != other.nvars {
            return Err(SeriesError::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_vars(other)?;
        let mut s = self.truncate(other.order);
        for (e, c) in &other.terms {
            s.add_term(e.clone(), c.clone());
        }
        Ok(s)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_vars(other)?;
        let order = self.order.min(other.order);
        let mut s = TruncatedSeries::zero(self.nvars, order);
        for (ea, ca) in &self.terms {
            let da = degree(ea);
            for (eb, cb) in &other.terms {
                if da + degree(eb) > order {
                    continue;
                }
                let exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                s.add_term(exps, ca * cb);
            }
        }
        Ok(s)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut s = TruncatedSeries::zero(self.nvars, self.order);
        for (e, v) in &self.terms {
            s.add_term(e.clone(), v * c);
        }
        s
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Formal `∂/∂x_var`; the order drops by one.
    pub fn partial_derivative(&self, var: usize) -> Result<Self, SeriesError> {
        if var >= self.nvars {
            return Err(SeriesError::VariableOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        let mut s = TruncatedSeries::zero(self.nvars, self.order - 1);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[var] -= 1;
            s.add_term(exps, c * Rational::from(e[var]));
        }
        Ok(s)
    }

    /// Successive partial derivatives, e.g. `[i, j, k]` for `Φ_ijk`.
    pub fn partial_derivatives(&self, vars: &[usize]) -> Result<Self, SeriesError> {
        let mut s = self.clone();
        for &v in vars {
            s = s.partial_derivative(v)?;
        }
        Ok(s)
    }

    /// Substitutes `x_var = 0`.
    pub fn set_zero(&self, var: usize) -> Result<Self, SeriesError> {
        if var >= self.nvars {
            return Err(SeriesError::VariableOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        let mut s = TruncatedSeries::zero(self.nvars, self.order);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                s.add_term(e.clone(), c.clone());
            }
        }
        Ok(s)
    }

    /// Reads the series as a polynomial in fewer variables by keeping
    /// `vars` in that order; every other variable must be absent.
    pub fn restrict_to(&self, vars: &[usize]) -> Option<Self> {
        let mut s = TruncatedSeries::zero(vars.len(), self.order);
        for (e, c) in &self.terms {
            let kept: u32 = vars.iter().map(|&v| e[v]).sum();
            if i64::from(kept) != degree(e) {
                return None;
            }
            s.add_term(vars.iter().map(|&v| e[v]).collect(), c.clone());
        }
        Some(s)
    }
}

pub fn series_add(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    a.checked_add(b)
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    a.checked_mul(b)
}

pub fn partial_derivative(s: &TruncatedSeries, var: usize) -> Result<TruncatedSeries, SeriesError> {
    s.partial_derivative(var)
}

fn write_monomial(f: &mut fmt::Formatter<'_>, exps: &[u32], coeff: &Rational) -> fmt::Result {
    let is_constant = exps.iter().all(|&a| a == 0);
    if is_constant {
        return write!(f, "{coeff}");
    }
    if !coeff.is_one() {
        write!(f, "{coeff}·")?;
    }
    let mut first = true;
    for (i, &a) in exps.iter().enumerate() {
        if a == 0 {
            continue;
        }
        if !first {
            write!(f, "·")?;
        }
        first = false;
        write!(f, "x{i}")?;
        if a > 1 {
            write!(f, "^{a}")?;
        }
    }
    Ok(())
}

/// Canonical text: terms in lexicographic exponent order joined by
/// `" + "` / `" - "`, e.g. `1/2·x0^2·x1`; the empty series prints `0`.
impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let c = if k > 0 && c.is_negative() {
                write!(f, " - ")?;
                -c
            } else {
                if k > 0 {
                    write!(f, " + ")?;
                }
                c.clone()
            };
            if c == -Rational::one() && !e.iter().all(|&a| a == 0) {
                write!(f, "-")?;
                write_monomial(f, e, &Rational::one())?;
            } else {
                write_monomial(f, e, &c)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} + O(deg {})]", self, self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn exp1(order: i64) -> TruncatedSeries {
        TruncatedSeries::exp_linear(1, &[Rational::one()], order).unwrap()
    }

    #[test]
    fn exp_squared() {
        let e2 = exp1(4).checked_mul(&exp1(4)).unwrap();
        for n in 0..=4u32 {
            let expect = Rational::from(1i64 << n) * Rational::from(factorial(n.into())).inverse().unwrap();
            assert_eq!(e2.coefficient(&[n]), expect);
        }
        assert_eq!(e2, TruncatedSeries::exp_linear(1, &[Rational::from(2)], 4).unwrap());
    }

    #[test]
    fn add_zero_and_truncation() {
        let a = exp1(3);
        assert_eq!(a.checked_add(&TruncatedSeries::zero(1, 3)).unwrap(), a);
        let x = TruncatedSeries::variable(1, 0, 1).unwrap();
        let xx = x.checked_mul(&x).unwrap();
        assert!(xx.is_zero());
        assert_eq!(xx.order(), 1);
        assert_eq!(xx.to_string(), "0");
    }

    #[test]
    fn derivatives() {
        let d = exp1(5).partial_derivative(0).unwrap();
        assert_eq!(d, exp1(4));
        let cl = TruncatedSeries::monomial(3, vec![2, 1], r(1, 2));
        let d0 = cl.partial_derivative(0).unwrap();
        assert_eq!(d0, TruncatedSeries::monomial(2, vec![1, 1], Rational::one()));
        assert_eq!(d0.to_string(), "x0·x1");
        let c = TruncatedSeries::constant(2, 4, r(7, 3));
        assert!(c.partial_derivative(1).unwrap().is_zero());
        assert!(c.partial_derivative(2).is_err());
    }

    #[test]
    fn orders_propagate() {
        let a = TruncatedSeries::zero(2, 5);
        let b = TruncatedSeries::zero(2, 3);
        assert_eq!(a.checked_add(&b).unwrap().order(), 3);
        assert_eq!(a.checked_mul(&b).unwrap().order(), 3);
        assert_eq!(a.partial_derivatives(&[0, 1, 1]).unwrap().order(), 2);
        assert!(a.checked_add(&TruncatedSeries::zero(3, 5)).is_err());
    }

    #[test]
    fn canonical_text() {
        let s = TruncatedSeries::from_terms(
            2,
            3,
            vec![
                (vec![2, 1], r(1, 2)),
                (vec![0, 0], Rational::one()),
                (vec![0, 1], r(-1, 1)),
                (vec![1, 0], r(-3, 4)),
            ],
        )
        .unwrap();
        assert_eq!(s.to_string(), "1 - x1 - 3/4·x0 + 1/2·x0^2·x1");
        let neg = TruncatedSeries::monomial(2, vec![0, 2], r(-2, 1));
        assert_eq!(neg.to_string(), "-2·x1^2");
        assert_eq!(s.leading_term().unwrap().0, &vec![0, 0]);
    }

    #[test]
    fn egf_and_restriction() {
        let s = TruncatedSeries::monomial(4, vec![0, 3, 1], r(1, 6));
        assert_eq!(s.egf_coefficient(&[0, 3, 1]), Rational::one());
        let t = s.restrict_to(&[1, 2]).unwrap();
        assert_eq!(t.coefficient(&[3, 1]), r(1, 6));
        assert!(s.restrict_to(&[0, 1]).is_none());
        assert!(s.set_zero(2).unwrap().is_zero());
    }
}
