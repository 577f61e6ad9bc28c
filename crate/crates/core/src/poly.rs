//! Multivariate polynomials over [`Scalar`].
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic on the declared variable order, so the last entry
//! is always the leading term. Zero coefficients are never stored.
//!
//! Degrees reported by [`Polynomial::degree`] count each variable once;
//! [`Polynomial::doubled_degree`] doubles that, matching the convention
//! where linear forms sit in degree 2.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linear::LinearAction;
use crate::scalar::{Field, Scalar};

/// Variable names and scalar field of a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    variables: Vec<String>,
    field: Field,
}

impl PolyRing {
    pub fn new(variables: Vec<String>, field: Field) -> Result<Self> {
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::Config(format!("duplicate variable name `{v}`")));
            }
        }
        Ok(PolyRing { variables, field })
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), i)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars())
    }

    pub fn render(&self, p: &Polynomial) -> String {
        p.render(&self.variables)
    }

    /// All monomials of total degree at most `d`, in increasing term order.
    pub fn monomials_up_to(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for deg in 0..=d {
            let mut exps = vec![0u32; self.nvars()];
            compositions(deg, 0, &mut exps, &mut out);
        }
        out.sort();
        out
    }
}

fn compositions(rest: u32, i: usize, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i + 1 >= exps.len() {
        if !exps.is_empty() {
            exps[i] = rest;
            out.push(Monomial(exps.clone()));
            exps[i] = 0;
        } else if rest == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    for e in 0..=rest {
        exps[i] = e;
        compositions(rest - e, i + 1, exps, out);
    }
    exps[i] = 0;
}

/// Exponent vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Scalar::one())
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Polynomial::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Polynomial::monomial(nvars, Monomial::var(nvars, i), Scalar::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.0.len(), nvars, "monomial has the wrong number of variables");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    /// `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Polynomial::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial has the wrong number of variables");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_zero() {
            Some(Scalar::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Monomial::one(self.nvars)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree counting each variable once; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Degree in the grading with linear forms in degree 2.
    pub fn doubled_degree(&self) -> Option<u32> {
        self.degree().map(|d| 2 * d)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.nvars, right: other.nvars })
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self += c * m * other`, in place.
    pub fn add_scaled(&mut self, other: &Polynomial, m: &Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.terms {
            self.add_term(k.mul(m), x * c);
        }
    }

    /// Applies the ring endomorphism induced by a linear map on the
    /// variable span: variable `j` goes to `sum_i M[i][j] x_i`.
    pub fn apply_action(&self, g: &LinearAction) -> Result<Polynomial> {
        if g.dim() != self.nvars {
            return Err(Error::DimensionMismatch { matrix: g.dim(), vars: self.nvars });
        }
        let images: Vec<Polynomial> =
            (0..self.nvars).map(|j| Polynomial::linear(&g.column(j))).collect();
        Ok(self.substitute(&images))
    }

    /// Substitutes `images[j]` for variable `j`.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(self.nvars, |p| p.nvars);
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(p.nvars), p.clone()]).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap() * &images[j];
                    powers[j].push(next);
                }
                term = &term * &powers[j][e as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Exact quotient `self / divisor`; fails unless the division leaves no
    /// remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_ring(divisor)?;
        let (lm, lc) = match divisor.leading_term() {
            None => return Err(Error::DivisionByZero),
            Some((m, c)) => (m.clone(), c.clone()),
        };
        let lc_inv = lc.inverse().expect("leading coefficient is nonzero");
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(Error::DivisionNotExact);
            }
            let qm = lm.quotient_of(m);
            let qc = c * &lc_inv;
            rem.add_scaled(divisor, &qm, &-&qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Quotient by a linear form, as needed by divided differences.
    pub fn exact_divide_linear(&self, linear: &Polynomial) -> Result<Polynomial> {
        self.check_ring(linear)?;
        if linear.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self.degree(), linear.degree()) {
            (None, _) => Ok(Polynomial::zero(self.nvars)),
            (Some(d), Some(e)) if e > d => Err(Error::DivisionNotExact),
            _ => self.exact_div(linear),
        }
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k`, itself free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = match self.degree_in(var) {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut out = vec![Polynomial::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.0.clone();
            e[var] = 0;
            out[k].add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Inverse of [`Polynomial::coefficients_in`].
    pub fn from_coefficients_in(nvars: usize, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            let shift = Monomial::var(nvars, var);
            let mut m = Monomial::one(nvars);
            for _ in 0..k {
                m = m.mul(&shift);
            }
            out.add_scaled(c, &m, &Scalar::one());
        }
        out
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|m| m.0[i] > 0)).collect()
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) => self.scale(&c.inverse().expect("nonzero")),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut out = String::new();
        let single = self.terms.len() == 1;
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = render_monomial(m, names);
            let (neg, mag) = split_sign(c);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                if mag.is_compound() && !single {
                    out.push_str(&format!("({mag})"));
                } else {
                    out.push_str(&mag.to_string());
                }
            } else {
                if mag.is_compound() {
                    out.push_str(&format!("({mag})*"));
                } else if !mag.is_one() {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&mono);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Whether rendering as a factor needs parentheses.
    pub fn needs_parens(&self) -> bool {
        self.terms.len() > 1 || self.terms.values().any(Scalar::is_compound)
    }
}

fn split_sign(c: &Scalar) -> (bool, Scalar) {
    if !c.is_compound() && c.is_negative() {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

fn render_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("v{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Scalar::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(2, i)
    }

    #[test]
    fn additive_inverse_is_empty() {
        let a = Polynomial::var(1, 0);
        let z = &a + &(-&a);
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(0) - &x(1)) * &(&x(0) + &x(1));
        let q = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(p, q);
    }

    #[test]
    fn square_of_linear_has_doubled_degree_four() {
        let a = Polynomial::var(1, 0);
        let a2 = &a * &a;
        assert_eq!(a2.degree(), Some(2));
        assert_eq!(a2.doubled_degree(), Some(4));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let err = Polynomial::var(1, 0).try_add(&x(0)).unwrap_err();
        assert_eq!(err, Error::RingMismatch { left: 1, right: 2 });
    }

    #[test]
    fn exact_linear_division() {
        let a = Polynomial::var(1, 0);
        assert_eq!((&a * &a).exact_divide_linear(&a).unwrap(), a);
        let f = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(f.exact_divide_linear(&(&x(0) - &x(1))).unwrap(), &x(0) + &x(1));
        assert_eq!(a.exact_divide_linear(&(&a * &a)), Err(Error::DivisionNotExact));
        let g = &(&x(0) * &x(0)) + &Polynomial::one(2);
        assert_eq!(g.exact_divide_linear(&x(0)), Err(Error::DivisionNotExact));
    }

    #[test]
    fn grlex_leading_term() {
        // x0 > x1, and degree dominates.
        let p = &(&x(0) + &(&x(1) * &x(1))) + &Polynomial::one(2);
        let (m, _) = p.leading_term().unwrap();
        assert_eq!(m.exponents(), &[0, 2]);
        let q = &x(0) + &x(1);
        assert_eq!(q.leading_term().unwrap().0.exponents(), &[1, 0]);
    }

    #[test]
    fn rendering() {
        let names = vec!["x1".to_string(), "x2".to_string()];
        let p = &(&(&x(0) * &x(0)).scale(&Scalar::from_int(3)) - &x(1)) + &Polynomial::constant(2, Scalar::from_ratio(1, 2));
        assert_eq!(p.render(&names), "3*x1^2 - x2 + 1/2");
        assert_eq!(Polynomial::zero(2).render(&names), "0");
        assert_eq!((-x(0)).render(&names), "-x1");
    }

    #[test]
    fn monomial_enumeration_counts() {
        let ring = PolyRing::new(vec!["x".into(), "y".into(), "z".into()], Field::Rational).unwrap();
        assert_eq!(ring.monomials_up_to(4).len(), 35);
        let r1 = PolyRing::new(vec!["a".into()], Field::Rational).unwrap();
        assert_eq!(r1.monomials_up_to(6).len(), 7);
    }

    #[test]
    fn duplicate_variable_names_rejected() {
        assert!(PolyRing::new(vec!["a".into(), "a".into()], Field::Rational).is_err());
    }

    #[test]
    fn coefficient_split_roundtrip() {
        let p = &(&(&x(0) * &x(1)) * &x(1)) + &(&x(0) - &Polynomial::one(2));
        let cs = p.coefficients_in(1);
        assert_eq!(cs.len(), 3);
        assert_eq!(Polynomial::from_coefficients_in(2, 1, &cs), p);
    }
}
