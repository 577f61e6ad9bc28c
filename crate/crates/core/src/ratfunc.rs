//! Fractions whose denominators are products of linear forms.
//!
//! This is the localization of the polynomial ring at its nonzero linear
//! forms. It contains the inverse of every root and is stable under linear
//! changes of variables, which is all the twisted group algebra needs.
//! Denominators are kept factored as monic linear forms with
//! multiplicities, and the numerator is divisible by none of them, so
//! structural equality is mathematical equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linear::LinearAction;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

type Factors = BTreeMap<Polynomial, u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Factors,
}

/// Splits a constant or linear polynomial into `(scalar, monic factors)`.
fn split(p: &Polynomial) -> Result<(Scalar, Vec<Polynomial>)> {
    match p.degree() {
        None => Err(Error::DivisionByZero),
        Some(0) => Ok((p.constant_term(), Vec::new())),
        Some(1) => {
            let lc = p.leading_coefficient().expect("nonzero").clone();
            Ok((lc.clone(), vec![p.scale(&lc.inverse().expect("nonzero"))]))
        }
        Some(_) => Err(Error::DivisionNotExact),
    }
}

/// Divides `num` by factors of `den` as far as possible, lowering their
/// multiplicities.
fn cancel(mut num: Polynomial, den: &mut Factors) -> Polynomial {
    for (f, e) in den.iter_mut() {
        while *e > 0 {
            match num.exact_divide_linear(f) {
                Ok(q) => {
                    num = q;
                    *e -= 1;
                }
                Err(_) => break,
            }
        }
    }
    num
}

impl RationalFunction {
    /// `num / den` for a constant or linear `den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(Error::RingMismatch { left: num.nvars(), right: den.nvars() });
        }
        let (c, factors) = split(&den)?;
        let num = num.scale(&c.inverse().expect("nonzero"));
        Ok(Self::reduce(num, factors.into_iter().map(|f| (f, 1)).collect()))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Factors::new() }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Polynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::from_poly(Polynomial::constant(nvars, c))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    /// Expanded denominator.
    pub fn denominator(&self) -> Polynomial {
        self.den
            .iter()
            .fold(Polynomial::one(self.nvars()), |acc, (f, e)| &acc * &f.pow(*e))
    }

    /// Monic linear factors of the denominator with multiplicities.
    pub fn denominator_factors(&self) -> &BTreeMap<Polynomial, u32> {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// The polynomial value, when the denominator is 1.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.den.is_empty().then_some(&self.num)
    }

    fn reduce(mut num: Polynomial, mut den: Factors) -> Self {
        if num.is_zero() {
            return Self::zero(num.nvars());
        }
        num = cancel(num, &mut den);
        den.retain(|_, e| *e > 0);
        RationalFunction { num, den }
    }

    pub fn inverse(&self) -> Result<Self> {
        let (c, factors) = split(&self.num)?;
        let num = self.denominator().scale(&c.inverse().expect("nonzero"));
        let mut den = Factors::new();
        for f in factors {
            *den.entry(f).or_insert(0) += 1;
        }
        // The old numerator and denominator were coprime.
        Ok(RationalFunction { num, den })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.nvars() != other.nvars() {
            return Err(Error::RingMismatch { left: self.nvars(), right: other.nvars() });
        }
        if self.den == other.den {
            return Ok(Self::reduce(&self.num + &other.num, self.den.clone()));
        }
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            let slot = den.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let lift = |x: &Self| {
            den.iter().fold(x.num.clone(), |acc, (f, e)| {
                let have = x.den.get(f).copied().unwrap_or(0);
                &acc * &f.pow(e - have)
            })
        };
        Ok(Self::reduce(&lift(self) + &lift(other), den))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.nvars() != other.nvars() {
            return Err(Error::RingMismatch { left: self.nvars(), right: other.nvars() });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars()));
        }
        // Linear forms are prime and both sides are reduced, so only
        // cross cancellation can happen.
        let mut left_den = self.den.clone();
        let mut right_den = other.den.clone();
        let left = cancel(self.num.clone(), &mut right_den);
        let right = cancel(other.num.clone(), &mut left_den);
        for (f, e) in right_den {
            *left_den.entry(f).or_insert(0) += e;
        }
        left_den.retain(|_, e| *e > 0);
        Ok(RationalFunction { num: &left * &right, den: left_den })
    }

    /// Sum of many fractions over one common denominator, reduced once.
    pub fn sum<'a>(nvars: usize, items: impl IntoIterator<Item = &'a RationalFunction>) -> Self {
        let items: Vec<&RationalFunction> = items.into_iter().filter(|x| !x.is_zero()).collect();
        match items.len() {
            0 => return Self::zero(nvars),
            1 => return items[0].clone(),
            _ => {}
        }
        let mut den = Factors::new();
        for x in &items {
            for (f, e) in &x.den {
                let slot = den.entry(f.clone()).or_insert(0);
                *slot = (*slot).max(*e);
            }
        }
        let mut num = Polynomial::zero(nvars);
        for x in &items {
            let lifted = den.iter().fold(x.num.clone(), |acc, (f, e)| {
                let have = x.den.get(f).copied().unwrap_or(0);
                if *e == have {
                    acc
                } else {
                    &acc * &f.pow(e - have)
                }
            });
            num = &num + &lifted;
        }
        Self::reduce(num, den)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        Self::reduce(&self.num * p, self.den.clone())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Applies a linear change of variables to numerator and denominator.
    pub fn apply_action(&self, g: &LinearAction) -> Result<Self> {
        let mut num = self.num.apply_action(g)?;
        let mut den = Factors::new();
        for (f, e) in &self.den {
            let image = f.apply_action(g)?;
            let (c, parts) = split(&image)?;
            let cinv = c.inverse().expect("nonzero").pow(*e);
            num = num.scale(&cinv);
            for p in parts {
                *den.entry(p).or_insert(0) += e;
            }
        }
        Ok(Self::reduce(num, den))
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.den.is_empty() {
            return self.num.render(names);
        }
        let n = if self.num.needs_parens() {
            format!("({})", self.num.render(names))
        } else {
            self.num.render(names)
        };
        let parts: Vec<String> = self
            .den
            .iter()
            .rev()
            .map(|(f, e)| {
                let base = if f.needs_parens() { format!("({})", f.render(names)) } else { f.render(names) };
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        if parts.len() == 1 {
            format!("{n}/{}", parts[0])
        } else {
            format!("{n}/({})", parts.join("*"))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/{:?}", self.num, self.den)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.try_div(rhs).expect("divisor must be a nonzero product of linear forms")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        // Univariate zero; prefer `RationalFunction::zero(nvars)`.
        RationalFunction::zero(1)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one(1)
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn rf(num: Polynomial, den: Polynomial) -> RationalFunction {
        RationalFunction::new(num, den).unwrap()
    }

    #[test]
    fn inverse_times_self_is_one() {
        let a = v(1, 0);
        let inv = rf(Polynomial::one(1), a.clone());
        assert_eq!(&inv * &RationalFunction::from_poly(a), RationalFunction::one(1));
    }

    #[test]
    fn sum_of_equal_fractions() {
        let inv = rf(Polynomial::one(1), v(1, 0));
        let two = rf(Polynomial::constant(1, Scalar::from_int(2)), v(1, 0));
        assert_eq!(&inv + &inv, two);
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let x = v(2, 0);
        let y = v(2, 1);
        let num = &(&x * &x) - &(&y * &y);
        let den = (&x - &y).scale(&Scalar::from_int(3));
        let r = rf(num, den);
        assert!(r.is_polynomial());
        assert_eq!(r.numerator(), &(&x + &y).scale(&Scalar::from_ratio(1, 3)));
    }

    #[test]
    fn factors_are_monic() {
        let x = v(2, 0);
        let y = v(2, 1);
        let r = rf(Polynomial::one(2), (&x + &y).scale(&Scalar::from_int(-4)));
        let (f, _) = r.denominator_factors().iter().next().unwrap();
        assert_eq!(f.leading_coefficient().unwrap(), &Scalar::one());
        assert_eq!(r.numerator(), &Polynomial::constant(2, Scalar::from_ratio(-1, 4)));
    }

    #[test]
    fn partial_fractions_recombine() {
        // 1/(x - y) - 1/x == y/(x(x - y))
        let x = v(2, 0);
        let y = v(2, 1);
        let a = &rf(Polynomial::one(2), &x - &y) - &rf(Polynomial::one(2), x.clone());
        let b = &rf(y.clone(), &x - &y) * &rf(Polynomial::one(2), x.clone());
        assert_eq!(a, b);
        assert_eq!(a.denominator(), &(&x * &x) - &(&x * &y));
    }

    #[test]
    fn quadratic_field_factors() {
        let x = v(2, 0);
        let y = v(2, 1);
        let phi = &(&Scalar::one() + &Scalar::sqrt5()) / &Scalar::from_int(2);
        let l = &x + &y.scale(&phi);
        let r = &rf(&l * &(&x - &y), l.clone()) - &RationalFunction::from_poly(&x - &y);
        assert!(r.is_zero());
    }

    #[test]
    fn action_renormalizes() {
        let x = v(2, 0);
        let y = v(2, 1);
        let swap = LinearAction::from_rows(vec![
            vec![Scalar::zero(), Scalar::one()],
            vec![Scalar::one(), Scalar::zero()],
        ]);
        let r = rf(x.clone(), &x - &y);
        let image = r.apply_action(&swap).unwrap();
        assert_eq!(image, rf(y.clone(), &y - &x));
        assert_eq!(image, rf(-&y, &x - &y));
    }

    #[test]
    fn rejects_nonlinear_denominators() {
        let x = v(1, 0);
        assert_eq!(RationalFunction::new(x.clone(), Polynomial::zero(1)), Err(Error::DivisionByZero));
        assert_eq!(RationalFunction::zero(1).inverse(), Err(Error::DivisionByZero));
        assert_eq!(RationalFunction::new(Polynomial::one(1), &(&x * &x) + &Polynomial::one(1)), Err(Error::DivisionNotExact));
    }

    #[test]
    fn render_factored() {
        let names = vec!["a".to_string(), "b".to_string()];
        let a = v(2, 0);
        let b = v(2, 1);
        let r = &rf(Polynomial::one(2), a.clone()) * &rf(Polynomial::one(2), &a + &b);
        assert_eq!(r.render(&names), "1/(a*(a + b))");
        assert_eq!(rf(Polynomial::constant(2, Scalar::from_int(2)), a).render(&names), "2/a");
    }
}
