//! Exact scalars: rationals, optionally adjoined with `sqrt5`.
//!
//! A [`Scalar`] is `a + b*sqrt5` with `a, b` rational. Over the plain
//! rational field `b` is always zero. The only supported extension is
//! `Q(sqrt5)`, which is enough to write down `-2cos(pi/5)` exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The radicand of the only supported quadratic extension.
pub const RADICAND: i64 = 5;

/// Which field scalars are allowed to live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    /// `Q(sqrt5)`.
    Quadratic5,
}

impl Field {
    pub fn parse(s: &str) -> Result<Field> {
        match s.trim() {
            "rational" | "Q" => Ok(Field::Rational),
            "quadratic:5" | "Q(sqrt5)" => Ok(Field::Quadratic5),
            other => Err(Error::Config(format!("unknown field `{other}`"))),
        }
    }

    pub fn contains(self, x: &Scalar) -> bool {
        match self {
            Field::Rational => x.is_rational(),
            Field::Quadratic5 => true,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("rational"),
            Field::Quadratic5 => f.write_str("quadratic:5"),
        }
    }
}

/// Rational number that stays on machine integers while it fits.
///
/// Canonical: `Small(n, d)` has `d > 0` and `gcd(n, d) = 1`, and `Big` is
/// used only when one of them does not fit in an `i64`.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Rat {
    Small(i64, i64),
    Big(BigRational),
}

impl Rat {
    const ZERO: Rat = Rat::Small(0, 1);
    const ONE: Rat = Rat::Small(1, 1);

    fn int(n: i64) -> Rat {
        Rat::Small(n, 1)
    }

    fn make(n: i128, d: i128) -> Rat {
        debug_assert!(d != 0);
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rat::Small(n, d),
            _ => Rat::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(x: BigRational) -> Rat {
        match (x.numer().to_i64(), x.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(n, d),
            _ => Rat::Big(x),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(x) => x.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    fn signum(&self) -> i32 {
        match self {
            Rat::Small(n, _) => n.signum() as i32,
            Rat::Big(x) => {
                if x.is_positive() {
                    1
                } else if x.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    fn add(&self, other: &Rat) -> Rat {
        match (self, other) {
            (Rat::Small(0, _), _) => other.clone(),
            (_, Rat::Small(0, _)) => self.clone(),
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rat::make(a + c, b)
                } else {
                    Rat::make(a * d + c * b, b * d)
                }
            }
            _ => Rat::from_big(self.to_big() + other.to_big()),
        }
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::Small(n, d) => Rat::make(-(*n as i128), *d as i128),
            Rat::Big(x) => Rat::from_big(-x),
        }
    }

    fn sub(&self, other: &Rat) -> Rat {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Rat) -> Rat {
        match (self, other) {
            (Rat::Small(0, _), _) | (_, Rat::Small(0, _)) => Rat::ZERO,
            (Rat::Small(a, b), Rat::Small(c, d)) => Rat::make(*a as i128 * *c as i128, *b as i128 * *d as i128),
            _ => Rat::from_big(self.to_big() * other.to_big()),
        }
    }

    fn recip(&self) -> Rat {
        match self {
            Rat::Small(n, d) => Rat::make(*d as i128, *n as i128),
            Rat::Big(x) => Rat::from_big(x.recip()),
        }
    }

    fn abs(&self) -> Rat {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(x) if x.is_integer() => write!(f, "{}", x.numer()),
            Rat::Big(x) => write!(f, "{}/{}", x.numer(), x.denom()),
        }
    }
}

/// `a + b*sqrt5`, always in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: Rat,
    b: Rat,
}

impl Scalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Scalar { a: Rat::from_big(a), b: Rat::from_big(b) }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { a: Rat::int(n), b: Rat::ZERO }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar { a: Rat::make(num as i128, den as i128), b: Rat::ZERO }
    }

    pub fn rational(a: BigRational) -> Self {
        Scalar { a: Rat::from_big(a), b: Rat::ZERO }
    }

    /// `sqrt5` itself.
    pub fn sqrt5() -> Self {
        Scalar { a: Rat::ZERO, b: Rat::ONE }
    }

    pub fn rational_part(&self) -> BigRational {
        self.a.to_big()
    }

    pub fn sqrt5_part(&self) -> BigRational {
        self.b.to_big()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn norm_rat(&self) -> Rat {
        self.a.mul(&self.a).sub(&Rat::int(RADICAND).mul(&self.b.mul(&self.b)))
    }

    /// Norm `a^2 - 5 b^2` down to the rationals.
    pub fn norm(&self) -> BigRational {
        self.norm_rat().to_big()
    }

    pub fn conjugate(&self) -> Self {
        Scalar { a: self.a.clone(), b: self.b.neg() }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(Scalar { a: self.a.recip(), b: Rat::ZERO });
        }
        let inv = self.norm_rat().recip();
        Some(Scalar { a: self.a.mul(&inv), b: self.b.mul(&inv).neg() })
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a^2 with 5 b^2.
        match self.norm_rat().signum() {
            1 => sa,
            -1 => sb,
            _ => 0,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Converts a small integer-valued scalar, if it is one.
    pub fn to_i64(&self) -> Option<i64> {
        match (&self.a, self.b.is_zero()) {
            (Rat::Small(n, 1), true) => Some(*n),
            _ => None,
        }
    }

    /// Approximate value, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_big().to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_big().to_f64().unwrap_or(f64::NAN);
        a + b * (RADICAND as f64).sqrt()
    }

    /// True when the rendered form needs parentheses as a factor.
    pub fn is_compound(&self) -> bool {
        !self.a.is_zero() && !self.b.is_zero()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar { a: Rat::ZERO, b: Rat::ZERO }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar { a: Rat::ONE, b: Rat::ZERO }
    }
    fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { a: self.a.add(&rhs.a), b: self.b.add(&rhs.b) }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { a: self.a.sub(&rhs.a), b: self.b.sub(&rhs.b) }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.b.is_zero() && rhs.b.is_zero() {
            return Scalar { a: self.a.mul(&rhs.a), b: Rat::ZERO };
        }
        let five = Rat::int(RADICAND);
        Scalar {
            a: self.a.mul(&rhs.a).add(&five.mul(&self.b.mul(&rhs.b))),
            b: self.a.mul(&rhs.b).add(&self.b.mul(&rhs.a)),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inverse().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: self.a.neg(), b: self.b.neg() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            f.write_str(if self.b.signum() < 0 { " - " } else { " + " })?;
            let mag = self.b.abs();
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            return f.write_str("sqrt5");
        }
        if self.b == Rat::int(-1) {
            f.write_str("-")?;
        } else if !self.b.is_one() {
            write!(f, "{}*", self.b)?;
        }
        f.write_str("sqrt5")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_identities() {
        // phi = (1 + sqrt5)/2 satisfies phi^2 = phi + 1.
        let phi = &(&Scalar::one() + &Scalar::sqrt5()) / &Scalar::from_int(2);
        assert_eq!(&phi * &phi, &phi + &Scalar::one());
        assert_eq!(&phi * &phi.inverse().unwrap(), Scalar::one());
    }

    #[test]
    fn exact_sign() {
        let x = &Scalar::from_int(2) - &Scalar::sqrt5(); // 2 - 2.236 < 0
        assert_eq!(x.signum(), -1);
        let y = &Scalar::from_int(3) - &Scalar::sqrt5();
        assert_eq!(y.signum(), 1);
        assert_eq!(Scalar::zero().signum(), 0);
        assert!(Scalar::from_ratio(-1, 3) < Scalar::zero());
    }

    #[test]
    fn canonical_fractions() {
        assert_eq!(Scalar::from_ratio(2, -4), Scalar::from_ratio(-1, 2));
        assert_eq!(Scalar::from_ratio(2, -4).to_string(), "-1/2");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Scalar::from_int(i64::MAX);
        let sq = &big * &big;
        assert_eq!(sq.to_i64(), None);
        assert_eq!(&sq / &big, big);
        let min = Scalar::from_int(i64::MIN);
        assert_eq!(-(-&min), min);
        assert_eq!((-&min).to_string(), "9223372036854775808");
        let tiny = Scalar::from_ratio(1, i64::MAX);
        assert_eq!(&(&tiny * &tiny) * &big, tiny);
    }

    #[test]
    fn display_forms() {
        let x = &Scalar::from_ratio(1, 2) - &(&Scalar::from_ratio(3, 2) * &Scalar::sqrt5());
        assert_eq!(x.to_string(), "1/2 - 3/2*sqrt5");
        assert_eq!((-Scalar::sqrt5()).to_string(), "-sqrt5");
    }

    #[test]
    fn field_membership() {
        assert!(Field::Rational.contains(&Scalar::from_ratio(3, 7)));
        assert!(!Field::Rational.contains(&Scalar::sqrt5()));
        assert!(Field::Quadratic5.contains(&Scalar::sqrt5()));
    }
}
