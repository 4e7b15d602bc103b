//! The two-dimensional commutative algebra of pairs `(x, t)` with product
//! `(x, t)(y, s) = (xy, xs + ty)`.
//!
//! Every moment, cumulant and series coefficient in this crate lives here.
//! The algebra is isomorphic to upper-triangular 2x2 matrices with equal
//! diagonal entries, so `t` behaves like a nilpotent "derivative" part.
//! Scalars are exact arbitrary-precision rationals.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational scalar, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for the rational `num / den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`. Decimal notation is rejected so that values stay exact.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::parse(format!("`{s}` is not a rational of the form p/q"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::parse(format!("`{s}` has a zero denominator")));
    }
    Ok(Rational::new(num, den))
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// An element `(x, t)` of the dual-number algebra.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DualScalar {
    pub x: Rational,
    pub t: Rational,
}

impl DualScalar {
    pub fn new(x: Rational, t: Rational) -> Self {
        DualScalar { x, t }
    }

    pub fn from_ints(x: i64, t: i64) -> Self {
        DualScalar::new(int(x), int(t))
    }

    /// Embeds a scalar as `(x, 0)`.
    pub fn real(x: Rational) -> Self {
        DualScalar::new(x, Rational::zero())
    }

    pub fn zero() -> Self {
        DualScalar::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        DualScalar::new(Rational::one(), Rational::zero())
    }

    /// The nilpotent generator `(0, 1)`.
    pub fn epsilon() -> Self {
        DualScalar::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.t.is_zero()
    }

    pub fn is_invertible(&self) -> bool {
        !self.x.is_zero()
    }

    /// `(x, t)^n = (x^n, n x^(n-1) t)`, with `(1, 0)` for `n = 0`.
    pub fn pow(&self, n: u32) -> DualScalar {
        if n == 0 {
            return DualScalar::one();
        }
        let x_pm1 = num_traits::pow(self.x.clone(), (n - 1) as usize);
        let t = &x_pm1 * &self.t * Rational::from_integer(BigInt::from(n));
        DualScalar::new(&x_pm1 * &self.x, t)
    }

    /// `(x, t)^-1 = (1/x, -t/x^2)`.
    pub fn inverse(&self) -> Result<DualScalar> {
        if self.x.is_zero() {
            return Err(Error::NotInvertible(format!(
                "{self} has zero first component"
            )));
        }
        let inv = self.x.recip();
        let t = -(&self.t * &inv * &inv);
        Ok(DualScalar::new(inv, t))
    }

    /// Multiplication by a ground-field scalar.
    pub fn scale(&self, c: &Rational) -> DualScalar {
        DualScalar::new(&self.x * c, &self.t * c)
    }

    pub fn scale_int(&self, c: i64) -> DualScalar {
        self.scale(&int(c))
    }

    /// The 2x2 upper-triangular matrix `[[x, t], [0, x]]`, row major.
    pub fn to_matrix(&self) -> [[Rational; 2]; 2] {
        [
            [self.x.clone(), self.t.clone()],
            [Rational::zero(), self.x.clone()],
        ]
    }

    pub fn to_strings(&self) -> [String; 2] {
        [format_rational(&self.x), format_rational(&self.t)]
    }

    pub fn from_strs(x: &str, t: &str) -> Result<Self> {
        Ok(DualScalar::new(parse_rational(x)?, parse_rational(t)?))
    }
}

impl fmt::Display for DualScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.t)
    }
}

impl fmt::Debug for DualScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"x,t"` where both parts are rationals, e.g. `"1/2,-3/4"`.
impl FromStr for DualScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (x, t) = s
            .split_once(',')
            .ok_or_else(|| Error::parse(format!("`{s}` is not a pair x,t")))?;
        DualScalar::from_strs(x, t)
    }
}

impl Serialize for DualScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DualScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [x, t] = <[String; 2]>::deserialize(deserializer)?;
        DualScalar::from_strs(&x, &t).map_err(D::Error::custom)
    }
}

impl Add<&DualScalar> for &DualScalar {
    type Output = DualScalar;
    fn add(self, rhs: &DualScalar) -> DualScalar {
        DualScalar::new(&self.x + &rhs.x, &self.t + &rhs.t)
    }
}

impl Sub<&DualScalar> for &DualScalar {
    type Output = DualScalar;
    fn sub(self, rhs: &DualScalar) -> DualScalar {
        DualScalar::new(&self.x - &rhs.x, &self.t - &rhs.t)
    }
}

impl Mul<&DualScalar> for &DualScalar {
    type Output = DualScalar;
    fn mul(self, rhs: &DualScalar) -> DualScalar {
        let t = &self.x * &rhs.t + &self.t * &rhs.x;
        DualScalar::new(&self.x * &rhs.x, t)
    }
}

impl Neg for &DualScalar {
    type Output = DualScalar;
    fn neg(self) -> DualScalar {
        DualScalar::new(-&self.x, -&self.t)
    }
}

impl Neg for DualScalar {
    type Output = DualScalar;
    fn neg(self) -> DualScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<DualScalar> for DualScalar {
            type Output = DualScalar;
            fn $m(self, rhs: DualScalar) -> DualScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&DualScalar> for DualScalar {
            type Output = DualScalar;
            fn $m(self, rhs: &DualScalar) -> DualScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<DualScalar> for &DualScalar {
            type Output = DualScalar;
            fn $m(self, rhs: DualScalar) -> DualScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&DualScalar> for DualScalar {
    fn add_assign(&mut self, rhs: &DualScalar) {
        self.x += &rhs.x;
        self.t += &rhs.t;
    }
}

impl AddAssign for DualScalar {
    fn add_assign(&mut self, rhs: DualScalar) {
        *self += &rhs;
    }
}

impl SubAssign<&DualScalar> for DualScalar {
    fn sub_assign(&mut self, rhs: &DualScalar) {
        self.x -= &rhs.x;
        self.t -= &rhs.t;
    }
}

impl MulAssign<&DualScalar> for DualScalar {
    fn mul_assign(&mut self, rhs: &DualScalar) {
        *self = &*self * rhs;
    }
}

impl Sum for DualScalar {
    fn sum<I: Iterator<Item = DualScalar>>(iter: I) -> Self {
        iter.fold(DualScalar::zero(), |acc, v| acc + v)
    }
}

impl<'a> Product<&'a DualScalar> for DualScalar {
    fn product<I: Iterator<Item = &'a DualScalar>>(iter: I) -> Self {
        iter.fold(DualScalar::one(), |acc, v| acc * v)
    }
}

impl From<i64> for DualScalar {
    fn from(x: i64) -> Self {
        DualScalar::real(int(x))
    }
}
