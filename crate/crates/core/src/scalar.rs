//! Exact rational scalars and the ring/field traits the rest of the crate is
//! generic over.
//!
//! [`Scalar`] keeps small values in an `i64` numerator/denominator pair and
//! only promotes to [`BigRational`] when an intermediate result does not fit.
//! Both representations are kept canonical (reduced, positive denominator, and
//! `Small` whenever the value fits), so structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::AlgebraError;

/// A commutative ring with unit that contains the rationals.
///
/// Generic code uses the `*_ref` methods to avoid cloning operands.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_scalar(s: &Scalar) -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_scalar(&Scalar::from(n))
    }

    fn scale(&self, s: &Scalar) -> Self {
        self.mul_ref(&Self::from_scalar(s))
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let prod = a.mul_ref(b);
        *self = self.add_ref(&prod);
    }
}

/// A [`Ring`] in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul_ref(&r))
    }
}

const SMALL_MAX: i128 = i64::MAX as i128;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// numerator, denominator (> 0, coprime, |numerator| <= i64::MAX)
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Scalar {
    pub fn new(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::from_i128(num as i128, den as i128)
    }

    pub fn integer(n: i64) -> Scalar {
        Scalar::from_i128(n as i128, 1)
    }

    fn from_i128(num: i128, den: i128) -> Scalar {
        let (mut num, mut den) = (num, den);
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        if num.abs() <= SMALL_MAX && den <= SMALL_MAX {
            Scalar::Small(num as i64, den as i64)
        } else {
            Scalar::Big(Box::new(BigRational::new_raw(BigInt::from(num), BigInt::from(den))))
        }
    }

    fn from_big(r: BigRational) -> Scalar {
        // BigRational arithmetic keeps values reduced; only demote if it fits.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Scalar::Small(n, d);
            }
        }
        Scalar::Big(Box::new(r))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Scalar::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Scalar::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Scalar::Small(n, _) => BigInt::from(*n),
            Scalar::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Scalar::Small(_, d) => BigInt::from(*d),
            Scalar::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Small(_, d) => *d == 1,
            Scalar::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Small(n, _) => n.signum() as i32,
            Scalar::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::integer(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `true` when the value is the square of a rational number.
    pub fn is_square(&self) -> bool {
        if self.signum() < 0 {
            return false;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        &rn * &rn == n && &rd * &rd == d
    }

    /// Reduced fraction string `p/q` (the denominator is always written).
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn add_impl(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Scalar::from_i128(a + c, b)
                } else {
                    Scalar::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Scalar::from_big(self.to_big() + rhs.to_big()),
        }
    }

    fn mul_impl(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                if *a == 0 || *c == 0 {
                    return Scalar::Small(0, 1);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                // cross-reduce first so the product is already in lowest terms
                let g1 = a.gcd(&d);
                let g2 = c.gcd(&b);
                let num = (a / g1) * (c / g2);
                let den = (b / g2) * (d / g1);
                if num.abs() <= SMALL_MAX && den <= SMALL_MAX {
                    Scalar::Small(num as i64, den as i64)
                } else {
                    Scalar::Big(Box::new(BigRational::new_raw(BigInt::from(num), BigInt::from(den))))
                }
            }
            _ => Scalar::from_big(self.to_big() * rhs.to_big()),
        }
    }

    fn neg_impl(&self) -> Scalar {
        match self {
            Scalar::Small(a, b) => Scalar::Small(-a, *b),
            Scalar::Big(r) => Scalar::from_big(-(**r).clone()),
        }
    }

    pub fn recip(&self) -> Option<Scalar> {
        match self {
            Scalar::Small(0, _) => None,
            Scalar::Small(a, b) => Some(Scalar::from_i128(*b as i128, *a as i128)),
            Scalar::Big(r) => Some(Scalar::from_big(r.recip())),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::Small(0, 1)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::integer(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::integer(n as i64)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_big(r)
    }
}

impl FromStr for Scalar {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || AlgebraError::Parse(s.to_string());
        let r = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        Ok(Scalar::from_big(r))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Small(n, 1) => write!(f, "{n}"),
            Scalar::Small(n, d) => write!(f, "{n}/{d}"),
            Scalar::Big(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_fraction_string())
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$imp(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                self.$imp(rhs)
            }
        }
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'b Scalar) -> Scalar {
                self.$imp(rhs)
            }
        }
    };
}

impl Scalar {
    fn sub_impl(&self, rhs: &Scalar) -> Scalar {
        self.add_impl(&rhs.neg_impl())
    }

    fn div_impl(&self, rhs: &Scalar) -> Scalar {
        self.mul_impl(&rhs.recip().expect("division by zero scalar"))
    }
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_impl()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_impl()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = self.add_impl(rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = self.sub_impl(rhs);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = self.mul_impl(rhs);
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::Small(0, 1)
    }
    fn one() -> Self {
        Scalar::Small(1, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Scalar::Small(0, _))
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add_impl(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub_impl(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg_impl()
    }
    fn scale(&self, s: &Scalar) -> Self {
        self.mul_impl(s)
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add_impl(&a.mul_impl(b));
    }
}

impl Field for Scalar {
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(Scalar::new(2, -4), Scalar::new(-1, 2));
        assert_eq!(Scalar::new(0, 7), Scalar::zero());
        assert_eq!(Scalar::new(6, 3).to_fraction_string(), "2/1");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Scalar::integer(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Scalar::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Small(..)));
        let min = Scalar::integer(i64::MIN + 1) - Scalar::integer(1);
        assert!(matches!(min, Scalar::Big(_)));
        assert_eq!(-(-min.clone()), min);
    }

    #[test]
    fn parse_and_order() {
        let a: Scalar = "-3/6".parse().unwrap();
        assert_eq!(a, Scalar::new(-1, 2));
        assert!(a < Scalar::zero());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
        assert!(Scalar::new(9, 4).is_square());
        assert!(!Scalar::integer(2).is_square());
        assert!(!Scalar::integer(-1).is_square());
    }

    #[test]
    fn field_inverse() {
        let a = Scalar::new(-3, 7);
        assert_eq!(a.inv().unwrap() * a, Scalar::one());
        assert!(Scalar::zero().inv().is_none());
    }
}
