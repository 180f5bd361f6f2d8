//! Elements `u + v·√a` of a quadratic extension `F(√a)`.
//!
//! The radicand travels with the element. Constants built through
//! [`Ring::from_scalar`] carry none; it is picked up from the other operand the
//! first time a product actually needs it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::scalar::{Field, Ring, Scalar};

#[derive(Clone, Serialize)]
pub struct QuadExtScalar {
    pub re: Scalar,
    pub im: Scalar,
    #[serde(skip)]
    radicand: Option<Scalar>,
}

impl QuadExtScalar {
    pub fn new(re: Scalar, im: Scalar, radicand: &Scalar) -> Self {
        QuadExtScalar { re, im, radicand: Some(radicand.clone()) }
    }

    /// The fixed square root of `a`.
    pub fn sqrt_of(a: &Scalar) -> Self {
        QuadExtScalar::new(Scalar::zero(), Scalar::one(), a)
    }

    /// Checks that `a` defines a field extension (is not a rational square).
    pub fn check_radicand(a: &Scalar) -> Result<()> {
        if a.is_square() {
            return Err(AlgebraError::SquareRadicand(a.to_string()));
        }
        Ok(())
    }

    pub fn radicand(&self) -> Option<&Scalar> {
        self.radicand.as_ref()
    }

    /// The nontrivial automorphism `√a ↦ −√a`.
    pub fn conj(&self) -> Self {
        QuadExtScalar { re: self.re.clone(), im: -&self.im, radicand: self.radicand.clone() }
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    /// Field norm `u² − a v²`.
    pub fn norm(&self) -> Scalar {
        if self.im.is_zero() {
            return &self.re * &self.re;
        }
        let a = self.radicand.as_ref().expect("irrational element without radicand");
        &self.re * &self.re - &(a * &(&self.im * &self.im))
    }

    fn merged_radicand(&self, rhs: &Self) -> Option<Scalar> {
        match (&self.radicand, &rhs.radicand) {
            (Some(a), Some(b)) => {
                debug_assert_eq!(a, b, "elements of different quadratic extensions");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }
}

impl PartialEq for QuadExtScalar {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl fmt::Debug for QuadExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}+{}√{}", self.re, self.im, self.radicand.as_ref().map(|a| a.to_string()).unwrap_or_default())
        }
    }
}

impl Add for QuadExtScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl Sub for QuadExtScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl Mul for QuadExtScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Neg for QuadExtScalar {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl Ring for QuadExtScalar {
    fn zero() -> Self {
        QuadExtScalar { re: Scalar::zero(), im: Scalar::zero(), radicand: None }
    }
    fn one() -> Self {
        QuadExtScalar { re: Scalar::one(), im: Scalar::zero(), radicand: None }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_scalar(s: &Scalar) -> Self {
        QuadExtScalar { re: s.clone(), im: Scalar::zero(), radicand: None }
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        QuadExtScalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
            radicand: self.merged_radicand(rhs),
        }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        QuadExtScalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
            radicand: self.merged_radicand(rhs),
        }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let radicand = self.merged_radicand(rhs);
        let mut re = &self.re * &rhs.re;
        if !self.im.is_zero() && !rhs.im.is_zero() {
            let a = radicand.as_ref().expect("irrational element without radicand");
            re += &(a * &(&self.im * &rhs.im));
        }
        let mut im = &self.re * &rhs.im;
        im += &(&self.im * &rhs.re);
        QuadExtScalar { re, im, radicand }
    }
    fn neg_ref(&self) -> Self {
        QuadExtScalar { re: -&self.re, im: -&self.im, radicand: self.radicand.clone() }
    }
    fn scale(&self, s: &Scalar) -> Self {
        QuadExtScalar { re: &self.re * s, im: &self.im * s, radicand: self.radicand.clone() }
    }
}

impl Field for QuadExtScalar {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        let ninv = n.inv()?;
        Some(self.conj().scale(&ninv))
    }
}
