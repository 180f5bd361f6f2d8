//! Sparse multivariate polynomials of degree at most four.
//!
//! Used to expand the quartic (and cubic) maps of a triple system into
//! monomial coefficients once, so the symmetric multilinear tensors can be read
//! off directly instead of being polarized point by point.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Ring, Scalar};

pub const MAX_DEGREE: usize = 4;
const PAD: u16 = u16::MAX;

/// Sorted variable indices, padded with `u16::MAX`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial([u16; MAX_DEGREE]);

impl Monomial {
    pub const ONE: Monomial = Monomial([PAD; MAX_DEGREE]);

    pub fn var(i: usize) -> Monomial {
        let mut m = Monomial::ONE;
        m.0[0] = i as u16;
        m
    }

    pub fn degree(&self) -> usize {
        self.0.iter().take_while(|&&v| v != PAD).count()
    }

    pub fn vars(&self) -> &[u16] {
        &self.0[..self.degree()]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (self.vars(), other.vars());
        assert!(a.len() + b.len() <= MAX_DEGREE, "polynomial degree exceeds {MAX_DEGREE}");
        let mut out = Monomial::ONE;
        out.0[..a.len()].copy_from_slice(a);
        out.0[a.len()..a.len() + b.len()].copy_from_slice(b);
        out.0[..a.len() + b.len()].sort_unstable();
        out
    }

    /// Number of distinct orderings of the variable multiset.
    pub fn arrangements(&self) -> usize {
        let vars = self.vars();
        let mut denom = 1usize;
        let mut i = 0;
        while i < vars.len() {
            let mut j = i;
            while j < vars.len() && vars[j] == vars[i] {
                j += 1;
            }
            denom *= (1..=(j - i)).product::<usize>();
            i = j;
        }
        (1..=vars.len()).product::<usize>() / denom
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly {
    terms: HashMap<Monomial, Scalar>,
}

impl Poly {
    pub fn var(i: usize) -> Poly {
        let mut terms = HashMap::new();
        terms.insert(Monomial::var(i), Scalar::one());
        Poly { terms }
    }

    pub fn constant(c: Scalar) -> Poly {
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::ONE, c);
        }
        Poly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `true` if every monomial has exactly degree `d`.
    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn eval<R: Ring>(&self, point: &[R]) -> R {
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = R::from_scalar(c);
            for &v in m.vars() {
                t = t.mul_ref(&point[v as usize]);
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    fn accumulate(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        self.add_ref(&rhs)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self.sub_ref(&rhs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        self.mul_ref(&rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn one() -> Self {
        Poly::constant(Scalar::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_scalar(s: &Scalar) -> Self {
        Poly::constant(s.clone())
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let (mut big, small) = if self.len() >= rhs.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.accumulate(*m, c.clone());
        }
        big
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, -c);
        }
        out
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = Poly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.accumulate(ma.mul(mb), ca * cb);
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
    fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Poly::default();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }
}

/// Coefficients of the symmetric multilinear form attached to a homogeneous
/// polynomial, keyed by sorted index tuple.
///
/// For `P(x) = Σ c_m x^m` of degree `d`, the symmetric form `F` with
/// `F(x, …, x) = P(x)` has `F(e_{i1}, …, e_{id}) = c_m / arrangements(m)`.
pub fn symmetric_coefficients(p: &Poly, degree: usize) -> Vec<(Monomial, Scalar)> {
    let mut out: Vec<(Monomial, Scalar)> = p
        .terms()
        .map(|(m, c)| {
            assert_eq!(m.degree(), degree, "polynomial is not homogeneous of degree {degree}");
            (*m, c * &Scalar::new(1, m.arrangements() as i64))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_and_eval() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let s = x.add_ref(&y);
        let sq = s.mul_ref(&s);
        assert_eq!(sq.len(), 3);
        let v = sq.eval(&[Scalar::integer(2), Scalar::integer(3)]);
        assert_eq!(v, Scalar::integer(25));
        assert!(sq.sub_ref(&sq).is_zero());
    }

    #[test]
    fn arrangements_count() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let m = x.mul_ref(&x).mul_ref(&y).mul_ref(&y);
        let (mono, _) = m.terms().next().unwrap();
        assert_eq!(mono.arrangements(), 6);
        let coeffs = symmetric_coefficients(&m, 4);
        assert_eq!(coeffs[0].1, Scalar::new(1, 6));
    }
}
