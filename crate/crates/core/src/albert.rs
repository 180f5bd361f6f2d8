//! The Albert algebra `H₃(O)` of 3×3 hermitian octonion matrices.
//!
//! Coordinates are `(α₁, α₂, α₃, o₁, o₂, o₃)` (3 + 3·8 = 27) and stand for
//!
//! ```text
//! [ α₁  o₃  ō₂ ]
//! [ ō₃  α₂  o₁ ]
//! [ o₂  ō₁  α₃ ]
//! ```
//!
//! With this placement the norm and adjoint are
//!
//! ```text
//! N(x) = α₁α₂α₃ − Σ αᵢ n(oᵢ) + tr((o₁o₂)o₃)
//! x♯   = (α₂α₃ − n(o₁), α₃α₁ − n(o₂), α₁α₂ − n(o₃);
//!         ō₃ō₂ − α₁o₁, ō₁ō₃ − α₂o₂, ō₂ō₁ − α₃o₃)
//! ```
//!
//! and `x♯♯ = N(x)·x` holds exactly; the tests use that identity as the
//! convention check.

use std::sync::Arc;

use crate::composition::CompositionAlgebra;
use crate::error::{AlgebraError, Result};
use crate::forms::QuadraticForm;
use crate::matrix::DenseMatrix;
use crate::scalar::{Ring, Scalar};

pub const ALBERT_DIM: usize = 27;

#[derive(Clone, Debug, PartialEq)]
pub struct AlbertAlgebra {
    octonions: Arc<CompositionAlgebra>,
}

impl AlbertAlgebra {
    pub fn new(octonions: CompositionAlgebra) -> Result<Self> {
        if octonions.dim() != 8 {
            return Err(AlgebraError::DimensionMismatch { expected: 8, got: octonions.dim() });
        }
        Ok(AlbertAlgebra { octonions: Arc::new(octonions) })
    }

    /// `H₃` of the split octonions.
    pub fn split() -> Self {
        Self::new(CompositionAlgebra::split_octonions()).expect("octonions")
    }

    /// `H₃` of the octonions `(−1, −1, −1)`.
    pub fn division() -> Self {
        Self::new(CompositionAlgebra::division_octonions()).expect("octonions")
    }

    pub fn octonions(&self) -> &Arc<CompositionAlgebra> {
        &self.octonions
    }

    fn oct<'a, E>(x: &'a [E], k: usize) -> &'a [E] {
        &x[3 + 8 * k..11 + 8 * k]
    }

    /// Bilinear trace form `T(x, y) = Σ αᵢβᵢ + Σ n(oᵢ, pᵢ)`.
    pub fn trace_coords<E: Ring>(&self, x: &[E], y: &[E]) -> E {
        let mut acc = E::zero();
        for i in 0..3 {
            acc = acc.add_ref(&x[i].mul_ref(&y[i]));
        }
        for k in 0..3 {
            acc = acc.add_ref(&self.octonions.norm_polar_coords(Self::oct(x, k), Self::oct(y, k)));
        }
        acc
    }

    pub fn norm_coords<E: Ring>(&self, x: &[E]) -> E {
        let o = &self.octonions;
        let mut acc = x[0].mul_ref(&x[1]).mul_ref(&x[2]);
        for k in 0..3 {
            acc = acc.sub_ref(&x[k].mul_ref(&o.norm_coords(Self::oct(x, k))));
        }
        let o12 = o.mul_coords(Self::oct(x, 0), Self::oct(x, 1));
        let o123 = o.mul_coords(&o12, Self::oct(x, 2));
        acc.add_ref(&o.trace_coords(&o123))
    }

    pub fn sharp_coords<E: Ring>(&self, x: &[E]) -> Vec<E> {
        let o = &self.octonions;
        let mut out = Vec::with_capacity(ALBERT_DIM);
        for k in 0..3 {
            let (a, b) = ((k + 1) % 3, (k + 2) % 3);
            out.push(x[a].mul_ref(&x[b]).sub_ref(&o.norm_coords(Self::oct(x, k))));
        }
        let conj: Vec<Vec<E>> = (0..3).map(|k| o.conj_coords(Self::oct(x, k))).collect();
        for k in 0..3 {
            let (a, b) = ((k + 1) % 3, (k + 2) % 3);
            let prod = o.mul_coords(&conj[b], &conj[a]);
            for (p, c) in prod.iter().zip(Self::oct(x, k)) {
                out.push(p.sub_ref(&x[k].mul_ref(c)));
            }
        }
        out
    }

    /// `x × y = (x + y)♯ − x♯ − y♯`
    pub fn cross_coords<E: Ring>(&self, x: &[E], y: &[E]) -> Vec<E> {
        let sum: Vec<E> = x.iter().zip(y).map(|(a, b)| a.add_ref(b)).collect();
        let (s, sx, sy) = (self.sharp_coords(&sum), self.sharp_coords(x), self.sharp_coords(y));
        s.iter().zip(&sx).zip(&sy).map(|((a, b), c)| a.sub_ref(b).sub_ref(c)).collect()
    }

    pub fn trace_gram(&self) -> DenseMatrix<Scalar> {
        DenseMatrix::from_fn(ALBERT_DIM, ALBERT_DIM, |i, j| {
            let mut x = vec![Scalar::zero(); ALBERT_DIM];
            let mut y = vec![Scalar::zero(); ALBERT_DIM];
            x[i] = Scalar::one();
            y[j] = Scalar::one();
            self.trace_coords(&x, &y)
        })
    }

    /// Diagonal form congruent to the Gram matrix of `T`.
    pub fn trace_form(&self) -> QuadraticForm {
        QuadraticForm::diagonalize(&self.trace_gram()).expect("trace form is nondegenerate")
    }

    pub fn element(self: &Arc<Self>, coords: Vec<Scalar>) -> Result<AlbertElement> {
        if coords.len() != ALBERT_DIM {
            return Err(AlgebraError::DimensionMismatch { expected: ALBERT_DIM, got: coords.len() });
        }
        Ok(AlbertElement { algebra: Arc::clone(self), coords })
    }

    pub fn diagonal(self: &Arc<Self>, a: [Scalar; 3]) -> AlbertElement {
        let mut coords = vec![Scalar::zero(); ALBERT_DIM];
        for (c, v) in coords.iter_mut().zip(a) {
            *c = v;
        }
        AlbertElement { algebra: Arc::clone(self), coords }
    }

    pub fn identity(self: &Arc<Self>) -> AlbertElement {
        self.diagonal([Scalar::one(), Scalar::one(), Scalar::one()])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlbertElement {
    algebra: Arc<AlbertAlgebra>,
    coords: Vec<Scalar>,
}

impl AlbertElement {
    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn algebra(&self) -> &Arc<AlbertAlgebra> {
        &self.algebra
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(AlgebraError::MixedAlgebras)
        }
    }

    pub fn trace_t(&self, other: &Self) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.algebra.trace_coords(&self.coords, &other.coords))
    }

    pub fn norm_n(&self) -> Scalar {
        self.algebra.norm_coords(&self.coords)
    }

    pub fn sharp(&self) -> Self {
        AlbertElement { algebra: Arc::clone(&self.algebra), coords: self.algebra.sharp_coords(&self.coords) }
    }

    pub fn cross(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(AlbertElement {
            algebra: Arc::clone(&self.algebra),
            coords: self.algebra.cross_coords(&self.coords, &other.coords),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        AlbertElement { algebra: Arc::clone(&self.algebra), coords: self.coords.iter().map(|a| a * c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from(n)
    }

    #[test]
    fn identity_and_diagonal() {
        for alg in [AlbertAlgebra::split(), AlbertAlgebra::division()] {
            let alg = Arc::new(alg);
            let one = alg.identity();
            assert_eq!(one.trace_t(&one).unwrap(), s(3));
            assert_eq!(one.norm_n(), s(1));
            assert_eq!(one.sharp(), one);
            let d = alg.diagonal([s(2), s(3), s(5)]);
            let e = alg.diagonal([s(7), s(-1), s(4)]);
            assert_eq!(d.trace_t(&e).unwrap(), s(14 - 3 + 20));
            assert_eq!(d.norm_n(), s(30));
            assert_eq!(d.sharp(), alg.diagonal([s(15), s(10), s(6)]));
        }
    }

    #[test]
    fn trace_form_signatures() {
        let sig = AlbertAlgebra::split().trace_form().signature_and_witt();
        assert_eq!((sig.positives, sig.negatives), (15, 12));
        let sig = AlbertAlgebra::division().trace_form().signature_and_witt();
        assert_eq!((sig.positives, sig.negatives), (27, 0));
        assert_eq!(AlbertAlgebra::division().trace_gram().rank(), 27);
        assert_eq!(AlbertAlgebra::split().trace_gram().rank(), 27);
    }

    fn coords() -> impl Strategy<Value = Vec<Scalar>> {
        proptest::collection::vec((-5i64..=5, 1i64..=3).prop_map(|(n, d)| Scalar::new(n, d)), ALBERT_DIM)
    }

    fn algebra() -> impl Strategy<Value = Arc<AlbertAlgebra>> {
        prop_oneof![Just(Arc::new(AlbertAlgebra::split())), Just(Arc::new(AlbertAlgebra::division()))]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn adjoint_identity(alg in algebra(), x in coords()) {
            let x = alg.element(x).unwrap();
            prop_assert_eq!(x.sharp().sharp(), x.scale(&x.norm_n()));
        }

        #[test]
        fn sharp_is_gradient_of_norm(alg in algebra(), x in coords(), y in coords()) {
            // N(x + εy) = N(x) + ε T(x♯, y) + ε² T(x, y♯) + ε³ N(y); read the ε-term
            // off three evaluations at ε = 1, −1, 2.
            let x = alg.element(x).unwrap();
            let y = alg.element(y).unwrap();
            let at = |e: i64| {
                let v: Vec<Scalar> = x.coords().iter().zip(y.coords()).map(|(a, b)| a + &(b * &s(e))).collect();
                alg.norm_coords(&v)
            };
            let (n0, n3) = (x.norm_n(), y.norm_n());
            let p1 = at(1) - n0.clone() - n3.clone();
            let m1 = at(-1) - n0.clone() + n3.clone();
            let p2 = at(2) - n0 - n3 * s(8);
            // p1 = a + b, m1 = −a + b, p2 = 2a + 4b
            let a = (p1.clone() - m1) * Scalar::new(1, 2);
            let b = p1 - a.clone();
            prop_assert_eq!(p2, a.clone() * s(2) + b * s(4));
            prop_assert_eq!(a, x.sharp().trace_t(&y).unwrap());
        }

        #[test]
        fn cross_symmetric(alg in algebra(), x in coords(), y in coords()) {
            let x = alg.element(x).unwrap();
            let y = alg.element(y).unwrap();
            prop_assert_eq!(x.cross(&y).unwrap(), y.cross(&x).unwrap());
            prop_assert_eq!(x.cross(&x).unwrap(), x.sharp().scale(&s(2)));
        }
    }
}
