//! Quaternion and octonion algebras by Cayley–Dickson doubling.
//!
//! Basis vectors are indexed by bit masks: bit `k` set means the `k`-th
//! doubling generator is a factor, so the quaternion basis is
//! `(1, i, j, ij)` and the octonion basis continues with
//! `(l, il, jl, (ij)l)`. The doubling product is
//! `(a, b)(c, d) = (ac + γ d̄ b, d a + b c̄)`, which gives `i² = γ₁`,
//! `j² = γ₂` and `ij = −ji`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::forms::QuadraticForm;
use crate::scalar::{Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompositionAlgebra {
    params: Vec<Scalar>,
    #[serde(skip)]
    dim: usize,
    /// `e_s · e_t = coeff · e_{s ^ t}`, row-major in `(s, t)`.
    #[serde(skip)]
    table: Vec<Scalar>,
    /// `n(e_s)`; the basis is orthogonal for the norm.
    #[serde(skip)]
    norms: Vec<Scalar>,
}

impl CompositionAlgebra {
    /// Builds the algebra from 1 to 3 nonzero doubling parameters.
    pub fn new(params: Vec<Scalar>) -> Result<Self> {
        if params.is_empty() || params.len() > 3 {
            return Err(AlgebraError::InvalidParameter(format!(
                "expected 1 to 3 doubling parameters, got {}",
                params.len()
            )));
        }
        if params.iter().any(|p| p.is_zero()) {
            return Err(AlgebraError::ZeroParameter("doubling parameter"));
        }
        let dim = 1 << params.len();
        let mut table = Vec::with_capacity(dim * dim);
        for s in 0..dim {
            for t in 0..dim {
                let mut x = vec![Scalar::zero(); dim];
                let mut y = vec![Scalar::zero(); dim];
                x[s] = Scalar::one();
                y[t] = Scalar::one();
                let z = doubled_product(&params, &x, &y);
                debug_assert!(z.iter().enumerate().all(|(k, c)| k == (s ^ t) || c.is_zero()));
                table.push(z[s ^ t].clone());
            }
        }
        let norms = (0..dim)
            .map(|s| {
                let mut n = Scalar::one();
                for (k, p) in params.iter().enumerate() {
                    if s & (1 << k) != 0 {
                        n = n * -p.clone();
                    }
                }
                n
            })
            .collect();
        Ok(CompositionAlgebra { params, dim, table, norms })
    }

    /// `(a, b)_F`
    pub fn quaternion(a: Scalar, b: Scalar) -> Result<Self> {
        Self::new(vec![a, b])
    }

    pub fn octonion(a: Scalar, b: Scalar, c: Scalar) -> Result<Self> {
        Self::new(vec![a, b, c])
    }

    /// Octonions with parameters `(1, 1, 1)`; the norm is hyperbolic.
    pub fn split_octonions() -> Self {
        Self::new(vec![Scalar::one(); 3]).expect("valid parameters")
    }

    /// Octonions with parameters `(−1, −1, −1)`; the norm is `8⟨1⟩`.
    pub fn division_octonions() -> Self {
        Self::new(vec![-Scalar::one(); 3]).expect("valid parameters")
    }

    pub fn params(&self) -> &[Scalar] {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Structure constant of `e_s · e_t` (the product is `coeff · e_{s^t}`).
    pub fn structure_constant(&self, s: usize, t: usize) -> &Scalar {
        &self.table[s * self.dim + t]
    }

    pub fn mul_coords<E: Ring>(&self, x: &[E], y: &[E]) -> Vec<E> {
        let mut out = vec![E::zero(); self.dim];
        for (s, xs) in x.iter().enumerate() {
            if xs.is_zero() {
                continue;
            }
            for (t, yt) in y.iter().enumerate() {
                if yt.is_zero() {
                    continue;
                }
                let c = &self.table[s * self.dim + t];
                let term = xs.mul_ref(yt).scale(c);
                out[s ^ t] = out[s ^ t].add_ref(&term);
            }
        }
        out
    }

    pub fn conj_coords<E: Ring>(&self, x: &[E]) -> Vec<E> {
        x.iter().enumerate().map(|(s, c)| if s == 0 { c.clone() } else { c.neg_ref() }).collect()
    }

    pub fn norm_coords<E: Ring>(&self, x: &[E]) -> E {
        let mut acc = E::zero();
        for (c, n) in x.iter().zip(&self.norms) {
            if !c.is_zero() {
                acc = acc.add_ref(&c.mul_ref(c).scale(n));
            }
        }
        acc
    }

    /// Polar form `n(x + y) − n(x) − n(y)`.
    pub fn norm_polar_coords<E: Ring>(&self, x: &[E], y: &[E]) -> E {
        let mut acc = E::zero();
        for ((a, b), n) in x.iter().zip(y).zip(&self.norms) {
            if !a.is_zero() && !b.is_zero() {
                acc = acc.add_ref(&a.mul_ref(b).scale(n));
            }
        }
        acc.scale(&Scalar::from(2))
    }

    /// `x + x̄ = 2·x₀`
    pub fn trace_coords<E: Ring>(&self, x: &[E]) -> E {
        x[0].scale(&Scalar::from(2))
    }

    /// The norm as the diagonal form `⟨n(e_s)⟩`.
    pub fn norm_form(&self) -> QuadraticForm {
        QuadraticForm::new(self.norms.clone()).expect("norms of basis vectors are nonzero")
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<Scalar>) -> Result<CompositionElement> {
        if coeffs.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim, got: coeffs.len() });
        }
        Ok(CompositionElement { algebra: Arc::clone(self), coeffs })
    }

    pub fn basis(self: &Arc<Self>, s: usize) -> CompositionElement {
        let mut coeffs = vec![Scalar::zero(); self.dim];
        coeffs[s] = Scalar::one();
        CompositionElement { algebra: Arc::clone(self), coeffs }
    }

    pub fn one(self: &Arc<Self>) -> CompositionElement {
        self.basis(0)
    }
}

/// Recursive doubling product used once to fill the structure table.
fn doubled_product(params: &[Scalar], x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    if params.is_empty() {
        return vec![&x[0] * &y[0]];
    }
    let (inner, gamma) = (&params[..params.len() - 1], &params[params.len() - 1]);
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let conj = |v: &[Scalar]| -> Vec<Scalar> {
        v.iter().enumerate().map(|(k, s)| if k == 0 { s.clone() } else { -s }).collect()
    };
    let ac = doubled_product(inner, a, c);
    let dbar_b = doubled_product(inner, &conj(d), b);
    let da = doubled_product(inner, d, a);
    let b_cbar = doubled_product(inner, b, &conj(c));
    let mut out = Vec::with_capacity(x.len());
    out.extend(ac.iter().zip(&dbar_b).map(|(p, q)| p + &(gamma * q)));
    out.extend(da.iter().zip(&b_cbar).map(|(p, q)| p + q));
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompositionElement {
    algebra: Arc<CompositionAlgebra>,
    coeffs: Vec<Scalar>,
}

impl CompositionElement {
    pub fn algebra(&self) -> &Arc<CompositionAlgebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra.params == other.algebra.params {
            Ok(())
        } else {
            Err(AlgebraError::MixedAlgebras)
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(CompositionElement {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.algebra.mul_coords(&self.coeffs, &other.coeffs),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(CompositionElement {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        CompositionElement { algebra: Arc::clone(&self.algebra), coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Conjugate and trace `x + x̄` (a scalar multiple of 1).
    pub fn conj_trace(&self) -> (Self, Scalar) {
        let conj = self.algebra.conj_coords(&self.coeffs);
        let trace = self.algebra.trace_coords(&self.coeffs);
        (CompositionElement { algebra: Arc::clone(&self.algebra), coeffs: conj }, trace)
    }

    pub fn conj(&self) -> Self {
        self.conj_trace().0
    }

    pub fn norm(&self) -> Scalar {
        self.algebra.norm_coords(&self.coeffs)
    }

    /// `Some(c)` if the element is `c·1`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| self.coeffs[0].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::DenseMatrix;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from(n)
    }

    fn hamilton() -> Arc<CompositionAlgebra> {
        Arc::new(CompositionAlgebra::quaternion(s(-1), s(-1)).unwrap())
    }

    #[test]
    fn quaternion_relations() {
        let h = hamilton();
        let (i, j, ij) = (h.basis(1), h.basis(2), h.basis(3));
        assert_eq!(i.multiply(&j).unwrap(), ij);
        assert_eq!(j.multiply(&i).unwrap(), ij.scale(&s(-1)));
        assert_eq!(i.multiply(&i).unwrap(), h.one().scale(&s(-1)));
        let q = Arc::new(CompositionAlgebra::quaternion(s(2), s(-3)).unwrap());
        assert_eq!(q.basis(1).multiply(&q.basis(1)).unwrap(), q.one().scale(&s(2)));
        assert_eq!(q.basis(2).multiply(&q.basis(2)).unwrap(), q.one().scale(&s(-3)));
    }

    #[test]
    fn conj_and_trace_of_units() {
        let h = hamilton();
        let (c, t) = h.basis(1).conj_trace();
        assert_eq!(c, h.basis(1).scale(&s(-1)));
        assert_eq!(t, s(0));
        let (c, t) = h.one().conj_trace();
        assert_eq!(c, h.one());
        assert_eq!(t, s(2));
    }

    #[test]
    fn mixed_algebras_rejected() {
        let h = hamilton();
        let o = Arc::new(CompositionAlgebra::split_octonions());
        assert_eq!(h.one().multiply(&o.one()), Err(AlgebraError::MixedAlgebras));
        assert!(CompositionAlgebra::new(vec![s(1), s(0)]).is_err());
        assert!(CompositionAlgebra::new(vec![]).is_err());
    }

    #[test]
    fn octonion_associator_witness() {
        // exhaustive search over basis triples
        let o = Arc::new(CompositionAlgebra::division_octonions());
        let mut witness = None;
        'outer: for a in 1..8 {
            for b in 1..8 {
                for c in 1..8 {
                    let (x, y, z) = (o.basis(a), o.basis(b), o.basis(c));
                    let l = x.multiply(&y).unwrap().multiply(&z).unwrap();
                    let r = x.multiply(&y.multiply(&z).unwrap()).unwrap();
                    if l != r {
                        witness = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(witness, Some((1, 2, 4)));
    }

    fn gram_from_products(alg: &Arc<CompositionAlgebra>) -> DenseMatrix<Scalar> {
        // b(x, y) = ½ tr(x ȳ), computed from the multiplication table only
        DenseMatrix::from_fn(alg.dim(), alg.dim(), |a, b| {
            let p = alg.basis(a).multiply(&alg.basis(b).conj()).unwrap();
            p.conj_trace().1 * Scalar::new(1, 2)
        })
    }

    #[test]
    fn norm_form_signatures() {
        let h = hamilton();
        assert_eq!(h.norm_form().coeffs(), &[s(1), s(1), s(1), s(1)]);
        for (alg, expected) in [
            (CompositionAlgebra::division_octonions(), (8, 0)),
            (CompositionAlgebra::split_octonions(), (4, 4)),
        ] {
            let alg = Arc::new(alg);
            let q = QuadraticForm::diagonalize(&gram_from_products(&alg)).unwrap();
            let sig = q.signature_and_witt();
            assert_eq!((sig.positives, sig.negatives), expected);
            let sig = alg.norm_form().signature_and_witt();
            assert_eq!((sig.positives, sig.negatives), expected);
        }
    }

    fn small() -> impl Strategy<Value = Scalar> {
        (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Scalar::new(n, d))
    }

    fn element(dim: usize) -> impl Strategy<Value = Vec<Scalar>> {
        proptest::collection::vec(small(), dim)
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(params in proptest::collection::vec(prop_oneof![Just(-1i64), Just(1), Just(2), Just(-3)], 3),
                                  x in element(8), y in element(8)) {
            let alg = Arc::new(CompositionAlgebra::new(params.into_iter().map(Scalar::from).collect()).unwrap());
            let x = alg.element(x).unwrap();
            let y = alg.element(y).unwrap();
            prop_assert_eq!(x.multiply(&y).unwrap().norm(), x.norm() * y.norm());
            prop_assert_eq!(x.multiply(&x.conj()).unwrap().as_scalar(), Some(x.norm()));
            let (c, t) = x.conj_trace();
            prop_assert_eq!(x.add(&c).unwrap().as_scalar(), Some(t));
            prop_assert_eq!(x.multiply(&x.conj()).unwrap().conj_trace().1, x.norm() * Scalar::from(2));
            prop_assert_eq!(x.multiply(&y).unwrap().conj(), y.conj().multiply(&x.conj()).unwrap());
        }

        #[test]
        fn quaternions_associate(x in element(4), y in element(4), z in element(4)) {
            let alg = Arc::new(CompositionAlgebra::quaternion(Scalar::from(-1), Scalar::from(3)).unwrap());
            let (x, y, z) = (alg.element(x).unwrap(), alg.element(y).unwrap(), alg.element(z).unwrap());
            prop_assert_eq!(x.multiply(&y).unwrap().multiply(&z).unwrap(), x.multiply(&y.multiply(&z).unwrap()).unwrap());
        }

        #[test]
        fn octonions_moufang(x in element(8), y in element(8), z in element(8)) {
            let alg = Arc::new(CompositionAlgebra::division_octonions());
            let (x, y, z) = (alg.element(x).unwrap(), alg.element(y).unwrap(), alg.element(z).unwrap());
            let l = x.multiply(&y).unwrap().multiply(&z.multiply(&x).unwrap()).unwrap();
            let r = x.multiply(&y.multiply(&z).unwrap().multiply(&x).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            // alternativity: (xx)y = x(xy)
            let l = x.multiply(&x).unwrap().multiply(&y).unwrap();
            let r = x.multiply(&x.multiply(&y).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn unit_is_identity(x in element(8)) {
            let alg = Arc::new(CompositionAlgebra::split_octonions());
            let x = alg.element(x).unwrap();
            prop_assert_eq!(alg.one().multiply(&x).unwrap(), x.clone());
            prop_assert_eq!(x.multiply(&alg.one()).unwrap(), x);
        }
    }
}
