//! Diagonal quadratic forms, skew forms, and quartic polarization.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::matrix::{DenseMatrix, DenseVector};
use crate::scalar::{Field, Ring, Scalar};

/// A nondegenerate diagonal quadratic form `⟨a₁, …, aₙ⟩`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadraticForm {
    coeffs: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positives: usize,
    pub negatives: usize,
    pub witt_index: usize,
}

impl QuadraticForm {
    pub fn new(coeffs: Vec<Scalar>) -> Result<Self> {
        if let Some(i) = coeffs.iter().position(|c| c.is_zero()) {
            return Err(AlgebraError::ZeroCoefficient(i));
        }
        Ok(QuadraticForm { coeffs })
    }

    /// `n⟨c⟩`
    pub fn repeated(c: Scalar, n: usize) -> Result<Self> {
        Self::new(vec![c; n])
    }

    /// `n` copies of the hyperbolic plane `⟨1, −1⟩`.
    pub fn hyperbolic(n: usize) -> Self {
        let mut coeffs = Vec::with_capacity(2 * n);
        for _ in 0..n {
            coeffs.push(Scalar::one());
            coeffs.push(-Scalar::one());
        }
        QuadraticForm { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn orthogonal_sum(&self, other: &QuadraticForm) -> QuadraticForm {
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(other.coeffs.iter().cloned());
        QuadraticForm { coeffs }
    }

    /// `⟨c⟩ ⊗ self`
    pub fn scaled(&self, c: &Scalar) -> Result<QuadraticForm> {
        QuadraticForm::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, v: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, x) in self.coeffs.iter().zip(v) {
            acc += &(a * &(x * x));
        }
        acc
    }

    /// Signature and Witt index over a real-closed field.
    pub fn signature_and_witt(&self) -> Signature {
        let positives = self.coeffs.iter().filter(|c| c.signum() > 0).count();
        let negatives = self.coeffs.len() - positives;
        Signature { positives, negatives, witt_index: positives.min(negatives) }
    }

    /// Diagonalizes a symmetric Gram matrix by congruence.
    ///
    /// Errors if the matrix is not symmetric or is degenerate.
    pub fn diagonalize(gram: &DenseMatrix<Scalar>) -> Result<QuadraticForm> {
        if !gram.is_symmetric() {
            return Err(AlgebraError::InvalidParameter("Gram matrix is not symmetric".into()));
        }
        let n = gram.rows();
        let mut m = gram.clone();
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            if m[(i, i)].is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !m[(j, j)].is_zero()) {
                    swap_sym(&mut m, i, j);
                } else if let Some(j) = (i + 1..n).find(|&j| !m[(i, j)].is_zero()) {
                    // e_i ← e_i + e_j makes the diagonal entry 2·m_ij ≠ 0
                    add_sym(&mut m, i, j, &Scalar::one());
                } else {
                    return Err(AlgebraError::ZeroCoefficient(i));
                }
            }
            let piv = m[(i, i)].clone();
            let inv = piv.inv().expect("nonzero pivot");
            for j in i + 1..n {
                if m[(i, j)].is_zero() {
                    continue;
                }
                let f = -(&m[(i, j)] * &inv);
                add_sym(&mut m, j, i, &f);
            }
            coeffs.push(piv);
        }
        QuadraticForm::new(coeffs)
    }
}

/// Congruence: swap basis vectors `i` and `j`.
fn swap_sym(m: &mut DenseMatrix<Scalar>, i: usize, j: usize) {
    let n = m.rows();
    for k in 0..n {
        let t = m[(i, k)].clone();
        m[(i, k)] = m[(j, k)].clone();
        m[(j, k)] = t;
    }
    for k in 0..n {
        let t = m[(k, i)].clone();
        m[(k, i)] = m[(k, j)].clone();
        m[(k, j)] = t;
    }
}

/// Congruence: `e_i ← e_i + f·e_j`.
fn add_sym(m: &mut DenseMatrix<Scalar>, i: usize, j: usize, f: &Scalar) {
    let n = m.rows();
    for k in 0..n {
        let d = f * &m[(j, k)];
        m[(i, k)] += &d;
    }
    for k in 0..n {
        let d = f * &m[(k, j)];
        m[(k, i)] += &d;
    }
}

/// A nondegenerate skew-symmetric bilinear form with its Gram matrix inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewForm<E = Scalar> {
    gram: DenseMatrix<E>,
    inverse: DenseMatrix<E>,
}

impl<E: Field> SkewForm<E> {
    pub fn new(gram: DenseMatrix<E>) -> Result<Self> {
        if !gram.is_skew() {
            return Err(AlgebraError::NotSkew);
        }
        if gram.rows() % 2 == 1 {
            return Err(AlgebraError::OddSkewDimension(gram.rows()));
        }
        let inverse = gram.inverse()?;
        Ok(SkewForm { gram, inverse })
    }

    /// The form with `s(e_{2i}, e_{2i+1}) = 1` on an even-dimensional space.
    pub fn standard(dim: usize) -> Result<Self> {
        if dim % 2 == 1 {
            return Err(AlgebraError::OddSkewDimension(dim));
        }
        Self::new(standard_skew_gram(dim))
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &DenseMatrix<E> {
        &self.gram
    }

    pub fn inverse(&self) -> &DenseMatrix<E> {
        &self.inverse
    }

    pub fn eval(&self, x: &[E], y: &[E]) -> E {
        self.gram.bilinear(x, y)
    }

    /// The unique `v` with `b(e_i, v) = functional_i` for every basis vector.
    pub fn solve_against_form(&self, functional: &[E]) -> Result<DenseVector<E>> {
        if functional.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim(), got: functional.len() });
        }
        Ok(self.inverse.mul_vec(functional))
    }

    /// Adjoint involution: `b(f x, y) = b(x, σ(f) y)`, i.e. `σ(f) = B⁻¹ fᵀ B`.
    pub fn adjoint(&self, f: &DenseMatrix<E>) -> DenseMatrix<E> {
        self.inverse.mul(&f.transpose()).mul(&self.gram)
    }
}

/// Gram matrix of the standard symplectic form; entries may be degenerate
/// (a trailing zero row/column) when `dim` is odd.
pub fn standard_skew_gram<E: Ring>(dim: usize) -> DenseMatrix<E> {
    let mut g = DenseMatrix::zeros(dim, dim);
    for i in 0..dim / 2 {
        g[(2 * i, 2 * i + 1)] = E::one();
        g[(2 * i + 1, 2 * i)] = E::one().neg_ref();
    }
    g
}

/// Symmetric 4-linear form of a quartic by inclusion–exclusion:
/// `q(x₁,…,x₄) = (1/24) Σ_{∅≠S⊆{1..4}} (−1)^{4−|S|} Q(Σ_{i∈S} xᵢ)`.
pub fn polarize_quartic<E: Ring>(quartic: impl Fn(&[E]) -> E, xs: [&[E]; 4]) -> Result<E> {
    let n = xs[0].len();
    for x in &xs[1..] {
        if x.len() != n {
            return Err(AlgebraError::DimensionMismatch { expected: n, got: x.len() });
        }
    }
    let mut acc = E::zero();
    for mask in 1u32..16 {
        let mut sum: Vec<E> = vec![E::zero(); n];
        for (i, x) in xs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (s, xi) in sum.iter_mut().zip(x.iter()) {
                    *s = s.add_ref(xi);
                }
            }
        }
        let v = quartic(&sum);
        if (4 - mask.count_ones()) % 2 == 0 {
            acc = acc.add_ref(&v);
        } else {
            acc = acc.sub_ref(&v);
        }
    }
    Ok(acc.scale(&Scalar::new(1, 24)))
}
