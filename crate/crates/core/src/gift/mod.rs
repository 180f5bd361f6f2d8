//! Gifts `(A, σ, π)` carried by a faithful 56×56 matrix representation.
//!
//! For `End(𝔐)` the algebra is all of `End(V)`, `σ` is the `b`-adjoint and
//! `π(φ_b(x ⊗ y)) = p(x ⊗ y)` where `φ_b(x ⊗ y) w = x b(y, w)`. Writing an
//! element as `X = C·B` with `C = X·B⁻¹` gives the closed form
//!
//! ```text
//! π(X) = T(C) + (C + Cᵀ)·B,    T(C) w = Σ C_ij t(e_i, e_j, w)
//! ```
//!
//! Descended gifts reuse the same formulas over a quadratic extension and
//! restrict to a fixed subalgebra; they only differ in how elements are drawn.

pub mod axioms;
pub mod ideals;

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::fts::{Provenance, TripleSystem, TripleTensor};
use crate::matrix::DenseMatrix;
use crate::sampling::random_scalar;
use crate::scalar::{Field, Ring, Scalar};

pub use axioms::{check_gift_axioms, derivation_suite, sand, sigma2_split, DerivationReport};
pub use ideals::{ideal_predicates, IdealPredicates, RightIdeal};

/// Draws a random element of the algebra.
pub type Sampler<E> = Arc<dyn Fn(&mut ChaCha8Rng) -> DenseMatrix<E> + Send + Sync>;
/// Draws a random vector of the underlying space (after splitting).
pub type VectorSampler<E> = Arc<dyn Fn(&mut ChaCha8Rng) -> Vec<E> + Send + Sync>;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GiftProvenance {
    EndOf { system: Provenance },
    Descended { a: Scalar, b: Scalar },
    /// The same `(A, σ)` with `π` replaced by zero.
    ZeroPi { parent: Box<GiftProvenance> },
}

/// Sparse rows of a rational matrix.
type SparseRows = Vec<Vec<(usize, Scalar)>>;

fn sparse_rows(m: &DenseMatrix<Scalar>) -> SparseRows {
    (0..m.rows())
        .map(|i| m.row(i).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect())
        .collect()
}

#[derive(Clone)]
pub struct Gift<E = Scalar> {
    gram: DenseMatrix<Scalar>,
    gram_rows: SparseRows,
    gram_inverse_rows: SparseRows,
    tensor: Arc<TripleTensor>,
    zero_pi: bool,
    split: bool,
    sampler: Sampler<E>,
    vectors: VectorSampler<E>,
    provenance: GiftProvenance,
}

impl<E> std::fmt::Debug for Gift<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Gift").field("degree", &self.gram.rows()).field("provenance", &self.provenance).finish()
    }
}

/// `X·M` for sparse `M`.
fn mul_sparse_right<E: Ring>(x: &DenseMatrix<E>, m: &SparseRows) -> DenseMatrix<E> {
    let n = x.rows();
    let mut out = DenseMatrix::zeros(n, m.len());
    for i in 0..n {
        for (k, xv) in x.row(i).iter().enumerate() {
            if xv.is_zero() {
                continue;
            }
            for (l, v) in &m[k] {
                let cell: &mut E = &mut out[(i, *l)];
                *cell = cell.add_ref(&xv.scale(v));
            }
        }
    }
    out
}

/// `M·X` for sparse `M`.
fn mul_sparse_left<E: Ring>(m: &SparseRows, x: &DenseMatrix<E>) -> DenseMatrix<E> {
    let n = x.cols();
    let mut out = DenseMatrix::zeros(m.len(), n);
    for (i, row) in m.iter().enumerate() {
        for (k, v) in row {
            for j in 0..n {
                let xv = &x[(*k, j)];
                if xv.is_zero() {
                    continue;
                }
                let cell: &mut E = &mut out[(i, j)];
                *cell = cell.add_ref(&xv.scale(v));
            }
        }
    }
    out
}

/// A dense random matrix with small rational entries.
pub fn random_matrix<E: Ring>(rng: &mut ChaCha8Rng, n: usize) -> DenseMatrix<E> {
    DenseMatrix::from_fn(n, n, |_, _| E::from_scalar(&random_scalar(rng)))
}

impl<E: Field + 'static> Gift<E> {
    /// A gift built from the product of `ts` over the scalars `E`.
    pub fn from_parts(ts: &TripleSystem, sampler: Sampler<E>, split: bool, provenance: GiftProvenance) -> Result<Self> {
        let inverse = ts.gram_inverse().ok_or(AlgebraError::Singular)?;
        let n = ts.dim();
        let vectors: VectorSampler<E> =
            Arc::new(move |rng| crate::sampling::random_vector(rng, n).iter().map(E::from_scalar).collect());
        Ok(Gift {
            gram: ts.gram().clone(),
            gram_rows: sparse_rows(ts.gram()),
            gram_inverse_rows: sparse_rows(inverse),
            tensor: Arc::new(ts.tensor().clone()),
            zero_pi: false,
            split,
            sampler,
            vectors,
            provenance,
        })
    }

    /// Degree of `A` (the size of the representation).
    pub fn degree(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &DenseMatrix<Scalar> {
        &self.gram
    }

    pub fn tensor(&self) -> &TripleTensor {
        &self.tensor
    }

    pub fn provenance(&self) -> &GiftProvenance {
        &self.provenance
    }

    pub fn is_split(&self) -> bool {
        self.split
    }

    /// The same algebra with involution and `π = 0`.
    pub fn with_zero_pi(&self) -> Self {
        Gift {
            zero_pi: true,
            provenance: GiftProvenance::ZeroPi { parent: Box::new(self.provenance.clone()) },
            ..self.clone()
        }
    }

    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> DenseMatrix<E> {
        (self.sampler)(rng)
    }

    /// Replaces the rational vectors used to form decomposables `φ(x ⊗ y)`.
    pub fn with_vector_sampler(mut self, vectors: VectorSampler<E>) -> Self {
        self.vectors = vectors;
        self
    }

    pub fn random_vector(&self, rng: &mut ChaCha8Rng) -> Vec<E> {
        (self.vectors)(rng)
    }

    /// `a − σ(a)` for a random `a`.
    pub fn random_skew(&self, rng: &mut ChaCha8Rng) -> DenseMatrix<E> {
        let a = self.random_element(rng);
        a.sub(&self.sigma(&a))
    }

    /// `σ(X) = B⁻¹ Xᵀ B`
    pub fn sigma(&self, x: &DenseMatrix<E>) -> DenseMatrix<E> {
        mul_sparse_right(&mul_sparse_left(&self.gram_inverse_rows, &x.transpose()), &self.gram_rows)
    }

    pub fn pi(&self, x: &DenseMatrix<E>) -> DenseMatrix<E> {
        let n = self.degree();
        if self.zero_pi {
            return DenseMatrix::zeros(n, n);
        }
        let c = mul_sparse_right(x, &self.gram_inverse_rows);
        let sym = c.add(&c.transpose());
        self.tensor.contract_matrix(&c).add(&mul_sparse_right(&sym, &self.gram_rows))
    }

    /// Reduced trace: the matrix trace of the representation.
    pub fn trd(&self, x: &DenseMatrix<E>) -> E {
        x.trace()
    }

    /// `b(x, y)` extended to `E`.
    pub fn b(&self, x: &[E], y: &[E]) -> E {
        let mut acc = E::zero();
        for (i, row) in self.gram_rows.iter().enumerate() {
            if x[i].is_zero() {
                continue;
            }
            for (j, g) in row {
                acc.add_mul(&x[i], &y[*j].scale(g));
            }
        }
        acc
    }

    /// `φ_b(x ⊗ y) = x · b(y, ·)`, the matrix `x yᵀ B`.
    pub fn phi(&self, x: &[E], y: &[E]) -> DenseMatrix<E> {
        let n = self.degree();
        let mut yb = vec![E::zero(); n];
        for (i, row) in self.gram_rows.iter().enumerate() {
            if y[i].is_zero() {
                continue;
            }
            for (j, g) in row {
                yb[*j] = yb[*j].add_ref(&y[i].scale(g));
            }
        }
        DenseMatrix::outer(x, &yb)
    }

    /// `E_kl`
    pub fn unit_matrix(&self, k: usize, l: usize) -> DenseMatrix<E> {
        let n = self.degree();
        let mut m = DenseMatrix::zeros(n, n);
        m[(k, l)] = E::one();
        m
    }
}

/// `End(𝔐) = (End(V), σ_b, p ∘ φ_b⁻¹)`.
pub fn end_of(ts: &TripleSystem) -> Result<Gift<Scalar>> {
    let n = ts.dim();
    let sampler: Sampler<Scalar> = Arc::new(move |rng| random_matrix(rng, n));
    Gift::from_parts(ts, sampler, true, GiftProvenance::EndOf { system: ts.provenance().clone() })
}

/// Recovers `t(x, y, w) = π(φ_b(x ⊗ y)) w + b(w, x) y + b(w, y) x` from a
/// split gift.
pub fn gift_to_fts(g: &Gift<Scalar>) -> Result<TripleSystem> {
    if !g.is_split() {
        return Err(AlgebraError::NotSplit("the triple system is only defined after splitting"));
    }
    let n = g.degree();
    let unit = |i: usize| crate::matrix::basis_vector::<Scalar>(n, i);
    let mut entries: std::collections::BTreeMap<[u16; 3], std::collections::BTreeMap<u16, Scalar>> = Default::default();
    for i in 0..n {
        for j in i..n {
            let p = g.pi(&g.phi(&unit(i), &unit(j)));
            for w in j..n {
                let mut col = p.column(w);
                // b(e_w, e_i) = B[w][i]
                for (idx, other) in [(i, j), (j, i)] {
                    let bw = &g.gram[(w, idx)];
                    if !bw.is_zero() {
                        col[other] += bw;
                    }
                }
                let vals: std::collections::BTreeMap<u16, Scalar> = col
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(r, v)| (r as u16, v))
                    .collect();
                if !vals.is_empty() {
                    entries.insert([i as u16, j as u16, w as u16], vals);
                }
            }
        }
    }
    let labels = (0..n).map(|i| format!("e{i}")).collect();
    TripleSystem::new(g.gram.clone(), TripleTensor::from_entries(n, entries), labels, Provenance::FromGift)
}
