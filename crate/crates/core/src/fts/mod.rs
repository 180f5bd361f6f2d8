//! Freudenthal triple systems `(V, b, t)`.
//!
//! A system stores the Gram matrix of the skew form `b` and the symmetric
//! trilinear product `t` as a sparse [`TripleTensor`]. The 4-linear form is
//! `q(x, y, z, w) = b(x, t(y, z, w))`.

pub mod build;
pub mod checks;
pub mod classify;
pub mod gadgets;
mod modp;
pub mod tensor;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::{Field, Ring, Scalar};

pub use build::{build_albert, build_ms, build_ms_formal, build_ms_standard, AlbertCoords, MsCoords};
pub use checks::check_axioms;
pub use classify::{classify, ms_diagnostics, Classification, MsDiagnostics, Verdict};
pub use tensor::TripleTensor;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// `𝔐ₛ` over a symplectic space `W`. `formal` marks the odd-dimensional
    /// instance whose `s` has a one-dimensional radical.
    Ms { w_dim: usize, formal: bool },
    /// `𝔐(J)` with the calibrated quartic coefficients.
    Albert { octonions: String, coefficients: Vec<Scalar> },
    Scaled { lambda: Scalar, parent: Box<Provenance> },
    FromGift,
    /// A system with a hand-modified product, used for mutation tests.
    Perturbed { parent: Box<Provenance> },
}

impl Provenance {
    /// The underlying `Ms` data through any scaling.
    pub fn ms(&self) -> Option<(usize, bool)> {
        match self {
            Provenance::Ms { w_dim, formal } => Some((*w_dim, *formal)),
            Provenance::Scaled { parent, .. } | Provenance::Perturbed { parent } => parent.ms(),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TripleSystem {
    gram: DenseMatrix<Scalar>,
    gram_rows: Vec<Vec<(usize, Scalar)>>,
    gram_inverse: Option<DenseMatrix<Scalar>>,
    tensor: Arc<TripleTensor>,
    labels: Vec<String>,
    provenance: Provenance,
}

impl PartialEq for TripleSystem {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram && self.tensor == other.tensor
    }
}

fn sparse_rows(m: &DenseMatrix<Scalar>) -> Vec<Vec<(usize, Scalar)>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect())
        .collect()
}

impl TripleSystem {
    /// A system with nondegenerate `b`.
    pub fn new(gram: DenseMatrix<Scalar>, tensor: TripleTensor, labels: Vec<String>, provenance: Provenance) -> Result<Self> {
        let mut ts = Self::new_formal(gram, tensor, labels, provenance)?;
        ts.gram_inverse = Some(ts.gram.inverse()?);
        Ok(ts)
    }

    /// A system whose `b` may be degenerate; only used for the formal
    /// odd-dimensional `𝔐ₛ`.
    pub fn new_formal(
        gram: DenseMatrix<Scalar>,
        tensor: TripleTensor,
        labels: Vec<String>,
        provenance: Provenance,
    ) -> Result<Self> {
        if !gram.is_skew() {
            return Err(AlgebraError::NotSkew);
        }
        if tensor.dim() != gram.rows() || labels.len() != gram.rows() {
            return Err(AlgebraError::DimensionMismatch { expected: gram.rows(), got: tensor.dim() });
        }
        let gram_rows = sparse_rows(&gram);
        let gram_inverse = gram.inverse().ok();
        Ok(TripleSystem { gram, gram_rows, gram_inverse, tensor: Arc::new(tensor), labels, provenance })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &DenseMatrix<Scalar> {
        &self.gram
    }

    pub fn gram_inverse(&self) -> Option<&DenseMatrix<Scalar>> {
        self.gram_inverse.as_ref()
    }

    pub fn is_b_nondegenerate(&self) -> bool {
        self.gram_inverse.is_some()
    }

    pub fn tensor(&self) -> &TripleTensor {
        &self.tensor
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Nonzero entries of row `i` of the Gram matrix.
    pub fn gram_row(&self, i: usize) -> &[(usize, Scalar)] {
        &self.gram_rows[i]
    }

    pub fn b<E: Ring>(&self, x: &[E], y: &[E]) -> E {
        let mut acc = E::zero();
        for (i, row) in self.gram_rows.iter().enumerate() {
            if x[i].is_zero() {
                continue;
            }
            let mut r = E::zero();
            for (j, g) in row {
                if !y[*j].is_zero() {
                    r = r.add_ref(&y[*j].scale(g));
                }
            }
            acc.add_mul(&x[i], &r);
        }
        acc
    }

    /// The functional `w ↦ b(w, x)` as a vector, i.e. `B x`.
    pub fn b_against<E: Ring>(&self, x: &[E]) -> Vec<E> {
        self.gram_rows
            .iter()
            .map(|row| {
                let mut r = E::zero();
                for (j, g) in row {
                    if !x[*j].is_zero() {
                        r = r.add_ref(&x[*j].scale(g));
                    }
                }
                r
            })
            .collect()
    }

    pub fn t<E: Ring>(&self, x: &[E], y: &[E], z: &[E]) -> Vec<E> {
        self.tensor.eval(x, y, z)
    }

    /// `t(x, x, x)`
    pub fn cube<E: Ring>(&self, x: &[E]) -> Vec<E> {
        self.tensor.cube(x)
    }

    pub fn q<E: Ring>(&self, x: &[E], y: &[E], z: &[E], w: &[E]) -> E {
        self.b(x, &self.t(y, z, w))
    }

    /// `q(x, x, x, x)`
    pub fn quartic<E: Ring>(&self, x: &[E]) -> E {
        self.b(x, &self.cube(x))
    }

    /// `p(u ⊗ v) w = t(u, v, w) − b(w, u) v − b(w, v) u`
    pub fn p_map<E: Ring>(&self, u: &[E], v: &[E]) -> DenseMatrix<E> {
        let mut m = self.tensor.partial(u, v);
        let bu = self.b_against(u);
        let bv = self.b_against(v);
        let n = self.dim();
        for w in 0..n {
            // b(e_w, u) = (B u)_w
            let (cu, cv) = (&bu[w], &bv[w]);
            if cu.is_zero() && cv.is_zero() {
                continue;
            }
            for r in 0..n {
                let mut d = E::zero();
                if !cu.is_zero() && !v[r].is_zero() {
                    d.add_mul(cu, &v[r]);
                }
                if !cv.is_zero() && !u[r].is_zero() {
                    d.add_mul(cv, &u[r]);
                }
                if !d.is_zero() {
                    m[(r, w)] = m[(r, w)].sub_ref(&d);
                }
            }
        }
        m
    }

    /// `t(x, y, z)` with dimension checks.
    pub fn triple_product(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Vec<Scalar>> {
        for v in [x, y, z] {
            if v.len() != self.dim() {
                return Err(AlgebraError::DimensionMismatch { expected: self.dim(), got: v.len() });
            }
        }
        Ok(self.t(x, y, z))
    }

    /// `𝔐_λ = (V, λb, λt)`
    pub fn scale(&self, lambda: &Scalar) -> Result<TripleSystem> {
        let inv = lambda.inv().ok_or(AlgebraError::ZeroParameter("lambda"))?;
        let gram = self.gram.scale(lambda);
        Ok(TripleSystem {
            gram_rows: sparse_rows(&gram),
            gram,
            gram_inverse: self.gram_inverse.as_ref().map(|m| m.scale(&inv)),
            tensor: Arc::new(self.tensor.scaled(lambda)),
            labels: self.labels.clone(),
            provenance: Provenance::Scaled { lambda: lambda.clone(), parent: Box::new(self.provenance.clone()) },
        })
    }

    /// The same `b` with a different product.
    pub fn with_tensor(&self, tensor: TripleTensor) -> Result<TripleSystem> {
        if tensor.dim() != self.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim(), got: tensor.dim() });
        }
        Ok(TripleSystem {
            tensor: Arc::new(tensor),
            provenance: Provenance::Perturbed { parent: Box::new(self.provenance.clone()) },
            ..self.clone()
        })
    }

    /// A copy with one coordinate of `t(e_a, e_b, e_c)` shifted by `delta`.
    pub fn perturbed(&self, key: [usize; 3], component: usize, delta: &Scalar) -> Result<TripleSystem> {
        let k = tensor::sort3(key[0], key[1], key[2]);
        let current = self
            .tensor
            .basis(key[0], key[1], key[2])
            .iter()
            .find(|(r, _)| *r as usize == component)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Scalar::zero);
        self.with_tensor(self.tensor.with_entry(k, component as u16, current + delta.clone()))
    }
}
