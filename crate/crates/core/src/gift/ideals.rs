//! Right ideals of split gifts and the inner / singular / isotropic predicates.

use serde::Serialize;

use super::Gift;
use crate::error::{AlgebraError, Result};
use crate::matrix::{sparse_from_dense, DenseMatrix, SparseEchelon};
use crate::scalar::{Ring, Scalar};

/// A right ideal `I = Σ gᵢ A`, kept with an exact basis of the column space
/// `U` of its generators (so that `I = Hom(V, U)`).
#[derive(Clone, Debug)]
pub struct RightIdeal {
    generators: Vec<DenseMatrix<Scalar>>,
    columns: Vec<Vec<Scalar>>,
    dim: usize,
}

fn independent(vectors: impl IntoIterator<Item = Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let mut ech = SparseEchelon::<Scalar>::new();
    let mut out = Vec::new();
    for v in vectors {
        if ech.insert(sparse_from_dense(&v)) {
            out.push(v);
        }
    }
    out
}

impl RightIdeal {
    pub fn from_generators(g: &Gift<Scalar>, generators: Vec<DenseMatrix<Scalar>>) -> Result<Self> {
        if !g.is_split() {
            return Err(AlgebraError::NotSplit("ideal predicates use the split representation"));
        }
        let n = g.degree();
        if let Some(m) = generators.iter().find(|m| m.rows() != n || m.cols() != n) {
            return Err(AlgebraError::DimensionMismatch { expected: n, got: m.rows() });
        }
        // dim_F of span{gᵢ E_kl}: gᵢ E_kl carries column k of gᵢ into column l
        let mut span = SparseEchelon::<Scalar>::new();
        for gen in &generators {
            for k in 0..n {
                let col = gen.column(k);
                if col.iter().all(|x| x.is_zero()) {
                    continue;
                }
                for l in 0..n {
                    let mut e = DenseMatrix::zeros(n, n);
                    for (r, v) in col.iter().enumerate() {
                        e[(r, l)] = v.clone();
                    }
                    span.insert(sparse_from_dense(e.entries()));
                }
            }
        }
        let columns = independent(generators.iter().flat_map(|m| (0..n).map(move |k| m.column(k))));
        Ok(RightIdeal { generators, columns, dim: span.rank() })
    }

    /// `Hom(V, U)` for `U` spanned by `vectors`.
    pub fn hom_onto(g: &Gift<Scalar>, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let n = g.degree();
        let gens = vectors
            .iter()
            .map(|v| {
                if v.len() != n {
                    return Err(AlgebraError::DimensionMismatch { expected: n, got: v.len() });
                }
                let mut m = DenseMatrix::zeros(n, n);
                for (r, x) in v.iter().enumerate() {
                    m[(r, 0)] = x.clone();
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(g, gens)
    }

    /// A subspace given by a spanning set of matrices; errors unless it is
    /// closed under right multiplication by the generators `E_{i,i±1}` of `A`.
    pub fn from_span(g: &Gift<Scalar>, span: Vec<DenseMatrix<Scalar>>) -> Result<Self> {
        let n = g.degree();
        let mut ech = SparseEchelon::<Scalar>::new();
        for m in &span {
            ech.insert(sparse_from_dense(m.entries()));
        }
        for (idx, m) in span.iter().enumerate() {
            for i in 0..n.saturating_sub(1) {
                for (a, b) in [(i, i + 1), (i + 1, i)] {
                    let mut prod = DenseMatrix::zeros(n, n);
                    for r in 0..n {
                        prod[(r, b)] = m[(r, a)].clone();
                    }
                    if !ech.contains(sparse_from_dense(prod.entries())) {
                        return Err(AlgebraError::NotAnIdeal(format!("element {idx} times E_({a},{b}) leaves the span")));
                    }
                }
            }
        }
        let ideal = Self::from_generators(g, span)?;
        if ideal.dim != ech.rank() {
            return Err(AlgebraError::NotAnIdeal("span is not a right ideal".into()));
        }
        Ok(ideal)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[DenseMatrix<Scalar>] {
        &self.generators
    }

    /// Basis of `U` with `I = Hom(V, U)`.
    pub fn image(&self) -> &[Vec<Scalar>] {
        &self.columns
    }

    /// `M ∈ I` iff every column of `M` lies in `U`.
    pub fn contains(&self, m: &DenseMatrix<Scalar>) -> bool {
        let mut ech = SparseEchelon::<Scalar>::new();
        for c in &self.columns {
            ech.insert(sparse_from_dense(c));
        }
        (0..m.cols()).all(|k| ech.contains(sparse_from_dense(&m.column(k))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealPredicates {
    pub inner: bool,
    pub singular: bool,
    pub isotropic: bool,
    pub dim: usize,
    /// `dim_F(I) / deg A`
    pub rank: usize,
}

/// Evaluates the predicates on the spanning set `{u vᵀ}` of `I·σ(I)`, with
/// `u` running over a basis of `U` and `v` over a basis of the row space of
/// `σ(I)`.
pub fn ideal_predicates(g: &Gift<Scalar>, ideal: &RightIdeal) -> IdealPredicates {
    let n = g.degree();
    let sigma_gens: Vec<DenseMatrix<Scalar>> = ideal.generators.iter().map(|m| g.sigma(m)).collect();
    let isotropic =
        sigma_gens.iter().all(|s| ideal.generators.iter().all(|m| s.mul(m).is_zero()));
    let rows = independent(sigma_gens.iter().flat_map(|m| (0..n).map(move |k| m.row(k).to_vec())));
    let mut singular = true;
    let mut inner = true;
    for u in &ideal.columns {
        for v in &rows {
            let p = g.pi(&DenseMatrix::outer(u, v));
            if !p.is_zero() {
                singular = false;
                if !ideal.contains(&p) {
                    inner = false;
                }
            }
        }
    }
    IdealPredicates { inner, singular, isotropic, dim: ideal.dim, rank: ideal.dim / n }
}
