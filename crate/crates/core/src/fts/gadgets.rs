//! Explicit isometries of `𝔐ₛ` and the isometry predicate.

use super::{MsCoords, TripleSystem};
use crate::error::{AlgebraError, Result};
use crate::forms::SkewForm;
use crate::matrix::{basis_vector, DenseMatrix};
use crate::scalar::{Field, Ring, Scalar};

/// `ϖ(α, j, j′, β) = (−β, j′, j, α)`
pub fn varpi(w_dim: usize, x: &[Scalar]) -> Result<Vec<Scalar>> {
    let c = MsCoords::from_vector(w_dim, x)?;
    Ok(MsCoords { alpha: -c.beta, j: c.jp, jp: c.j, beta: c.alpha }.to_vector())
}

pub fn varpi_matrix(w_dim: usize) -> DenseMatrix<Scalar> {
    let n = 2 * w_dim + 2;
    let cols: Vec<Vec<Scalar>> = (0..n).map(|i| varpi(w_dim, &basis_vector(n, i)).expect("shape")).collect();
    DenseMatrix::from_columns(&cols)
}

/// `φ† = σ(φ)⁻¹` where `σ` is the adjoint involution of `s`.
pub fn dagger(s: &SkewForm, phi: &DenseMatrix<Scalar>) -> Result<DenseMatrix<Scalar>> {
    s.adjoint(phi).inverse()
}

/// `f(c, u, φ)(α, j, j′, β) = (cα, φ(j), αu + φ†(j′), (β + s(φ(j), u))/c)`
pub fn f_map(s: &SkewForm, c: &Scalar, u: &[Scalar], phi: &DenseMatrix<Scalar>) -> Result<DenseMatrix<Scalar>> {
    let w = s.dim();
    if u.len() != w || phi.rows() != w || phi.cols() != w {
        return Err(AlgebraError::DimensionMismatch { expected: w, got: u.len() });
    }
    let c_inv = c.inv().ok_or(AlgebraError::ZeroParameter("c"))?;
    let phi_dagger = dagger(s, phi)?;
    // s(φ(j), u) = jᵀ φᵀ S u
    let su = s.gram().mul_vec(u);
    let row_beta = phi.transpose().mul_vec(&su);
    let n = 2 * w + 2;
    let mut m = DenseMatrix::zeros(n, n);
    m[(0, 0)] = c.clone();
    for p in 0..w {
        for q in 0..w {
            m[(1 + p, 1 + q)] = phi[(p, q)].clone();
            m[(w + 1 + p, w + 1 + q)] = phi_dagger[(p, q)].clone();
        }
        m[(w + 1 + p, 0)] = u[p].clone();
        m[(n - 1, 1 + p)] = &row_beta[p] * &c_inv;
    }
    m[(n - 1, n - 1)] = c_inv;
    Ok(m)
}

/// `f(c, u, φ) f(d, v, ψ) = f(cd, du + φ†(v), φψ)`
pub fn check_f_composition(
    s: &SkewForm,
    (c, u, phi): (&Scalar, &[Scalar], &DenseMatrix<Scalar>),
    (d, v, psi): (&Scalar, &[Scalar], &DenseMatrix<Scalar>),
) -> Result<bool> {
    let lhs = f_map(s, c, u, phi)?.mul(&f_map(s, d, v, psi)?);
    let pd = dagger(s, phi)?.mul_vec(v);
    let u2: Vec<Scalar> = u.iter().zip(&pd).map(|(a, b)| &(a * d) + b).collect();
    let rhs = f_map(s, &(c * d), &u2, &phi.mul(psi))?;
    Ok(lhs == rhs)
}

/// `g` preserves `b` on basis pairs and `t` on basis triples.
pub fn is_isometry(ts: &TripleSystem, g: &DenseMatrix<Scalar>) -> bool {
    is_similarity(ts, g, &Scalar::one())
}

/// `b(gx, gy) = λ b(x, y)` and `t(gx, gy, gz) = λ g t(x, y, z)` on the basis.
pub fn is_similarity(ts: &TripleSystem, g: &DenseMatrix<Scalar>, lambda: &Scalar) -> bool {
    let n = ts.dim();
    if g.rows() != n || g.cols() != n {
        return false;
    }
    if g.transpose().mul(ts.gram()).mul(g) != ts.gram().scale(lambda) {
        return false;
    }
    let cols: Vec<Vec<Scalar>> = (0..n).map(|i| g.column(i)).collect();
    for a in 0..n {
        for b in a..n {
            let image = ts.tensor().partial(&cols[a], &cols[b]).mul(g);
            let (ea, eb) = (basis_vector::<Scalar>(n, a), basis_vector::<Scalar>(n, b));
            let direct = g.mul(&ts.tensor().partial(&ea, &eb)).scale(lambda);
            if image != direct {
                return false;
            }
        }
    }
    true
}
