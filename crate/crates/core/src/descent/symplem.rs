//! Symplectic involutions obtained by descent from `M₂ₙ(F(√α))`, and the
//! diagonal hermitian form they are adjoint to.
//!
//! For `Q = (α, β)_F` split by `K = F(√α)` through
//! `φ(i) = diag(√α, −√α)`, `φ(j) = [[0, 1], [β, 0]]`, the map
//! `gf(x ⊗ E_rs)` places `D_r⁻¹ φ(x) D_s` in block `(r, s)` with
//! `D_r = diag(1, c_r)`. Its image is fixed by `Int(m) ∘ ι`, with `m` the
//! block diagonal of `C_i = [[0, c_i], [β/c_i, 0]]`, and the adjoint
//! involution of `s = ⊕ √α aᵢ J` pulls back to `Int(diag(cᵢ/(√α aᵢ)))`
//! composed with `γ ⊗ t`.

use rand::Rng;
use serde::Serialize;
use serde_json::json;

use super::hermitian::HermitianForm;
use crate::composition::CompositionAlgebra;
use crate::error::{AlgebraError, Result};
use crate::matrix::{sparse_from_dense, DenseMatrix, SparseEchelon};
use crate::quadext::QuadExtScalar;
use crate::report::{CheckRecord, CheckReport, Evidence};
use crate::sampling::random_nonzero_scalar;
use crate::scalar::{Field, Ring, Scalar};

type K = QuadExtScalar;
type KMat = DenseMatrix<K>;

/// Largest `n` for which the matrix-level checks run.
pub const SYMPLEM_MAX_N: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymplemParams {
    pub alpha: Scalar,
    pub beta: Scalar,
    /// `(Vᵢ, qᵢ) ≅ ⟨aᵢ⟩`
    pub a: Vec<Scalar>,
    /// Twist parameters of `ψ_{cᵢ}`.
    pub c: Vec<Scalar>,
}

impl SymplemParams {
    pub fn new(alpha: Scalar, beta: Scalar, a: Vec<Scalar>, c: Vec<Scalar>) -> Result<Self> {
        QuadExtScalar::check_radicand(&alpha)?;
        if beta.is_zero() {
            return Err(AlgebraError::ZeroParameter("beta"));
        }
        if a.is_empty() || a.len() != c.len() {
            return Err(AlgebraError::DimensionMismatch { expected: a.len().max(1), got: c.len() });
        }
        if a.iter().chain(&c).any(Ring::is_zero) {
            return Err(AlgebraError::ZeroParameter("a_i and c_i"));
        }
        Ok(SymplemParams { alpha, beta, a, c })
    }

    /// Random nonzero `aᵢ, cᵢ`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, alpha: Scalar, beta: Scalar, n: usize) -> Result<Self> {
        let a = (0..n).map(|_| random_nonzero_scalar(rng)).collect();
        let c = (0..n).map(|_| random_nonzero_scalar(rng)).collect();
        Self::new(alpha, beta, a, c)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    fn k(&self, x: &Scalar) -> K {
        K::new(x.clone(), Scalar::zero(), &self.alpha)
    }

    fn sqrt(&self) -> K {
        K::sqrt_of(&self.alpha)
    }

    /// `⟨c₁a₁, …, cₙaₙ⟩`
    pub fn expected_form(&self) -> Result<HermitianForm> {
        HermitianForm::new(self.alpha.clone(), self.beta.clone(), self.a.iter().zip(&self.c).map(|(a, c)| a * c).collect())
    }
}

fn j_matrix() -> KMat {
    let mut j = KMat::zeros(2, 2);
    j[(0, 1)] = K::one();
    j[(1, 0)] = K::from_i64(-1);
    j
}

/// `Int(M)(X) = M X M⁻¹`
fn int(m: &KMat, m_inv: &KMat, x: &KMat) -> KMat {
    m.mul(x).mul(m_inv)
}

fn conj(x: &KMat) -> KMat {
    x.map(K::conj)
}

/// The coefficient `kᵢ` of the scalar block `S_i⁻¹ P_i⁻ᵀ = kᵢ·I₂`, with
/// `S_i = √α aᵢ J` and `P_i = cᵢ⁻¹ J`.
pub fn block_coefficient(alpha: &Scalar, a_i: &Scalar, c_i: &Scalar) -> Result<K> {
    let r = K::sqrt_of(alpha);
    let s = j_matrix().scale(&r.scale(a_i));
    let p = j_matrix().scale(&K::from_scalar(&c_i.inv().ok_or(AlgebraError::ZeroParameter("c_i"))?));
    let g = s.inverse()?.mul(&p.transpose().inverse()?);
    if !g[(0, 1)].is_zero() || !g[(1, 0)].is_zero() || g[(0, 0)] != g[(1, 1)] {
        return Err(AlgebraError::InvalidParameter("block of the pulled back involution is not scalar".into()));
    }
    Ok(g[(0, 0)].clone())
}

/// Coefficients of the hermitian form adjoint to the descended involution,
/// read off block by block: `hᵢ = (√α kᵢ)⁻¹`, normalized to lie in `F`.
pub fn hermitian_coefficients(p: &SymplemParams) -> Result<HermitianForm> {
    let r = p.sqrt();
    let mut coeffs = Vec::with_capacity(p.n());
    for (a, c) in p.a.iter().zip(&p.c) {
        let g = r.mul_ref(&block_coefficient(&p.alpha, a, c)?);
        if !g.is_rational() {
            return Err(AlgebraError::InvalidParameter("normalized coefficient is not rational".into()));
        }
        coeffs.push(g.re.inv().ok_or(AlgebraError::Singular)?);
    }
    HermitianForm::new(p.alpha.clone(), p.beta.clone(), coeffs)
}

struct Setup<'a> {
    p: &'a SymplemParams,
    n: usize,
    quat: CompositionAlgebra,
    phi: Vec<KMat>,
}

impl<'a> Setup<'a> {
    fn new(p: &'a SymplemParams) -> Result<Self> {
        let quat = CompositionAlgebra::quaternion(p.alpha.clone(), p.beta.clone())?;
        let r = p.sqrt();
        let mut pi = KMat::zeros(2, 2);
        pi[(0, 0)] = r.clone();
        pi[(1, 1)] = r.neg_ref();
        let mut pj = KMat::zeros(2, 2);
        pj[(0, 1)] = K::one();
        pj[(1, 0)] = p.k(&p.beta);
        let pk = pi.mul(&pj);
        Ok(Setup { p, n: p.n(), quat, phi: vec![KMat::identity(2), pi, pj, pk] })
    }

    fn d(&self, r: usize) -> KMat {
        let mut d = KMat::identity(2);
        d[(1, 1)] = self.p.k(&self.p.c[r]);
        d
    }

    /// `f(e_q ⊗ E_rs)`
    fn f(&self, q: usize, r: usize, s: usize) -> KMat {
        self.d(r).inverse().expect("c_r is nonzero").mul(&self.phi[q]).mul(&self.d(s))
    }

    fn place(&self, block: &KMat, r: usize, s: usize) -> KMat {
        let mut out = KMat::zeros(2 * self.n, 2 * self.n);
        for u in 0..2 {
            for v in 0..2 {
                out[(2 * r + u, 2 * s + v)] = block[(u, v)].clone();
            }
        }
        out
    }

    /// `gf(x ⊗ E_rs)` for `x` in quaternion coordinates.
    fn gf(&self, x: &[Scalar], r: usize, s: usize) -> KMat {
        let block = (0..4).fold(KMat::zeros(2, 2), |acc, q| acc.add(&self.f(q, r, s).scale(&self.p.k(&x[q]))));
        self.place(&block, r, s)
    }

    fn basis(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(4 * self.n * self.n);
        for q in 0..4 {
            for r in 0..self.n {
                for s in 0..self.n {
                    out.push((q, r, s));
                }
            }
        }
        out
    }

    fn unit(q: usize) -> Vec<Scalar> {
        crate::matrix::basis_vector(4, q)
    }

    fn block_diag(&self, f: impl Fn(usize) -> KMat) -> KMat {
        KMat::block_diagonal(&(0..self.n).map(f).collect::<Vec<_>>())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SymplemOutcome {
    pub params: SymplemParams,
    pub checks: CheckReport,
    /// The form read off from the pulled back involution.
    pub hermitian: HermitianForm,
}

fn record(name: &str, failure: Option<serde_json::Value>) -> CheckRecord {
    match failure {
        None => CheckRecord::pass(name, Evidence::exact_exhaustive()),
        Some(w) => CheckRecord::fail(name, w, Evidence::exact_exhaustive()),
    }
}

/// All matrix identities of the descent, exhaustively on basis elements.
pub fn symplem_verify(p: &SymplemParams) -> Result<SymplemOutcome> {
    let n = p.n();
    if n > SYMPLEM_MAX_N {
        return Err(AlgebraError::InvalidParameter(format!("matrix checks need n ≤ {SYMPLEM_MAX_N}, got {n}")));
    }
    let st = Setup::new(p)?;
    let r = p.sqrt();
    let basis = st.basis();
    let images: Vec<KMat> = basis.iter().map(|&(q, r, s)| st.gf(&Setup::unit(q), r, s)).collect();
    let mut checks = CheckReport::default();

    // the displayed images of 1 ⊗ E_rs, i ⊗ E_rr and j ⊗ E_rs
    let mut bad = None;
    for rr in 0..n {
        for ss in 0..n {
            let ratio = p.k(&(&p.c[ss] / &p.c[rr]));
            let mut one = KMat::identity(2);
            one[(1, 1)] = ratio;
            let mut jj = KMat::zeros(2, 2);
            jj[(0, 1)] = p.k(&p.c[ss]);
            jj[(1, 0)] = p.k(&(&p.beta / &p.c[rr]));
            let mut ok = st.f(0, rr, ss) == one && st.f(2, rr, ss) == jj;
            if rr == ss {
                let mut ii = KMat::zeros(2, 2);
                ii[(0, 0)] = r.clone();
                ii[(1, 1)] = r.neg_ref();
                ok &= st.f(1, rr, rr) == ii;
            }
            if !ok && bad.is_none() {
                bad = Some(json!({ "r": rr, "s": ss }));
            }
        }
    }
    checks.push(record("displayed images", bad));

    let mut bad = None;
    'outer: for (x, &(q1, r1, s1)) in images.iter().zip(&basis) {
        for (y, &(q2, r2, s2)) in images.iter().zip(&basis) {
            let lhs = x.mul(y);
            let rhs = if s1 == r2 {
                st.gf(&st.quat.mul_coords(&Setup::unit(q1), &Setup::unit(q2)), r1, s2)
            } else {
                KMat::zeros(2 * n, 2 * n)
            };
            if lhs != rhs {
                bad = Some(json!({ "x": [q1, r1, s1], "y": [q2, r2, s2] }));
                break 'outer;
            }
        }
    }
    checks.push(record("gf homomorphism", bad));

    let m = st.block_diag(|i| {
        let mut c = KMat::zeros(2, 2);
        c[(0, 1)] = p.k(&p.c[i]);
        c[(1, 0)] = p.k(&(&p.beta / &p.c[i]));
        c
    });
    let m_inv = m.inverse()?;
    let fixed = |x: &KMat| int(&m, &m_inv, &conj(x)) == *x;
    let bad = basis.iter().zip(&images).find(|(_, x)| !fixed(x)).map(|(b, _)| json!({ "basis": b }));
    checks.push(record("gf image fixed", bad));

    // F-dimension of the image and of the whole fixed algebra
    let f_coords = |x: &KMat| -> Vec<Scalar> { x.entries().iter().flat_map(|c| [c.re.clone(), c.im.clone()]).collect() };
    let mut span = SparseEchelon::<Scalar>::new();
    for x in &images {
        span.insert(sparse_from_dense(&f_coords(x)));
    }
    let size = 2 * n;
    let mut moved = SparseEchelon::<Scalar>::new();
    for idx in 0..size * size {
        for unit in [K::one(), r.clone()] {
            let mut e = KMat::zeros(size, size);
            e[(idx / size, idx % size)] = unit;
            moved.insert(sparse_from_dense(&f_coords(&int(&m, &m_inv, &conj(&e)).sub(&e))));
        }
    }
    let fixed_dim = 2 * size * size - moved.rank();
    let dims_ok = span.rank() == 4 * n * n && fixed_dim == 4 * n * n;
    checks.push(record("fixed dimension", (!dims_ok).then(|| json!({ "image": span.rank(), "fixed": fixed_dim }))));

    // s(ιw₁, ιw₂) = β ι s(w₁, w₂) on an F-basis of W_K
    let s_mat = st.block_diag(|i| j_matrix().scale(&r.scale(&p.a[i])));
    let mut bad = None;
    let f_basis: Vec<Vec<K>> = (0..size)
        .flat_map(|k| {
            [K::one(), r.clone()].into_iter().map(move |u| {
                let mut v = vec![K::zero(); size];
                v[k] = u;
                v
            })
        })
        .collect();
    let twist = |w: &[K]| m.mul_vec(&w.iter().map(K::conj).collect::<Vec<_>>());
    'pairs: for (i, w1) in f_basis.iter().enumerate() {
        for (j, w2) in f_basis.iter().enumerate() {
            let lhs = s_mat.bilinear(&twist(w1), &twist(w2));
            let rhs = s_mat.bilinear(w1, w2).conj().mul_ref(&p.k(&p.beta));
            if lhs != rhs {
                bad = Some(json!({ "pair": [i, j] }));
                break 'pairs;
            }
        }
    }
    checks.push(record("skew form multiplier", bad));

    // τ = Int(diag(A_i⁻¹)) ∘ Int(diag(J)) ∘ t is the adjoint involution of s
    let s_inv = s_mat.inverse()?;
    let tau = |x: &KMat| s_inv.mul(&x.transpose()).mul(&s_mat);
    let a_inv = st.block_diag(|i| KMat::identity(2).scale(&r.scale(&p.a[i]).inv().expect("nonzero")));
    let a_mat = a_inv.inverse()?;
    let jd = st.block_diag(|_| j_matrix());
    let jd_inv = jd.inverse()?;
    let bad = images
        .iter()
        .zip(&basis)
        .find(|(x, _)| {
            let displayed = int(&a_inv, &a_mat, &int(&jd, &jd_inv, &x.transpose()));
            displayed != tau(x) || !fixed(&tau(x))
        })
        .map(|(_, b)| json!({ "basis": b }));
    checks.push(record("adjoint involution", bad));

    // gf ∘ (γ ⊗ t) ∘ gf⁻¹ = Int(diag(cᵢ⁻¹ J)) ∘ t
    let pd = st.block_diag(|i| j_matrix().scale(&p.k(&p.c[i].inv().expect("nonzero"))));
    let pd_inv = pd.inverse()?;
    let bad = basis
        .iter()
        .zip(&images)
        .find(|(&(q, rr, ss), x)| {
            let gamma = st.quat.conj_coords(&Setup::unit(q));
            st.gf(&gamma, ss, rr) != int(&pd, &pd_inv, &x.transpose())
        })
        .map(|(b, _)| json!({ "basis": b }));
    checks.push(record("gamma transport", bad));

    // τ ∘ (Int(diag(cᵢ⁻¹J)) ∘ t) = Int(diag(cᵢ A_i⁻¹))
    let g = st.block_diag(|i| KMat::identity(2).scale(&p.k(&p.c[i]).mul_ref(&r.scale(&p.a[i]).inv().expect("nonzero"))));
    let g_inv = g.inverse()?;
    let bad = basis
        .iter()
        .zip(&images)
        .find(|(_, y)| tau(&int(&pd, &pd_inv, &y.transpose())) != int(&g, &g_inv, y))
        .map(|(b, _)| json!({ "basis": b }));
    checks.push(record("involution identity", bad));

    // the Int(G) above is S⁻¹P⁻ᵀ computed directly, block by block
    let direct = s_inv.mul(&pd.transpose().inverse()?);
    let mut bad = None;
    for i in 0..n {
        let k = block_coefficient(&p.alpha, &p.a[i], &p.c[i])?;
        let block_ok = (0..2).all(|u| (0..2).all(|v| direct[(2 * i + u, 2 * i + v)] == if u == v { k.clone() } else { K::zero() }));
        if !block_ok || k.mul_ref(&r).scale(&p.a[i]) != p.k(&p.c[i]) || g[(2 * i, 2 * i)] != k {
            bad = Some(json!({ "block": i }));
            break;
        }
    }
    let hermitian = hermitian_coefficients(p)?;
    if bad.is_none() && !hermitian.is_similar_diagonal(&p.expected_form()?, &Scalar::one()) {
        bad = Some(json!({ "hermitian": hermitian.coeffs() }));
    }
    checks.push(record("hermitian coefficients", bad));

    Ok(SymplemOutcome { params: p.clone(), checks, hermitian })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::integer(n)
    }

    #[test]
    fn smallest_case_gives_unit_form() {
        let p = SymplemParams::new(s(-1), s(-1), vec![s(1)], vec![s(1)]).unwrap();
        let out = symplem_verify(&p).unwrap();
        assert!(out.checks.all_pass(), "{:?}", out.checks.failing());
        assert_eq!(out.hermitian.coeffs(), &[s(1)]);
    }

    #[test]
    fn product_of_displayed_images() {
        let p = SymplemParams::new(s(-1), s(-1), vec![s(1)], vec![s(1)]).unwrap();
        let st = Setup::new(&p).unwrap();
        // (i ⊗ 1)(j ⊗ E₁₁) = ij ⊗ E₁₁
        let lhs = st.gf(&Setup::unit(1), 0, 0).mul(&st.gf(&Setup::unit(2), 0, 0));
        assert_eq!(lhs, st.gf(&Setup::unit(3), 0, 0));
    }

    #[test]
    fn large_n_is_refused() {
        let p = SymplemParams::new(s(2), s(3), vec![s(1); 4], vec![s(1); 4]).unwrap();
        assert!(symplem_verify(&p).is_err());
        // the block-level reading still works
        assert_eq!(hermitian_coefficients(&p).unwrap().dim(), 4);
    }

    #[test]
    fn square_alpha_rejected() {
        assert!(SymplemParams::new(s(4), s(3), vec![s(1)], vec![s(1)]).is_err());
    }
}
