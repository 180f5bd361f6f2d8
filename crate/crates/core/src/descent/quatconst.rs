//! A gift of degree 56 over `F` whose algebra is `M₂₈(Q)` for `Q = (a, b)_F`,
//! obtained by descending `End(𝔐^d ⊗ K)`, `K = F(√a)`.
//!
//! On `V_K` the semilinear map `τ(x) = μ x̄` with `μ = t ∘ ϖ` and
//! `t(α, j, j′, β) = (α/b, bψ(j), ψ†(j′), b²β)` satisfies `τ² = b`, so
//! `X ↦ μ X̄ μ⁻¹` is a semilinear involution of `End_K(V_K)`. Its fixed
//! points form the algebra `A`. For monomial `μ`, with `μ e_{π(m)} = s_m e_m`,
//! the fixed condition reads `X_{π(m)π(n)} = (s_{π(m)} / s_{π(n)}) · conj(X_mn)`.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::hermitian::HermitianForm;
use super::symplem::{hermitian_coefficients, SymplemParams};
use crate::albert::{AlbertAlgebra, ALBERT_DIM};
use crate::error::{AlgebraError, Result};
use crate::forms::QuadraticForm;
use crate::fts::{build_albert, TripleSystem};
use crate::gift::{Gift, GiftProvenance, Sampler, VectorSampler};
use crate::matrix::{sparse_from_dense, DenseMatrix, SparseEchelon};
use crate::quadext::QuadExtScalar;
use crate::report::{CheckRecord, CheckReport, Evidence};
use crate::sampling::{random_scalar, Budget};
use crate::scalar::{Field, Ring, Scalar};

type K = QuadExtScalar;
type KMat = DenseMatrix<K>;

const N: usize = 2 * ALBERT_DIM + 2;

/// `K = F(√a)`, the multiplier `b`, the norm isometry `ψ` and the map `μ`.
#[derive(Clone, Debug)]
pub struct DescentDatum {
    pub a: Scalar,
    pub b: Scalar,
    psi: KMat,
    psi_dagger: KMat,
    mu: KMat,
    /// `μ e_{perm[m]} = scales[m] e_m`
    perm: Vec<usize>,
    scales: Vec<K>,
}

/// `ϖ(α, j, j′, β) = (β, j′, j, α)` as an index map.
fn varpi_index(m: usize) -> usize {
    match m {
        0 => N - 1,
        m if m == N - 1 => 0,
        m if m <= ALBERT_DIM => m + ALBERT_DIM,
        m => m - ALBERT_DIM,
    }
}

impl DescentDatum {
    /// `ψ = id`, valid for the split Albert algebra.
    pub fn new(alg: &AlbertAlgebra, a: Scalar, b: Scalar) -> Result<Self> {
        Self::with_psi(alg, a.clone(), b, KMat::identity(ALBERT_DIM))
    }

    pub fn with_psi(alg: &AlbertAlgebra, a: Scalar, b: Scalar, psi: KMat) -> Result<Self> {
        QuadExtScalar::check_radicand(&a)?;
        if b.is_zero() {
            return Err(AlgebraError::ZeroParameter("b"));
        }
        if psi.rows() != ALBERT_DIM || psi.cols() != ALBERT_DIM {
            return Err(AlgebraError::DimensionMismatch { expected: ALBERT_DIM, got: psi.rows() });
        }
        // T(ψj, ψ†j′) = T(j, j′), i.e. ψᵀ T ψ† = T
        let tg = alg.trace_gram().map(K::from_scalar);
        let psi_dagger = psi.transpose().mul(&tg).inverse()?.mul(&tg);
        let k = |x: &Scalar| K::new(x.clone(), Scalar::zero(), &a);
        let b_inv = b.inv().ok_or(AlgebraError::ZeroParameter("b"))?;
        let mut t = KMat::zeros(N, N);
        t[(0, 0)] = k(&b_inv);
        t[(N - 1, N - 1)] = k(&(&b * &b));
        for p in 0..ALBERT_DIM {
            for q in 0..ALBERT_DIM {
                t[(1 + p, 1 + q)] = psi[(p, q)].scale(&b);
                t[(1 + ALBERT_DIM + p, 1 + ALBERT_DIM + q)] = psi_dagger[(p, q)].clone();
            }
        }
        let varpi = KMat::from_fn(N, N, |r, c| if c == varpi_index(r) { K::one() } else { K::zero() });
        let mu = t.mul(&varpi);
        let mut perm = Vec::with_capacity(N);
        let mut scales = Vec::with_capacity(N);
        for r in 0..N {
            let nz: Vec<usize> = (0..N).filter(|&c| !mu[(r, c)].is_zero()).collect();
            if nz.len() != 1 {
                return Err(AlgebraError::InvalidParameter("the fixed basis is only built for monomial μ".into()));
            }
            perm.push(nz[0]);
            scales.push(mu[(r, nz[0])].clone());
        }
        Ok(DescentDatum { a, b, psi, psi_dagger, mu, perm, scales })
    }

    pub fn psi(&self) -> &KMat {
        &self.psi
    }

    pub fn psi_dagger(&self) -> &KMat {
        &self.psi_dagger
    }

    pub fn mu(&self) -> &KMat {
        &self.mu
    }

    pub fn sqrt_a(&self) -> K {
        K::sqrt_of(&self.a)
    }

    /// `τ(x) = μ x̄`
    pub fn tau(&self, x: &[K]) -> Vec<K> {
        (0..N).map(|m| self.scales[m].mul_ref(&x[self.perm[m]].conj())).collect()
    }

    /// `X ↦ μ X̄ μ⁻¹`, entrywise.
    pub fn twist(&self, x: &KMat) -> KMat {
        KMat::from_fn(N, N, |m, n| {
            let v = &x[(self.perm[m], self.perm[n])];
            if v.is_zero() {
                return K::zero();
            }
            self.scales[m].mul_ref(&v.conj()).mul_ref(&self.scales[n].inv().expect("μ is invertible"))
        })
    }

    pub fn contains(&self, x: &KMat) -> bool {
        self.twist(x) == *x
    }

    /// `X_{π(m)π(n)}` in terms of `X_mn` for an `X` in `A`.
    fn partner(&self, m: usize, n: usize, v: &K) -> K {
        let (pm, pn) = (self.perm[m], self.perm[n]);
        self.scales[pm].mul_ref(&v.conj()).mul_ref(&self.scales[pn].inv().expect("μ is invertible"))
    }

    /// Orbit representatives of `(m, n) ↦ (π(m), π(n))`.
    fn representatives(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for m in 0..N {
            for n in 0..N {
                let p = (self.perm[m], self.perm[n]);
                if (m, n) <= p {
                    out.push((m, n));
                }
            }
        }
        out
    }
}

/// Sparse F-basis element of `A`: entries `(row, col, value)`.
pub type BasisElement = Vec<(usize, usize, K)>;

#[derive(Clone, Debug)]
pub struct QuatConst {
    pub datum: Arc<DescentDatum>,
    pub gift: Gift<K>,
    system: Arc<TripleSystem>,
    albert: Arc<AlbertAlgebra>,
    basis: Vec<BasisElement>,
}

fn k_from(a: &Scalar, re: Scalar, im: Scalar) -> K {
    K::new(re, im, a)
}

fn random_k<R: Rng + ?Sized>(rng: &mut R, a: &Scalar) -> K {
    k_from(a, random_scalar(rng), random_scalar(rng))
}

/// The construction over the split Albert algebra.
pub fn quatconst_build(a: Scalar, b: Scalar) -> Result<QuatConst> {
    let alg = Arc::new(AlbertAlgebra::split());
    let ts = Arc::new(build_albert(&alg)?);
    quatconst_from(alg, ts, a, b)
}

/// The construction on a given `𝔐(J)` with `ψ = id`.
pub fn quatconst_from(albert: Arc<AlbertAlgebra>, system: Arc<TripleSystem>, a: Scalar, b: Scalar) -> Result<QuatConst> {
    if system.dim() != N {
        return Err(AlgebraError::DimensionMismatch { expected: N, got: system.dim() });
    }
    let datum = Arc::new(DescentDatum::new(&albert, a.clone(), b.clone())?);
    let mut basis = Vec::with_capacity(N * N);
    for (m, n) in datum.representatives() {
        for u in [K::one(), datum.sqrt_a()] {
            let partner = datum.partner(m, n, &u);
            basis.push(vec![(m, n, u), (datum.perm[m], datum.perm[n], partner)]);
        }
    }
    let reps = datum.representatives();
    let d = datum.clone();
    let sampler: Sampler<K> = Arc::new(move |rng: &mut ChaCha8Rng| {
        let mut x = KMat::zeros(N, N);
        for &(m, n) in &reps {
            let v = random_k(rng, &d.a);
            x[(d.perm[m], d.perm[n])] = d.partner(m, n, &v);
            x[(m, n)] = v;
        }
        x
    });
    let a2 = a.clone();
    let vectors: VectorSampler<K> = Arc::new(move |rng: &mut ChaCha8Rng| (0..N).map(|_| random_k(rng, &a2)).collect());
    let gift = Gift::from_parts(&system, sampler, false, GiftProvenance::Descended { a, b })?.with_vector_sampler(vectors);
    Ok(QuatConst { datum, gift, system, albert, basis })
}

fn record(name: &str, failure: Option<serde_json::Value>, evidence: Evidence) -> CheckRecord {
    match failure {
        None => CheckRecord::pass(name, evidence),
        Some(w) => CheckRecord::fail(name, w, evidence),
    }
}

fn f_coords(x: &KMat) -> Vec<Scalar> {
    x.entries().iter().flat_map(|c| [c.re.clone(), c.im.clone()]).collect()
}

impl QuatConst {
    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn basis_matrix(&self, i: usize) -> KMat {
        let mut x = KMat::zeros(N, N);
        for (r, c, v) in &self.basis[i] {
            x[(*r, *c)] = v.clone();
        }
        x
    }

    pub fn system(&self) -> &TripleSystem {
        &self.system
    }

    /// `s = √a · b₀`
    pub fn s(&self, x: &[K], y: &[K]) -> K {
        self.datum.sqrt_a().mul_ref(&self.system.b(x, y))
    }

    /// `t_s = t₀ / √a`, so that `q(x, y, z, w) = s(x, t_s(y, z, w))`.
    pub fn t(&self, x: &[K], y: &[K], z: &[K]) -> Vec<K> {
        let inv = self.datum.sqrt_a().inv().expect("a is nonzero");
        self.system.t(x, y, z).iter().map(|v| v.mul_ref(&inv)).collect()
    }

    /// F-dimension of the fixed space of `X ↦ μ X̄ μ⁻¹` on `End_K(V_K)`.
    pub fn fixed_dimension(&self) -> usize {
        let d = &self.datum;
        let mut moved = SparseEchelon::<Scalar>::new();
        for m in 0..N {
            for n in 0..N {
                for u in [K::one(), d.sqrt_a()] {
                    // twist(u E_mn) − u E_mn, supported on (m, n) and its partner
                    let mut row = std::collections::BTreeMap::new();
                    let (im, in_) = (d.perm.iter().position(|&p| p == m).expect("perm"), d.perm.iter().position(|&p| p == n).expect("perm"));
                    let image = d.scales[im].mul_ref(&u.conj()).mul_ref(&d.scales[in_].inv().expect("nonzero"));
                    let mut put = |r: usize, c: usize, v: &K| {
                        let base = 2 * (r * N + c);
                        for (off, part) in [(0, &v.re), (1, &v.im)] {
                            if !part.is_zero() {
                                let e: &mut Scalar = row.entry(base + off).or_insert_with(Scalar::zero);
                                *e += part;
                            }
                        }
                    };
                    put(im, in_, &image);
                    put(m, n, &u.neg_ref());
                    row.retain(|_, v: &mut Scalar| !v.is_zero());
                    moved.insert(row);
                }
            }
        }
        2 * N * N - moved.rank()
    }

    /// F-rank of the stored basis.
    pub fn basis_rank(&self) -> usize {
        let mut ech = SparseEchelon::<Scalar>::new();
        for i in 0..self.basis.len() {
            ech.insert(sparse_from_dense(&f_coords(&self.basis_matrix(i))));
        }
        ech.rank()
    }

    /// `⟨b⁻¹⟩ ⊥ ⟨b⟩T` read off through the block-level lemma, with `T`
    /// diagonalized.
    pub fn hermitian_form(&self) -> Result<HermitianForm> {
        let d = &self.datum;
        let tdiag = QuadraticForm::diagonalize(&self.albert.trace_gram())?;
        let mut a_i = vec![Scalar::one()];
        a_i.extend(tdiag.coeffs().iter().cloned());
        let b_inv = d.b.inv().ok_or(AlgebraError::ZeroParameter("b"))?;
        let mut c_i = vec![b_inv];
        c_i.extend(std::iter::repeat(d.b.clone()).take(ALBERT_DIM));
        hermitian_coefficients(&SymplemParams::new(d.a.clone(), d.b.clone(), a_i, c_i)?)
    }

    /// `⟨1⟩ ⊥ T` over `(a, b)_F`.
    pub fn unit_plus_trace(&self) -> Result<HermitianForm> {
        let tdiag = QuadraticForm::diagonalize(&self.albert.trace_gram())?;
        let mut coeffs = vec![Scalar::one()];
        coeffs.extend(tdiag.coeffs().iter().cloned());
        HermitianForm::new(self.datum.a.clone(), self.datum.b.clone(), coeffs)
    }
}

/// The exact identities of the construction and sampled closure of `A`.
pub fn check_quatconst(qc: &QuatConst, budget: &Budget) -> Result<CheckReport> {
    let d = &qc.datum;
    let a = &d.a;
    let kb = K::new(d.b.clone(), Scalar::zero(), a);
    let mut report = CheckReport::default();
    let mut rng = budget.rng("quatconst");

    // ψ preserves the norm and ψ ι ψ† ι = id
    let alg = &qc.albert;
    let mut bad = None;
    for i in 0..budget.samples {
        let j: Vec<K> = (0..ALBERT_DIM).map(|_| random_k(&mut rng, a)).collect();
        if alg.norm_coords(&d.psi.mul_vec(&j)) != alg.norm_coords(&j) {
            bad = Some(json!({ "sample": i }));
            break;
        }
    }
    if bad.is_none() && d.psi.mul(&d.psi_dagger.map(K::conj)) != KMat::identity(ALBERT_DIM) {
        bad = Some(json!("ψ ι ψ† ι ≠ id"));
    }
    report.push(record("psi cocycle", bad, Evidence::samples(budget.samples)));

    // s(τx, τy) = b ι(s(x, y)) and t_s(τx, τy, τz) = b τ(t_s(x, y, z))
    let gram = qc.system.gram().map(K::from_scalar);
    let mut bad = (d.mu.transpose().mul(&gram).mul(&d.mu) != gram.scale(&kb.neg_ref())).then(|| json!("μᵀ B μ ≠ −b B"));
    if bad.is_none() {
        let triples: Vec<[Vec<K>; 3]> = (0..budget.samples)
            .map(|_| std::array::from_fn(|_| (0..N).map(|_| random_k(&mut rng, a)).collect()))
            .collect();
        bad = triples
            .par_iter()
            .enumerate()
            .find_map_first(|(i, [x, y, z])| {
                let s_ok = qc.s(&d.tau(x), &d.tau(y)) == qc.s(x, y).conj().mul_ref(&kb);
                let lhs = qc.t(&d.tau(x), &d.tau(y), &d.tau(z));
                let rhs: Vec<K> = d.tau(&qc.t(x, y, z)).iter().map(|v| v.mul_ref(&kb)).collect();
                (!s_ok || lhs != rhs).then(|| json!({ "sample": i, "s": s_ok }))
            });
    }
    report.push(record("similarity multiplier", bad, Evidence::samples(budget.samples)));

    // τ² = b on an F-basis of V_K
    let mut bad = None;
    'basis: for m in 0..N {
        for u in [K::one(), d.sqrt_a()] {
            let mut v = vec![K::zero(); N];
            v[m] = u;
            let twice = d.tau(&d.tau(&v));
            if twice != v.iter().map(|x| x.mul_ref(&kb)).collect::<Vec<_>>() {
                bad = Some(json!({ "basis": m }));
                break 'basis;
            }
        }
    }
    report.push(record("cocycle", bad, Evidence::exact_exhaustive()));

    let fixed_dim = qc.fixed_dimension();
    let rank = qc.basis_rank();
    let all_fixed = (0..qc.basis.len()).into_par_iter().all(|i| d.contains(&qc.basis_matrix(i)));
    let ok = fixed_dim == N * N && rank == N * N && qc.basis.len() == N * N && all_fixed;
    report.push(
        record(
            "fixed dimension",
            (!ok).then(|| json!({ "fixed": fixed_dim, "basis_rank": rank, "basis_fixed": all_fixed })),
            Evidence::exact_exhaustive(),
        )
        .with_detail(json!({ "f_dimension": fixed_dim })),
    );

    let pairs: Vec<(KMat, KMat)> =
        (0..budget.samples).map(|_| (qc.gift.random_element(&mut rng), qc.gift.random_element(&mut rng))).collect();
    let bad = pairs.par_iter().enumerate().find_map_first(|(i, (x, y))| {
        let failing: Vec<&str> = [
            ("sample", d.contains(x)),
            ("sigma", d.contains(&qc.gift.sigma(x))),
            ("pi", d.contains(&qc.gift.pi(x))),
            ("product", d.contains(&x.mul(y))),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n)
        .collect();
        (!failing.is_empty()).then(|| json!({ "sample": i, "leaves_a": failing }))
    });
    report.push(record("closure", bad, Evidence::samples(pairs.len())));

    // μ is ψ_{1/b} on the (α, β) plane and ψ_b on J ⊕ J, and s is the lemma's
    // form built from ⟨1⟩ ⊥ T
    let mut bad = None;
    let b_inv = d.b.inv().ok_or(AlgebraError::ZeroParameter("b"))?;
    let psi_c = |c: &Scalar, v: &K, vp: &K| (vp.scale(c), v.scale(&(&d.b / c)));
    for col in 0..N {
        let mut e = vec![K::zero(); N];
        e[col] = K::one();
        let image = d.mu.mul_vec(&e);
        let (na, nb) = psi_c(&b_inv, &e[0], &e[N - 1]);
        let mut expected = vec![K::zero(); N];
        expected[0] = na;
        expected[N - 1] = nb;
        for i in 0..ALBERT_DIM {
            let (x, y) = psi_c(&d.b, &e[1 + i], &e[1 + ALBERT_DIM + i]);
            expected[1 + i] = x;
            expected[1 + ALBERT_DIM + i] = y;
        }
        if image != expected {
            bad = Some(json!({ "column": col }));
            break;
        }
    }
    let tg = alg.trace_gram();
    let lemma_gram = DenseMatrix::<Scalar>::from_fn(N, N, |r, c| {
        // b_q(v₁, v′₂) − b_q(v₂, v′₁) with v = (α, j), v′ = (β, j′)
        let (ra, rp) = (r < 1 + ALBERT_DIM, r >= 1 + ALBERT_DIM);
        let (ca, cp) = (c < 1 + ALBERT_DIM, c >= 1 + ALBERT_DIM);
        let bq = |u: usize, v: usize| -> Scalar {
            // u indexes v-coordinates (α, j), v indexes v′-coordinates (β, j′)
            let vu = u;
            let vv = if v == N - 1 { 0 } else { v - ALBERT_DIM };
            match (vu, vv) {
                (0, 0) => Scalar::one(),
                (0, _) | (_, 0) => Scalar::zero(),
                (x, y) => tg[(x - 1, y - 1)].clone(),
            }
        };
        if ra && cp {
            bq(r, c)
        } else if rp && ca {
            -bq(c, r)
        } else {
            Scalar::zero()
        }
    });
    if bad.is_none() && lemma_gram != *qc.system.gram() {
        bad = Some(json!("s differs from the form built from ⟨1⟩ ⊥ T"));
    }
    report.push(record("psi_c assembly", bad, Evidence::exact_exhaustive()));

    let h = qc.hermitian_form()?;
    let target = qc.unit_plus_trace()?;
    let scaled = HermitianForm::new(d.a.clone(), d.b.clone(), target.coeffs().iter().map(|c| c * &d.b).collect())?;
    let ok = h.is_similar_diagonal(&scaled, &Scalar::one()) && scaled.is_similar_diagonal(&target, &d.b);
    report.push(
        record("hermitian form", (!ok).then(|| json!({ "coefficients": h.coeffs() })), Evidence::exact_exhaustive())
            .with_detail(json!({ "coefficients": h.coeffs() })),
    );
    Ok(report)
}
