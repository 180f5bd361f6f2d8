//! The two model systems: `𝔐ₛ` over a symplectic space and `𝔐(J)` over an
//! Albert algebra.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::tensor::TripleTensor;
use super::{Provenance, TripleSystem};
use crate::albert::{AlbertAlgebra, AlbertElement, ALBERT_DIM};
use crate::error::{AlgebraError, Result};
use crate::forms::{standard_skew_gram, SkewForm};
use crate::matrix::DenseMatrix;
use crate::poly::{symmetric_coefficients, Poly};
use crate::scalar::{Ring, Scalar};

/// Coordinates `(α, j, j′, β)` of `𝔐ₛ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MsCoords {
    pub alpha: Scalar,
    pub j: Vec<Scalar>,
    pub jp: Vec<Scalar>,
    pub beta: Scalar,
}

impl MsCoords {
    pub fn new(alpha: Scalar, j: Vec<Scalar>, jp: Vec<Scalar>, beta: Scalar) -> Result<Self> {
        if j.len() != jp.len() {
            return Err(AlgebraError::DimensionMismatch { expected: j.len(), got: jp.len() });
        }
        Ok(MsCoords { alpha, j, jp, beta })
    }

    pub fn to_vector(&self) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(2 * self.j.len() + 2);
        v.push(self.alpha.clone());
        v.extend(self.j.iter().cloned());
        v.extend(self.jp.iter().cloned());
        v.push(self.beta.clone());
        v
    }

    pub fn from_vector(w_dim: usize, v: &[Scalar]) -> Result<Self> {
        if v.len() != 2 * w_dim + 2 {
            return Err(AlgebraError::DimensionMismatch { expected: 2 * w_dim + 2, got: v.len() });
        }
        Ok(MsCoords {
            alpha: v[0].clone(),
            j: v[1..=w_dim].to_vec(),
            jp: v[w_dim + 1..=2 * w_dim].to_vec(),
            beta: v[2 * w_dim + 1].clone(),
        })
    }
}

/// Coordinates `(α, j, j′, β)` of `𝔐(J)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlbertCoords {
    pub alpha: Scalar,
    pub j: AlbertElement,
    pub jp: AlbertElement,
    pub beta: Scalar,
}

impl AlbertCoords {
    pub fn to_vector(&self) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(2 * ALBERT_DIM + 2);
        v.push(self.alpha.clone());
        v.extend(self.j.coords().iter().cloned());
        v.extend(self.jp.coords().iter().cloned());
        v.push(self.beta.clone());
        v
    }

    pub fn from_vector(alg: &std::sync::Arc<AlbertAlgebra>, v: &[Scalar]) -> Result<Self> {
        let n = 2 * ALBERT_DIM + 2;
        if v.len() != n {
            return Err(AlgebraError::DimensionMismatch { expected: n, got: v.len() });
        }
        Ok(AlbertCoords {
            alpha: v[0].clone(),
            j: alg.element(v[1..=ALBERT_DIM].to_vec())?,
            jp: alg.element(v[ALBERT_DIM + 1..=2 * ALBERT_DIM].to_vec())?,
            beta: v[n - 1].clone(),
        })
    }
}

fn labels(w_dim: usize, j: impl Fn(usize) -> String) -> Vec<String> {
    let mut out = vec!["alpha".to_string()];
    out.extend((0..w_dim).map(|i| format!("j.{}", j(i))));
    out.extend((0..w_dim).map(|i| format!("jp.{}", j(i))));
    out.push("beta".into());
    out
}

/// Gram matrix of `b(x, y) = αδ − βγ + s(j, k′) + s(j′, k)`.
pub fn ms_gram(s: &DenseMatrix<Scalar>) -> DenseMatrix<Scalar> {
    let w = s.rows();
    let n = 2 * w + 2;
    let mut g = DenseMatrix::zeros(n, n);
    g[(0, n - 1)] = Scalar::one();
    g[(n - 1, 0)] = -Scalar::one();
    for p in 0..w {
        for q in 0..w {
            g[(1 + p, w + 1 + q)] = s[(p, q)].clone();
            g[(w + 1 + p, 1 + q)] = s[(p, q)].clone();
        }
    }
    g
}

/// `det(x) = αβ − s(j, j′)` as a polynomial in the coordinates of `V`.
fn ms_det_poly(s: &DenseMatrix<Scalar>) -> Poly {
    let w = s.rows();
    let mut det = Poly::var(0).mul_ref(&Poly::var(2 * w + 1));
    for p in 0..w {
        for q in 0..w {
            if !s[(p, q)].is_zero() {
                let term = Poly::var(1 + p).mul_ref(&Poly::var(w + 1 + q)).scale(&s[(p, q)]);
                det = det.sub_ref(&term);
            }
        }
    }
    det
}

/// `𝔐ₛ` for a nondegenerate skew form `s`, with `q(x) = 12 det(x)²` and `t`
/// obtained from `q` by `b`-duality.
pub fn build_ms(s: &SkewForm) -> Result<TripleSystem> {
    let w = s.dim();
    let gram = ms_gram(s.gram());
    let inv = gram.inverse()?;
    let det = ms_det_poly(s.gram());
    let q = det.mul_ref(&det).scale(&Scalar::from(12));
    let tensor = TripleTensor::from_quartic(2 * w + 2, &symmetric_coefficients(&q, 4), &inv);
    TripleSystem::new(gram, tensor, labels(w, |i| i.to_string()), Provenance::Ms { w_dim: w, formal: false })
}

/// `𝔐ₛ` for the standard symplectic form on an even-dimensional `W`.
pub fn build_ms_standard(w_dim: usize) -> Result<TripleSystem> {
    build_ms(&SkewForm::standard(w_dim)?)
}

/// The 27-dimensional `W` read literally: `s` is the standard form on the
/// first 26 coordinates and the last coordinate spans its radical, so `b`
/// is degenerate. `t` is taken from `t(x,x,x) = 6 det(x)·(−α, j, −j′, β)`
/// directly since duality is unavailable.
pub fn build_ms_formal() -> TripleSystem {
    const W: usize = 27;
    let s = standard_skew_gram::<Scalar>(W);
    let n = 2 * W + 2;
    let det = ms_det_poly(&s).scale(&Scalar::from(6));
    let cubics: Vec<_> = (0..n)
        .map(|k| {
            let sign = if k == 0 || (W + 1..=2 * W).contains(&k) { -1 } else { 1 };
            symmetric_coefficients(&det.mul_ref(&Poly::var(k)).scale(&Scalar::from(sign)), 3)
        })
        .collect();
    let tensor = TripleTensor::from_cubics(n, &cubics);
    TripleSystem::new_formal(ms_gram(&s), tensor, labels(W, |i| i.to_string()), Provenance::Ms { w_dim: W, formal: true })
        .expect("formal system has consistent shape")
}

/// Calibrated coefficients `(c₁, c₂, c₃)` of
/// `q = c₁(αβ − T(j,j′))² + c₂ T(j♯, j′♯) + c₃ (αN(j) + βN(j′))`.
pub const ALBERT_QUARTIC_COEFFICIENTS: [i64; 3] = [12, -48, -48];

/// Gram matrix of `b(x, y) = αδ − βγ + T(j, k′) − T(j′, k)`.
pub fn albert_gram(alg: &AlbertAlgebra) -> DenseMatrix<Scalar> {
    let t = alg.trace_gram();
    let w = ALBERT_DIM;
    let n = 2 * w + 2;
    let mut g = DenseMatrix::zeros(n, n);
    g[(0, n - 1)] = Scalar::one();
    g[(n - 1, 0)] = -Scalar::one();
    for p in 0..w {
        for q in 0..w {
            g[(1 + p, w + 1 + q)] = t[(p, q)].clone();
            g[(w + 1 + p, 1 + q)] = -t[(p, q)].clone();
        }
    }
    g
}

struct AlbertVars {
    alpha: Poly,
    j: Vec<Poly>,
    jp: Vec<Poly>,
    beta: Poly,
}

fn albert_vars() -> AlbertVars {
    let w = ALBERT_DIM;
    AlbertVars {
        alpha: Poly::var(0),
        j: (1..=w).map(Poly::var).collect(),
        jp: (w + 1..=2 * w).map(Poly::var).collect(),
        beta: Poly::var(2 * w + 1),
    }
}

/// The three-term quartic ansatz, one polynomial per coefficient.
pub fn albert_quartic_terms(alg: &AlbertAlgebra) -> Vec<Poly> {
    let v = albert_vars();
    let ab = v.alpha.mul_ref(&v.beta);
    let tjj = alg.trace_coords(&v.j, &v.jp);
    let d = ab.sub_ref(&tjj);
    let sharp = alg.trace_coords(&alg.sharp_coords(&v.j), &alg.sharp_coords(&v.jp));
    let norms = v.alpha.mul_ref(&alg.norm_coords(&v.j)).add_ref(&v.beta.mul_ref(&alg.norm_coords(&v.jp)));
    vec![d.mul_ref(&d), sharp, norms]
}

/// The six-term widening of [`albert_quartic_terms`].
pub fn albert_quartic_terms_wide(alg: &AlbertAlgebra) -> Vec<Poly> {
    let v = albert_vars();
    let ab = v.alpha.mul_ref(&v.beta);
    let tjj = alg.trace_coords(&v.j, &v.jp);
    vec![
        ab.mul_ref(&ab),
        ab.mul_ref(&tjj),
        tjj.mul_ref(&tjj),
        alg.trace_coords(&alg.sharp_coords(&v.j), &alg.sharp_coords(&v.jp)),
        v.alpha.mul_ref(&alg.norm_coords(&v.j)),
        v.beta.mul_ref(&alg.norm_coords(&v.jp)),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Calibration {
    pub coefficients: Vec<Scalar>,
    /// Number of ansatz terms that were needed (3 or 6).
    pub terms: usize,
    pub probe_points: usize,
    /// Dimension of the solution space of the cubic identity in the lifted
    /// unknowns `(c_k c_l, c_k)`.
    pub cubic_kernel_dim: usize,
    /// Every nonzero `c` satisfying the cubic identity at the probe points.
    pub cubic_solutions: Vec<Vec<Scalar>>,
    /// The subset that also satisfies the trace identity.
    pub nondegenerate_solutions: Vec<Vec<Scalar>>,
}

/// `(c_k c_l)_{k ≤ l}` index pairs.
fn lifted_pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|a| (a..k).map(move |b| (a, b))).collect()
}

/// Rows of the cubic identity `t(t(x,x,x),x,y) = b(y,x) t(x,x,x) + q(y,x,x,x) x`
/// for `t = Σ c_k t_k`, linear in the unknowns `(c_k c_l)_{k ≤ l}, (c_k)`.
fn cubic_rows(gram: &DenseMatrix<Scalar>, parts: &[TripleTensor], x: &[Scalar], y: &[Scalar]) -> Vec<Vec<Scalar>> {
    let n = gram.rows();
    let cubes: Vec<Vec<Scalar>> = parts.iter().map(|t| t.cube(x)).collect();
    let byx = gram.bilinear(y, x);
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for (a, b) in lifted_pairs(parts.len()) {
        let mut v = parts[b].eval(&cubes[a], x, y);
        if a != b {
            let w = parts[a].eval(&cubes[b], x, y);
            v = v.iter().zip(&w).map(|(p, q)| p + q).collect();
        }
        cols.push(v);
    }
    for cube in &cubes {
        let qa = gram.bilinear(y, cube);
        cols.push(cube.iter().zip(x).map(|(c, xi)| -(&(&byx * c) + &(&qa * xi))).collect());
    }
    (0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

/// One row of `tr(p(x⊗x) p(y⊗y)) = 24 (q(x,x,y,y) − 2 b(y,x)²)`, which is
/// affine in the same unknowns; the last entry is the constant term.
fn trace_row(gram: &DenseMatrix<Scalar>, parts: &[TripleTensor], x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let n = gram.rows();
    // constant part of p(v⊗v): w ↦ −2 b(w, v) v
    let fixed = |v: &[Scalar]| {
        let bv = gram.mul_vec(v);
        DenseMatrix::from_fn(n, n, |r, w| &(&v[r] * &bv[w]) * &Scalar::from(-2))
    };
    let (px, py) = (fixed(x), fixed(y));
    let ax: Vec<DenseMatrix<Scalar>> = parts.iter().map(|t| t.partial(x, x)).collect();
    let ay: Vec<DenseMatrix<Scalar>> = parts.iter().map(|t| t.partial(y, y)).collect();
    let mut row = Vec::new();
    for (a, b) in lifted_pairs(parts.len()) {
        let mut v = ax[a].trace_of_product(&ay[b]);
        if a != b {
            v += &ax[b].trace_of_product(&ay[a]);
        }
        row.push(v);
    }
    for (k, t) in parts.iter().enumerate() {
        let q = gram.bilinear(x, &t.eval(x, y, y));
        row.push(ax[k].trace_of_product(&py) + px.trace_of_product(&ay[k]) - q * Scalar::from(24));
    }
    let b = gram.bilinear(y, x);
    row.push(px.trace_of_product(&py) + &(&b * &b) * &Scalar::from(48));
    row
}

/// Rational roots of `Σ cᵢ λⁱ` by the rational root theorem; `None` if the
/// coefficients are too large to enumerate divisors.
fn rational_roots(coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
    use num_integer::Integer;
    use num_traits::{Signed, ToPrimitive, Zero};
    let lcm = coeffs.iter().fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(&c.denom()));
    let mut ints: Vec<num_bigint::BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    while ints.last().is_some_and(|c| c.is_zero()) {
        ints.pop();
    }
    let mut roots = Vec::new();
    while ints.len() > 1 && ints[0].is_zero() {
        roots.push(Scalar::zero());
        ints.remove(0);
    }
    if ints.len() <= 1 {
        return Some(roots);
    }
    let divisors = |n: &num_bigint::BigInt| -> Option<Vec<i64>> {
        let n = n.abs().to_u64().filter(|&n| n <= 10_000_000_000_000)?;
        let mut out = Vec::new();
        let mut d = 1u64;
        while d * d <= n {
            if n % d == 0 {
                out.push(d as i64);
                out.push((n / d) as i64);
            }
            d += 1;
        }
        Some(out)
    };
    let ps = divisors(&ints[0])?;
    let qs = divisors(ints.last().expect("nonempty"))?;
    let poly: Vec<Scalar> = ints.iter().map(|c| Scalar::from(num_rational::BigRational::from_integer(c.clone()))).collect();
    let eval = |x: &Scalar| poly.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c);
    for p in &ps {
        for q in &qs {
            for sign in [1, -1] {
                let x = Scalar::new(sign * p, *q);
                if !roots.contains(&x) && eval(&x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    Some(roots)
}

/// Nonzero points `(c ⊗ c, c)` in the span of `kernel`.
///
/// The span is parametrized by `r` coordinates of `c`. Every solution makes
/// `c_a` an eigenvalue of the linear map `c ↦ (c_a c_b)_b` read off the
/// quadratic block, so candidates come from products of rational eigenvalues
/// and are verified exactly.
fn veronese_points(kernel: &[Vec<Scalar>], k: usize) -> Result<Vec<Vec<Scalar>>> {
    let r = kernel.len();
    if r == 0 {
        return Ok(vec![]);
    }
    let pairs = lifted_pairs(k);
    let np = pairs.len();
    let kc = DenseMatrix::from_fn(r, k, |i, j| kernel[i][np + j].clone());
    let piv: Vec<usize> = {
        let t = kc.clone();
        // pivot columns of the c block
        let mut chosen = Vec::new();
        for j in 0..k {
            let mut cols: Vec<usize> = chosen.clone();
            cols.push(j);
            if DenseMatrix::from_fn(r, cols.len(), |i, c| t[(i, cols[c])].clone()).rank() == cols.len() {
                chosen.push(j);
            }
        }
        chosen
    };
    if piv.len() != r {
        return Err(AlgebraError::CalibrationFailed("solution space is not parametrized by c".into()));
    }
    // λ = R c_piv with R = (Kc_pivᵀ)⁻¹; full vector v = Kᵀ λ = T c_piv
    let rmat = DenseMatrix::from_fn(r, r, |i, j| kc[(j, piv[i])].clone()).inverse()?;
    let kt = DenseMatrix::from_fn(np + k, r, |i, j| kernel[j][i].clone());
    let t = kt.mul(&rmat);
    let idx = |a: usize, b: usize| pairs.iter().position(|p| *p == (a.min(b), a.max(b))).expect("pair");
    let mut eigen: Vec<Vec<Scalar>> = Vec::new();
    for &a in &piv {
        let m = DenseMatrix::from_fn(r, r, |j, col| t[(idx(a, piv[j]), col)].clone());
        let roots = rational_roots(&m.characteristic_polynomial())
            .ok_or_else(|| AlgebraError::CalibrationFailed("eigenvalues too large".into()))?;
        eigen.push(roots);
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; r];
    if eigen.iter().any(|e| e.is_empty()) {
        return Ok(out);
    }
    loop {
        let cp: Vec<Scalar> = (0..r).map(|i| eigen[i][choice[i]].clone()).collect();
        let v = t.mul_vec(&cp);
        let c = &v[np..];
        let veronese = pairs.iter().enumerate().all(|(i, &(a, b))| v[i] == &c[a] * &c[b]);
        if veronese && c.iter().any(|x| !x.is_zero()) && !out.contains(&c.to_vec()) {
            out.push(c.to_vec());
        }
        let mut i = 0;
        loop {
            if i == r {
                out.sort();
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < eigen[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Solves for `c` in `t = Σ c_k t_k` at random integer points.
///
/// The cubic identity is linear in the lifted unknowns `(c_k c_l, c_k)`; its
/// solutions of the form `(c ⊗ c, c)` are the triple systems inside the
/// ansatz. Those satisfying the (affine) trace identity are nondegenerate.
/// When several remain, the lexicographically smallest is returned.
pub fn calibrate(gram: &DenseMatrix<Scalar>, parts: &[TripleTensor], points: usize, seed: u64) -> Result<Calibration> {
    let k = parts.len();
    let n = gram.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cubic: Vec<Vec<Scalar>> = Vec::new();
    let mut trace: Vec<Vec<Scalar>> = Vec::new();
    for _ in 0..points {
        let x: Vec<Scalar> = (0..n).map(|_| Scalar::from(rng.gen_range(-3..=3))).collect();
        let y: Vec<Scalar> = (0..n).map(|_| Scalar::from(rng.gen_range(-3..=3))).collect();
        cubic.extend(cubic_rows(gram, parts, &x, &y));
        trace.push(trace_row(gram, parts, &x, &y));
    }
    let kernel = DenseMatrix::from_rows(cubic)?.kernel();
    let cubic_solutions = veronese_points(&kernel, k)?;
    let pairs = lifted_pairs(k);
    let nondegenerate_solutions: Vec<Vec<Scalar>> = cubic_solutions
        .iter()
        .filter(|c| {
            let mut v: Vec<Scalar> = pairs.iter().map(|&(a, b)| &c[a] * &c[b]).collect();
            v.extend(c.iter().cloned());
            v.push(Scalar::one());
            trace.iter().all(|row| row.iter().zip(&v).fold(Scalar::zero(), |acc, (a, b)| acc + a * b).is_zero())
        })
        .cloned()
        .collect();
    let Some(coefficients) = nondegenerate_solutions.first().cloned() else {
        return Err(AlgebraError::CalibrationFailed(format!(
            "{} solutions of the cubic identity for {k} terms, none nondegenerate",
            cubic_solutions.len()
        )));
    };
    Ok(Calibration {
        coefficients,
        terms: k,
        probe_points: points,
        cubic_kernel_dim: kernel.len(),
        cubic_solutions,
        nondegenerate_solutions,
    })
}

fn octonion_label(alg: &AlbertAlgebra) -> String {
    let p: Vec<String> = alg.octonions().params().iter().map(|x| x.to_string()).collect();
    match p.as_slice() {
        [a, b, c] if a == "1" && b == "1" && c == "1" => "split".into(),
        [a, b, c] if a == "-1" && b == "-1" && c == "-1" => "division".into(),
        _ => format!("({})", p.join(",")),
    }
}

fn albert_labels() -> Vec<String> {
    let coord = |i: usize| {
        if i < 3 {
            format!("a{}", i + 1)
        } else {
            format!("o{}.{}", (i - 3) / 8 + 1, (i - 3) % 8)
        }
    };
    labels(ALBERT_DIM, coord)
}

fn albert_parts(terms: &[Poly], inv: &DenseMatrix<Scalar>) -> Vec<TripleTensor> {
    use rayon::prelude::*;
    let n = 2 * ALBERT_DIM + 2;
    terms.par_iter().map(|q| TripleTensor::from_quartic(n, &symmetric_coefficients(q, 4), inv)).collect()
}

/// Solves for the quartic coefficients of `𝔐(J)`, widening the ansatz from
/// three to six terms if the narrow one has no solution.
pub fn calibrate_albert(alg: &AlbertAlgebra, seed: u64) -> Result<(Calibration, Vec<TripleTensor>)> {
    let gram = albert_gram(alg);
    let inv = gram.inverse()?;
    let narrow = albert_parts(&albert_quartic_terms(alg), &inv);
    match calibrate(&gram, &narrow, 20, seed) {
        Ok(c) => Ok((c, narrow)),
        Err(_) => {
            let wide = albert_parts(&albert_quartic_terms_wide(alg), &inv);
            let c = calibrate(&gram, &wide, 20, seed)?;
            Ok((c, wide))
        }
    }
}

/// `𝔐(J)` with its quartic calibrated against the cubic identity.
pub fn build_albert(alg: &AlbertAlgebra) -> Result<TripleSystem> {
    let (cal, parts) = calibrate_albert(alg, 0x5eed)?;
    let combo: Vec<(Scalar, &TripleTensor)> = cal.coefficients.iter().cloned().zip(parts.iter()).collect();
    let tensor = TripleTensor::combination(&combo);
    TripleSystem::new(
        albert_gram(alg),
        tensor,
        albert_labels(),
        Provenance::Albert { octonions: octonion_label(alg), coefficients: cal.coefficients },
    )
}
