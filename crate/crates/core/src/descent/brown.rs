//! Brown algebras `𝔅(J, F×F)` and the descended `𝔅(J, Δ)`.
//!
//! An element `(α, j, j′, β)` stands for the matrix `[[α, j], [j′, β]]` with
//!
//! ```text
//! x·y = (α₁α₂ + T(j₁,j′₂),  α₁j₂ + β₂j₁ + j′₁×j′₂,
//!        α₂j′₁ + β₁j′₂ + j₁×j₂,  β₁β₂ + T(j₂,j′₁))
//! ```

use serde::Serialize;
use serde_json::json;

use crate::albert::{AlbertAlgebra, ALBERT_DIM};
use crate::error::{AlgebraError, Result};
use crate::matrix::DenseMatrix;
use crate::quadext::QuadExtScalar;
use crate::report::{CheckRecord, CheckReport, Evidence};
use crate::sampling::{random_vector, Budget};
use crate::scalar::{Ring, Scalar};

pub const BROWN_DIM: usize = 2 * ALBERT_DIM + 2;

/// Which quadratic étale algebra the element belongs to.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Flavor {
    /// `𝔅(J, F×F)`
    Split,
    /// `𝔅(J, F(√a))`, presented inside `𝔅(J, F×F) ⊗ F(√a)`.
    Field { a: Scalar },
}

#[derive(Clone, Debug, PartialEq)]
pub struct BrownElement<E = Scalar> {
    pub alpha: E,
    pub j: Vec<E>,
    pub jp: Vec<E>,
    pub beta: E,
    pub flavor: Flavor,
}

impl<E: Ring> BrownElement<E> {
    pub fn new(flavor: Flavor, alpha: E, j: Vec<E>, jp: Vec<E>, beta: E) -> Result<Self> {
        for v in [&j, &jp] {
            if v.len() != ALBERT_DIM {
                return Err(AlgebraError::DimensionMismatch { expected: ALBERT_DIM, got: v.len() });
            }
        }
        Ok(BrownElement { alpha, j, jp, beta, flavor })
    }

    /// `(1, 0, 0, 1)`
    pub fn unit(flavor: Flavor) -> Self {
        let zero = vec![E::zero(); ALBERT_DIM];
        BrownElement { alpha: E::one(), j: zero.clone(), jp: zero, beta: E::one(), flavor }
    }

    pub fn from_vector(flavor: Flavor, v: &[E]) -> Result<Self> {
        if v.len() != BROWN_DIM {
            return Err(AlgebraError::DimensionMismatch { expected: BROWN_DIM, got: v.len() });
        }
        Ok(BrownElement {
            alpha: v[0].clone(),
            j: v[1..=ALBERT_DIM].to_vec(),
            jp: v[ALBERT_DIM + 1..BROWN_DIM - 1].to_vec(),
            beta: v[BROWN_DIM - 1].clone(),
            flavor,
        })
    }

    pub fn to_vector(&self) -> Vec<E> {
        let mut v = Vec::with_capacity(BROWN_DIM);
        v.push(self.alpha.clone());
        v.extend(self.j.iter().cloned());
        v.extend(self.jp.iter().cloned());
        v.push(self.beta.clone());
        v
    }

    fn map(&self, f: impl Fn(&E) -> E) -> Self {
        BrownElement {
            alpha: f(&self.alpha),
            j: self.j.iter().map(&f).collect(),
            jp: self.jp.iter().map(&f).collect(),
            beta: f(&self.beta),
            flavor: self.flavor.clone(),
        }
    }

    pub fn scale(&self, c: &E) -> Self {
        self.map(|x| x.mul_ref(c))
    }
}

fn sum3<E: Ring>(a: &[E], b: &[E], c: &[E]) -> Vec<E> {
    a.iter().zip(b).zip(c).map(|((x, y), z)| x.add_ref(y).add_ref(z)).collect()
}

fn scaled<E: Ring>(v: &[E], c: &E) -> Vec<E> {
    v.iter().map(|x| x.mul_ref(c)).collect()
}

pub fn brown_mul<E: Ring>(alg: &AlbertAlgebra, x: &BrownElement<E>, y: &BrownElement<E>) -> Result<BrownElement<E>> {
    if x.flavor != y.flavor {
        return Err(AlgebraError::MixedAlgebras);
    }
    let alpha = x.alpha.mul_ref(&y.alpha).add_ref(&alg.trace_coords(&x.j, &y.jp));
    let j = sum3(&scaled(&y.j, &x.alpha), &scaled(&x.j, &y.beta), &alg.cross_coords(&x.jp, &y.jp));
    let jp = sum3(&scaled(&x.jp, &y.alpha), &scaled(&y.jp, &x.beta), &alg.cross_coords(&x.j, &y.j));
    let beta = x.beta.mul_ref(&y.beta).add_ref(&alg.trace_coords(&y.j, &x.jp));
    Ok(BrownElement { alpha, j, jp, beta, flavor: x.flavor.clone() })
}

/// `(α, j, j′, β) ↦ (β, j, j′, α)`
pub fn brown_conj<E: Ring>(x: &BrownElement<E>) -> BrownElement<E> {
    BrownElement { alpha: x.beta.clone(), beta: x.alpha.clone(), ..x.clone() }
}

/// `ϖ(α, j, j′, β) = (β, j′, j, α)`
pub fn brown_varpi<E: Ring>(x: &BrownElement<E>) -> BrownElement<E> {
    BrownElement { alpha: x.beta.clone(), j: x.jp.clone(), jp: x.j.clone(), beta: x.alpha.clone(), flavor: x.flavor.clone() }
}

/// `ϖ ⊗ ι`
pub fn varpi_iota(x: &BrownElement<QuadExtScalar>) -> BrownElement<QuadExtScalar> {
    brown_varpi(&x.map(QuadExtScalar::conj))
}

/// Basis of `{x : x̄ = −x}` in `𝔅(J, F×F)`.
pub fn skew_space() -> Vec<Vec<Scalar>> {
    let m = DenseMatrix::from_fn(BROWN_DIM, BROWN_DIM, |r, c| {
        let e = BrownElement::from_vector(Flavor::Split, &crate::matrix::basis_vector::<Scalar>(BROWN_DIM, c)).expect("shape");
        brown_conj(&e).to_vector()[r].add_ref(&if r == c { Scalar::one() } else { Scalar::zero() })
    });
    m.kernel()
}

/// The `s₀ = (√a, 0, 0, −√a)` of `𝔅(J, Δ)`.
pub fn s0(a: &Scalar) -> BrownElement<QuadExtScalar> {
    let zero = vec![QuadExtScalar::zero(); ALBERT_DIM];
    let r = QuadExtScalar::sqrt_of(a);
    BrownElement { alpha: r.clone(), j: zero.clone(), jp: zero, beta: r.neg_ref(), flavor: Flavor::Field { a: a.clone() } }
}

/// F-basis of `𝔅(J, Δ)`: the kernel of `ϖ⊗ι − id` on the 112-dimensional
/// F-space `𝔅(J, F×F) ⊗ F(√a)`, with coordinates `(re₀, im₀, re₁, im₁, …)`.
pub fn brown_descend(a: &Scalar) -> Result<Vec<BrownElement<QuadExtScalar>>> {
    QuadExtScalar::check_radicand(a)?;
    let flavor = Flavor::Field { a: a.clone() };
    let n = 2 * BROWN_DIM;
    let unpack = |v: &[Scalar]| -> BrownElement<QuadExtScalar> {
        let coords: Vec<QuadExtScalar> =
            (0..BROWN_DIM).map(|k| QuadExtScalar::new(v[2 * k].clone(), v[2 * k + 1].clone(), a)).collect();
        BrownElement::from_vector(flavor.clone(), &coords).expect("shape")
    };
    let pack = |x: &BrownElement<QuadExtScalar>| -> Vec<Scalar> {
        x.to_vector().into_iter().flat_map(|c| [c.re, c.im]).collect()
    };
    let mut m = DenseMatrix::<Scalar>::zeros(n, n);
    for c in 0..n {
        let e = unpack(&crate::matrix::basis_vector::<Scalar>(n, c));
        let image = pack(&varpi_iota(&e));
        for (r, v) in image.into_iter().enumerate() {
            m[(r, c)] = if r == c { &v - &Scalar::one() } else { v };
        }
    }
    Ok(m.kernel().iter().map(|v| unpack(v)).collect())
}

fn random_element(rng: &mut rand_chacha::ChaCha8Rng) -> BrownElement<Scalar> {
    BrownElement::from_vector(Flavor::Split, &random_vector(rng, BROWN_DIM)).expect("shape")
}

fn random_descended(rng: &mut rand_chacha::ChaCha8Rng, basis: &[BrownElement<QuadExtScalar>]) -> BrownElement<QuadExtScalar> {
    let coeffs = random_vector(rng, basis.len());
    let mut acc = basis[0].scale(&QuadExtScalar::zero());
    for (c, b) in coeffs.iter().zip(basis) {
        let v: Vec<QuadExtScalar> = acc.to_vector().iter().zip(b.to_vector()).map(|(x, y)| x.add_ref(&y.scale(c))).collect();
        acc = BrownElement::from_vector(acc.flavor.clone(), &v).expect("shape");
    }
    acc
}

fn record(name: &str, ok: bool, evidence: Evidence, witness: impl FnOnce() -> serde_json::Value) -> CheckRecord {
    if ok {
        CheckRecord::pass(name, evidence)
    } else {
        CheckRecord::fail(name, witness(), evidence)
    }
}

/// The unit law, the skew dimension, `ϖ` as an automorphism of the algebra
/// with involution, and the descent to `𝔅(J, F(√a))`.
pub fn check_brown(alg: &AlbertAlgebra, a: &Scalar, budget: &Budget) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let mut rng = budget.rng("brown");
    let samples: Vec<(BrownElement, BrownElement)> =
        (0..budget.samples).map(|_| (random_element(&mut rng), random_element(&mut rng))).collect();
    let unit = BrownElement::<Scalar>::unit(Flavor::Split);

    let mut bad_unit = None;
    for (i, (x, _)) in samples.iter().enumerate() {
        if brown_mul(alg, &unit, x)? != *x || brown_mul(alg, x, &unit)? != *x {
            bad_unit = Some(i);
            break;
        }
    }
    report.push(record("brown unit", bad_unit.is_none(), Evidence::samples(samples.len()), || json!({ "sample": bad_unit })));

    let skew = skew_space();
    let mut expected = vec![Scalar::zero(); BROWN_DIM];
    expected[0] = Scalar::one();
    expected[BROWN_DIM - 1] = -Scalar::one();
    let spans = skew.len() == 1 && DenseMatrix::from_columns(&[skew[0].clone(), expected]).rank() == 1;
    report.push(record("brown skew dimension", spans, Evidence::exact_exhaustive(), || json!({ "dim": skew.len() })));

    let mut bad = None;
    for (i, (x, y)) in samples.iter().enumerate() {
        let lhs = brown_varpi(&brown_mul(alg, x, y)?);
        let rhs = brown_mul(alg, &brown_varpi(x), &brown_varpi(y))?;
        let involutive = brown_conj(&brown_conj(x)) == *x;
        if lhs != rhs || brown_varpi(&brown_conj(x)) != brown_conj(&brown_varpi(x)) || !involutive {
            bad = Some(i);
            break;
        }
    }
    report.push(record("varpi automorphism", bad.is_none(), Evidence::samples(samples.len()), || json!({ "sample": bad })));

    let basis = brown_descend(a)?;
    let fixed = basis.iter().all(|b| varpi_iota(b) == *b);
    report.push(record("descent dimension", basis.len() == BROWN_DIM && fixed, Evidence::exact_exhaustive(), || {
        json!({ "dim": basis.len(), "fixed": fixed })
    }));

    let flavor = Flavor::Field { a: a.clone() };
    let unit_k = BrownElement::<QuadExtScalar>::unit(flavor.clone());
    let s = s0(a);
    let s_ok = varpi_iota(&unit_k) == unit_k && varpi_iota(&s) == s && brown_conj(&s) == s.scale(&QuadExtScalar::from_i64(-1));
    report.push(record("s0 fixed and skew", s_ok, Evidence::exact_exhaustive(), || json!("s0")));

    let mut bad = None;
    for i in 0..budget.samples {
        let x = random_descended(&mut rng, &basis);
        let y = random_descended(&mut rng, &basis);
        if varpi_iota(&brown_mul(alg, &x, &y)?) != brown_mul(alg, &x, &y)? {
            bad = Some(i);
            break;
        }
    }
    report.push(record("descent closure", bad.is_none(), Evidence::samples(budget.samples), || json!({ "sample": bad })));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descended_basis_contains_unit_and_s0() {
        let a = Scalar::integer(-1);
        let basis = brown_descend(&a).unwrap();
        assert_eq!(basis.len(), BROWN_DIM);
        for target in [BrownElement::unit(Flavor::Field { a: a.clone() }), s0(&a)] {
            // each target is an F-combination of the basis: check via ranks over F
            let cols: Vec<Vec<Scalar>> = basis
                .iter()
                .chain(std::iter::once(&target))
                .map(|b| b.to_vector().into_iter().flat_map(|c| [c.re, c.im]).collect())
                .collect();
            assert_eq!(DenseMatrix::from_columns(&cols).rank(), BROWN_DIM);
        }
    }

    #[test]
    fn square_radicand_rejected() {
        assert!(brown_descend(&Scalar::integer(9)).is_err());
    }

    #[test]
    fn mixed_flavors_rejected() {
        let alg = AlbertAlgebra::split();
        let x = BrownElement::<Scalar>::unit(Flavor::Split);
        let y = BrownElement::<Scalar>::unit(Flavor::Field { a: Scalar::integer(2) });
        assert_eq!(brown_mul(&alg, &x, &y), Err(AlgebraError::MixedAlgebras));
    }
}
