//! The trace criterion for nondegeneracy and the `𝔐ₛ` diagnostics.

use serde::Serialize;
use serde_json::{json, Value};

use super::checks::{mod_witness_json, vec_json};
use super::modp::ModSystem;
use super::{MsCoords, TripleSystem};
use crate::error::{AlgebraError, Result};
use crate::matrix::{basis_vector, vec_add, zero_vector};
use crate::report::{CheckRecord, Evidence};
use crate::sampling::{random_vector, Budget};
use crate::scalar::{Ring, Scalar};

pub const TRACE_IDENTITY: &str = "trace_identity";

/// `tr(p(x⊗x) p(y⊗y)) − 24 (q(x,x,y,y) − 2 b(y,x)²)`
pub fn identity_residual(ts: &TripleSystem, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let px = ts.p_map(x, x);
    let py = ts.p_map(y, y);
    let tr = px.trace_of_product(&py);
    let q = ts.b(x, &ts.t(x, y, y));
    let b = ts.b(y, x);
    tr - (q - b.clone() * b * Scalar::from(2)) * Scalar::from(24)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Nondegenerate,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// The violating pair and residual for a degenerate verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub evidence: Evidence,
    /// Where the witness came from: `structured`, `random` or `modular`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl Classification {
    pub fn record(&self) -> CheckRecord {
        let r = match self.verdict {
            Verdict::Nondegenerate => CheckRecord::pass(TRACE_IDENTITY, self.evidence.clone()),
            Verdict::Degenerate => {
                CheckRecord::fail(TRACE_IDENTITY, self.witness.clone().unwrap_or(Value::Null), self.evidence.clone())
            }
        };
        r.with_detail(json!({ "verdict": self.verdict }))
    }
}

/// The pair `x = (0, e₀, e₁, 0)`, `y = (0, e₂, e₃, 0)` in `𝔐ₛ`: both have
/// `s(j, j′) = 1` and all cross pairings vanish.
pub fn ms_structured_witness(w_dim: usize) -> (Vec<Scalar>, Vec<Scalar>) {
    let n = 2 * w_dim + 2;
    let x = vec_add(&basis_vector::<Scalar>(n, 1), &basis_vector(n, w_dim + 2));
    let y = vec_add(&basis_vector::<Scalar>(n, 3), &basis_vector(n, w_dim + 4));
    (x, y)
}

fn degenerate(x: &[Scalar], y: &[Scalar], r: Scalar, evidence: Evidence, source: &str) -> Classification {
    Classification {
        verdict: Verdict::Degenerate,
        witness: Some(json!({ "x": vec_json(x), "y": vec_json(y), "residual": r })),
        evidence,
        source: Some(source.into()),
    }
}

/// Searches for a pair violating the trace identity: the structured pair for
/// `𝔐ₛ`, then random pairs, then (if the budget asks) every basis tuple of the
/// polarized identity modulo each prime.
pub fn classify(ts: &TripleSystem, budget: &Budget) -> Classification {
    if let Some((w_dim, _)) = ts.provenance().ms() {
        let (x, y) = ms_structured_witness(w_dim);
        let r = identity_residual(ts, &x, &y);
        if !r.is_zero() {
            return degenerate(&x, &y, r, Evidence::samples(1), "structured");
        }
    }
    let n = ts.dim();
    let mut rng = budget.rng("classify");
    for i in 0..budget.samples {
        let x = random_vector(&mut rng, n);
        let y = random_vector(&mut rng, n);
        let r = identity_residual(ts, &x, &y);
        if !r.is_zero() {
            return degenerate(&x, &y, r, Evidence::samples(i + 1), "random");
        }
    }
    let mut evidence = Evidence::samples(budget.samples);
    if budget.exhaustive {
        let mut used = Vec::new();
        for p in budget.prime_list() {
            let Some(m) = ModSystem::new(ts, p) else { continue };
            used.push(p);
            let g = m.trace_gram();
            if let Some(w) = m.trace_identity(&g) {
                return Classification {
                    verdict: Verdict::Degenerate,
                    witness: Some(mod_witness_json(&w)),
                    evidence: evidence.merge(&Evidence::modular(used)),
                    source: Some("modular".into()),
                };
            }
        }
        evidence = evidence.merge(&Evidence::modular(used));
    }
    Classification { verdict: Verdict::Nondegenerate, witness: None, evidence, source: None }
}

/// Quantities from the expansion of `tr(p(x⊗x) p(y⊗y))` on `𝔐ₛ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MsDiagnostics {
    pub det_x: Scalar,
    pub det_y: Scalar,
    /// `3αβ − s(j, j′)` at `x`.
    pub wdet_x: Scalar,
    /// `det(x + y) − det(x) − det(y)`
    pub det_lin: Scalar,
    /// `(1/8) tr(p(x⊗x) p(y⊗y))`
    pub trace: Scalar,
    /// `3 q(x,x,y,y) − b(y,x)² + (dim W − 7) det(x) det(y) − 5 det(x,y)²`
    pub expansion: Scalar,
    pub trform_check: bool,
    /// `5 b(x,y)² + (dim W − 7) det(x) det(y) − 5 det(x,y)²`
    pub remainder: Scalar,
}

/// `s(j, j′)` read from the `(j, j′)` block of the Gram matrix.
fn s_pairing(ts: &TripleSystem, w_dim: usize, j: &[Scalar], jp: &[Scalar]) -> Scalar {
    let n = ts.dim();
    let mut x = zero_vector::<Scalar>(n);
    let mut y = zero_vector::<Scalar>(n);
    x[1..=w_dim].clone_from_slice(j);
    y[w_dim + 1..=2 * w_dim].clone_from_slice(jp);
    ts.b(&x, &y)
}

pub fn ms_det(ts: &TripleSystem, x: &[Scalar]) -> Result<Scalar> {
    let w = ms_w_dim(ts)?;
    let c = MsCoords::from_vector(w, x)?;
    Ok(&c.alpha * &c.beta - s_pairing(ts, w, &c.j, &c.jp))
}

fn ms_w_dim(ts: &TripleSystem) -> Result<usize> {
    match ts.provenance() {
        super::Provenance::Ms { w_dim, .. } => Ok(*w_dim),
        _ => Err(AlgebraError::WrongProvenance { expected: "ms" }),
    }
}

/// Evaluates both sides of the trace expansion at `(x, y)`.
///
/// The coefficient of `det(x) det(y)` is `dim W − 7`, which is 20 for a
/// 27-dimensional `W`.
pub fn ms_diagnostics(ts: &TripleSystem, x: &[Scalar], y: &[Scalar]) -> Result<MsDiagnostics> {
    let w = ms_w_dim(ts)?;
    let cx = MsCoords::from_vector(w, x)?;
    MsCoords::from_vector(w, y)?;
    let det_x = ms_det(ts, x)?;
    let det_y = ms_det(ts, y)?;
    let det_lin = ms_det(ts, &vec_add(x, y))? - det_x.clone() - det_y.clone();
    let wdet_x = &(&cx.alpha * &cx.beta) * &Scalar::from(3) - s_pairing(ts, w, &cx.j, &cx.jp);
    let trace = ts.p_map(x, x).trace_of_product(&ts.p_map(y, y)) * Scalar::new(1, 8);
    let q = ts.b(x, &ts.t(x, y, y));
    let b = ts.b(y, x);
    let coeff = Scalar::from(w as i64 - 7);
    let dd = &(&det_x * &det_y) * &coeff;
    let lin2 = &(&det_lin * &det_lin) * &Scalar::from(5);
    let expansion = &q * &Scalar::from(3) - &b * &b + dd.clone() - lin2.clone();
    let remainder = &(&b * &b) * &Scalar::from(5) + dd - lin2;
    Ok(MsDiagnostics {
        trform_check: trace == expansion,
        det_x,
        det_y,
        wdet_x,
        det_lin,
        trace,
        expansion,
        remainder,
    })
}
