//! Axiom checkers for triple systems.

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::modp::{ModSystem, ModWitness};
use super::TripleSystem;
use crate::matrix::{basis_vector, vec_add, vec_scale, vec_sub, zero_vector};
use crate::report::{CheckRecord, CheckReport, Evidence};
use crate::sampling::{random_vector, Budget};
use crate::scalar::{Ring, Scalar};

pub const FTS1: &str = "FTS1";
pub const FTS2: &str = "FTS2";
pub const FTS3: &str = "FTS3";
pub const FTS3_LINEAR: &str = "FTS3'";
pub const TRACE_SQUARE: &str = "trace_square";

pub(crate) fn vec_json(v: &[Scalar]) -> Value {
    serde_json::to_value(v).expect("scalars serialize")
}

pub(crate) fn mod_witness_json(w: &ModWitness) -> Value {
    json!({ "prime": w.prime, "basis": w.indices, "residual": w.residual.to_string() })
}

/// `q` symmetric on every basis 4-tuple.
///
/// `q(e_i, e_a, e_b, e_c)` is read off `B · t(e_a, e_b, e_c)` for every stored
/// triple; each sorted 4-tuple must then give the same value for every choice
/// of which index sits in the first slot.
pub fn check_fts1(ts: &TripleSystem) -> CheckRecord {
    let mut by_quad: HashMap<[u16; 4], Vec<(u16, Scalar)>> = HashMap::new();
    for (k, vals) in ts.tensor().entries() {
        let mut dense = zero_vector::<Scalar>(ts.dim());
        for (r, v) in vals {
            dense[*r as usize] = v.clone();
        }
        for (i, qi) in ts.b_against(&dense).into_iter().enumerate() {
            if qi.is_zero() {
                continue;
            }
            let mut quad = [i as u16, k[0], k[1], k[2]];
            quad.sort_unstable();
            by_quad.entry(quad).or_default().push((i as u16, qi));
        }
    }
    let mut quads: Vec<_> = by_quad.into_iter().collect();
    quads.sort_by(|a, b| a.0.cmp(&b.0));
    for (quad, firsts) in quads {
        let mut distinct: Vec<u16> = quad.to_vec();
        distinct.dedup();
        let value = |i: u16| firsts.iter().find(|(j, _)| *j == i).map(|(_, v)| v.clone()).unwrap_or_else(Scalar::zero);
        let v0 = value(distinct[0]);
        for &i in &distinct[1..] {
            let vi = value(i);
            if vi != v0 {
                let w = json!({
                    "basis": quad,
                    "first_slot": [distinct[0], i],
                    "values": [v0, vi],
                });
                return CheckRecord::fail(FTS1, w, Evidence::exact_exhaustive());
            }
        }
    }
    CheckRecord::pass(FTS1, Evidence::exact_exhaustive())
}

/// Finds `x` with `q(x, x, x, x) ≠ 0`.
pub fn check_fts2(ts: &TripleSystem, budget: &Budget) -> CheckRecord {
    let n = ts.dim();
    let mut candidates = vec![vec_add(&basis_vector::<Scalar>(n, 0), &basis_vector(n, n - 1))];
    let mut rng = budget.rng("fts2");
    for _ in 0..budget.samples.max(1) {
        candidates.push(random_vector(&mut rng, n));
    }
    for (i, x) in candidates.iter().enumerate() {
        let q = ts.quartic(x);
        if !q.is_zero() {
            let w = json!({ "x": vec_json(x), "q": q });
            return CheckRecord::pass(FTS2, Evidence::samples(i + 1)).with_witness(w);
        }
    }
    CheckRecord::fail(FTS2, json!("q(x,x,x,x) vanished on every sampled point"), Evidence::samples(candidates.len()))
}

/// `t(t(x,x,x),x,y) − b(y,x) t(x,x,x) − q(y,x,x,x) x`
pub fn fts3_residual(ts: &TripleSystem, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let c = ts.cube(x);
    let lhs = ts.t(&c, x, y);
    let rhs = vec_add(&vec_scale(&c, &ts.b(y, x)), &vec_scale(x, &ts.b(y, &c)));
    vec_sub(&lhs, &rhs)
}

/// The linearization at `x + λz`, coefficient of `λ²`.
pub fn fts3_linear_residual(ts: &TripleSystem, x: &[Scalar], z: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let txxz = ts.t(x, x, z);
    let txzz = ts.t(x, z, z);
    let lhs = vec_add(&ts.t(&txxz, z, y), &ts.t(&txzz, x, y));
    let rhs = [
        vec_scale(&txzz, &ts.b(y, x)),
        vec_scale(&txxz, &ts.b(y, z)),
        vec_scale(x, &ts.b(y, &txzz)),
        vec_scale(z, &ts.b(y, &txxz)),
    ]
    .iter()
    .fold(zero_vector(ts.dim()), |acc, v| vec_add(&acc, v));
    vec_sub(&lhs, &rhs)
}

/// `tr(p(x⊗x)²) − 24 q(x,x,x,x)`
pub fn trace_square_residual(ts: &TripleSystem, x: &[Scalar]) -> Scalar {
    let p = ts.p_map(x, x);
    p.trace_of_product(&p) - ts.quartic(x) * Scalar::from(24)
}

fn points(budget: &Budget, label: &str, n: usize, per: usize) -> Vec<Vec<Vec<Scalar>>> {
    let mut rng = budget.rng(label);
    (0..budget.samples).map(|_| (0..per).map(|_| random_vector(&mut rng, n)).collect()).collect()
}

/// Runs `residual` on sampled points; the first nonzero residual fails.
fn sampled(
    name: &str,
    budget: &Budget,
    pts: Vec<Vec<Vec<Scalar>>>,
    names: &[&str],
    residual: impl Fn(&[Vec<Scalar>]) -> Option<Value> + Sync,
) -> CheckRecord {
    let failure = pts.par_iter().enumerate().find_first(|(_, p)| residual(p).is_some()).map(|(i, p)| (i, p.clone()));
    match failure {
        None => CheckRecord::pass(name, Evidence::samples(budget.samples)),
        Some((_, p)) => {
            let mut w = serde_json::Map::new();
            for (n, v) in names.iter().zip(&p) {
                w.insert(n.to_string(), vec_json(v));
            }
            w.insert("residual".into(), residual(&p).expect("failing point"));
            CheckRecord::fail(name, Value::Object(w), Evidence::samples(budget.samples))
        }
    }
}

fn nonzero_vec(v: Vec<Scalar>) -> Option<Value> {
    if v.iter().all(|x| x.is_zero()) {
        None
    } else {
        Some(vec_json(&v))
    }
}

/// Random-point and modular layers for the cubic identity, its
/// linearization, and the trace-square identity.
pub fn check_axioms(ts: &TripleSystem, budget: &Budget) -> CheckReport {
    let n = ts.dim();
    let mut report = CheckReport::default();
    report.push(check_fts1(ts));
    report.push(check_fts2(ts, budget));

    let mut fts3 = sampled(FTS3, budget, points(budget, "fts3", n, 2), &["x", "y"], |p| {
        nonzero_vec(fts3_residual(ts, &p[0], &p[1]))
    });
    let mut lin = sampled(FTS3_LINEAR, budget, points(budget, "fts3-linear", n, 3), &["x", "z", "y"], |p| {
        nonzero_vec(fts3_linear_residual(ts, &p[0], &p[1], &p[2]))
    });
    let mut square = sampled(TRACE_SQUARE, budget, points(budget, "trace-square", n, 1), &["x"], |p| {
        let r = trace_square_residual(ts, &p[0]);
        (!r.is_zero()).then(|| json!(r))
    });

    if budget.exhaustive {
        let mut used = Vec::new();
        let mut skipped = Vec::new();
        for p in budget.prime_list() {
            let Some(m) = ModSystem::new(ts, p) else {
                skipped.push(p);
                continue;
            };
            used.push(p);
            if fts3.passed() {
                if let Some(w) = m.cubic_identity() {
                    fts3 = CheckRecord::fail(FTS3, mod_witness_json(&w), fts3.evidence.clone());
                }
            }
            if square.passed() {
                let g = m.trace_gram();
                if let Some(w) = m.trace_square(&g) {
                    square = CheckRecord::fail(TRACE_SQUARE, mod_witness_json(&w), square.evidence.clone());
                }
            }
        }
        let modular = Evidence::modular(used);
        for r in [&mut fts3, &mut square] {
            r.evidence = r.evidence.clone().merge(&modular);
        }
        if fts3.passed() {
            // the linearized identity is a partial polarization of the cubic one
            lin.evidence = lin.evidence.clone().merge(&modular);
            lin = lin.with_detail(json!("exhaustive layer inherited from the fully polarized FTS3 check"));
        }
        if !skipped.is_empty() {
            fts3 = fts3.with_detail(json!({ "skipped_primes": skipped }));
        }
    }
    report.push(fts3);
    report.push(lin);
    report.push(square);
    report
}
