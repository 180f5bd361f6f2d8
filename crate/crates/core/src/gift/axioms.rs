//! The axioms G1–G5, the twist `σ₂`, and derivations.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::Gift;
use crate::matrix::{sparse_from_dense, DenseMatrix, SparseEchelon};
use crate::modular::{ModEchelon, ModP, RankMode, RankValue};
use crate::report::{CheckRecord, CheckReport, Evidence};
use crate::sampling::Budget;
use crate::scalar::{Field, Ring, Scalar};

pub const G1: &str = "G1";
pub const G2: &str = "G2";
pub const G3: &str = "G3";
pub const G4: &str = "G4";
pub const G5: &str = "G5";
pub const GD: &str = "GD";
pub const SIGMA2: &str = "sigma2";

/// Skew samples tried before G2 is reported inconclusive.
pub const G2_BUDGET: usize = 200;

/// `σ₂(φ(x₁⊗x₂) ⊗ φ(x₃⊗x₄)) = −φ(x₁⊗x₃) ⊗ φ(x₂⊗x₄)`, as a list of pairs.
pub fn sigma2_split<E: Field + 'static>(g: &Gift<E>, x: [&[E]; 4]) -> Vec<(DenseMatrix<E>, DenseMatrix<E>)> {
    vec![(g.phi(x[0], x[2]).neg(), g.phi(x[1], x[3]))]
}

/// `Sand(Σ aᵢ ⊗ bᵢ)(x) = Σ aᵢ x bᵢ`
pub fn sand<E: Ring>(u: &[(DenseMatrix<E>, DenseMatrix<E>)], x: &DenseMatrix<E>) -> DenseMatrix<E> {
    let n = x.rows();
    u.iter().fold(DenseMatrix::zeros(n, n), |acc, (a, b)| acc.add(&a.mul(x).mul(b)))
}

/// First entry where two matrices differ.
fn first_difference<E: Ring + Serialize>(lhs: &DenseMatrix<E>, rhs: &DenseMatrix<E>) -> Option<Value> {
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            if lhs[(i, j)] != rhs[(i, j)] {
                return Some(json!({ "entry": [i, j], "lhs": lhs[(i, j)], "rhs": rhs[(i, j)] }));
            }
        }
    }
    None
}

fn random_vectors<E: Field + 'static>(g: &Gift<E>, rng: &mut rand_chacha::ChaCha8Rng, count: usize) -> Vec<Vec<E>> {
    (0..count).map(|_| g.random_vector(rng)).collect()
}

/// Runs `residual` on every input in parallel; reports the first failure in
/// sample order.
fn sampled<T: Sync>(name: &str, inputs: &[T], residual: impl Fn(&T) -> Option<Value> + Sync) -> CheckRecord {
    let evidence = Evidence::samples(inputs.len());
    match inputs.par_iter().enumerate().find_map_first(|(i, x)| residual(x).map(|w| (i, w))) {
        None => CheckRecord::pass(name, evidence),
        Some((i, mut w)) => {
            w["sample"] = json!(i);
            CheckRecord::fail(name, w, evidence)
        }
    }
}

/// `Sand(σ₂(u))(X) = Sand(u)(σ(X))` on random decomposables and random `X`.
pub fn check_sigma2<E: Field + Serialize + 'static>(g: &Gift<E>, budget: &Budget) -> CheckRecord {
    let mut rng = budget.rng("sigma2");
    let inputs: Vec<(Vec<Vec<E>>, DenseMatrix<E>)> =
        (0..budget.samples).map(|_| (random_vectors(g, &mut rng, 4), g.random_element(&mut rng))).collect();
    sampled(SIGMA2, &inputs, |(x, m)| {
        let u = vec![(g.phi(&x[0], &x[1]), g.phi(&x[2], &x[3]))];
        let twisted = sigma2_split(g, [&x[0], &x[1], &x[2], &x[3]]);
        first_difference(&sand(&twisted, m), &sand(&u, &g.sigma(m)))
    })
}

/// Coefficients of `(π, σ, Id)` in the map `h` of G4.
///
/// Expanding `ĥ(u) = −ĥ(σ₂ u)` on `u = φ(x₁⊗x₂) ⊗ φ(x₃⊗x₄)` with
/// `σ(φ(x⊗y)) = −φ(y⊗x)` leaves `t(x₁,x₂,x₃) = t(x₁,x₃,x₂)` only when the
/// `σ` coefficient equals the `π` coefficient and the identity coefficient is
/// its negative.
pub const G4_SIGNS: [i64; 3] = [1, 1, -1];
/// The signs as printed in the usual statement of G4.
pub const G4_PRINTED_SIGNS: [i64; 3] = [1, -1, -1];
/// With `Trd(P·φ(y⊗y)) = b(y, P y)`, G5 on `a = φ(x⊗x)`, `a′ = φ(y⊗y)` is the
/// trace identity `tr(p(x⊗x) p(y⊗y)) = 24 (q(x,x,y,y) − 2b(y,x)²)`.
pub const G5_FACTOR: i64 = 24;
pub const G5_PRINTED_FACTOR: i64 = -24;

/// `ĥ = −ĥ σ₂` for `h = c_π π + c_σ σ + c_I Id` on random decomposables.
pub fn check_g4<E: Field + Serialize + 'static>(g: &Gift<E>, budget: &Budget, name: &str, signs: [i64; 3]) -> CheckRecord {
    let n = g.degree();
    let mut rng = budget.rng("g4");
    let quads: Vec<Vec<Vec<E>>> = (0..budget.samples).map(|_| random_vectors(g, &mut rng, 4)).collect();
    let [cp, cs, ci] = signs.map(E::from_i64);
    let h = |m: &DenseMatrix<E>| g.pi(m).scale(&cp).add(&g.sigma(m).scale(&cs)).add(&m.scale(&ci));
    sampled(name, &quads, |x| {
        let lhs = h(&g.phi(&x[0], &x[1])).mul(&g.phi(&x[2], &x[3]));
        let rhs = sigma2_split(g, [&x[0], &x[1], &x[2], &x[3]])
            .iter()
            .fold(DenseMatrix::zeros(n, n), |acc, (a, b)| acc.sub(&h(a).mul(b)));
        first_difference(&lhs, &rhs).map(|w| {
            let vecs: Vec<Value> = x.iter().map(|v| serde_json::to_value(v).expect("serializable")).collect();
            json!({ "x": vecs, "difference": w })
        })
    })
}

/// `Trd(π(a)π(a′)) = factor · Trd(π(a)a′)` on random pairs.
pub fn check_g5<E: Field + Serialize + 'static>(g: &Gift<E>, budget: &Budget, name: &str, factor: i64) -> CheckRecord {
    let mut rng = budget.rng("g5");
    let pairs: Vec<(DenseMatrix<E>, DenseMatrix<E>)> =
        (0..budget.samples).map(|_| (g.random_element(&mut rng), g.random_element(&mut rng))).collect();
    sampled(name, &pairs, |(a, b)| {
        let pa = g.pi(a);
        let lhs = g.trd(&pa.mul(&g.pi(b)));
        let rhs = g.trd(&pa.mul(b)).scale(&Scalar::from(factor));
        (lhs != rhs).then(|| json!({ "trd_pi_pi": lhs, "scaled_trd_pi_a": rhs }))
    })
}

/// G4 and G5 with the printed signs, reported under their own names.
pub fn printed_sign_audit<E: Field + Serialize + 'static>(g: &Gift<E>, budget: &Budget) -> CheckReport {
    let mut report = CheckReport::default();
    report.push(check_g4(g, budget, "G4 (printed signs)", G4_PRINTED_SIGNS));
    report.push(check_g5(g, budget, "G5 (printed signs)", G5_PRINTED_FACTOR));
    report
}

/// G1–G5 on random elements; G4 on random decomposables through `σ₂`.
pub fn check_gift_axioms<E: Field + Serialize + 'static>(g: &Gift<E>, budget: &Budget) -> CheckReport {
    let n = g.degree();
    let mut report = CheckReport::default();

    let mut rng = budget.rng("g1");
    let elems: Vec<DenseMatrix<E>> = (0..budget.samples).map(|_| g.random_element(&mut rng)).collect();
    report.push(sampled(G1, &elems, |a| {
        let p = g.pi(a);
        let minus = p.neg();
        first_difference(&g.sigma(&p), &minus)
            .map(|w| json!({ "side": "σπ(a)", "difference": w }))
            .or_else(|| first_difference(&g.pi(&g.sigma(a)), &minus).map(|w| json!({ "side": "πσ(a)", "difference": w })))
    }));

    let mut rng = budget.rng("g2");
    let mut g2 = CheckRecord::inconclusive(G2, Evidence::samples(G2_BUDGET), "aπ(a) = 2a² on every sampled skew element");
    for i in 0..G2_BUDGET {
        let a = g.random_skew(&mut rng);
        let lhs = a.mul(&g.pi(&a));
        let rhs = a.mul(&a).scale(&E::from_i64(2));
        if let Some(w) = first_difference(&lhs, &rhs) {
            g2 = CheckRecord::pass(G2, Evidence::samples(i + 1)).with_witness(json!({ "sample": i, "difference": w }));
            break;
        }
    }
    report.push(g2);

    let mut rng = budget.rng("g3");
    let skews: Vec<DenseMatrix<E>> = (0..budget.samples).map(|_| g.random_skew(&mut rng)).collect();
    report.push(sampled(G3, &skews, |a| {
        let r = g.pi(&g.pi(a).mul(a));
        first_difference(&r, &DenseMatrix::zeros(n, n))
    }));

    report.push(check_g4(g, budget, G4, G4_SIGNS));
    report.push(check_g5(g, budget, G5, G5_FACTOR));
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivationReport {
    pub gd: CheckRecord,
    pub pi_rank: RankValue,
}

/// `π(fa) − π(af) = fπ(a) − π(a)f`
pub fn is_derivation<E: Field + 'static>(g: &Gift<E>, f: &DenseMatrix<E>, a: &DenseMatrix<E>) -> bool {
    let lhs = g.pi(&f.mul(a)).sub(&g.pi(&a.mul(f)));
    let pa = g.pi(a);
    lhs == f.mul(&pa).sub(&pa.mul(f))
}

/// GD for `f = π(a₀)` against random `a`, and the rank of `π` as a linear
/// map on `A` modulo each prime of the budget.
pub fn derivation_suite(g: &Gift<Scalar>, budget: &Budget) -> DerivationReport {
    let mut rng = budget.rng("gd");
    let pairs: Vec<(DenseMatrix<Scalar>, DenseMatrix<Scalar>)> =
        (0..budget.samples).map(|_| (g.random_element(&mut rng), g.random_element(&mut rng))).collect();
    let gd = sampled(GD, &pairs, |(a0, a)| (!is_derivation(g, &g.pi(a0), a)).then(|| json!("GD fails for f = π(a₀)")));
    DerivationReport { gd, pi_rank: pi_rank(g, &budget.prime_list()) }
}

/// Images `π(E_kl)` of the matrix units, flattened row-major.
fn pi_columns(g: &Gift<Scalar>) -> Vec<Vec<Scalar>> {
    let n = g.degree();
    (0..n * n).into_par_iter().map(|i| g.pi(&g.unit_matrix(i / n, i % n)).entries().to_vec()).collect()
}

/// Rank of `π` as an `n² × n²` matrix modulo each prime.
pub fn pi_rank(g: &Gift<Scalar>, primes: &[u64]) -> RankValue {
    let cols = pi_columns(g);
    let mut per_prime = Vec::new();
    let mut skipped = Vec::new();
    'primes: for &p in primes {
        let f = ModP::new(p);
        let mut ech = ModEchelon::new(f, cols[0].len());
        for c in &cols {
            let mut v = Vec::with_capacity(c.len());
            for x in c {
                match f.reduce(x) {
                    Some(r) => v.push(r),
                    None => {
                        skipped.push(p);
                        continue 'primes;
                    }
                }
            }
            ech.insert(v);
        }
        per_prime.push((p, ech.rank()));
    }
    let rank = per_prime.iter().map(|(_, r)| *r).max().unwrap_or(0);
    RankValue { rank, mode: RankMode::Modular(primes.to_vec()), per_prime, skipped_primes: skipped }
}

/// `(dim Sym(A, σ), dim Skew(A, σ))` for a split gift, exactly: the ranks of
/// `σ + id` and `σ − id` on the matrix units.
pub fn sym_skew_dims(g: &Gift<Scalar>) -> (usize, usize) {
    let n = g.degree();
    let mut sym = SparseEchelon::<Scalar>::new();
    let mut skew = SparseEchelon::<Scalar>::new();
    for k in 0..n {
        for l in 0..n {
            let e = g.unit_matrix(k, l);
            let s = g.sigma(&e);
            sym.insert(sparse_from_dense(s.add(&e).entries()));
            skew.insert(sparse_from_dense(s.sub(&e).entries()));
        }
    }
    (sym.rank(), skew.rank())
}
