use std::sync::OnceLock;

use freudenthal::albert::AlbertAlgebra;
use freudenthal::fts::build::{calibrate_albert, ALBERT_QUARTIC_COEFFICIENTS};
use freudenthal::fts::checks::{fts3_residual, FTS1, FTS2, FTS3, FTS3_LINEAR, TRACE_SQUARE};
use freudenthal::fts::classify::{identity_residual, ms_structured_witness};
use freudenthal::fts::gadgets::{check_f_composition, f_map, is_isometry, varpi, varpi_matrix};
use freudenthal::fts::{
    build_albert, build_ms_formal, build_ms_standard, check_axioms, classify, ms_diagnostics, MsCoords, TripleSystem,
    TripleTensor, Verdict,
};
use freudenthal::forms::SkewForm;
use freudenthal::matrix::{basis_vector, DenseMatrix};
use freudenthal::report::Status;
use freudenthal::sampling::{random_nonzero_scalar, random_vector, Budget};
use freudenthal::Scalar;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn s(n: i64) -> Scalar {
    Scalar::from(n)
}

fn ms26() -> &'static TripleSystem {
    static TS: OnceLock<TripleSystem> = OnceLock::new();
    TS.get_or_init(|| build_ms_standard(26).unwrap())
}

fn albert_split() -> &'static TripleSystem {
    static TS: OnceLock<TripleSystem> = OnceLock::new();
    TS.get_or_init(|| build_albert(&AlbertAlgebra::split()).unwrap())
}

fn unit_ends(n: usize) -> Vec<Scalar> {
    let mut x = vec![s(0); n];
    x[0] = s(1);
    x[n - 1] = s(1);
    x
}

/// `12 (αβ − s(j, j′))²` straight from the coordinates.
fn ms_quartic_oracle(w_dim: usize, x: &[Scalar]) -> Scalar {
    let c = MsCoords::from_vector(w_dim, x).unwrap();
    let form = SkewForm::<Scalar>::standard(w_dim).unwrap();
    let det = &c.alpha * &c.beta - form.gram().bilinear(&c.j, &c.jp);
    &(&det * &det) * &s(12)
}

/// `c₁(αβ − T(j,j′))² + c₂ T(j♯, j′♯) + c₃ (αN(j) + βN(j′))` with the
/// frozen coefficients.
fn albert_quartic_oracle(alg: &AlbertAlgebra, x: &[Scalar]) -> Scalar {
    let (alpha, j, jp, beta) = (&x[0], &x[1..28], &x[28..55], &x[55]);
    let [c1, c2, c3] = ALBERT_QUARTIC_COEFFICIENTS.map(s);
    let d = alpha * beta - alg.trace_coords(j, jp);
    let sharp = alg.trace_coords(&alg.sharp_coords(j), &alg.sharp_coords(jp));
    let norms = alpha * &alg.norm_coords(j) + beta * &alg.norm_coords(jp);
    &(&(&d * &d) * &c1) + &(&(&sharp * &c2) + &(&norms * &c3))
}

#[test]
fn ms_examples() {
    let ts = ms26();
    let x = unit_ends(54);
    assert_eq!(ts.quartic(&x), s(12));
    let mut cube = vec![s(0); 54];
    cube[0] = s(-6);
    cube[53] = s(6);
    assert_eq!(ts.cube(&x), cube);
    assert_eq!(ts.b(&basis_vector::<Scalar>(54, 0), &basis_vector(54, 53)), s(1));
    assert_eq!(ts.scale(&s(2)).unwrap().quartic(&x), s(48));
}

#[test]
fn ms_trace_square_at_unit_ends_is_280() {
    // 24·q = 288, and the trace-square residual is 8(dim W − 27) det² = −8.
    let ts = ms26();
    let x = unit_ends(54);
    let p = ts.p_map(&x, &x);
    assert_eq!(p.trace_of_product(&p), s(280));
    let formal = build_ms_formal();
    let x = unit_ends(56);
    let p = formal.p_map(&x, &x);
    assert_eq!(p.trace_of_product(&p), s(288));
}

#[test]
fn ms_quartic_matches_determinant_oracle() {
    let ts = ms26();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let x = random_vector(&mut rng, 54);
        assert_eq!(ts.quartic(&x), ms_quartic_oracle(26, &x));
    }
}

#[test]
fn albert_quartic_matches_oracle_and_unit_ends() {
    let alg = AlbertAlgebra::split();
    let ts = albert_split();
    assert_eq!(ts.quartic(&unit_ends(56)), s(12));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..30 {
        let x = random_vector(&mut rng, 56);
        assert_eq!(ts.quartic(&x), albert_quartic_oracle(&alg, &x));
    }
}

#[test]
fn calibration_is_frozen() {
    let (cal, _) = calibrate_albert(&AlbertAlgebra::split(), 0x5eed).unwrap();
    assert_eq!(cal.coefficients, ALBERT_QUARTIC_COEFFICIENTS.map(s).to_vec());
    assert_eq!(cal.terms, 3);
    assert_eq!(cal.cubic_kernel_dim, 3);
    assert!(cal.cubic_solutions.contains(&vec![s(12), s(-48), s(48)]));
    // the two nondegenerate points differ by the sign of j and j′
    assert_eq!(cal.nondegenerate_solutions, vec![vec![s(12), s(-48), s(-48)], vec![s(12), s(-48), s(48)]]);
    let (div, _) = calibrate_albert(&AlbertAlgebra::division(), 0x5eed).unwrap();
    assert_eq!(div.coefficients, cal.coefficients);
}

#[test]
fn listed_candidate_fails_cubic_identity() {
    let alg = AlbertAlgebra::split();
    let (_, parts) = calibrate_albert(&alg, 0x5eed).unwrap();
    let coeffs = [s(12), s(48), s(-48)];
    let combo: Vec<(Scalar, &TripleTensor)> = coeffs.iter().cloned().zip(parts.iter()).collect();
    let ts = albert_split().with_tensor(TripleTensor::combination(&combo)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = random_vector(&mut rng, 56);
    let y = random_vector(&mut rng, 56);
    assert!(fts3_residual(&ts, &x, &y).iter().any(|r| *r != s(0)));
    let report = check_axioms(&ts, &Budget::new(0, 5, 1, false));
    assert_eq!(report.status(FTS3), Some(Status::Fail));
}

#[test]
fn axioms_hold_on_ms_except_trace_square() {
    let report = check_axioms(ms26(), &Budget::new(0, 20, 1, false));
    for name in [FTS1, FTS2, FTS3, FTS3_LINEAR] {
        assert_eq!(report.status(name), Some(Status::Pass), "{name}");
    }
    assert_eq!(report.status(TRACE_SQUARE), Some(Status::Fail));
}

#[test]
fn perturbed_system_is_caught() {
    let ts = ms26().perturbed([0, 0, 53], 53, &s(1)).unwrap();
    let report = check_axioms(&ts, &Budget::new(0, 10, 1, false));
    assert!(report.status(FTS1) == Some(Status::Fail) || report.status(FTS3) == Some(Status::Fail));
}

#[test]
fn classification_verdicts() {
    let budget = Budget::new(0, 20, 1, false);
    let c = classify(ms26(), &budget);
    assert_eq!(c.verdict, Verdict::Degenerate);
    assert_eq!(c.source.as_deref(), Some("structured"));
    assert_eq!(classify(albert_split(), &budget).verdict, Verdict::Nondegenerate);
}

#[test]
fn structured_residuals_by_dimension() {
    for (w, residual, remainder) in [(26, 152, 19), (28, 168, 21)] {
        let ts = build_ms_standard(w).unwrap();
        let (x, y) = ms_structured_witness(w);
        assert_eq!(identity_residual(&ts, &x, &y), s(residual));
        let d = ms_diagnostics(&ts, &x, &y).unwrap();
        assert!(d.trform_check);
        assert_eq!(d.remainder, s(remainder));
    }
    let formal = build_ms_formal();
    let (x, y) = ms_structured_witness(27);
    assert_eq!(identity_residual(&formal, &x, &y), s(160));
    assert_eq!(ms_diagnostics(&formal, &x, &y).unwrap().remainder, s(20));
}

#[test]
fn diagonal_remainder_is_dimension_defect() {
    // det(x, x) = 2 det(x), so the remainder at (x, x) is (dim W − 27) det(x)²
    let ts = ms26();
    let formal = build_ms_formal();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let x = random_vector(&mut rng, 54);
        let d = ms_diagnostics(ts, &x, &x).unwrap();
        assert!(d.trform_check);
        assert_eq!(d.remainder, -(&d.det_x * &d.det_x));
        let x = random_vector(&mut rng, 56);
        let d = ms_diagnostics(&formal, &x, &x).unwrap();
        assert!(d.trform_check);
        assert_eq!(d.remainder, s(0));
    }
}

#[test]
fn diagnostics_reject_albert_systems() {
    let x = unit_ends(56);
    assert!(ms_diagnostics(albert_split(), &x, &x).is_err());
}

#[test]
fn varpi_is_an_isometry() {
    let ts = build_ms_standard(4).unwrap();
    assert!(is_isometry(&ts, &varpi_matrix(4)));
    assert!(is_isometry(ms26(), &varpi_matrix(26)));
    let x: Vec<Scalar> = (0..10).map(s).collect();
    let twice = varpi(4, &varpi(4, &x).unwrap()).unwrap();
    let mut expected = x.clone();
    expected[0] = -x[0].clone();
    expected[9] = -x[9].clone();
    assert_eq!(twice, expected);
}

#[test]
fn f_of_one_zero_identity_is_identity() {
    let form = SkewForm::<Scalar>::standard(6).unwrap();
    let f = f_map(&form, &s(1), &vec![s(0); 6], &DenseMatrix::identity(6)).unwrap();
    assert_eq!(f, DenseMatrix::identity(14));
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> DenseMatrix<Scalar> {
    loop {
        let cols: Vec<Vec<Scalar>> = (0..n).map(|_| random_vector(rng, n)).collect();
        let m = DenseMatrix::from_columns(&cols);
        if m.inverse().is_ok() {
            return m;
        }
    }
}

#[test]
fn f_composition_on_100_tuples() {
    let w = 6;
    let form = SkewForm::<Scalar>::standard(w).unwrap();
    let ts = build_ms_standard(w).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..100 {
        let (c, d) = (random_nonzero_scalar(&mut rng), random_nonzero_scalar(&mut rng));
        let (u, v) = (random_vector(&mut rng, w), random_vector(&mut rng, w));
        let (phi, psi) = (random_invertible(&mut rng, w), random_invertible(&mut rng, w));
        assert!(check_f_composition(&form, (&c, &u, &phi), (&d, &v, &psi)).unwrap(), "tuple {i}");
        if i < 5 {
            assert!(is_isometry(&ts, &f_map(&form, &c, &u, &phi).unwrap()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scaling_multiplies_quartic_by_square(n in -6i64..=6, d in 1i64..=4, seed in any::<u64>()) {
        prop_assume!(n != 0);
        let lambda = Scalar::new(n, d);
        let ts = build_ms_standard(4).unwrap();
        let scaled = ts.scale(&lambda).unwrap();
        let x = random_vector(&mut ChaCha8Rng::seed_from_u64(seed), 10);
        prop_assert_eq!(scaled.quartic(&x), &(&lambda * &lambda) * &ts.quartic(&x));
    }

    #[test]
    fn q_is_b_against_t(seed in any::<u64>()) {
        let ts = ms26();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<Vec<Scalar>> = (0..4).map(|_| random_vector(&mut rng, 54)).collect();
        let q = ts.q(&v[0], &v[1], &v[2], &v[3]);
        prop_assert_eq!(q.clone(), ts.b(&v[0], &ts.t(&v[1], &v[2], &v[3])));
        prop_assert_eq!(q, ts.q(&v[2], &v[0], &v[3], &v[1]));
    }

    #[test]
    fn p_map_is_symmetric_and_kills_zero(seed in any::<u64>()) {
        let ts = build_ms_standard(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v) = (random_vector(&mut rng, 10), random_vector(&mut rng, 10));
        prop_assert_eq!(ts.p_map(&u, &v), ts.p_map(&v, &u));
        let zero = vec![s(0); 10];
        prop_assert!(ts.p_map(&zero, &zero).is_zero());
        prop_assert!(ts.t(&zero, &u, &v).iter().all(|x| *x == s(0)));
    }
}
