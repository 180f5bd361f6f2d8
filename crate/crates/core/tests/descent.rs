use freudenthal::albert::AlbertAlgebra;
use freudenthal::descent::brown::{s0, skew_space};
use freudenthal::descent::{
    brown_conj, brown_mul, brown_varpi, check_brown, e7_real_table, hermitian_trace_form, quatconst_build,
    symplem_verify, witt_index_hermitian, BrownElement, Flavor, HermitianForm, SymplemParams,
};
use freudenthal::error::AlgebraError;
use freudenthal::sampling::{random_vector, Budget};
use freudenthal::{QuadExtScalar, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn s(n: i64) -> Scalar {
    Scalar::from(n)
}

fn coeff() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=3).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| Scalar::new(n, d))
}

fn real_quaternions() -> impl Strategy<Value = (Scalar, Scalar)> {
    prop_oneof![Just((s(-1), s(-1))), Just((s(1), s(1))), Just((s(-1), s(1))), Just((s(2), s(-3)))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witt_index_grows_under_orthogonal_sum(
        (a, b) in real_quaternions(),
        h in prop::collection::vec(coeff(), 1..5),
        g in prop::collection::vec(coeff(), 1..5),
    ) {
        let h = HermitianForm::new(a.clone(), b.clone(), h).unwrap();
        let g = HermitianForm::new(a, b, g).unwrap();
        let sum = witt_index_hermitian(&h.orthogonal_sum(&g).unwrap()).unwrap();
        let (wh, wg) = (witt_index_hermitian(&h).unwrap(), witt_index_hermitian(&g).unwrap());
        prop_assert!(sum >= wh.max(wg));
        prop_assert!(sum <= h.dim() + g.dim());
        prop_assert!(sum >= wh + wg);
    }

    #[test]
    fn form_plus_its_negative_is_hyperbolic((a, b) in real_quaternions(), h in prop::collection::vec(coeff(), 1..5)) {
        let neg: Vec<Scalar> = h.iter().map(|c| -c.clone()).collect();
        let h = HermitianForm::new(a.clone(), b.clone(), h).unwrap();
        let m = HermitianForm::new(a, b, neg).unwrap();
        prop_assert_eq!(witt_index_hermitian(&h.orthogonal_sum(&m).unwrap()).unwrap(), 2 * h.dim());
    }

    #[test]
    fn trace_form_has_four_times_the_dimension(h in prop::collection::vec(coeff(), 1..6)) {
        let n = h.len();
        let f = hermitian_trace_form(&HermitianForm::new(s(-1), s(3), h).unwrap()).unwrap();
        prop_assert_eq!(f.coeffs().len(), 4 * n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn symplem_holds_for_random_parameters(
        seed in any::<u64>(),
        n in 1usize..=2,
        (alpha, beta) in prop_oneof![Just((s(-1), s(-1))), Just((s(2), s(3))), Just((s(-3), s(5))), Just((s(5), s(-2)))],
    ) {
        let params = SymplemParams::random(&mut ChaCha8Rng::seed_from_u64(seed), alpha, beta, n).unwrap();
        let out = symplem_verify(&params).unwrap();
        prop_assert!(out.checks.all_pass(), "{:?}", out.checks.failing());
        prop_assert!(out.hermitian.is_similar_diagonal(&params.expected_form().unwrap(), &s(1)));
    }
}

#[test]
fn symplem_at_three_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let params = SymplemParams::random(&mut rng, s(-1), s(-1), 3).unwrap();
    assert!(symplem_verify(&params).unwrap().checks.all_pass());
}

#[test]
fn brown_algebra_checks() {
    let alg = AlbertAlgebra::split();
    let report = check_brown(&alg, &s(-1), &Budget::new(0, 5, 1, false)).unwrap();
    assert!(report.all_pass(), "{:?}", report.failing());
    assert_eq!(skew_space().len(), 1);
}

#[test]
fn brown_involution_and_varpi_have_order_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let v = random_vector(&mut rng, 56);
    let x = BrownElement::from_vector(Flavor::Split, &v).unwrap();
    assert_eq!(brown_conj(&brown_conj(&x)), x);
    assert_eq!(brown_varpi(&brown_varpi(&x)), x);
    let unit = BrownElement::<Scalar>::unit(Flavor::Split);
    assert_eq!(brown_mul(&AlbertAlgebra::split(), &unit, &x).unwrap(), x);
}

#[test]
fn s0_is_skew() {
    let e = s0(&s(-1));
    let conj = brown_conj(&e);
    assert_eq!(conj, e.scale(&QuadExtScalar::new(s(-1), s(0), &s(-1))));
}

#[test]
fn real_table_rows() {
    let rows = e7_real_table().unwrap();
    let witt: Vec<usize> = rows.iter().map(|r| r.witt_index).collect();
    assert_eq!(witt, vec![28, 28, 24, 0]);
    let labels: Vec<&str> = rows.iter().map(|r| r.tits_index).collect();
    assert_eq!(labels, vec!["E⁰₇,₇", "E²⁸₇,₃", "E⁹₇,₄", "E¹³³₇,₀"]);
}

#[test]
fn quatconst_rejects_square_a() {
    assert!(matches!(quatconst_build(s(4), s(-1)), Err(AlgebraError::SquareRadicand(_))));
    assert!(quatconst_build(s(-1), s(0)).is_err());
}

#[test]
fn quatconst_dimension_for_another_algebra() {
    let qc = quatconst_build(s(2), s(3)).unwrap();
    assert_eq!(qc.fixed_dimension(), 3136);
    assert_eq!(qc.basis().len(), 3136);
    let h = qc.hermitian_form().unwrap();
    assert!(h.is_similar_diagonal(&qc.unit_plus_trace().unwrap(), &s(3)));
}
