use std::sync::OnceLock;

use freudenthal::albert::AlbertAlgebra;
use freudenthal::fts::{build_albert, build_ms_standard, TripleSystem};
use freudenthal::gift::axioms::{check_sigma2, is_derivation, printed_sign_audit, sym_skew_dims, G1, G2, G3, G4, G5};
use freudenthal::gift::{check_gift_axioms, derivation_suite, end_of, gift_to_fts, ideal_predicates, Gift, RightIdeal};
use freudenthal::matrix::{basis_vector, DenseMatrix};
use freudenthal::report::Status;
use freudenthal::sampling::{random_vector, Budget};
use freudenthal::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn albert() -> &'static TripleSystem {
    static TS: OnceLock<TripleSystem> = OnceLock::new();
    TS.get_or_init(|| build_albert(&AlbertAlgebra::split()).unwrap())
}

fn albert_gift() -> &'static Gift {
    static G: OnceLock<Gift> = OnceLock::new();
    G.get_or_init(|| end_of(albert()).unwrap())
}

fn small_ms_gift() -> Gift {
    end_of(&build_ms_standard(4).unwrap()).unwrap()
}

#[test]
fn albert_gift_axioms() {
    let budget = Budget::new(1, 8, 1, false);
    let report = check_gift_axioms(albert_gift(), &budget);
    assert!(report.all_pass(), "{:?}", report.failing());
    assert!(report.get(G2).unwrap().witness.is_some());
    assert!(check_sigma2(albert_gift(), &budget).passed());
}

#[test]
fn printed_signs_fail_on_albert_gift() {
    let audit = printed_sign_audit(albert_gift(), &Budget::new(1, 4, 1, false));
    assert_eq!(audit.overall(), Status::Fail);
    assert_eq!(audit.failing().len(), 2);
}

#[test]
fn ms_gift_fails_only_g5() {
    let g = end_of(&build_ms_standard(26).unwrap()).unwrap();
    let report = check_gift_axioms(&g, &Budget::new(2, 8, 1, false));
    assert_eq!(report.failing(), vec![G5]);
    assert!(report.get(G5).unwrap().witness.is_some());
}

#[test]
fn zero_pi_breaks_g4() {
    let g = small_ms_gift().with_zero_pi();
    let report = check_gift_axioms(&g, &Budget::new(3, 5, 1, false));
    assert_eq!(report.status(G4), Some(Status::Fail));
    assert_eq!(report.status(G1), Some(Status::Pass));
    assert_eq!(report.status(G3), Some(Status::Pass));
}

#[test]
fn symmetric_and_skew_dimensions() {
    let (sym, skew) = sym_skew_dims(&small_ms_gift());
    assert_eq!((sym, skew), (10 * 9 / 2, 10 * 11 / 2));
    assert_eq!(sym_skew_dims(albert_gift()), (1540, 1596));
}

fn same_pi_on_units(g: &Gift, h: &Gift, stride: usize) -> bool {
    let n = g.degree();
    (0..n * n).step_by(stride).all(|i| {
        let e = g.unit_matrix(i / n, i % n);
        g.pi(&e) == h.pi(&e) && g.sigma(&e) == h.sigma(&e)
    })
}

#[test]
fn scaling_does_not_change_the_gift() {
    let g = albert_gift();
    for lambda in [2, -3] {
        let scaled = end_of(&albert().scale(&Scalar::from(lambda)).unwrap()).unwrap();
        assert!(same_pi_on_units(g, &scaled, 13), "lambda = {lambda}");
    }
}

#[test]
fn round_trip_through_triple_systems() {
    let back = gift_to_fts(albert_gift()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let (a, b, c) = (rng.gen_range(0..56), rng.gen_range(0..56), rng.gen_range(0..56));
        assert_eq!(back.tensor().basis_dense(a, b, c), albert().tensor().basis_dense(a, b, c));
    }
    assert_eq!(back.gram(), albert().gram());
    assert!(same_pi_on_units(albert_gift(), &end_of(&back).unwrap(), 17));
}

#[test]
fn images_of_pi_are_derivations() {
    let g = small_ms_gift();
    let d = derivation_suite(&g, &Budget::new(4, 20, 2, false));
    assert!(d.gd.passed());
    // a generic skew element is not a derivation
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f = g.random_skew(&mut rng);
    let a = g.random_element(&mut rng);
    assert!(!is_derivation(&g, &f, &a));
}

#[test]
fn derivation_rank_of_small_ms() {
    // every prime sees the same rank
    let g = small_ms_gift();
    let r = freudenthal::gift::axioms::pi_rank(&g, &Budget::new(0, 1, 2, false).prime_list());
    assert_eq!(r.per_prime.len(), 2);
    assert!(r.per_prime.iter().all(|(_, k)| *k == r.rank));
}

#[test]
fn coordinate_ideal_predicates() {
    let g = albert_gift();
    let e = |i: usize| basis_vector::<Scalar>(56, i);
    let beta = ideal_predicates(g, &RightIdeal::hom_onto(g, &[e(55)]).unwrap());
    assert!(beta.singular && beta.inner && beta.isotropic);
    assert_eq!((beta.rank, beta.dim), (1, 56));
    let both = ideal_predicates(g, &RightIdeal::hom_onto(g, &[e(0), e(55)]).unwrap());
    assert!(!both.isotropic && !both.singular && !both.inner);
    let lagrangian: Vec<Vec<Scalar>> = (0..28).map(e).collect();
    let lag = ideal_predicates(g, &RightIdeal::hom_onto(g, &lagrangian).unwrap());
    assert!(lag.isotropic && !lag.singular);
    assert_eq!(lag.rank, 28);
}

#[test]
fn singular_or_inner_implies_isotropic_on_random_ideals() {
    let g = small_ms_gift();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 1..=4 {
        let vectors: Vec<Vec<Scalar>> = (0..k).map(|_| random_vector(&mut rng, 10)).collect();
        let p = ideal_predicates(&g, &RightIdeal::hom_onto(&g, &vectors).unwrap());
        assert_eq!(p.rank, k);
        assert!(!(p.singular || p.inner) || p.isotropic, "rank {k}: {p:?}");
    }
}

#[test]
fn from_span_rejects_non_ideals() {
    let g = small_ms_gift();
    let m = g.unit_matrix(0, 0);
    assert!(RightIdeal::from_span(&g, vec![m]).is_err());
    let row: Vec<DenseMatrix<Scalar>> = (0..10).map(|l| g.unit_matrix(0, l)).collect();
    assert_eq!(RightIdeal::from_span(&g, row).unwrap().dim(), 10);
}
