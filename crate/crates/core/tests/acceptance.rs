//! Acceptance suite. Every criterion prints one line:
//!
//! ```text
//! criterion  N [PASS|NOT MET] title (elapsed / bound) notes
//! ```
//!
//! All identities are checked in exact arithmetic, so the only tolerance is
//! zero. A `NOT MET` line marks a literal target that the mathematics does not
//! produce; the test then asserts the value that is actually computed.

use std::time::{Duration, Instant};

use freudenthal::albert::AlbertAlgebra;
use freudenthal::descent::{check_quatconst, quatconst_build, symplem_verify, SymplemParams};
use freudenthal::descent::e7_real_table;
use freudenthal::forms::SkewForm;
use freudenthal::fts::build::{calibrate_albert, ALBERT_QUARTIC_COEFFICIENTS};
use freudenthal::fts::checks::{trace_square_residual, FTS1, FTS2, FTS3, FTS3_LINEAR, TRACE_SQUARE};
use freudenthal::fts::classify::{identity_residual, ms_det, ms_structured_witness};
use freudenthal::fts::gadgets::{check_f_composition, is_isometry, varpi_matrix};
use freudenthal::fts::{
    build_albert, build_ms_formal, build_ms_standard, check_axioms, classify, ms_diagnostics, TripleSystem,
    TripleTensor, Verdict,
};
use freudenthal::gift::axioms::{check_gift_axioms, pi_rank, printed_sign_audit, G5};
use freudenthal::gift::{derivation_suite, end_of, gift_to_fts, Gift};
use freudenthal::matrix::DenseMatrix;
use freudenthal::report::{CheckReport, Status};
use freudenthal::sampling::{random_nonzero_scalar, random_vector, Budget};
use freudenthal::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random rational points per sampled identity.
const SAMPLES: usize = 100;
/// Random 62-bit primes for the exhaustive modular layers.
const PRIMES: usize = 2;
/// Primes for the rank of `π`.
const RANK_PRIMES: usize = 3;
const DESCENT_SAMPLES: usize = 25;
const ROUND_TRIP_TRIPLES: usize = 1000;
const SEED: u64 = 0xacce97;

const BOUND_DEGENERATE: Duration = Duration::from_secs(60);
const BOUND_CRITERION: Duration = Duration::from_secs(60);
const BOUND_CALIBRATION: Duration = Duration::from_secs(600);
const BOUND_GIFT: Duration = Duration::from_secs(300);
const BOUND_ROUND_TRIP: Duration = Duration::from_secs(120);
const BOUND_DERIVATIONS: Duration = Duration::from_secs(600);
const BOUND_TRACE_FORMS: Duration = Duration::from_secs(60);
const BOUND_TABLE: Duration = Duration::from_secs(1);
const BOUND_DESCENT: Duration = Duration::from_secs(900);
const BOUND_GADGETS: Duration = Duration::from_secs(60);

fn s(n: i64) -> Scalar {
    Scalar::from(n)
}

fn budget(samples: usize, primes: usize, exhaustive: bool) -> Budget {
    Budget::new(SEED, samples, primes, exhaustive)
}

fn report_line(n: u8, title: &str, met: bool, start: Instant, bound: Duration, notes: &str) {
    let elapsed = start.elapsed();
    let tag = if met { "PASS" } else { "NOT MET" };
    println!("criterion {n:>2} [{tag}] {title} ({:.2}s / {}s) {notes}", elapsed.as_secs_f64(), bound.as_secs());
    assert!(elapsed < bound, "criterion {n} exceeded its runtime bound: {elapsed:?}");
}

fn assert_statuses(report: &CheckReport, expected: &[(&str, Status)]) {
    for (name, status) in expected {
        assert_eq!(report.status(name), Some(*status), "{name}: {:?}", report.get(name));
    }
}

#[test]
fn criterion_01_degenerate_example() {
    let start = Instant::now();
    for w in [26usize, 28] {
        let ts = build_ms_standard(w).unwrap();
        let report = check_axioms(&ts, &budget(SAMPLES, PRIMES, false));
        assert_statuses(&report, &[(FTS1, Status::Pass), (FTS2, Status::Pass), (FTS3, Status::Pass), (FTS3_LINEAR, Status::Pass)]);
        assert!(report.get(FTS1).unwrap().evidence.exact_exhaustive);
        assert!(report.get(FTS2).unwrap().witness.is_some());
        assert!(report.get(FTS3).unwrap().evidence.samples >= SAMPLES);
        // trace-square residual is 8 (dim W − 27) det(x)² at every point
        assert_eq!(report.status(TRACE_SQUARE), Some(Status::Fail));
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ w as u64);
        for _ in 0..SAMPLES {
            let x = random_vector(&mut rng, ts.dim());
            let det = ms_det(&ts, &x).unwrap();
            assert_eq!(trace_square_residual(&ts, &x), &(&det * &det) * &s(8 * (w as i64 - 27)));
        }
    }
    report_line(
        1,
        "degenerate example axioms",
        false,
        start,
        BOUND_DEGENERATE,
        "FTS1 exhaustive, FTS2 witness, FTS3/FTS3' on 100 points pass for dim W = 26, 28; \
         trace-square identity fails with residual 8(dim W - 27)det(x)^2 on all 100 points",
    );
}

#[test]
fn criterion_02_nondegeneracy_criterion() {
    let start = Instant::now();
    let ts = build_ms_standard(26).unwrap();
    let c = classify(&ts, &budget(SAMPLES, PRIMES, false));
    assert_eq!(c.verdict, Verdict::Degenerate);
    assert_eq!(c.source.as_deref(), Some("structured"));
    let (x, y) = ms_structured_witness(26);
    let residual = identity_residual(&ts, &x, &y);
    assert_eq!(c.witness.as_ref().unwrap()["residual"], serde_json::json!(residual));
    // dim W = 26 gives 8·19; the remainder value 20 needs a 27-dimensional W
    assert_eq!(residual, s(152));
    let formal = build_ms_formal();
    let (fx, fy) = ms_structured_witness(27);
    assert_eq!(identity_residual(&formal, &fx, &fy), s(160));
    assert_eq!(ms_diagnostics(&formal, &fx, &fy).unwrap().remainder, s(20));

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..SAMPLES {
        let (x, y) = (random_vector(&mut rng, 54), random_vector(&mut rng, 54));
        assert!(ms_diagnostics(&ts, &x, &y).unwrap().trform_check);
    }
    report_line(
        2,
        "nondegeneracy criterion",
        residual == s(160),
        start,
        BOUND_CRITERION,
        "degenerate via structured witness, trace expansion exact on 100 pairs; \
         residual 152 for dim W = 26 (literal 160 reached only by the formal dim W = 27 system)",
    );
}

fn calibrated_checks(alg: &AlbertAlgebra) -> (TripleSystem, CheckReport, Verdict) {
    let ts = build_albert(alg).unwrap();
    let report = check_axioms(&ts, &budget(SAMPLES, PRIMES, true));
    let verdict = classify(&ts, &budget(SAMPLES, PRIMES, true));
    assert_eq!(verdict.evidence.primes.len(), PRIMES);
    assert!(verdict.evidence.samples >= SAMPLES);
    (ts, report, verdict.verdict)
}

#[test]
fn criterion_03_calibration() {
    let start = Instant::now();
    let frozen = ALBERT_QUARTIC_COEFFICIENTS.map(s).to_vec();
    for alg in [AlbertAlgebra::split(), AlbertAlgebra::division()] {
        let (ts, report, verdict) = calibrated_checks(&alg);
        assert_statuses(
            &report,
            &[(FTS1, Status::Pass), (FTS2, Status::Pass), (FTS3, Status::Pass), (FTS3_LINEAR, Status::Pass), (TRACE_SQUARE, Status::Pass)],
        );
        let fts3 = report.get(FTS3).unwrap();
        assert!(fts3.evidence.exhaustive && fts3.evidence.primes.len() >= PRIMES && fts3.evidence.samples >= SAMPLES);
        assert_eq!(verdict, Verdict::Nondegenerate);
        match ts.provenance() {
            freudenthal::fts::Provenance::Albert { coefficients, .. } => assert_eq!(coefficients, &frozen),
            other => panic!("unexpected provenance {other:?}"),
        }
    }
    // the listed candidate (12, 48, −48) violates the cubic identity
    let alg = AlbertAlgebra::split();
    let (_, parts) = calibrate_albert(&alg, 0x5eed).unwrap();
    let candidate = [s(12), s(48), s(-48)];
    let combo: Vec<(Scalar, &TripleTensor)> = candidate.iter().cloned().zip(parts.iter()).collect();
    let wrong = build_albert(&alg).unwrap().with_tensor(TripleTensor::combination(&combo)).unwrap();
    assert_eq!(check_axioms(&wrong, &budget(5, 1, false)).status(FTS3), Some(Status::Fail));
    report_line(
        3,
        "quartic calibration",
        true,
        start,
        BOUND_CALIBRATION,
        "(12, -48, -48) passes FTS1-FTS3 on 100 points and exhaustively mod 2 primes, nondegenerate, split and division; \
         listed candidate (12, 48, -48) fails FTS3",
    );
}

#[test]
fn criterion_04_gift_axioms() {
    let start = Instant::now();
    let g = end_of(&build_albert(&AlbertAlgebra::split()).unwrap()).unwrap();
    let report = check_gift_axioms(&g, &budget(SAMPLES, 1, false));
    assert!(report.all_pass(), "{:?}", report.failing());
    assert!(report.get("G2").unwrap().witness.is_some());
    let audit = printed_sign_audit(&g, &budget(10, 1, false));
    assert_eq!(audit.failing(), vec!["G4 (printed signs)", "G5 (printed signs)"]);

    let ms = end_of(&build_ms_standard(26).unwrap()).unwrap();
    let report = check_gift_axioms(&ms, &budget(SAMPLES, 1, false));
    assert_eq!(report.failing(), vec![G5]);
    assert!(report.get(G5).unwrap().witness.is_some());
    report_line(
        4,
        "gift axioms",
        true,
        start,
        BOUND_GIFT,
        "End(M(J^d)) passes G1-G5 with G2 witness; End(M_s) fails exactly G5 with witness; \
         G4 uses pi + sigma - Id and G5 factor +24, printed variants fail",
    );
}

fn same_gift_entrywise(g: &Gift, h: &Gift) -> bool {
    let n = g.degree();
    (0..n * n).all(|i| {
        let e = g.unit_matrix(i / n, i % n);
        g.pi(&e) == h.pi(&e) && g.sigma(&e) == h.sigma(&e)
    })
}

#[test]
fn criterion_05_round_trip() {
    let start = Instant::now();
    let ts = build_albert(&AlbertAlgebra::split()).unwrap();
    let g = end_of(&ts).unwrap();
    let back = gift_to_fts(&g).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..ROUND_TRIP_TRIPLES {
        let (a, b, c) = (rng.gen_range(0..56), rng.gen_range(0..56), rng.gen_range(0..56));
        assert_eq!(back.tensor().basis_dense(a, b, c), ts.tensor().basis_dense(a, b, c), "({a}, {b}, {c})");
    }
    assert!(same_gift_entrywise(&g, &end_of(&back).unwrap()));
    for lambda in [2, -3] {
        assert!(same_gift_entrywise(&g, &end_of(&ts.scale(&s(lambda)).unwrap()).unwrap()), "lambda = {lambda}");
    }
    report_line(
        5,
        "round trip and scaling",
        true,
        start,
        BOUND_ROUND_TRIP,
        "t reproduced on 1000 basis triples; pi and sigma equal on all 3136 matrix units after round trip and for lambda = 2, -3",
    );
}

#[test]
fn criterion_06_derivations() {
    let start = Instant::now();
    let g = end_of(&build_albert(&AlbertAlgebra::split()).unwrap()).unwrap();
    let d = derivation_suite(&g, &budget(SAMPLES, 1, false));
    assert!(d.gd.passed());
    assert_eq!(d.gd.evidence.samples, SAMPLES);
    let rank = pi_rank(&g, &budget(SAMPLES, RANK_PRIMES, false).prime_list());
    assert_eq!(rank.per_prime.len(), RANK_PRIMES);
    assert!(rank.per_prime.iter().all(|(_, r)| *r == 133), "{:?}", rank.per_prime);
    report_line(6, "derivations", true, start, BOUND_DERIVATIONS, "GD on 100 samples; rank pi = 133 modulo 3 primes");
}

#[test]
fn criterion_07_trace_forms() {
    let start = Instant::now();
    let split = AlbertAlgebra::split().trace_form().signature_and_witt();
    let division = AlbertAlgebra::division().trace_form().signature_and_witt();
    assert_eq!((split.positives, split.negatives), (15, 12));
    assert_eq!((division.positives, division.negatives), (27, 0));
    report_line(7, "Albert trace forms", true, start, BOUND_TRACE_FORMS, "signatures (15, 12) and (27, 0)");
}

#[test]
fn criterion_08_real_table() {
    let start = Instant::now();
    let rows = e7_real_table().unwrap();
    let witt: Vec<usize> = rows.iter().map(|r| r.witt_index).collect();
    let labels: Vec<&str> = rows.iter().map(|r| r.tits_index).collect();
    assert_eq!(witt, vec![28, 28, 24, 0]);
    assert_eq!(labels, vec!["E⁰₇,₇", "E²⁸₇,₃", "E⁹₇,₄", "E¹³³₇,₀"]);
    report_line(8, "real-closed table", true, start, BOUND_TABLE, "Witt indices (28, 28, 24, 0) from hermitian trace forms");
}

#[test]
fn criterion_09_descent() {
    let start = Instant::now();
    let qc = quatconst_build(s(-1), s(-1)).unwrap();
    let report = check_quatconst(&qc, &budget(DESCENT_SAMPLES, 1, false)).unwrap();
    assert!(report.all_pass(), "{:?}", report.failing());
    for name in ["similarity multiplier", "cocycle", "fixed dimension", "closure"] {
        assert_eq!(report.status(name), Some(Status::Pass), "{name}");
    }
    assert_eq!(report.get("fixed dimension").unwrap().detail.as_ref().unwrap()["f_dimension"], 3136);
    assert_eq!(qc.fixed_dimension(), 3136);
    let axioms = check_gift_axioms(&qc.gift, &budget(DESCENT_SAMPLES, 1, false));
    assert!(axioms.all_pass(), "{:?}", axioms.failing());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 1..=3 {
        let params = SymplemParams::random(&mut rng, s(-1), s(-1), n).unwrap();
        let out = symplem_verify(&params).unwrap();
        assert!(out.checks.all_pass(), "n = {n}: {:?}", out.checks.failing());
    }
    report_line(
        9,
        "quaternionic descent",
        true,
        start,
        BOUND_DESCENT,
        "multiplier and cocycle exact, F-dimension 3136, closed under sigma and pi, G1-G5 on 25 samples, symplem n = 1, 2, 3",
    );
}

/// `D·L·U` with `D` a random nonzero diagonal and `L`, `U` unit triangular
/// with small integer entries, so inverses stay small.
fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> DenseMatrix<Scalar> {
    let mut l = DenseMatrix::identity(n);
    let mut u = DenseMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = s(rng.gen_range(-2..=2));
            u[(j, i)] = s(rng.gen_range(-2..=2));
        }
    }
    let mut d = DenseMatrix::identity(n);
    for i in 0..n {
        d[(i, i)] = random_nonzero_scalar(rng);
    }
    d.mul(&l).mul(&u)
}

#[test]
fn criterion_10_gadgets() {
    let start = Instant::now();
    let w = 26;
    assert!(is_isometry(&build_ms_standard(w).unwrap(), &varpi_matrix(w)));
    let form = SkewForm::<Scalar>::standard(w).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..SAMPLES {
        let (c, d) = (random_nonzero_scalar(&mut rng), random_nonzero_scalar(&mut rng));
        let (u, v) = (random_vector(&mut rng, w), random_vector(&mut rng, w));
        let (phi, psi) = (random_invertible(&mut rng, w), random_invertible(&mut rng, w));
        assert!(check_f_composition(&form, (&c, &u, &phi), (&d, &v, &psi)).unwrap(), "tuple {i}");
    }
    report_line(10, "M_s gadgets", true, start, BOUND_GADGETS, "varpi is an isometry; f-composition on 100 tuples");
}
