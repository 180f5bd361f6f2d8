//! Pulling a symplectic involution back to a hermitian form on random
//! diagonal data.

use freudenthal::descent::{symplem_verify, SymplemParams};
use freudenthal::Scalar;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=3 {
        let params = SymplemParams::random(&mut rng, Scalar::from(2), Scalar::from(-3), n).unwrap();
        let out = symplem_verify(&params).unwrap();
        let coeffs: Vec<String> = out.hermitian.coeffs().iter().map(|c| c.to_string()).collect();
        println!("n = {n}: all checks {}, form <{}>", if out.checks.all_pass() { "pass" } else { "FAIL" }, coeffs.join(", "));
    }
}
