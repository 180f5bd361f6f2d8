//! The Albert algebra: trace, cubic norm, adjoint and the trace form signatures.

use std::sync::Arc;

use freudenthal::albert::AlbertAlgebra;
use freudenthal::sampling::random_vector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, alg) in [("J^d", AlbertAlgebra::split()), ("H3(O,1)", AlbertAlgebra::division())] {
        let alg = Arc::new(alg);
        let x = alg.element(random_vector(&mut rng, 27)).unwrap();
        let sharp_sharp = x.sharp().sharp();
        let sig = alg.trace_form().signature_and_witt();
        println!(
            "{name}: x## = N(x) x: {}, trace form ({}, {})",
            sharp_sharp == x.scale(&x.norm_n()),
            sig.positives,
            sig.negatives
        );
    }
}
