//! The triple system of an Albert algebra with its calibrated quartic.

use freudenthal::albert::AlbertAlgebra;
use freudenthal::fts::build::calibrate_albert;
use freudenthal::fts::{build_albert, check_axioms, classify};
use freudenthal::sampling::Budget;

fn main() {
    let alg = AlbertAlgebra::split();
    let (cal, _) = calibrate_albert(&alg, 0x5eed).unwrap();
    println!("solutions of the cubic identity: {:?}", cal.cubic_solutions);
    println!("nondegenerate ones: {:?}", cal.nondegenerate_solutions);
    println!("chosen: {:?}", cal.coefficients);

    let ts = build_albert(&alg).unwrap();
    let budget = Budget::new(0, 20, 1, true);
    for c in check_axioms(&ts, &budget).checks {
        println!("{:<14} {:?} primes={:?}", c.name, c.status, c.evidence.primes);
    }
    println!("verdict {:?}", classify(&ts, &budget).verdict);
}
