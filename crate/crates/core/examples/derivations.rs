//! Images of pi are derivations; the rank of pi is the dimension of E7.
//!
//! The rank computation over 3136 matrix units takes about a minute.

use freudenthal::albert::AlbertAlgebra;
use freudenthal::fts::build_albert;
use freudenthal::gift::axioms::{pi_rank, sym_skew_dims};
use freudenthal::gift::{derivation_suite, end_of};
use freudenthal::sampling::Budget;

fn main() {
    let g = end_of(&build_albert(&AlbertAlgebra::split()).unwrap()).unwrap();
    let budget = Budget::new(0, 10, 2, false);
    let d = derivation_suite(&g, &Budget { primes: 1, ..budget.clone() });
    println!("GD {:?} on {} samples", d.gd.status, d.gd.evidence.samples);
    let (sym, skew) = sym_skew_dims(&g);
    println!("dim Sym = {sym}, dim Skew = {skew}");
    let r = pi_rank(&g, &budget.prime_list());
    println!("rank pi = {} per prime {:?}", r.rank, r.per_prime);
}
