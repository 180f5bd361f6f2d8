//! Exact rationals, promotion past 64 bits, and rank over Q and modulo primes.

use freudenthal::matrix::DenseMatrix;
use freudenthal::modular::random_primes;
use freudenthal::{Field, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let x: Scalar = "7/3".parse().unwrap();
    let big = Scalar::from(i64::MAX) * Scalar::from(i64::MAX);
    println!("x = {x}, 1/x = {}, i64::MAX^2 = {big}", x.inv().unwrap());

    // Hilbert matrix: invertible with large inverse entries
    let n = 5;
    let cols: Vec<Vec<Scalar>> = (0..n).map(|j| (0..n).map(|i| Scalar::new(1, (i + j + 1) as i64)).collect()).collect();
    let h = DenseMatrix::from_columns(&cols);
    let inv = h.inverse().unwrap();
    println!("H5^-1 [4,4] = {}", inv[(4, 4)]);
    println!("H5 * H5^-1 = I: {}", h.mul(&inv) == DenseMatrix::identity(n));

    let primes = random_primes(&mut ChaCha8Rng::seed_from_u64(1), 2);
    println!("random 62-bit primes: {primes:?}");
}
