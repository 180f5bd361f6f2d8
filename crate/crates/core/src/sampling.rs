//! Deterministic random sampling and verification budgets.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::modular::random_primes;
use crate::scalar::{Ring, Scalar};

/// How much evidence a checker gathers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub seed: u64,
    /// Random rational samples per identity.
    pub samples: usize,
    /// Number of random primes for modular checks.
    pub primes: usize,
    /// Run the exhaustive multilinear checks modulo the primes.
    pub exhaustive: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { seed: 0, samples: 100, primes: 3, exhaustive: false }
    }
}

impl Budget {
    pub fn new(seed: u64, samples: usize, primes: usize, exhaustive: bool) -> Self {
        Budget { seed, samples, primes, exhaustive }
    }

    /// A generator whose stream depends only on the seed and the label, so
    /// that adding a check does not shift the samples drawn by another.
    pub fn rng(&self, label: &str) -> ChaCha8Rng {
        // FNV-1a
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for byte in label.bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        ChaCha8Rng::seed_from_u64(h ^ self.seed.rotate_left(17))
    }

    pub fn prime_list(&self) -> Vec<u64> {
        random_primes(&mut self.rng("primes"), self.primes)
    }
}

/// A small random rational `n/d` with `|n| ≤ 9` and `1 ≤ d ≤ 4`.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    Scalar::new(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn random_nonzero_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    loop {
        let s = random_scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| random_scalar(rng)).collect()
}

pub fn random_int_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Vec<Scalar> {
    (0..n).map(|_| Scalar::from(rng.gen_range(-bound..=bound))).collect()
}
