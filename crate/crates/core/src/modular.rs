//! Arithmetic modulo word-sized primes and modular rank computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

/// Random primes are drawn from `[2^61, 2^62)`.
pub const PRIME_LOW: u64 = 1 << 61;
pub const PRIME_HIGH: u64 = 1 << 62;

pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let c = rng.gen_range(PRIME_LOW..PRIME_HIGH) | 1;
        if primal_check::miller_rabin(c) {
            return c;
        }
    }
}

pub fn random_primes<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = random_prime(rng);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// The prime field `Z/pZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModP {
    p: u64,
}

impl ModP {
    pub fn new(p: u64) -> Self {
        assert!(p > 3, "modulus must be a prime > 3");
        ModP { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.p as u128) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    pub fn from_i64(&self, n: i64) -> u64 {
        let r = (n as i128).rem_euclid(self.p as i128);
        r as u64
    }

    fn from_bigint(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }

    /// Image of a rational number; `None` when `p` divides the denominator.
    pub fn reduce(&self, s: &Scalar) -> Option<u64> {
        match s {
            Scalar::Small(n, d) => {
                let dn = self.from_i64(*d);
                let inv = self.inv(dn)?;
                Some(self.mul(self.from_i64(*n), inv))
            }
            Scalar::Big(_) => {
                let inv = self.inv(self.from_bigint(&s.denom()))?;
                Some(self.mul(self.from_bigint(&s.numer()), inv))
            }
        }
    }

    /// Rank of a dense row-major matrix by Gaussian elimination.
    pub fn rank_dense(&self, mut rows: Vec<Vec<u64>>) -> usize {
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = self.inv(rows[rank][c]).expect("nonzero pivot");
            let pivot: Vec<u64> = rows[rank].iter().map(|&x| self.mul(x, inv)).collect();
            for row in rows.iter_mut().skip(rank + 1) {
                let f = row[c];
                if f == 0 {
                    continue;
                }
                for j in c..ncols {
                    if pivot[j] != 0 {
                        row[j] = self.sub(row[j], self.mul(f, pivot[j]));
                    }
                }
            }
            rows[rank] = pivot;
            rank += 1;
        }
        rank
    }
}

/// Incremental echelon basis over `Z/pZ` for long, low-rank families of
/// vectors. Each insertion costs `O(rank · len)`. Rows are kept sorted by
/// leading column so a single forward pass reduces a new vector.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    field: ModP,
    len: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    pub fn new(field: ModP, len: usize) -> Self {
        ModEchelon { field, len, rows: Vec::new() }
    }

    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.len);
        let f = self.field;
        for (lead, row) in &self.rows {
            let c = v[*lead];
            if c == 0 {
                continue;
            }
            for j in *lead..self.len {
                if row[j] != 0 {
                    v[j] = f.sub(v[j], f.mul(c, row[j]));
                }
            }
        }
        let Some(lead) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[lead]).expect("nonzero lead");
        for x in v.iter_mut().skip(lead) {
            *x = f.mul(*x, inv);
        }
        let pos = self.rows.partition_point(|(l, _)| *l < lead);
        self.rows.insert(pos, (lead, v));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub enum RankMode {
    Exact,
    Modular(Vec<u64>),
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RankValue {
    pub rank: usize,
    pub mode: RankMode,
    /// Rank over each prime actually used.
    pub per_prime: Vec<(u64, usize)>,
    /// Primes dividing some denominator of the input.
    pub skipped_primes: Vec<u64>,
}

/// Rank of a rational matrix, exactly or as the maximum over prime fields.
pub fn rank(m: &DenseMatrix<Scalar>, mode: &RankMode) -> RankValue {
    match mode {
        RankMode::Exact => RankValue { rank: m.rank(), mode: mode.clone(), per_prime: vec![], skipped_primes: vec![] },
        RankMode::Modular(primes) => {
            let mut per_prime = Vec::new();
            let mut skipped = Vec::new();
            'primes: for &p in primes {
                let f = ModP::new(p);
                let mut rows = Vec::with_capacity(m.rows());
                for i in 0..m.rows() {
                    let mut row = Vec::with_capacity(m.cols());
                    for x in m.row(i) {
                        match f.reduce(x) {
                            Some(v) => row.push(v),
                            None => {
                                skipped.push(p);
                                continue 'primes;
                            }
                        }
                    }
                    rows.push(row);
                }
                per_prime.push((p, f.rank_dense(rows)));
            }
            let rank = per_prime.iter().map(|(_, r)| *r).max().unwrap_or(0);
            RankValue { rank, mode: mode.clone(), per_prime, skipped_primes: skipped }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primes_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in random_primes(&mut rng, 3) {
            assert!((PRIME_LOW..PRIME_HIGH).contains(&p));
            assert!(primal_check::miller_rabin(p));
        }
    }

    #[test]
    fn reduce_fractions() {
        let f = ModP::new(1_000_000_007);
        let half = f.reduce(&Scalar::new(1, 2)).unwrap();
        assert_eq!(f.mul(half, 2), 1);
        assert_eq!(f.reduce(&Scalar::from(-1)).unwrap(), 1_000_000_006);
        assert!(f.reduce(&Scalar::new(1, 1_000_000_007)).is_none());
    }

    #[test]
    fn rank_modes_identity_and_zero() {
        let id = DenseMatrix::<Scalar>::identity(5);
        let primes = vec![1_000_000_007, 998_244_353];
        assert_eq!(rank(&id, &RankMode::Exact).rank, 5);
        assert_eq!(rank(&id, &RankMode::Modular(primes.clone())).rank, 5);
        let z = DenseMatrix::<Scalar>::zeros(4, 4);
        assert_eq!(rank(&z, &RankMode::Exact).rank, 0);
        assert_eq!(rank(&z, &RankMode::Modular(primes)).rank, 0);
    }

    #[test]
    fn skipped_prime_is_reported() {
        let m = DenseMatrix::from_rows(vec![vec![Scalar::new(1, 7)]]).unwrap();
        let r = rank(&m, &RankMode::Modular(vec![7, 11]));
        assert_eq!(r.skipped_primes, vec![7]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn mod_echelon_low_rank() {
        let f = ModP::new(1_000_000_007);
        let mut e = ModEchelon::new(f, 3);
        assert!(e.insert(vec![1, 2, 3]));
        assert!(!e.insert(vec![2, 4, 6]));
        assert!(e.insert(vec![0, 1, 0]));
        assert!(!e.insert(vec![1, 3, 3]));
        assert_eq!(e.rank(), 2);
    }
}
