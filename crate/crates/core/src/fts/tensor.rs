//! Sparse symmetric trilinear maps `V × V × V → V` stored on sorted basis triples.

use std::collections::{BTreeMap, HashMap};

use crate::matrix::DenseMatrix;
use crate::poly::Monomial;
use crate::scalar::{Ring, Scalar};

pub type Triple = [u16; 3];

/// Values `t(e_a, e_b, e_c)` for `a ≤ b ≤ c`, each a sparse vector.
///
/// A pair index maps every unordered pair `{i, j}` to the entries
/// `t(e_i, e_j, e_w)` so that contractions against a matrix only touch the
/// triples that can contribute.
#[derive(Clone, Debug)]
pub struct TripleTensor {
    dim: usize,
    keys: Vec<Triple>,
    values: Vec<Vec<(u16, Scalar)>>,
    lookup: HashMap<Triple, usize>,
    pairs: Vec<Vec<(u16, u32)>>,
}

impl PartialEq for TripleTensor {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.keys == other.keys && self.values == other.values
    }
}

pub fn sort3(a: usize, b: usize, c: usize) -> Triple {
    let mut k = [a as u16, b as u16, c as u16];
    k.sort_unstable();
    k
}

/// The distinct ways to split a sorted triple into an unordered pair and a
/// remaining index.
fn splits(k: Triple) -> impl Iterator<Item = ((u16, u16), u16)> {
    let [a, b, c] = k;
    let all = [((b, c), a), ((a, c), b), ((a, b), c)];
    let mut out: Vec<((u16, u16), u16)> = Vec::with_capacity(3);
    for s in all {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out.into_iter()
}

impl TripleTensor {
    pub fn from_entries(dim: usize, entries: BTreeMap<Triple, BTreeMap<u16, Scalar>>) -> Self {
        let mut keys = Vec::new();
        let mut values = Vec::new();
        for (k, v) in entries {
            assert!(k[0] <= k[1] && k[1] <= k[2], "unsorted key {k:?}");
            let v: Vec<(u16, Scalar)> = v.into_iter().filter(|(_, s)| !s.is_zero()).collect();
            if !v.is_empty() {
                keys.push(k);
                values.push(v);
            }
        }
        Self::index(dim, keys, values)
    }

    fn index(dim: usize, keys: Vec<Triple>, values: Vec<Vec<(u16, Scalar)>>) -> Self {
        let lookup = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut pairs = vec![Vec::new(); dim * dim];
        for (idx, k) in keys.iter().enumerate() {
            for ((i, j), w) in splits(*k) {
                pairs[i as usize * dim + j as usize].push((w, idx as u32));
            }
        }
        TripleTensor { dim, keys, values, lookup, pairs }
    }

    /// The tensor `t` with `b(e_x, t(e_a, e_b, e_c)) = q(e_x, e_a, e_b, e_c)`,
    /// from the symmetric coefficients of a quartic and the inverse Gram
    /// matrix of `b`.
    pub fn from_quartic(dim: usize, quartic: &[(Monomial, Scalar)], gram_inverse: &DenseMatrix<Scalar>) -> Self {
        // functional[abc][x] = q(x, a, b, c)
        let mut functional: BTreeMap<Triple, BTreeMap<u16, Scalar>> = BTreeMap::new();
        for (m, c) in quartic {
            let v = m.vars();
            for p in 0..4 {
                if p > 0 && v[p] == v[p - 1] {
                    continue;
                }
                let rest: Vec<u16> = (0..4).filter(|&i| i != p).map(|i| v[i]).collect();
                let key = [rest[0], rest[1], rest[2]];
                let slot = functional.entry(key).or_default().entry(v[p]).or_insert_with(Scalar::zero);
                *slot += c;
            }
        }
        let columns: Vec<Vec<(u16, Scalar)>> = (0..dim)
            .map(|x| {
                (0..dim)
                    .filter(|&k| !gram_inverse[(k, x)].is_zero())
                    .map(|k| (k as u16, gram_inverse[(k, x)].clone()))
                    .collect()
            })
            .collect();
        let entries = functional
            .into_iter()
            .map(|(key, f)| {
                let mut out: BTreeMap<u16, Scalar> = BTreeMap::new();
                for (x, c) in f {
                    for (k, g) in &columns[x as usize] {
                        *out.entry(*k).or_insert_with(Scalar::zero) += &(g * &c);
                    }
                }
                (key, out)
            })
            .collect();
        Self::from_entries(dim, entries)
    }

    /// The tensor whose `k`-th component is the polarization of the cubic
    /// with symmetric coefficients `cubics[k]`.
    pub fn from_cubics(dim: usize, cubics: &[Vec<(Monomial, Scalar)>]) -> Self {
        let mut entries: BTreeMap<Triple, BTreeMap<u16, Scalar>> = BTreeMap::new();
        for (k, coeffs) in cubics.iter().enumerate() {
            for (m, c) in coeffs {
                let v = m.vars();
                let slot = entries.entry([v[0], v[1], v[2]]).or_default().entry(k as u16).or_insert_with(Scalar::zero);
                *slot += c;
            }
        }
        Self::from_entries(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored basis triples.
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Triple, &[(u16, Scalar)])> {
        self.keys.iter().zip(self.values.iter().map(|v| v.as_slice()))
    }

    /// `t(e_a, e_b, e_c)` as a sparse vector (empty when zero).
    pub fn basis(&self, a: usize, b: usize, c: usize) -> &[(u16, Scalar)] {
        match self.lookup.get(&sort3(a, b, c)) {
            Some(&i) => &self.values[i],
            None => &[],
        }
    }

    pub fn basis_dense(&self, a: usize, b: usize, c: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (k, v) in self.basis(a, b, c) {
            out[*k as usize] = v.clone();
        }
        out
    }

    /// Entries `(w, t(e_i, e_j, e_w))` for the unordered pair `{i, j}`.
    pub fn pair(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, &[(u16, Scalar)])> {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.pairs[i * self.dim + j].iter().map(|(w, idx)| (*w as usize, self.values[*idx as usize].as_slice()))
    }

    pub fn eval<E: Ring>(&self, x: &[E], y: &[E], z: &[E]) -> Vec<E> {
        let mut out = vec![E::zero(); self.dim];
        for (k, vals) in self.keys.iter().zip(&self.values) {
            let [a, b, c] = [k[0] as usize, k[1] as usize, k[2] as usize];
            let kappa = if a == b && b == c {
                x[a].mul_ref(&y[a]).mul_ref(&z[a])
            } else if a == b {
                sym3(x, y, z, a, c)
            } else if b == c {
                sym3(x, y, z, b, a)
            } else {
                let mut acc = E::zero();
                for (i, j, l) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                    if !x[i].is_zero() && !y[j].is_zero() {
                        acc.add_mul(&x[i].mul_ref(&y[j]), &z[l]);
                    }
                }
                acc
            };
            if kappa.is_zero() {
                continue;
            }
            for (r, v) in vals {
                let r = *r as usize;
                out[r] = out[r].add_ref(&kappa.scale(v));
            }
        }
        out
    }

    /// `t(x, x, x)`
    pub fn cube<E: Ring>(&self, x: &[E]) -> Vec<E> {
        let mut out = vec![E::zero(); self.dim];
        for (k, vals) in self.keys.iter().zip(&self.values) {
            let [a, b, c] = [k[0] as usize, k[1] as usize, k[2] as usize];
            if x[a].is_zero() || x[b].is_zero() || x[c].is_zero() {
                continue;
            }
            let mult = if a == b && b == c {
                1
            } else if a == b || b == c {
                3
            } else {
                6
            };
            let kappa = x[a].mul_ref(&x[b]).mul_ref(&x[c]).scale(&Scalar::from(mult));
            for (r, v) in vals {
                let r = *r as usize;
                out[r] = out[r].add_ref(&kappa.scale(v));
            }
        }
        out
    }

    /// The matrix `M` with `M[k][w] = Σ_{i,j} κ(i,j) t_k(e_i, e_j, e_w)`, where
    /// `κ(i, j)` is given on unordered pairs and already symmetrized.
    pub fn contract<E: Ring>(&self, kappa: impl Fn(usize, usize) -> E) -> DenseMatrix<E> {
        let n = self.dim;
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let list = &self.pairs[i * n + j];
                if list.is_empty() {
                    continue;
                }
                let k = kappa(i, j);
                if k.is_zero() {
                    continue;
                }
                for (w, idx) in list {
                    for (r, v) in &self.values[*idx as usize] {
                        let cell: &mut E = &mut m[(*r as usize, *w as usize)];
                        *cell = cell.add_ref(&k.scale(v));
                    }
                }
            }
        }
        m
    }

    /// The endomorphism `w ↦ t(x, y, w)`.
    pub fn partial<E: Ring>(&self, x: &[E], y: &[E]) -> DenseMatrix<E> {
        self.contract(|i, j| {
            if i == j {
                x[i].mul_ref(&y[i])
            } else {
                x[i].mul_ref(&y[j]).add_ref(&x[j].mul_ref(&y[i]))
            }
        })
    }

    /// `T(C)_{kw} = Σ_{a,b} C_{ab} t_k(e_a, e_b, e_w)`
    pub fn contract_matrix<E: Ring>(&self, c: &DenseMatrix<E>) -> DenseMatrix<E> {
        self.contract(|i, j| if i == j { c[(i, i)].clone() } else { c[(i, j)].add_ref(&c[(j, i)]) })
    }

    pub fn scaled(&self, lambda: &Scalar) -> Self {
        let values = self.values.iter().map(|v| v.iter().map(|(k, s)| (*k, s * lambda)).collect()).collect();
        TripleTensor { values, ..self.clone() }
    }

    /// `Σ cᵢ tᵢ`
    pub fn combination(parts: &[(Scalar, &TripleTensor)]) -> Self {
        let dim = parts[0].1.dim;
        let mut entries: BTreeMap<Triple, BTreeMap<u16, Scalar>> = BTreeMap::new();
        for (c, t) in parts {
            assert_eq!(t.dim, dim);
            for (k, vals) in t.entries() {
                let slot = entries.entry(*k).or_default();
                for (r, v) in vals {
                    *slot.entry(*r).or_insert_with(Scalar::zero) += &(c * v);
                }
            }
        }
        Self::from_entries(dim, entries)
    }

    /// A copy with one coordinate of one basis value replaced.
    pub fn with_entry(&self, key: Triple, component: u16, value: Scalar) -> Self {
        let mut entries: BTreeMap<Triple, BTreeMap<u16, Scalar>> =
            self.entries().map(|(k, v)| (*k, v.iter().cloned().collect())).collect();
        entries.entry(key).or_default().insert(component, value);
        Self::from_entries(self.dim, entries)
    }
}

/// `Σ` over the three orderings of `(p, p, r)` placed into `(x, y, z)`.
fn sym3<E: Ring>(x: &[E], y: &[E], z: &[E], p: usize, r: usize) -> E {
    let mut acc = E::zero();
    for (i, j, l) in [(p, p, r), (p, r, p), (r, p, p)] {
        if !x[i].is_zero() && !y[j].is_zero() {
            acc.add_mul(&x[i].mul_ref(&y[j]), &z[l]);
        }
    }
    acc
}
