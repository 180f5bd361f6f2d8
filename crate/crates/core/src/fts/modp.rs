//! Exhaustive multilinear identity checks modulo a prime.
//!
//! Every identity checked here is a polynomial identity of degree at most four
//! in the point `x` (plus linear slots), so its full polarization evaluated on
//! all sorted basis tuples decides it over `Z/pZ`.

use std::collections::{HashMap, HashSet};

use super::tensor::{sort3, Triple};
use super::TripleSystem;
use crate::modular::ModP;

pub(crate) struct ModSystem {
    pub f: ModP,
    pub n: usize,
    vals: Vec<Vec<(u16, u64)>>,
    keys: Vec<Triple>,
    lookup: HashMap<Triple, usize>,
    pairs: Vec<Vec<(u16, u32)>>,
    /// Column `d` of the Gram matrix: `(w, B[w][d])`.
    gram_cols: Vec<Vec<(u16, u64)>>,
    gram_rows: Vec<Vec<(u16, u64)>>,
    /// `B · t(e_a, e_b, e_c)` per stored triple, i.e. `q(e_·, e_a, e_b, e_c)`.
    bt: Vec<Vec<(u16, u64)>>,
}

/// A failing basis tuple and the nonzero residual found there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModWitness {
    pub prime: u64,
    pub indices: Vec<usize>,
    pub residual: u64,
}

impl ModSystem {
    /// `None` when `p` divides a denominator of the structure constants.
    pub fn new(ts: &TripleSystem, p: u64) -> Option<Self> {
        let f = ModP::new(p);
        let n = ts.dim();
        let tensor = ts.tensor();
        let mut keys = Vec::with_capacity(tensor.len());
        let mut vals = Vec::with_capacity(tensor.len());
        for (k, v) in tensor.entries() {
            let mut out = Vec::with_capacity(v.len());
            for (r, s) in v {
                let x = f.reduce(s)?;
                if x != 0 {
                    out.push((*r, x));
                }
            }
            if !out.is_empty() {
                keys.push(*k);
                vals.push(out);
            }
        }
        let mut gram_rows = vec![Vec::new(); n];
        let mut gram_cols = vec![Vec::new(); n];
        for (i, row) in gram_rows.iter_mut().enumerate() {
            for (j, g) in ts.gram_row(i) {
                let x = f.reduce(g)?;
                if x != 0 {
                    row.push((*j as u16, x));
                    gram_cols[*j].push((i as u16, x));
                }
            }
        }
        let bt = vals
            .iter()
            .map(|v| {
                let mut acc = vec![0u64; n];
                for (k, x) in v {
                    for (w, g) in &gram_cols[*k as usize] {
                        acc[*w as usize] = f.add(acc[*w as usize], f.mul(*g, *x));
                    }
                }
                acc.into_iter().enumerate().filter(|(_, x)| *x != 0).map(|(i, x)| (i as u16, x)).collect()
            })
            .collect();
        let lookup = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut pairs = vec![Vec::new(); n * n];
        for (idx, k) in keys.iter().enumerate() {
            let [a, b, c] = *k;
            let mut seen: Vec<((u16, u16), u16)> = Vec::with_capacity(3);
            for s in [((b, c), a), ((a, c), b), ((a, b), c)] {
                if !seen.contains(&s) {
                    seen.push(s);
                    pairs[s.0 .0 as usize * n + s.0 .1 as usize].push((s.1, idx as u32));
                }
            }
        }
        Some(ModSystem { f, n, vals, keys, lookup, pairs, gram_cols, gram_rows, bt })
    }

    fn t_idx(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        self.lookup.get(&sort3(a, b, c)).copied()
    }

    fn gram(&self, i: usize, j: usize) -> u64 {
        self.gram_rows[i].iter().find(|(k, _)| *k as usize == j).map(|(_, v)| *v).unwrap_or(0)
    }

    /// `q(e_a, e_b, e_c, e_d)`
    pub fn q(&self, a: usize, b: usize, c: usize, d: usize) -> u64 {
        match self.t_idx(b, c, d) {
            Some(i) => self.bt[i].iter().find(|(k, _)| *k as usize == a).map(|(_, v)| *v).unwrap_or(0),
            None => 0,
        }
    }

    /// Fully polarized cubic identity
    /// `Σ_d [t(t(x_others), x_d, y) − b(y, x_d) t(x_others) − q(y, x_others) x_d] = 0`
    /// over all sorted basis 4-tuples that can be nonzero. The matrix in `y` is
    /// checked entrywise.
    pub fn cubic_identity(&self) -> Option<ModWitness> {
        let f = self.f;
        let mut quads: HashSet<[u16; 4]> = HashSet::new();
        for k in &self.keys {
            for d in 0..self.n as u16 {
                let mut q = [k[0], k[1], k[2], d];
                q.sort_unstable();
                quads.insert(q);
            }
        }
        let mut quads: Vec<[u16; 4]> = quads.into_iter().collect();
        quads.sort_unstable();
        let mut acc: HashMap<(u16, u16), u64> = HashMap::new();
        for quad in quads {
            acc.clear();
            for pos in 0..4 {
                let d = quad[pos] as usize;
                let o: Vec<usize> = (0..4).filter(|&i| i != pos).map(|i| quad[i] as usize).collect();
                let Some(ti) = self.t_idx(o[0], o[1], o[2]) else { continue };
                for (i, v) in &self.vals[ti] {
                    let (lo, hi) = if (*i as usize) <= d { (*i as usize, d) } else { (d, *i as usize) };
                    for (w, idx) in &self.pairs[lo * self.n + hi] {
                        for (k, u) in &self.vals[*idx as usize] {
                            let e = acc.entry((*k, *w)).or_insert(0);
                            *e = f.add(*e, f.mul(*v, *u));
                        }
                    }
                }
                for (y, g) in &self.gram_cols[d] {
                    for (i, v) in &self.vals[ti] {
                        let e = acc.entry((*i, *y)).or_insert(0);
                        *e = f.sub(*e, f.mul(*g, *v));
                    }
                }
                for (y, u) in &self.bt[ti] {
                    let e = acc.entry((d as u16, *y)).or_insert(0);
                    *e = f.sub(*e, *u);
                }
            }
            if let Some((_, r)) = acc.iter().find(|(_, v)| **v != 0) {
                return Some(ModWitness { prime: f.modulus(), indices: quad.iter().map(|x| *x as usize).collect(), residual: *r });
            }
        }
        None
    }

    /// `G[ab][cd] = tr(p(e_a ⊗ e_b) p(e_c ⊗ e_d))` for unordered pairs.
    pub fn trace_gram(&self) -> TraceGram {
        let f = self.f;
        let n = self.n;
        let np = n * (n + 1) / 2;
        let mut ids = vec![usize::MAX; n * n];
        let mut id = 0;
        for a in 0..n {
            for b in a..n {
                ids[a * n + b] = id;
                ids[b * n + a] = id;
                id += 1;
            }
        }
        // positions[k * n + w] = entries (pair id, p(e_a ⊗ e_b)[k][w])
        let mut positions: Vec<Vec<(u32, u64)>> = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in a..n {
                let pid = ids[a * n + b] as u32;
                let mut cell: HashMap<(u16, u16), u64> = HashMap::new();
                for (w, idx) in &self.pairs[a * n + b] {
                    for (k, u) in &self.vals[*idx as usize] {
                        let e = cell.entry((*k, *w)).or_insert(0);
                        *e = f.add(*e, *u);
                    }
                }
                // −b(e_w, e_a) e_b − b(e_w, e_b) e_a
                for (w, g) in &self.gram_cols[a] {
                    let e = cell.entry((b as u16, *w)).or_insert(0);
                    *e = f.sub(*e, *g);
                }
                for (w, g) in &self.gram_cols[b] {
                    let e = cell.entry((a as u16, *w)).or_insert(0);
                    *e = f.sub(*e, *g);
                }
                for ((k, w), v) in cell {
                    if v != 0 {
                        positions[k as usize * n + w as usize].push((pid, v));
                    }
                }
            }
        }
        let mut g = vec![0u64; np * np];
        for k in 0..n {
            for w in 0..n {
                let left = &positions[k * n + w];
                let right = &positions[w * n + k];
                for (p1, v1) in left {
                    let row = &mut g[*p1 as usize * np..(*p1 as usize + 1) * np];
                    for (p2, v2) in right {
                        let c = &mut row[*p2 as usize];
                        *c = f.add(*c, f.mul(*v1, *v2));
                    }
                }
            }
        }
        TraceGram { np, ids, n, values: g }
    }

    /// `G[ab,cd] + G[ac,bd] + G[ad,bc] = 72 q(a,b,c,d)` on sorted 4-tuples.
    pub fn trace_square(&self, g: &TraceGram) -> Option<ModWitness> {
        let f = self.f;
        let n = self.n;
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    for d in c..n {
                        let lhs = f.add(f.add(g.get(a, b, c, d), g.get(a, c, b, d)), g.get(a, d, b, c));
                        let rhs = f.mul(72, self.q(a, b, c, d));
                        if lhs != rhs {
                            return Some(ModWitness { prime: f.modulus(), indices: vec![a, b, c, d], residual: f.sub(lhs, rhs) });
                        }
                    }
                }
            }
        }
        None
    }

    /// `G[ab,cd] = 24 (q(a,b,c,d) − B_ca B_db − B_cb B_da)` for all pairs of pairs.
    pub fn trace_identity(&self, g: &TraceGram) -> Option<ModWitness> {
        let f = self.f;
        let n = self.n;
        for a in 0..n {
            for b in a..n {
                for c in 0..n {
                    for d in c..n {
                        if g.ids[a * n + b] > g.ids[c * n + d] {
                            continue;
                        }
                        let bb = f.add(f.mul(self.gram(c, a), self.gram(d, b)), f.mul(self.gram(c, b), self.gram(d, a)));
                        let rhs = f.mul(24, f.sub(self.q(a, b, c, d), bb));
                        let lhs = g.get(a, b, c, d);
                        if lhs != rhs {
                            return Some(ModWitness { prime: f.modulus(), indices: vec![a, b, c, d], residual: f.sub(lhs, rhs) });
                        }
                    }
                }
            }
        }
        None
    }
}

pub(crate) struct TraceGram {
    np: usize,
    n: usize,
    ids: Vec<usize>,
    values: Vec<u64>,
}

impl TraceGram {
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> u64 {
        let (i, j) = (self.ids[a * self.n + b], self.ids[c * self.n + d]);
        self.values[i * self.np + j]
    }
}
