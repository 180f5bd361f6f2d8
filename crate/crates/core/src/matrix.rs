//! Dense matrices and vectors over a [`Ring`], with exact Gaussian elimination
//! over a [`Field`].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::scalar::{Field, Ring};

pub type DenseVector<E> = Vec<E>;

pub fn zero_vector<E: Ring>(n: usize) -> DenseVector<E> {
    vec![E::zero(); n]
}

pub fn basis_vector<E: Ring>(n: usize, i: usize) -> DenseVector<E> {
    let mut v = zero_vector(n);
    v[i] = E::one();
    v
}

pub fn vec_add<E: Ring>(a: &[E], b: &[E]) -> DenseVector<E> {
    a.iter().zip(b).map(|(x, y)| x.add_ref(y)).collect()
}

pub fn vec_sub<E: Ring>(a: &[E], b: &[E]) -> DenseVector<E> {
    a.iter().zip(b).map(|(x, y)| x.sub_ref(y)).collect()
}

pub fn vec_scale<E: Ring>(a: &[E], c: &E) -> DenseVector<E> {
    a.iter().map(|x| x.mul_ref(c)).collect()
}

/// `acc += c * v`
pub fn vec_axpy<E: Ring>(acc: &mut [E], c: &E, v: &[E]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            a.add_mul(c, x);
        }
    }
}

pub fn dot<E: Ring>(a: &[E], b: &[E]) -> E {
    let mut acc = E::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc.add_mul(x, y);
        }
    }
    acc
}

pub fn is_zero_vector<E: Ring>(v: &[E]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[derive(Clone, PartialEq)]
pub struct DenseMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: fmt::Debug> fmt::Debug for DenseMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows.min(8) {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r * self.cols + self.cols.min(8))])?;
        }
        Ok(())
    }
}

impl<E: Ring> DenseMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![E::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = E::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(AlgebraError::DimensionMismatch { expected: c, got: row.len() });
            }
            data.extend(row);
        }
        Ok(DenseMatrix { rows: r, cols: c, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[DenseVector<E>]) -> Self {
        let n = cols.first().map(|c| c.len()).unwrap_or(0);
        Self::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
    }

    /// Rank-one matrix `x yᵀ`.
    pub fn outer(x: &[E], y: &[E]) -> Self {
        Self::from_fn(x.len(), y.len(), |i, j| x[i].mul_ref(&y[j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> DenseVector<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn map<F: Ring>(&self, f: impl Fn(&E) -> F) -> DenseMatrix<F> {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows != rhs.rows {
            return Err(AlgebraError::DimensionMismatch { expected: self.rows, got: rhs.rows });
        }
        if self.cols != rhs.cols {
            return Err(AlgebraError::DimensionMismatch { expected: self.cols, got: rhs.cols });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add_ref(b)).collect(),
        })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub_ref(b)).collect(),
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("matrix shape mismatch")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("matrix shape mismatch")
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg_ref())
    }

    pub fn scale(&self, c: &E) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch { expected: self.cols, got: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                vec_axpy(out_row, a, rhs.row(k));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("matrix shape mismatch")
    }

    pub fn try_mul_vec(&self, v: &[E]) -> Result<DenseVector<E>> {
        if self.cols != v.len() {
            return Err(AlgebraError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn mul_vec(&self, v: &[E]) -> DenseVector<E> {
        self.try_mul_vec(v).expect("matrix/vector shape mismatch")
    }

    pub fn trace(&self) -> E {
        let mut acc = E::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add_ref(&self[(i, i)]);
        }
        acc
    }

    /// `tr(self · rhs)` without forming the product.
    pub fn trace_of_product(&self, rhs: &Self) -> E {
        let mut acc = E::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if !a.is_zero() {
                    acc.add_mul(a, &rhs[(k, i)]);
                }
            }
        }
        acc
    }

    /// `xᵀ · self · y`
    pub fn bilinear(&self, x: &[E], y: &[E]) -> E {
        let mut acc = E::zero();
        for i in 0..self.rows {
            if x[i].is_zero() {
                continue;
            }
            acc.add_mul(&x[i], &dot(self.row(i), y));
        }
        acc
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| self[(i, j)] == self[(j, i)].neg_ref()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Block-diagonal matrix from square blocks.
    pub fn block_diagonal(blocks: &[DenseMatrix<E>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(off + i, off + j)] = b[(i, j)].clone();
                }
            }
            off += b.rows;
        }
        out
    }
}

impl<E> std::ops::Index<(usize, usize)> for DenseMatrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> std::ops::IndexMut<(usize, usize)> for DenseMatrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

/// Reduced row echelon form computed in place; returns pivot columns.
fn rref<E: Field>(m: &mut DenseMatrix<E>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m[(r, c)].inv().expect("nonzero pivot");
        for j in c..cols {
            m[(r, j)] = m[(r, j)].mul_ref(&inv);
        }
        let pivot_row: Vec<E> = m.row(r).to_vec();
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].neg_ref();
            let row = &mut m.data[i * cols..(i + 1) * cols];
            vec_axpy(row, &f, &pivot_row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl<E: Field> DenseMatrix<E> {
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        rref(&mut m).len()
    }

    /// Basis of the right kernel `{v : self·v = 0}`.
    pub fn kernel(&self) -> Vec<DenseVector<E>> {
        let mut m = self.clone();
        let pivots = rref(&mut m);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = zero_vector::<E>(self.cols);
                v[f] = E::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = m[(r, f)].neg_ref();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                E::one()
            } else {
                E::zero()
            }
        });
        let pivots = rref(&mut aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(AlgebraError::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    /// Solves `self · x = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &[E]) -> Result<DenseVector<E>> {
        Ok(self.inverse()?.mul_vec(rhs))
    }

    /// Coefficients `[c₀, …, cₙ]` of `det(λI − self)` (monic, so `cₙ = 1`), by
    /// the Faddeev–LeVerrier recursion.
    pub fn characteristic_polynomial(&self) -> Vec<E> {
        let n = self.rows;
        let mut coeffs = vec![E::zero(); n + 1];
        coeffs[n] = E::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                next[(i, i)] = next[(i, i)].add_ref(&coeffs[n - k + 1]);
            }
            let tr = self.mul(&next).trace();
            coeffs[n - k] = tr.neg_ref().div_ref(&E::from_i64(k as i64)).expect("k is nonzero");
            m = next;
        }
        coeffs
    }

    pub fn determinant(&self) -> E {
        let n = self.rows;
        let mut m = self.clone();
        let mut det = E::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return E::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = det.neg_ref();
            }
            let piv = m[(c, c)].clone();
            det = det.mul_ref(&piv);
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].mul_ref(&inv).neg_ref();
                let pivot_row: Vec<E> = m.row(c).to_vec();
                vec_axpy(&mut m.data[i * n..(i + 1) * n], &f, &pivot_row);
            }
        }
        det
    }
}

/// Incremental exact row echelon basis for sparse vectors.
///
/// Rows are reduced against existing pivots on insertion; the indices of the
/// inserted rows that turned out independent are remembered.
#[derive(Clone, Debug)]
pub struct SparseEchelon<E> {
    pivots: BTreeMap<usize, BTreeMap<usize, E>>,
    accepted: Vec<usize>,
    inserted: usize,
}

impl<E: Field> Default for SparseEchelon<E> {
    fn default() -> Self {
        SparseEchelon { pivots: BTreeMap::new(), accepted: Vec::new(), inserted: 0 }
    }
}

impl<E: Field> SparseEchelon<E> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `row` to its normal form against the current basis.
    pub fn reduce(&self, row: BTreeMap<usize, E>) -> BTreeMap<usize, E> {
        let mut row = row;
        row.retain(|_, v| !v.is_zero());
        let mut cursor = 0usize;
        loop {
            let next = row.range(cursor..).map(|(k, _)| *k).find(|k| self.pivots.contains_key(k));
            let Some(col) = next else {
                return row;
            };
            let f = row[&col].clone();
            let prow = &self.pivots[&col];
            for (k, v) in prow {
                let delta = f.mul_ref(v);
                let entry = row.entry(*k).or_insert_with(E::zero);
                *entry = entry.sub_ref(&delta);
                if entry.is_zero() {
                    row.remove(k);
                }
            }
            cursor = col + 1;
        }
    }

    /// Inserts a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, row: BTreeMap<usize, E>) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let row = self.reduce(row);
        let Some((&lead, lead_val)) = row.iter().next() else {
            return false;
        };
        let inv = lead_val.inv().expect("nonzero lead");
        let row: BTreeMap<usize, E> = row.iter().map(|(k, v)| (*k, v.mul_ref(&inv))).collect();
        self.pivots.insert(lead, row);
        self.accepted.push(idx);
        true
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Insertion indices of the rows that were independent when inserted.
    pub fn accepted(&self) -> &[usize] {
        &self.accepted
    }

    pub fn contains(&self, row: BTreeMap<usize, E>) -> bool {
        self.reduce(row).is_empty()
    }
}

pub fn sparse_from_dense<E: Ring>(v: &[E]) -> BTreeMap<usize, E> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn m(rows: &[&[i64]]) -> DenseMatrix<Scalar> {
        DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn characteristic_polynomial_small() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.characteristic_polynomial(), vec![Scalar::from(1), Scalar::from(-3), Scalar::from(1)]);
        let d = m(&[&[12, 0, 0], &[0, 12, 0], &[0, 0, -48]]);
        // (λ − 12)² (λ + 48)
        let c = d.characteristic_polynomial();
        assert_eq!(c, [6912, -1008, 24, 1].iter().map(|&v| Scalar::from(v)).collect::<Vec<_>>());
    }

    #[test]
    fn inverse_and_kernel() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), DenseMatrix::identity(2));
        let s = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(s.rank(), 1);
        let k = s.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(is_zero_vector(&s.mul_vec(&v)));
        }
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(AlgebraError::Singular));
    }

    #[test]
    fn determinant_small() {
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), Scalar::from(-1));
        assert_eq!(m(&[&[2, 0, 0], &[0, 3, 0], &[1, 1, 5]]).determinant(), Scalar::from(30));
    }

    #[test]
    fn shape_errors() {
        let a = m(&[&[1, 2]]);
        assert!(a.try_mul(&a).is_err());
        assert!(a.try_mul_vec(&[Scalar::one()]).is_err());
        assert!(DenseMatrix::<Scalar>::from_rows(vec![vec![Scalar::one()], vec![]]).is_err());
    }

    #[test]
    fn sparse_echelon_rank() {
        let mut e = SparseEchelon::<Scalar>::new();
        let r = |v: &[i64]| sparse_from_dense(&v.iter().map(|&x| Scalar::from(x)).collect::<Vec<_>>());
        assert!(e.insert(r(&[1, 1, 0])));
        assert!(e.insert(r(&[0, 1, 1])));
        assert!(!e.insert(r(&[1, 2, 1])));
        assert!(e.insert(r(&[0, 0, 3])));
        assert_eq!(e.rank(), 3);
        assert_eq!(e.accepted(), &[0, 1, 3]);
    }
}
