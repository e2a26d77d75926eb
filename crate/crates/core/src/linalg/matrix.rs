use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use super::gf2::PackedRows;
use crate::error::{Error, Result};

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`FpMatrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        let p = field.p();
        let data = data.into_iter().map(|v| v % p).collect();
        Ok(FpMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = FpMatrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds from signed integer rows, reducing mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| field.reduce(v)))
            .collect();
        Ok(FpMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let p = field.p();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % p);
            }
        }
        FpMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        let cols = columns.len();
        FpMatrix::from_fn(field, rows, cols, |i, j| columns[j][i])
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_row_vectors(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        FpMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u32> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> FpMatrix {
        FpMatrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        FpMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        FpMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let f = self.field;
        let c = c % f.p();
        FpMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &FpMatrix, c: u32) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let c = c % f.p();
        if c == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(b, c));
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(
            self.cols, other.rows,
            "matmul shape mismatch {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let p = self.field.p() as u64;
        let mut acc = vec![0u64; m];
        let mut data = Vec::with_capacity(n * m);
        // (p-1)^2 * 4096 fits easily in u64, so reduce only every so often.
        const FLUSH: usize = 4096;
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            let row = self.row(i);
            for (t, &a) in row.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as u64;
                let orow = &other.data[t * m..(t + 1) * m];
                for (x, &b) in acc.iter_mut().zip(orow) {
                    *x += a * b as u64;
                }
                if t % FLUSH == FLUSH - 1 {
                    acc.iter_mut().for_each(|x| *x %= p);
                }
            }
            let _ = k;
            data.extend(acc.iter().map(|&x| (x % p) as u32));
        }
        FpMatrix {
            field: self.field,
            rows: n,
            cols: m,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Reduced row echelon form with leftmost-pivot tie-breaking.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        if self.field.p() == 2 && self.cols > 0 && self.rows > 0 {
            let mut packed = PackedRows::from_dense(self.rows, self.cols, &self.data);
            let pivots = packed.rref();
            self.data = packed.to_dense();
            return pivots;
        }
        let f = self.field;
        let p = f.p() as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(found) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if found != r {
                for k in 0..cols {
                    self.data.swap(found * cols + k, r * cols + k);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            if inv != 1 {
                for k in c..cols {
                    let v = self.data[r * cols + k];
                    self.data[r * cols + k] = f.mul(v, inv);
                }
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let a = row[c];
                if a == 0 {
                    return;
                }
                let factor = p - a as u64;
                for k in c..cols {
                    let b = pivot_row[k];
                    if b != 0 {
                        row[k] = ((row[k] as u64 + factor * b as u64) % p) as u32;
                    }
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space `{v : self * v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let rr = self.rref();
        kernel_from_rref(&rr.matrix, &rr.pivots)
    }

    /// Some `x` with `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let bm = FpMatrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        self.solve_matrix(&bm).map(|x| x.column(0))
    }

    /// Some `X` with `self * X = b`, or `None` when inconsistent.
    pub fn solve_matrix(&self, b: &FpMatrix) -> Option<FpMatrix> {
        assert_eq!(b.rows, self.rows);
        let aug = self.hstack(b);
        let rr = aug.rref();
        if rr.pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = FpMatrix::zeros(self.field, self.cols, b.cols);
        for (r, &c) in rr.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[c * b.cols + j] = rr.matrix.get(r, self.cols + j);
            }
        }
        Some(x)
    }

    /// Basis of the column space, taken from the pivot columns of `self`.
    pub fn image_basis(&self) -> Vec<Vec<u32>> {
        let rr = self.rref();
        rr.pivots.iter().map(|&c| self.column(c)).collect()
    }

    pub fn invert(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&FpMatrix::identity(self.field, n));
        let rr = aug.rref();
        if rr.rank < n || rr.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(rr.matrix.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        FpMatrix {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        }
    }

    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Direct sum of matrices placed along the diagonal.
    pub fn block_diag(field: PrimeField, blocks: &[FpMatrix]) -> FpMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = FpMatrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Kronecker product.
    pub fn kronecker(&self, other: &FpMatrix) -> FpMatrix {
        let f = self.field;
        FpMatrix::from_fn(f, self.rows * other.rows, self.cols * other.cols, |i, j| {
            f.mul(
                self.get(i / other.rows, j / other.cols),
                other.get(i % other.rows, j % other.cols),
            )
        })
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &FpMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn submatrix(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> FpMatrix {
        let (r0, c0) = (rows.start, cols.start);
        FpMatrix::from_fn(self.field, rows.len(), cols.len(), |i, j| {
            self.get(r0 + i, c0 + j)
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        FpMatrix::from_fn(self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    pub fn select_cols(&self, idx: &[usize]) -> FpMatrix {
        FpMatrix::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }
}

pub(crate) fn kernel_from_rref(r: &FpMatrix, pivots: &[usize]) -> Vec<Vec<u32>> {
    let f = r.field();
    let cols = r.cols();
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.get(row, free));
        }
        basis.push(v);
    }
    basis
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix[{}; {}x{}](", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m(p: u32, rows: &[Vec<i64>]) -> FpMatrix {
        FpMatrix::from_rows(fp(p), rows).unwrap()
    }

    #[test]
    fn rref_rank_examples() {
        assert_eq!(m(2, &[vec![1, 1], vec![1, 1]]).rank(), 1);
        let id = FpMatrix::identity(fp(2), 3);
        let rr = id.rref();
        assert_eq!(rr.rank, 3);
        assert_eq!(rr.matrix, id);
        assert_eq!(rr.pivots, vec![0, 1, 2]);
        // second row is half the first mod 5
        let a = m(5, &[vec![2, 4], vec![1, 2]]);
        let rr = a.rref();
        assert_eq!(rr.rank, 1);
        assert_eq!(rr.matrix, m(5, &[vec![1, 2], vec![0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        assert!(FpMatrix::identity(fp(2), 2).kernel_basis().is_empty());
        assert_eq!(FpMatrix::zeros(fp(2), 2, 3).kernel_basis().len(), 3);
        assert_eq!(m(2, &[vec![1, 1]]).kernel_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let id = FpMatrix::identity(fp(7), 3);
        assert_eq!(id.solve(&[3, 1, 6]), Some(vec![3, 1, 6]));
        assert_eq!(FpMatrix::zeros(fp(3), 2, 2).solve(&[1, 0]), None);
        // x + 2y = 0, y = 1 over F_3 gives x = -2 = 1
        let a = m(3, &[vec![1, 2], vec![0, 1]]);
        assert_eq!(a.solve(&[0, 1]), Some(vec![1, 1]));
    }

    #[test]
    fn image_invert_matmul_examples() {
        assert_eq!(FpMatrix::identity(fp(3), 2).image_basis().len(), 2);
        assert!(FpMatrix::zeros(fp(3), 2, 2).image_basis().is_empty());
        let a = m(3, &[vec![1, 1], vec![2, 2]]);
        assert_eq!(a.image_basis(), vec![vec![1, 2]]);

        assert_eq!(
            FpMatrix::identity(fp(5), 2).invert(),
            Some(FpMatrix::identity(fp(5), 2))
        );
        assert!(FpMatrix::zeros(fp(5), 2, 2).invert().is_none());
        // [[1,2],[3,4]]^{-1} over F_5 is [[3,1],[4,2]]
        let b = m(5, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(b.invert(), Some(m(5, &[vec![3, 1], vec![4, 2]])));

        let c = m(7, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(c.mul(&FpMatrix::identity(fp(7), 2)), c);
        assert!(c.mul(&FpMatrix::zeros(fp(7), 2, 3)).is_zero());
        assert_eq!(c.mul(&c), m(7, &[vec![0, 3], vec![1, 1]]));
    }

    #[test]
    fn block_and_kronecker() {
        let a = m(3, &[vec![1, 2]]);
        let b = m(3, &[vec![2], vec![1]]);
        let d = FpMatrix::block_diag(fp(3), &[a.clone(), b.clone()]);
        assert_eq!(d, m(3, &[vec![1, 2, 0], vec![0, 0, 2], vec![0, 0, 1]]));
        let k = FpMatrix::identity(fp(3), 2).kronecker(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.cols(), 2);
        assert_eq!(k.column(1), vec![0, 0, 2, 1]);
        assert_eq!(FpMatrix::block_diag(fp(3), &[]).rows(), 0);
    }

    #[test]
    fn binary_and_generic_paths_agree() {
        // The packed path is used for p = 2; compare with a hand-computed form.
        let a = m(2, &[vec![1, 0, 1, 1], vec![1, 1, 0, 1], vec![0, 1, 1, 0]]);
        let rr = a.rref();
        assert_eq!(rr.rank, 2);
        assert_eq!(rr.pivots, vec![0, 1]);
        assert_eq!(
            rr.matrix,
            m(2, &[vec![1, 0, 1, 1], vec![0, 1, 1, 0], vec![0, 0, 0, 0]])
        );
    }
}
