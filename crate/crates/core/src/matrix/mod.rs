//! Dense matrices over a division ring.
//!
//! A [`Matrix`] carries its ring, so products and sums of matrices over
//! different rings are rejected with [`MatrixError::RingMismatch`]. Row
//! operations multiply from the left and column operations from the right,
//! which is what keeps the code correct over noncommutative rings.

mod echelon;
mod mul;

use std::fmt;
use std::ops::{Index, IndexMut, Range};

use thiserror::Error;

use crate::scalar::{DivisionRing, ScalarError};

pub use echelon::Reduction;
pub use mul::{MulBackend, DEFAULT_STRASSEN_CUTOFF};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrices are defined over different rings")]
    RingMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("expected a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("Strassen cutoff must be at least 2, got {0}")]
    InvalidCutoff(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, PartialEq)]
pub struct Matrix<R: DivisionRing> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: DivisionRing> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.ring.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<R: DivisionRing> Index<(usize, usize)> for Matrix<R> {
    type Output = R::Elem;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &R::Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<R: DivisionRing> IndexMut<(usize, usize)> for Matrix<R> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R::Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<R: DivisionRing> Matrix<R> {
    pub fn zeros(ring: R, rows: usize, cols: usize) -> Self {
        let data = vec![ring.zero(); rows * cols];
        Matrix { ring, rows, cols, data }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m[(i, i)] = m.ring.one();
        }
        m
    }

    pub fn from_vec(ring: R, rows: usize, cols: usize, data: Vec<R::Elem>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch {
                op: "from_vec",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(Matrix { ring, rows, cols, data })
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(MatrixError::ShapeMismatch {
                op: "from_rows",
                left: (r, c),
                right: (1, bad.len()),
            });
        }
        let data = rows.into_iter().flatten().collect();
        Ok(Matrix { ring, rows: r, cols: c, data })
    }

    /// Builds a matrix from small integers, reduced into the ring.
    pub fn from_i64_rows(ring: R, rows: &[&[i64]]) -> Result<Self, MatrixError> {
        let converted = rows
            .iter()
            .map(|row| row.iter().map(|&n| ring.from_i64(n)).collect())
            .collect();
        Matrix::from_rows(ring, converted)
    }

    pub fn from_fn(ring: R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { ring, rows, cols, data }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(ring: R, entries: &[R::Elem]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(ring, n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<R::Elem> {
        self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [R::Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Reinterprets the entries over another ring with the same element type
    /// (used to swap in an instrumented ring).
    pub fn with_ring<S: DivisionRing<Elem = R::Elem>>(self, ring: S) -> Matrix<S> {
        Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data,
        }
    }

    pub(crate) fn check_same_ring(&self, other: &Self) -> Result<(), MatrixError> {
        if self.ring != other.ring {
            return Err(MatrixError::RingMismatch);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.ring.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        self.ring.is_one(x)
                    } else {
                        self.ring.is_zero(x)
                    }
                })
            })
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Self {
        let ring = self.ring.clone();
        Matrix::from_fn(ring, rows.len(), cols.len(), |i, j| {
            self[(rows.start + i, cols.start + j)].clone()
        })
    }

    /// Overwrites the block starting at `(row, col)` with `block`.
    pub fn set_block(&mut self, row: usize, col: usize, block: &Self) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row + i, col + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Copy zero-padded (or truncated) to `rows x cols`.
    pub fn resized(&self, rows: usize, cols: usize) -> Self {
        let zero = self.ring.zero();
        Matrix::from_fn(self.ring.clone(), rows, cols, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else {
                zero.clone()
            }
        })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// `M^{σt}`: entry `(i, j)` is `σ(M_ji)`.
    pub fn sigma_transpose(&self) -> Self {
        Matrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self.ring.sigma(&self[(j, i)]))
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip_with(other, "add", |r, x, y| r.add(x, y))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip_with(other, "sub", |r, x, y| r.sub(x, y))
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(&R, &R::Elem, &R::Elem) -> R::Elem,
    ) -> Result<Self, MatrixError> {
        self.check_same_ring(other)?;
        if self.shape() != other.shape() {
            return Err(MatrixError::ShapeMismatch { op, left: self.shape(), right: other.shape() });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| f(&self.ring, x, y))
            .collect();
        Ok(Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|x| self.ring.neg(x)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `λ·M`, scalar on the left.
    pub fn scale_left(&self, lambda: &R::Elem) -> Self {
        let data = self.data.iter().map(|x| self.ring.mul(lambda, x)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_ring(other)?;
        let mut m = Matrix::zeros(self.ring.clone(), self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        Ok(m)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_target ← row_target + λ·row_source`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, lambda: &R::Elem) {
        assert_ne!(target, source);
        for j in 0..self.cols {
            let t = self.ring.mul(lambda, &self[(source, j)]);
            let sum = self.ring.add(&self[(target, j)], &t);
            self[(target, j)] = sum;
        }
    }

    /// [`add_row_multiple`](Self::add_row_multiple) restricted to columns
    /// `start..`, for a source row that vanishes before `start`.
    pub(crate) fn add_row_multiple_from(&mut self, target: usize, source: usize, start: usize, lambda: &R::Elem) {
        assert_ne!(target, source);
        for j in start..self.cols {
            let t = self.ring.mul(lambda, &self[(source, j)]);
            let sum = self.ring.add(&self[(target, j)], &t);
            self[(target, j)] = sum;
        }
    }

    /// `col_target ← col_target + col_source·λ`.
    pub fn add_col_multiple(&mut self, target: usize, source: usize, lambda: &R::Elem) {
        assert_ne!(target, source);
        for i in 0..self.rows {
            let t = self.ring.mul(&self[(i, source)], lambda);
            let sum = self.ring.add(&self[(i, target)], &t);
            self[(i, target)] = sum;
        }
    }

    /// `row_i ← λ·row_i`.
    pub fn scale_row(&mut self, i: usize, lambda: &R::Elem) {
        for j in 0..self.cols {
            self[(i, j)] = self.ring.mul(lambda, &self[(i, j)]);
        }
    }

    /// `col_j ← col_j·λ`.
    pub fn scale_col(&mut self, j: usize, lambda: &R::Elem) {
        for i in 0..self.rows {
            self[(i, j)] = self.ring.mul(&self[(i, j)], lambda);
        }
    }

    /// Formats entries with the ring's literal syntax.
    pub fn to_literal_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| self.ring.format(x)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests;
