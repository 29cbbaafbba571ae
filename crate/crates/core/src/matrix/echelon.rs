use super::{Matrix, MatrixError};
use crate::scalar::DivisionRing;

/// Result of an elimination: an invertible `transform` and the `rank`, with
/// `reduced` the transformed matrix (`A·M` for row reduction, `M·A` for
/// column reduction).
#[derive(Debug, Clone)]
pub struct Reduction<R: DivisionRing> {
    pub transform: Matrix<R>,
    pub rank: usize,
    pub reduced: Matrix<R>,
}

impl<R: DivisionRing> Matrix<R> {
    /// Finds an invertible `A` such that the first `rank` rows of `A·M` are
    /// linearly independent and the rest are zero.
    ///
    /// Columns are scanned left to right; the pivot is the first unused row
    /// (in current order) with a nonzero entry in that column. Row updates are
    /// `row_k ← row_k + λ·row_pivot`.
    pub fn left_row_reduce(&self) -> Reduction<R> {
        let ring = self.ring.clone();
        let mut m = self.clone();
        let mut a = Matrix::identity(ring.clone(), self.rows);
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| !ring.is_zero(&m[(r, col)])) else {
                continue;
            };
            m.swap_rows(rank, p);
            a.swap_rows(rank, p);
            let pivot_inv = ring.inv(&m[(rank, col)]).expect("pivot is nonzero");
            for k in rank + 1..m.rows {
                if ring.is_zero(&m[(k, col)]) {
                    continue;
                }
                let lambda = ring.neg(&ring.mul(&m[(k, col)], &pivot_inv));
                m.add_row_multiple_from(k, rank, col, &lambda);
                a.add_row_multiple(k, rank, &lambda);
            }
            rank += 1;
        }
        Reduction { transform: a, rank, reduced: m }
    }

    /// Mirror image of [`left_row_reduce`](Self::left_row_reduce): an
    /// invertible `A` with `M·A = [C 0]`, the first `rank` columns independent.
    /// Column updates are `col_k ← col_k + col_pivot·λ`.
    pub fn right_column_reduce(&self) -> Reduction<R> {
        let ring = self.ring.clone();
        let mut m = self.clone();
        let mut a = Matrix::identity(ring.clone(), self.cols);
        let mut rank = 0;
        for row in 0..m.rows {
            if rank == m.cols {
                break;
            }
            let Some(p) = (rank..m.cols).find(|&c| !ring.is_zero(&m[(row, c)])) else {
                continue;
            };
            m.swap_cols(rank, p);
            a.swap_cols(rank, p);
            let pivot_inv = ring.inv(&m[(row, rank)]).expect("pivot is nonzero");
            for k in rank + 1..m.cols {
                if ring.is_zero(&m[(row, k)]) {
                    continue;
                }
                let lambda = ring.neg(&ring.mul(&pivot_inv, &m[(row, k)]));
                m.add_col_multiple(k, rank, &lambda);
                a.add_col_multiple(k, rank, &lambda);
            }
            rank += 1;
        }
        Reduction { transform: a, rank, reduced: m }
    }

    pub fn rank(&self) -> usize {
        let ring = &self.ring;
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| !ring.is_zero(&m[(r, col)])) else {
                continue;
            };
            m.swap_rows(rank, p);
            let pivot_inv = ring.inv(&m[(rank, col)]).expect("pivot is nonzero");
            for k in rank + 1..m.rows {
                if ring.is_zero(&m[(k, col)]) {
                    continue;
                }
                let lambda = ring.neg(&ring.mul(&m[(k, col)], &pivot_inv));
                m.add_row_multiple_from(k, rank, col, &lambda);
            }
            rank += 1;
        }
        rank
    }

    /// Gauss–Jordan inverse by left row operations on `[M | I]`.
    pub fn invert(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let ring = self.ring.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Matrix::identity(ring.clone(), n);
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !ring.is_zero(&m[(r, col)]))
                .ok_or(MatrixError::Singular)?;
            m.swap_rows(col, p);
            inv.swap_rows(col, p);
            let pivot_inv = ring.inv(&m[(col, col)])?;
            m.scale_row(col, &pivot_inv);
            inv.scale_row(col, &pivot_inv);
            for k in 0..n {
                if k == col || ring.is_zero(&m[(k, col)]) {
                    continue;
                }
                let lambda = ring.neg(&m[(k, col)]);
                m.add_row_multiple_from(k, col, col, &lambda);
                inv.add_row_multiple(k, col, &lambda);
            }
        }
        Ok(inv)
    }
}
