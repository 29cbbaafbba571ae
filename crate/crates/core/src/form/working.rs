use crate::decomposition::StandardBlock;
use crate::matrix::{Matrix, MulBackend};
use crate::scalar::{DivisionRing, Sign};
use crate::{Error, Result};

use super::{ElementaryOp, HermitianForm, TransformLog};

/// A form under mutation. Every primitive replaces `B` by `A·B·A^{σt}` for
/// an elementary `A` and appends `A` to the log, so `B_current` always
/// equals `materialize(log)·B_input·materialize(log)^{σt}`.
#[derive(Debug, Clone)]
pub struct WorkingForm<R: DivisionRing> {
    b: Matrix<R>,
    sign: Sign,
    log: TransformLog<R::Elem>,
}

impl<R: DivisionRing> WorkingForm<R> {
    pub fn new(form: HermitianForm<R>) -> Self {
        let sign = form.sign();
        let b = form.into_matrix();
        let log = TransformLog::new(b.rows());
        WorkingForm { b, sign, log }
    }

    /// Starts from a matrix assumed to satisfy `B = s·B^{σt}`.
    pub(crate) fn from_matrix(b: Matrix<R>, sign: Sign) -> Self {
        let log = TransformLog::new(b.rows());
        WorkingForm { b, sign, log }
    }

    /// Resumes from a matrix reached through `log`.
    pub(crate) fn from_parts(b: Matrix<R>, sign: Sign, log: TransformLog<R::Elem>) -> Self {
        WorkingForm { b, sign, log }
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.b
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn dim(&self) -> usize {
        self.b.rows()
    }

    pub fn ring(&self) -> &R {
        self.b.ring()
    }

    pub fn log(&self) -> &TransformLog<R::Elem> {
        &self.log
    }

    pub fn into_parts(self) -> (Matrix<R>, TransformLog<R::Elem>) {
        (self.b, self.log)
    }

    pub(crate) fn b_mut(&mut self) -> &mut Matrix<R> {
        &mut self.b
    }

    pub(crate) fn log_mut(&mut self) -> &mut TransformLog<R::Elem> {
        &mut self.log
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim() {
            return Err(Error::Usage(format!("index {} out of range for dimension {}", i + 1, self.dim())));
        }
        Ok(())
    }

    /// Row `i` times `λ` on the left, column `i` times `σ(λ)` on the right.
    pub fn scale_row_column(&mut self, i: usize, lambda: &R::Elem) -> Result<()> {
        self.check_index(i)?;
        if self.ring().is_zero(lambda) {
            return Err(Error::Usage("cannot scale a row-column by zero".into()));
        }
        let sigma_lambda = self.ring().sigma(lambda);
        self.b.scale_row(i, lambda);
        self.b.scale_col(i, &sigma_lambda);
        self.log.push(ElementaryOp::Scale { index: i, factor: lambda.clone() });
        Ok(())
    }

    /// Swaps rows `i`, `j` and columns `i`, `j`; no ring operations.
    pub fn swap_row_columns(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i != j {
            self.b.swap_rows(i, j);
            self.b.swap_cols(i, j);
            self.log.push(ElementaryOp::Swap { i, j });
        }
        Ok(())
    }

    /// Congruence by `I + λ·E_{target,source}`: adds `λ` times row `source`
    /// to row `target` and column `source` times `σ(λ)` to column `target`.
    pub fn transvect(&mut self, target: usize, source: usize, lambda: &R::Elem) -> Result<()> {
        self.check_index(target)?;
        self.check_index(source)?;
        if target == source {
            return Err(Error::Usage("transvection needs distinct rows".into()));
        }
        let sigma_lambda = self.ring().sigma(lambda);
        self.b.add_row_multiple(target, source, lambda);
        self.b.add_col_multiple(target, source, &sigma_lambda);
        self.log.push(ElementaryOp::Transvect { target, source, factor: lambda.clone() });
        Ok(())
    }

    /// Uses the nonzero entry `B_ij` to zero every other entry of row-column
    /// `i`. Requires `i = j` or `B_ii = 0`; in the second case the entries
    /// `B_ij`, `B_ji` (and `B_jj`) are kept.
    pub fn clear_row_column(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        let ring = self.ring().clone();
        if ring.is_zero(&self.b[(i, j)]) {
            return Err(Error::Usage(format!("pivot entry ({}, {}) is zero", i + 1, j + 1)));
        }
        let n = self.dim();
        if i == j {
            let neg_inv = ring.neg(&ring.inv(&self.b[(i, i)])?);
            let mut support = Vec::new();
            let mut lambdas = Vec::new();
            for k in (0..n).filter(|&k| k != i) {
                if !ring.is_zero(&self.b[(k, i)]) {
                    lambdas.push(ring.mul(&self.b[(k, i)], &neg_inv));
                    support.push(k);
                }
            }
            let pivot_row: Vec<R::Elem> = support.iter().map(|&l| self.b[(i, l)].clone()).collect();
            for (a, &k) in support.iter().enumerate() {
                for (c, &l) in support.iter().enumerate() {
                    let t = ring.mul(&lambdas[a], &pivot_row[c]);
                    self.b[(k, l)] = ring.add(&self.b[(k, l)], &t);
                }
            }
            for (&k, lambda) in support.iter().zip(lambdas) {
                self.b[(k, i)] = ring.zero();
                self.b[(i, k)] = ring.zero();
                self.log.push(ElementaryOp::Transvect { target: k, source: i, factor: lambda });
            }
            return Ok(());
        }
        if !ring.is_zero(&self.b[(i, i)]) {
            return Err(Error::Usage(format!(
                "cannot clear row-column {} through an off-diagonal pivot while its diagonal entry is nonzero",
                i + 1
            )));
        }
        let neg_inv = ring.neg(&ring.inv(&self.b[(j, i)])?);
        for k in (0..n).filter(|&k| k != i && k != j) {
            if ring.is_zero(&self.b[(k, i)]) {
                continue;
            }
            let lambda = ring.mul(&self.b[(k, i)], &neg_inv);
            self.transvect(k, j, &lambda)?;
        }
        Ok(())
    }

    /// Congruence by `I ⊕ T ⊕ I` with `T` at `offset`, for a range that is
    /// already decoupled from the rest (all entries linking it to outside
    /// indices are zero), so only the diagonal block changes.
    pub fn apply_block(&mut self, offset: usize, t: &Matrix<R>, backend: MulBackend) -> Result<()> {
        let n = t.rows();
        if !t.is_square() || offset + n > self.dim() {
            return Err(Error::Usage("block transform does not fit".into()));
        }
        let sub = self.b.submatrix(offset..offset + n, offset..offset + n);
        let left = t.matmul_with(&sub, backend)?;
        let new = left.matmul_with(&t.sigma_transpose(), backend)?;
        self.b.set_block(offset, offset, &new);
        self.log.push(ElementaryOp::Block { offset, size: n, entries: t.clone().into_entries() });
        Ok(())
    }

    /// Same congruence as [`apply_block`](Self::apply_block) with
    /// `T = diag(P, Q)`, `Q = I` when absent. Only the blocks touched by `P`
    /// and `Q` are multiplied; the lower-left block is the mirror of the
    /// upper-right one.
    pub(crate) fn apply_block_diagonal(
        &mut self,
        offset: usize,
        n: usize,
        p: &Matrix<R>,
        q: Option<&Matrix<R>>,
        backend: MulBackend,
    ) -> Result<()> {
        let h = p.rows();
        let fits = p.is_square() && h <= n && offset + n <= self.dim();
        if !fits || q.is_some_and(|q| q.rows() != n - h || !q.is_square()) {
            return Err(Error::Usage("block transform does not fit".into()));
        }
        let (top, bottom) = (offset..offset + h, offset + h..offset + n);
        let s11 = self.b.submatrix(top.clone(), top.clone());
        let new11 = p.matmul_with(&s11, backend)?.matmul_with(&p.sigma_transpose(), backend)?;
        self.b.set_block(offset, offset, &new11);
        if h < n {
            let s12 = self.b.submatrix(top.clone(), bottom.clone());
            let mut new12 = p.matmul_with(&s12, backend)?;
            if let Some(q) = q {
                new12 = new12.matmul_with(&q.sigma_transpose(), backend)?;
                let s22 = self.b.submatrix(bottom.clone(), bottom.clone());
                let new22 = q.matmul_with(&s22, backend)?.matmul_with(&q.sigma_transpose(), backend)?;
                self.b.set_block(offset + h, offset + h, &new22);
            }
            let new21 = new12.sigma_transpose().scale_left(&self.sign.to_elem(self.b.ring()));
            self.b.set_block(offset, offset + h, &new12);
            self.b.set_block(offset + h, offset, &new21);
        }

        let mut t = Matrix::identity(self.b.ring().clone(), n);
        t.set_block(0, 0, p);
        if let Some(q) = q {
            t.set_block(h, h, q);
        }
        self.log.push(ElementaryOp::Block { offset, size: n, entries: t.into_entries() });
        Ok(())
    }

    /// Same congruence as [`apply_block`](Self::apply_block) with
    /// `T = I + L`, where `L` sits at rows `row..`, columns `col..` of the
    /// range and those two index sets are disjoint.
    pub(crate) fn apply_shear(
        &mut self,
        offset: usize,
        n: usize,
        row: usize,
        col: usize,
        l: &Matrix<R>,
        backend: MulBackend,
    ) -> Result<()> {
        let (a, c) = l.shape();
        let overlap = row < col + c && col < row + a;
        if offset + n > self.dim() || row + a > n || col + c > n || overlap {
            return Err(Error::Usage("shear does not fit".into()));
        }
        let range = offset..offset + n;
        let (rows, cols) = (offset + row..offset + row + a, offset + col..offset + col + c);

        let lifted = l.matmul_with(&self.b.submatrix(cols.clone(), range.clone()), backend)?;
        let updated_rows = self.b.submatrix(rows.clone(), range.clone()).add(&lifted)?;
        self.b.set_block(rows.start, offset, &updated_rows);
        let lifted = self.b.submatrix(range.clone(), cols).matmul_with(&l.sigma_transpose(), backend)?;
        let updated_cols = self.b.submatrix(range.clone(), rows.clone()).add(&lifted)?;
        self.b.set_block(offset, rows.start, &updated_cols);

        let mut t = Matrix::identity(self.b.ring().clone(), n);
        t.set_block(row, col, l);
        self.log.push(ElementaryOp::Block { offset, size: n, entries: t.into_entries() });
        Ok(())
    }

    /// Splits the decoupled block `[[0, 1], [s, α]]` at `p, p+1`:
    /// `α ≠ 0` gives `[-s·α⁻¹] ⊕ [α]`; `α = 0, s = 1` with `1 ≠ -1` gives
    /// `[2] ⊕ [-2]`; otherwise the block stays as `J`.
    pub fn standardize_at(&mut self, p: usize) -> Result<Vec<StandardBlock<R::Elem>>> {
        let ring = self.ring().clone();
        let alpha = self.b[(p + 1, p + 1)].clone();
        if !ring.is_zero(&alpha) {
            let neg_inv = ring.neg(&ring.inv(&alpha)?);
            let first = self.sign.apply(&ring, &neg_inv);
            self.log.push(ElementaryOp::Transvect { target: p, source: p + 1, factor: neg_inv });
            self.b[(p, p)] = first.clone();
            self.b[(p, p + 1)] = ring.zero();
            self.b[(p + 1, p)] = ring.zero();
            return Ok(vec![StandardBlock::Scalar(first), StandardBlock::Scalar(alpha)]);
        }
        if self.sign == Sign::Plus && !ring.has_char_two() {
            let (one, minus_one) = (ring.one(), ring.from_i64(-1));
            self.log.push(ElementaryOp::Block {
                offset: p,
                size: 2,
                entries: vec![one.clone(), one.clone(), one, minus_one],
            });
            let (two, minus_two) = (ring.from_i64(2), ring.from_i64(-2));
            self.b[(p, p)] = two.clone();
            self.b[(p + 1, p + 1)] = minus_two.clone();
            self.b[(p, p + 1)] = ring.zero();
            self.b[(p + 1, p)] = ring.zero();
            return Ok(vec![StandardBlock::Scalar(two), StandardBlock::Scalar(minus_two)]);
        }
        Ok(vec![StandardBlock::J])
    }
}
