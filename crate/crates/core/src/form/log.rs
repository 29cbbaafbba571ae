use crate::matrix::Matrix;
use crate::scalar::{DivisionRing, ScalarError};
use crate::{Error, Result};

/// One left factor of the transform. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementaryOp<E> {
    /// `row_index ← λ·row_index`.
    Scale { index: usize, factor: E },
    Swap { i: usize, j: usize },
    /// `I + λ·E_{target,source}`: `row_target ← row_target + λ·row_source`.
    Transvect { target: usize, source: usize, factor: E },
    /// `I ⊕ T ⊕ I` with the square `T` (row-major, `size²` entries) placed
    /// at rows and columns `offset..offset + size`.
    Block { offset: usize, size: usize, entries: Vec<E> },
}

/// The transform `A` as a straight-line program of elementary congruences,
/// in application order: if the operations are `E₁, …, E_n` then
/// `A = E_n ⋯ E₂·E₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformLog<E> {
    dim: usize,
    ops: Vec<ElementaryOp<E>>,
}

impl<E: Clone> TransformLog<E> {
    pub fn new(dim: usize) -> Self {
        TransformLog { dim, ops: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ops(&self) -> &[ElementaryOp<E>] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, op: ElementaryOp<E>) {
        self.ops.push(op);
    }

    pub fn extend(&mut self, other: TransformLog<E>) {
        assert_eq!(self.dim, other.dim);
        self.ops.extend(other.ops);
    }

    /// Drops the last operation; used by tamper tests.
    pub fn pop(&mut self) -> Option<ElementaryOp<E>> {
        self.ops.pop()
    }

    /// Operations `range` as their own log.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        TransformLog { dim: self.dim, ops: self.ops[range].to_vec() }
    }
}

/// Left-multiplies `acc` by the elementary matrix of `op`.
pub(crate) fn apply_op_left<R: DivisionRing>(ring: &R, acc: &mut Matrix<R>, op: &ElementaryOp<R::Elem>) -> Result<()> {
    match op {
        ElementaryOp::Scale { index, factor } => acc.scale_row(*index, factor),
        ElementaryOp::Swap { i, j } => acc.swap_rows(*i, *j),
        ElementaryOp::Transvect { target, source, factor } => acc.add_row_multiple(*target, *source, factor),
        ElementaryOp::Block { offset, size, entries } => {
            let t = Matrix::from_vec(ring.clone(), *size, *size, entries.clone())?;
            let rows = acc.submatrix(*offset..offset + size, 0..acc.cols());
            let new_rows = t.matmul_classical(&rows)?;
            acc.set_block(*offset, 0, &new_rows);
        }
    }
    Ok(())
}

/// The matrix `A` of a log: the product of its operations in application
/// order.
pub fn materialize<R: DivisionRing>(ring: &R, log: &TransformLog<R::Elem>) -> Result<Matrix<R>> {
    let mut acc = Matrix::identity(ring.clone(), log.dim);
    for op in &log.ops {
        check_bounds(log.dim, op)?;
        apply_op_left(ring, &mut acc, op)?;
    }
    Ok(acc)
}

/// The elementary matrix of a single operation.
pub fn op_matrix<R: DivisionRing>(ring: &R, dim: usize, op: &ElementaryOp<R::Elem>) -> Result<Matrix<R>> {
    check_bounds(dim, op)?;
    let mut m = Matrix::identity(ring.clone(), dim);
    apply_op_left(ring, &mut m, op)?;
    Ok(m)
}

fn check_bounds<E>(dim: usize, op: &ElementaryOp<E>) -> Result<()> {
    let ok = match op {
        ElementaryOp::Scale { index, .. } => *index < dim,
        ElementaryOp::Swap { i, j } => *i < dim && *j < dim,
        ElementaryOp::Transvect { target, source, .. } => *target < dim && *source < dim && target != source,
        ElementaryOp::Block { offset, size, entries } => offset + size <= dim && entries.len() == size * size,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Usage(format!("operation out of range for dimension {dim}")))
    }
}

/// Line-oriented text form of a log, 1-based indices:
///
/// ```text
/// dim 3
/// scale 2 5
/// swap 1 3
/// transvect 3 1 -2
/// block 1 2 1 1 1 -1
/// ```
///
/// `transvect k i λ` adds `λ` times row `i` to row `k`; `block o n t…` applies
/// the `n×n` matrix `t` (row-major) at rows `o..o+n-1`.
pub fn to_slp<R: DivisionRing>(ring: &R, log: &TransformLog<R::Elem>) -> Vec<String> {
    let mut lines = Vec::with_capacity(log.ops.len() + 1);
    lines.push(format!("dim {}", log.dim));
    for op in &log.ops {
        lines.push(match op {
            ElementaryOp::Scale { index, factor } => format!("scale {} {}", index + 1, ring.format(factor)),
            ElementaryOp::Swap { i, j } => format!("swap {} {}", i + 1, j + 1),
            ElementaryOp::Transvect { target, source, factor } => {
                format!("transvect {} {} {}", target + 1, source + 1, ring.format(factor))
            }
            ElementaryOp::Block { offset, size, entries } => {
                let body: Vec<String> = entries.iter().map(|e| ring.format(e)).collect();
                format!("block {} {} {}", offset + 1, size, body.join(" "))
            }
        });
    }
    lines
}

/// Parses the output of [`to_slp`].
pub fn parse_slp<R: DivisionRing>(ring: &R, text: &str) -> Result<TransformLog<R::Elem>> {
    let bad = |n: usize, why: &str| Error::Usage(format!("slp line {n}: {why}"));
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (n0, head) = lines.next().ok_or_else(|| bad(1, "missing dim line"))?;
    let dim: usize = head
        .strip_prefix("dim ")
        .and_then(|d| d.trim().parse().ok())
        .ok_or_else(|| bad(n0, "expected `dim <d>`"))?;
    let mut log = TransformLog::new(dim);
    for (n, line) in lines {
        let words: Vec<&str> = line.split_whitespace().collect();
        let index = |w: &str| -> Result<usize> {
            w.parse::<usize>()
                .ok()
                .filter(|&i| i >= 1)
                .map(|i| i - 1)
                .ok_or_else(|| bad(n, "bad index"))
        };
        let elem = |w: &str| -> Result<R::Elem> { ring.parse(w).map_err(|e: ScalarError| bad(n, &e.to_string())) };
        let op = match words.as_slice() {
            ["scale", i, f] => ElementaryOp::Scale { index: index(i)?, factor: elem(f)? },
            ["swap", i, j] => ElementaryOp::Swap { i: index(i)?, j: index(j)? },
            ["transvect", k, i, f] => ElementaryOp::Transvect { target: index(k)?, source: index(i)?, factor: elem(f)? },
            ["block", o, s, rest @ ..] => {
                let size: usize = s.parse().map_err(|_| bad(n, "bad block size"))?;
                if rest.len() != size * size {
                    return Err(bad(n, "wrong number of block entries"));
                }
                let entries = rest.iter().map(|w| elem(w)).collect::<Result<Vec<_>>>()?;
                ElementaryOp::Block { offset: index(o)?, size, entries }
            }
            _ => return Err(bad(n, "unknown operation")),
        };
        check_bounds(dim, &op).map_err(|_| bad(n, "operation out of range"))?;
        log.push(op);
    }
    Ok(log)
}
