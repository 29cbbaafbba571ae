use crate::form::{materialize, OpCounters, TransformLog};
use crate::matrix::Matrix;
use crate::scalar::{DivisionRing, Sign};
use crate::Result;

/// One summand of the standard form: a `1×1` block or
/// `J = [[0, 1], [s, 0]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardBlock<E> {
    Scalar(E),
    J,
}

impl<E> StandardBlock<E> {
    pub fn size(&self) -> usize {
        match self {
            StandardBlock::Scalar(_) => 1,
            StandardBlock::J => 2,
        }
    }
}

/// `A·B·A^{σt} = B₁ ⊕ ⋯ ⊕ B_m` with `A` kept as a log.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<R: DivisionRing> {
    pub ring: R,
    pub sign: Sign,
    pub dim: usize,
    /// In diagonal order; zero blocks (the radical) come last.
    pub blocks: Vec<StandardBlock<R::Elem>>,
    pub log: TransformLog<R::Elem>,
    pub counters: OpCounters,
    pub radical_dim: usize,
    /// Deepest nesting of recursive block steps (0 for elimination).
    pub recursion_depth: usize,
}

impl<R: DivisionRing> Decomposition<R> {
    pub fn rank(&self) -> usize {
        self.dim - self.radical_dim
    }

    pub fn j_block_count(&self) -> usize {
        self.blocks.iter().filter(|b| matches!(b, StandardBlock::J)).count()
    }

    /// The transform `A`.
    pub fn transform(&self) -> Result<Matrix<R>> {
        materialize(&self.ring, &self.log)
    }

    /// The block-diagonal matrix `B₁ ⊕ ⋯ ⊕ B_m`.
    pub fn block_matrix(&self) -> Matrix<R> {
        block_diagonal(&self.ring, self.sign, &self.blocks)
    }

    /// `self` with the same blocks and log, identical apart from counters and
    /// recursion depth.
    pub fn same_result(&self, other: &Self) -> bool {
        self.blocks == other.blocks
            && self.log == other.log
            && self.radical_dim == other.radical_dim
            && self.sign == other.sign
            && self.dim == other.dim
    }
}

pub(crate) fn block_diagonal<R: DivisionRing>(ring: &R, sign: Sign, blocks: &[StandardBlock<R::Elem>]) -> Matrix<R> {
    let n: usize = blocks.iter().map(StandardBlock::size).sum();
    let mut m = Matrix::zeros(ring.clone(), n, n);
    let mut p = 0;
    for block in blocks {
        match block {
            StandardBlock::Scalar(x) => m[(p, p)] = x.clone(),
            StandardBlock::J => {
                m[(p, p + 1)] = ring.one();
                m[(p + 1, p)] = sign.to_elem(ring);
            }
        }
        p += block.size();
    }
    m
}
