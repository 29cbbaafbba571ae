//! Exact orthogonal decompositions of symmetric, alternating and Hermitian
//! forms over division rings.
//!
//! A form is given by a square matrix `B` with `B = s·B^{σt}` for a sign
//! `s = ±1` and an involution `σ` of the ring. Both decomposers return an
//! invertible `A` (as a replayable [`TransformLog`]) with
//! `A·B·A^{σt} = B₁ ⊕ ⋯ ⊕ B_m`, every `B_i` either `1×1` or the `2×2`
//! block `[[0, 1], [s, 0]]`.
//!
//! - [`gs_decompose`] eliminates one or two row-columns at a time and uses
//!   about `e³/3` additions and multiplications, `e` being the rank.
//! - [`block_decompose`] recurses on halves and spends its time in matrix
//!   products, so it inherits the exponent of the multiplication backend.
//!
//! ```
//! use hermform_core::{decompose_gs, HermitianForm, Matrix, PrimeField, Sign, StandardBlock};
//!
//! let f7 = PrimeField::new(7).unwrap();
//! let b = Matrix::from_i64_rows(f7, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]]).unwrap();
//! let form = HermitianForm::new(b, Sign::Plus).unwrap();
//! let decomp = decompose_gs(&form).unwrap();
//! assert_eq!(
//!     decomp.blocks,
//!     vec![StandardBlock::Scalar(2), StandardBlock::Scalar(5), StandardBlock::Scalar(5)]
//! );
//! ```

pub mod block_decompose;
pub mod form;
pub mod generate;
pub mod gs_decompose;
pub mod matrix;
pub mod postprocess;
pub mod scalar;
pub mod verify;

mod decomposition;

use thiserror::Error;

pub use block_decompose::{decompose_blocks, BlockOptions};
pub use decomposition::{Decomposition, StandardBlock};
pub use form::{CountingRing, ElementaryOp, HermitianForm, OpCounters, TransformLog};
pub use gs_decompose::{decompose_gs, standardize};
pub use matrix::{Matrix, MatrixError, MulBackend};
pub use scalar::{
    BigRational, DivisionRing, Fp2, Involution, PrimeField, QuadExt, Quat, Quaternion, Rational, RingDescriptor,
    RingKind, ScalarError, Sign,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    /// 1-based position of the first entry violating `B = s·B^{σt}`.
    #[error("matrix is not Hermitian with s = {sign}: entry ({row}, {col}) differs from s*sigma of its mirror")]
    NotHermitian { row: usize, col: usize, sign: Sign },
    #[error("detected involution disagrees with the ring's declared {declared} at probe {probe}")]
    InvolutionMismatch { declared: Involution, probe: String },
    #[error("{0}")]
    Usage(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[cfg(test)]
pub(crate) mod testutil;
