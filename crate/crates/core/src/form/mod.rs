//! Forms `b(u, v) = u·B·v^{σt}` with `B = s·B^{σt}`, the congruence
//! primitives that act on them, and the transform log.

mod counters;
mod log;
mod working;

use crate::matrix::Matrix;
use crate::scalar::{DivisionRing, Sign};
use crate::{Error, Result};

pub use counters::{CountingRing, OpCounters};
pub use log::{materialize, op_matrix, parse_slp, to_slp, ElementaryOp, TransformLog};
pub use working::WorkingForm;

/// A square matrix `B` with its sign `s`, validated to satisfy
/// `B = s·B^{σt}`. The involution `σ` is the ring's.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianForm<R: DivisionRing> {
    matrix: Matrix<R>,
    sign: Sign,
}

impl<R: DivisionRing> HermitianForm<R> {
    pub fn new(matrix: Matrix<R>, sign: Sign) -> Result<Self> {
        if !matrix.is_square() {
            return Err(crate::MatrixError::NotSquare(matrix.rows(), matrix.cols()).into());
        }
        if let Some((row, col)) = first_violation(&matrix, sign) {
            return Err(Error::NotHermitian { row: row + 1, col: col + 1, sign });
        }
        Ok(HermitianForm { matrix, sign })
    }

    /// Builds the form after detecting `s` from the matrix. A zero matrix
    /// admits either sign; `+1` is chosen. Returns the form and whether a
    /// nonzero entry was found.
    pub fn with_detected_sign(matrix: Matrix<R>) -> Result<(Self, bool)> {
        if !matrix.is_square() {
            return Err(crate::MatrixError::NotSquare(matrix.rows(), matrix.cols()).into());
        }
        let probes = default_probes(matrix.ring());
        match detect_s_sigma(&matrix, &probes)? {
            None => Ok((HermitianForm::new(matrix, Sign::Plus)?, false)),
            Some(found) => {
                let ring = matrix.ring().clone();
                for (alpha, image) in &found.sigma_samples {
                    if *image != ring.sigma(alpha) {
                        return Err(Error::InvolutionMismatch {
                            declared: ring.involution(),
                            probe: ring.format(alpha),
                        });
                    }
                }
                Ok((HermitianForm::new(matrix, found.sign)?, true))
            }
        }
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<R> {
        self.matrix
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn ring(&self) -> &R {
        self.matrix.ring()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `b(u, v) = u·B·v^{σt}`.
    pub fn evaluate(&self, u: &[R::Elem], v: &[R::Elem]) -> Result<R::Elem> {
        evaluate(&self.matrix, u, v)
    }
}

/// First `(i, j)` (row-major, 0-based) with `B_ij ≠ s·σ(B_ji)`.
fn first_violation<R: DivisionRing>(b: &Matrix<R>, sign: Sign) -> Option<(usize, usize)> {
    let ring = b.ring();
    let n = b.rows();
    for i in 0..n {
        for j in 0..n {
            if b[(i, j)] != sign.apply(ring, &ring.sigma(&b[(j, i)])) {
                return Some((i, j));
            }
        }
    }
    None
}

/// `true` iff `B = s·B^{σt}` entrywise.
pub fn validate<R: DivisionRing>(b: &Matrix<R>, sign: Sign) -> bool {
    b.is_square() && first_violation(b, sign).is_none()
}

/// `u·B·v^{σt}` for row vectors `u`, `v`.
pub fn evaluate<R: DivisionRing>(b: &Matrix<R>, u: &[R::Elem], v: &[R::Elem]) -> Result<R::Elem> {
    let n = b.rows();
    if u.len() != n || v.len() != n || b.cols() != n {
        return Err(Error::Usage(format!(
            "vector lengths {} and {} do not match dimension {n}",
            u.len(),
            v.len()
        )));
    }
    let ring = b.ring();
    let mut acc = ring.zero();
    for (i, ui) in u.iter().enumerate() {
        if ring.is_zero(ui) {
            continue;
        }
        let mut row_sum = ring.zero();
        for (j, vj) in v.iter().enumerate() {
            row_sum = ring.add(&row_sum, &ring.mul(&b[(i, j)], &ring.sigma(vj)));
        }
        acc = ring.add(&acc, &ring.mul(ui, &row_sum));
    }
    Ok(acc)
}

/// The sign found by [`detect_s_sigma`] and the induced `(α, σ(α))` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectedSymmetry<E> {
    pub sign: Sign,
    /// First basis pair `(i, j)` (0-based) with `b(e_i, e_j) ≠ 0`.
    pub pair: (usize, usize),
    pub sigma_samples: Vec<(E, E)>,
}

/// Reads `s` and samples of `σ` off the form.
///
/// Scans basis pairs `(e_i, e_j)` in row-major order for the first with
/// `b(u, v) ≠ 0`. Then `s = b(v, u)⁻¹·σ(b(u, v))` and, for each probe `α`,
/// `σ(α) = b(u, v)⁻¹·b(u, α·v)`. Returns `None` when `B = 0`.
pub fn detect_s_sigma<R: DivisionRing>(
    b: &Matrix<R>,
    probes: &[R::Elem],
) -> Result<Option<DetectedSymmetry<R::Elem>>> {
    let ring = b.ring();
    let n = b.rows();
    let basis = |k: usize| -> Vec<R::Elem> {
        (0..n).map(|t| if t == k { ring.one() } else { ring.zero() }).collect()
    };
    let Some((i, j)) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| !ring.is_zero(&b[(i, j)]))
    else {
        return Ok(None);
    };
    let (u, v) = (basis(i), basis(j));
    let b_uv = evaluate(b, &u, &v)?;
    let b_vu = evaluate(b, &v, &u)?;
    let s_elem = ring.mul(&ring.inv(&b_vu)?, &ring.sigma(&b_uv));
    let sign = if s_elem == ring.one() {
        Sign::Plus
    } else if s_elem == ring.neg(&ring.one()) {
        Sign::Minus
    } else {
        return Err(Error::Usage(format!(
            "matrix is not Hermitian for any sign: b(v,u)^-1 * sigma(b(u,v)) = {}",
            ring.format(&s_elem)
        )));
    };
    let b_uv_inv = ring.inv(&b_uv)?;
    let mut sigma_samples = Vec::with_capacity(probes.len());
    for alpha in probes {
        let alpha_v: Vec<R::Elem> = v.iter().map(|x| ring.mul(alpha, x)).collect();
        let image = ring.mul(&b_uv_inv, &evaluate(b, &u, &alpha_v)?);
        sigma_samples.push((alpha.clone(), image));
    }
    Ok(Some(DetectedSymmetry { sign, pair: (i, j), sigma_samples }))
}

/// Probe points used when detecting the involution from a file: the small
/// integers and, for extension rings, the generators.
pub fn default_probes<R: DivisionRing>(ring: &R) -> Vec<R::Elem> {
    let mut probes = vec![ring.one(), ring.from_i64(2)];
    for literal in ["x", "i", "j", "k", "1+x"] {
        if let Ok(e) = ring.parse(literal) {
            probes.push(e);
        }
    }
    probes
}
