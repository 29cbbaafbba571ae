use rayon::prelude::*;

use super::{Matrix, MatrixError};
use crate::scalar::DivisionRing;

pub const DEFAULT_STRASSEN_CUTOFF: usize = 64;

/// How matrix products are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MulBackend {
    Classical,
    /// Strassen's recursion, falling back to the classical product once any
    /// dimension is at most `cutoff`. With `parallel` the seven products of
    /// each level are evaluated on the rayon pool; the result is identical.
    Strassen { cutoff: usize, parallel: bool },
}

impl Default for MulBackend {
    fn default() -> Self {
        MulBackend::Strassen { cutoff: DEFAULT_STRASSEN_CUTOFF, parallel: false }
    }
}

impl MulBackend {
    /// `0` selects the classical product.
    pub fn from_cutoff(cutoff: usize) -> Result<Self, MatrixError> {
        match cutoff {
            0 => Ok(MulBackend::Classical),
            1 => Err(MatrixError::InvalidCutoff(1)),
            c => Ok(MulBackend::Strassen { cutoff: c, parallel: false }),
        }
    }
}

impl<R: DivisionRing> Matrix<R> {
    fn check_mul(&self, rhs: &Self, op: &'static str) -> Result<(), MatrixError> {
        self.check_same_ring(rhs)?;
        if self.cols != rhs.rows {
            return Err(MatrixError::ShapeMismatch { op, left: self.shape(), right: rhs.shape() });
        }
        Ok(())
    }

    /// `(LR)_ij = Σ_k L_ik·R_kj`, factors kept in that order.
    pub fn matmul_classical(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.check_mul(rhs, "matmul")?;
        Ok(self.classical_unchecked(rhs))
    }

    fn classical_unchecked(&self, rhs: &Self) -> Self {
        let ring = &self.ring;
        let (m, k, n) = (self.rows, self.cols, rhs.cols);
        let mut out = Matrix::zeros(ring.clone(), m, n);
        if k == 0 {
            return out;
        }
        for i in 0..m {
            let lrow = self.row(i);
            let orow = &mut out.data[i * n..(i + 1) * n];
            // first term initialises, the rest accumulate
            let rrow = rhs.row(0);
            for j in 0..n {
                orow[j] = ring.mul(&lrow[0], &rrow[j]);
            }
            for (t, l) in lrow.iter().enumerate().skip(1) {
                let rrow = rhs.row(t);
                for j in 0..n {
                    let prod = ring.mul(l, &rrow[j]);
                    orow[j] = ring.add(&orow[j], &prod);
                }
            }
        }
        out
    }

    pub fn matmul_strassen(&self, rhs: &Self, cutoff: usize) -> Result<Self, MatrixError> {
        if cutoff < 2 {
            return Err(MatrixError::InvalidCutoff(cutoff));
        }
        self.check_mul(rhs, "matmul")?;
        Ok(strassen(self, rhs, cutoff, false))
    }

    pub fn matmul_with(&self, rhs: &Self, backend: MulBackend) -> Result<Self, MatrixError> {
        match backend {
            MulBackend::Classical => self.matmul_classical(rhs),
            MulBackend::Strassen { cutoff, parallel } => {
                if cutoff < 2 {
                    return Err(MatrixError::InvalidCutoff(cutoff));
                }
                self.check_mul(rhs, "matmul")?;
                Ok(strassen(self, rhs, cutoff, parallel))
            }
        }
    }
}

fn quadrants<R: DivisionRing>(m: &Matrix<R>) -> [Matrix<R>; 4] {
    let (hr, hc) = (m.rows / 2, m.cols / 2);
    [
        m.submatrix(0..hr, 0..hc),
        m.submatrix(0..hr, hc..m.cols),
        m.submatrix(hr..m.rows, 0..hc),
        m.submatrix(hr..m.rows, hc..m.cols),
    ]
}

fn sum<R: DivisionRing>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    a.add(b).expect("quadrant shapes agree")
}

fn diff<R: DivisionRing>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    a.sub(b).expect("quadrant shapes agree")
}

fn strassen<R: DivisionRing>(a: &Matrix<R>, b: &Matrix<R>, cutoff: usize, parallel: bool) -> Matrix<R> {
    let (m, k, n) = (a.rows, a.cols, b.cols);
    if m <= cutoff || k <= cutoff || n <= cutoff {
        return a.classical_unchecked(b);
    }
    // pad each dimension to the next even number
    let (m2, k2, n2) = (m + m % 2, k + k % 2, n + n % 2);
    let ap;
    let a = if (m2, k2) != (m, k) {
        ap = a.resized(m2, k2);
        &ap
    } else {
        a
    };
    let bp;
    let b = if (k2, n2) != (k, n) {
        bp = b.resized(k2, n2);
        &bp
    } else {
        b
    };

    let [a11, a12, a21, a22] = quadrants(a);
    let [b11, b12, b21, b22] = quadrants(b);

    // left factors always come from A and right factors from B
    let product = |t: usize| -> Matrix<R> {
        let (l, r) = match t {
            0 => (sum(&a11, &a22), sum(&b11, &b22)),
            1 => (sum(&a21, &a22), b11.clone()),
            2 => (a11.clone(), diff(&b12, &b22)),
            3 => (a22.clone(), diff(&b21, &b11)),
            4 => (sum(&a11, &a12), b22.clone()),
            5 => (diff(&a21, &a11), sum(&b11, &b12)),
            6 => (diff(&a12, &a22), sum(&b21, &b22)),
            _ => unreachable!(),
        };
        strassen(&l, &r, cutoff, parallel)
    };
    let p: Vec<Matrix<R>> = if parallel {
        (0..7).into_par_iter().map(product).collect()
    } else {
        (0..7).map(product).collect()
    };

    let c11 = sum(&diff(&sum(&p[0], &p[3]), &p[4]), &p[6]);
    let c12 = sum(&p[2], &p[4]);
    let c21 = sum(&p[1], &p[3]);
    let c22 = sum(&sum(&diff(&p[0], &p[1]), &p[2]), &p[5]);

    let mut c = Matrix::zeros(a.ring.clone(), m2, n2);
    let (hr, hc) = (m2 / 2, n2 / 2);
    c.set_block(0, 0, &c11);
    c.set_block(0, hc, &c12);
    c.set_block(hr, 0, &c21);
    c.set_block(hr, hc, &c22);
    if (m2, n2) != (m, n) {
        c = c.resized(m, n);
    }
    c
}
