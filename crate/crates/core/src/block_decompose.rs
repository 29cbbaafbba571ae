//! Block-recursive decomposition driven by matrix multiplication.
//!
//! After one radical-detection step the nonsingular core is handled by two
//! mutually recursive cases acting on index ranges of a single working
//! matrix:
//!
//! - [`block_anisotropic`] splits off the leading `⌈n/2⌉` principal block,
//!   separates its own nonsingular part `B''` and recurses on `B''` and on
//!   the remaining isotropic layout;
//! - [`block_isotropic`] takes `[[0, X], [s·X^{σt}, Z]]` with `X` of full row
//!   rank, reduces it to `f` adjacent `[[0, 1], [s, α]]` blocks plus a
//!   nonsingular remainder, standardizes the blocks and hands the remainder
//!   back to the anisotropic case.
//!
//! Every congruence is applied as `I ⊕ T ⊕ I` through
//! [`WorkingForm::apply_block`], so the transform log holds the block
//! matrices themselves. Products go through the configured [`MulBackend`];
//! the echelon and inversion steps are cubic elimination.

use crate::decomposition::{Decomposition, StandardBlock};
use crate::form::{CountingRing, HermitianForm, TransformLog, WorkingForm};
use crate::matrix::{Matrix, MulBackend};
use crate::scalar::{DivisionRing, Sign};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BlockOptions {
    pub backend: MulBackend,
}

impl BlockOptions {
    pub fn with_backend(backend: MulBackend) -> Self {
        BlockOptions { backend }
    }
}

/// Decomposes `form` with the block recursion.
pub fn decompose_blocks<R: DivisionRing>(form: &HermitianForm<R>, options: &BlockOptions) -> Result<Decomposition<R>> {
    let ring = form.ring().clone();
    let counted = CountingRing::new(ring.clone());
    let sign = form.sign();
    let d = form.dim();
    let mut w = WorkingForm::from_matrix(form.matrix().clone().with_ring(counted.clone()), sign);

    let rank = radical_step(&mut w, options.backend)?;
    let mut rec = Recursion { backend: options.backend, depth: 0, blocks: Vec::new() };
    rec.anisotropic(&mut w, 0, rank, 0)?;
    let Recursion { depth, mut blocks, .. } = rec;
    blocks.extend(std::iter::repeat_n(StandardBlock::Scalar(ring.zero()), d - rank));

    let counters = counted.snapshot();
    let (_, log) = w.into_parts();
    Ok(Decomposition { ring, sign, dim: d, blocks, log, counters, radical_dim: d - rank, recursion_depth: depth })
}

/// Moves the radical to the tail: applies the `A` of a left row reduction of
/// `B`, after which `A·B·A^{σt} = [[B'', 0], [0, 0]]` with `B''` nonsingular.
///
/// Returns the log of that single congruence, the core `B''` and the radical
/// dimension.
pub fn detect_radical<R: DivisionRing>(
    form: &HermitianForm<R>,
    backend: MulBackend,
) -> Result<(TransformLog<R::Elem>, HermitianForm<R>, usize)> {
    let mut w = WorkingForm::new(form.clone());
    let rank = radical_step(&mut w, backend)?;
    let (b, log) = w.into_parts();
    let core = HermitianForm::new(b.submatrix(0..rank, 0..rank), form.sign())?;
    Ok((log, core, form.dim() - rank))
}

fn radical_step<R: DivisionRing>(w: &mut WorkingForm<R>, backend: MulBackend) -> Result<usize> {
    let d = w.dim();
    if w.matrix().rank() == d {
        return Ok(d);
    }
    let reduction = w.matrix().left_row_reduce();
    let rank = reduction.rank;
    if rank == d {
        return Ok(rank);
    }
    w.apply_block(0, &reduction.transform, backend)?;
    let b = w.matrix();
    let ring = b.ring();
    let border_zero = (0..d).all(|i| (rank..d).all(|j| ring.is_zero(&b[(i, j)]) && ring.is_zero(&b[(j, i)])));
    if !border_zero {
        return Err(Error::Invariant("radical rows did not vanish after row reduction".into()));
    }
    Ok(rank)
}

/// Runs the anisotropic case on the nonsingular block `lo..lo+n` of `w`,
/// which must be decoupled from the rest of the matrix. Returns the blocks
/// in diagonal order.
pub fn block_anisotropic<R: DivisionRing>(
    w: &mut WorkingForm<R>,
    lo: usize,
    n: usize,
    backend: MulBackend,
) -> Result<Vec<StandardBlock<R::Elem>>> {
    check_range(w, lo, n)?;
    if w.matrix().submatrix(lo..lo + n, lo..lo + n).rank() != n {
        return Err(Error::Usage("anisotropic case needs a nonsingular block; detect the radical first".into()));
    }
    let mut rec = Recursion { backend, depth: 0, blocks: Vec::new() };
    rec.anisotropic(w, lo, n, 0)?;
    Ok(rec.blocks)
}

/// Runs the isotropic case on the block `lo..lo+n` of `w`, laid out as
/// `[[0, X], [s·X^{σt}, Z]]` with `X` of size `f × (n - f)` and full row
/// rank.
pub fn block_isotropic<R: DivisionRing>(
    w: &mut WorkingForm<R>,
    lo: usize,
    n: usize,
    f: usize,
    backend: MulBackend,
) -> Result<Vec<StandardBlock<R::Elem>>> {
    check_range(w, lo, n)?;
    if 2 * f > n || !w.matrix().submatrix(lo..lo + f, lo..lo + f).is_zero() {
        return Err(Error::Usage(format!("block at {} is not isotropic of size {f}", lo + 1)));
    }
    let mut rec = Recursion { backend, depth: 0, blocks: Vec::new() };
    rec.isotropic(w, lo, n, f, 0)?;
    Ok(rec.blocks)
}

fn check_range<R: DivisionRing>(w: &WorkingForm<R>, lo: usize, n: usize) -> Result<()> {
    if lo + n > w.dim() {
        return Err(Error::Usage(format!("range {}..{} exceeds dimension {}", lo + 1, lo + n, w.dim())));
    }
    Ok(())
}

struct Recursion<E> {
    backend: MulBackend,
    depth: usize,
    blocks: Vec<StandardBlock<E>>,
}

impl<E: Clone> Recursion<E> {
    fn anisotropic<R: DivisionRing<Elem = E>>(&mut self, w: &mut WorkingForm<R>, lo: usize, n: usize, depth: usize) -> Result<()> {
        self.depth = self.depth.max(depth);
        let ring = w.ring().clone();
        if n == 0 {
            return Ok(());
        }
        if n == 1 {
            let beta = w.matrix()[(lo, lo)].clone();
            if ring.is_zero(&beta) {
                return Err(Error::Invariant("anisotropic leaf is zero".into()));
            }
            self.blocks.push(StandardBlock::Scalar(beta));
            return Ok(());
        }
        let sign = w.sign();
        let h = n.div_ceil(2);
        let leading = w.matrix().submatrix(lo..lo + h, lo..lo + h);
        let reduction = leading.left_row_reduce();
        let r = reduction.rank;
        w.apply_block_diagonal(lo, n, &reduction.transform, None, self.backend)?;

        if r == 0 {
            if 2 * h != n {
                return Err(Error::Invariant("odd block has a zero leading half".into()));
            }
            return self.isotropic(w, lo, n, h, depth + 1);
        }

        // B'' is 0..r, C = B[0..r, h..n]; clear C with rows h.. += Y·rows 0..r
        let b = w.matrix();
        let b2 = b.submatrix(lo..lo + r, lo..lo + r);
        let c = b.submatrix(lo..lo + r, lo + h..lo + n);
        let b2_inv = b2.invert()?;
        let y = c.sigma_transpose().matmul_with(&b2_inv, self.backend)?;
        let y = y.scale_left(&sign.apply(&ring, &ring.neg(&ring.one())));
        w.apply_shear(lo, n, h, 0, &y, self.backend)?;

        let b = w.matrix();
        let decoupled = (0..r).all(|i| {
            (r..n).all(|j| ring.is_zero(&b[(lo + i, lo + j)]) && ring.is_zero(&b[(lo + j, lo + i)]))
        });
        let corner_zero = b.submatrix(lo + r..lo + h, lo + r..lo + h).is_zero();
        if !decoupled || !corner_zero {
            return Err(Error::Invariant("anisotropic step left B'' coupled to the rest".into()));
        }

        self.anisotropic(w, lo, r, depth + 1)?;
        self.isotropic(w, lo + r, n - r, h - r, depth + 1)
    }

    fn isotropic<R: DivisionRing<Elem = E>>(
        &mut self,
        w: &mut WorkingForm<R>,
        lo: usize,
        n: usize,
        f: usize,
        depth: usize,
    ) -> Result<()> {
        if f == 0 {
            return self.anisotropic(w, lo, n, depth);
        }
        self.depth = self.depth.max(depth);
        let ring = w.ring().clone();
        let sign = w.sign();

        // X·A = [C 0]; congruence by diag(C⁻¹, A^{σt}) turns X into [I 0]
        let x = w.matrix().submatrix(lo..lo + f, lo + f..lo + n);
        let reduction = x.right_column_reduce();
        if reduction.rank != f {
            return Err(Error::Invariant(format!("isotropic block X has rank {} < {f}", reduction.rank)));
        }
        let c_inv = reduction.reduced.submatrix(0..f, 0..f).invert()?;
        let a_sigma = reduction.transform.sigma_transpose();
        w.apply_block_diagonal(lo, n, &c_inv, Some(&a_sigma), self.backend)?;

        // rows 2f.. += -s·Y^{σt}·rows 0..f clears Y = B[f..2f, 2f..n]
        if n > 2 * f {
            let y = w.matrix().submatrix(lo + f..lo + 2 * f, lo + 2 * f..lo + n);
            let m = y.sigma_transpose().scale_left(&sign.apply(&ring, &ring.neg(&ring.one())));
            w.apply_shear(lo, n, 2 * f, 0, &m, self.backend)?;
            let b = w.matrix();
            let cleared = (f..2 * f).all(|i| {
                (2 * f..n).all(|j| ring.is_zero(&b[(lo + i, lo + j)]) && ring.is_zero(&b[(lo + j, lo + i)]))
            });
            if !cleared {
                return Err(Error::Invariant("Y block survived its transvection".into()));
            }
        }

        // Z = U + D + s·U^{σt}; rows f..2f -= U·rows 0..f leaves D
        let z = w.matrix().submatrix(lo + f..lo + 2 * f, lo + f..lo + 2 * f);
        let mut u = Matrix::zeros(ring.clone(), f, f);
        for i in 0..f {
            for j in i + 1..f {
                if !ring.is_zero(&z[(i, j)]) {
                    u[(i, j)] = ring.neg(&z[(i, j)]);
                }
            }
        }
        if !u.is_zero() {
            w.apply_shear(lo, 2 * f, f, 0, &u, self.backend)?;
        }
        check_hyperbolic_corner(w, lo, f)?;

        // (a, f+a) -> (2a, 2a+1)
        let mut position: Vec<usize> = (0..2 * f).collect();
        let mut occupant: Vec<usize> = (0..2 * f).collect();
        for t in 0..2 * f {
            let wanted = if t % 2 == 0 { t / 2 } else { f + t / 2 };
            let p = position[wanted];
            if p != t {
                w.swap_row_columns(lo + t, lo + p)?;
                let displaced = occupant[t];
                occupant.swap(t, p);
                position[wanted] = t;
                position[displaced] = p;
            }
        }
        for a in 0..f {
            self.blocks.extend(w.standardize_at(lo + 2 * a)?);
        }
        self.anisotropic(w, lo + 2 * f, n - 2 * f, depth + 1)
    }
}

/// After the third congruence the leading `2f × 2f` corner must be
/// `[[0, I], [s·I, D]]` with `D` diagonal and `D = s·σ(D)`.
fn check_hyperbolic_corner<R: DivisionRing>(w: &WorkingForm<R>, lo: usize, f: usize) -> Result<()> {
    let ring = w.ring();
    let sign: Sign = w.sign();
    let b = w.matrix();
    let s = sign.to_elem(ring);
    for i in 0..2 * f {
        for j in 0..2 * f {
            let x = &b[(lo + i, lo + j)];
            let ok = match (i < f, j < f) {
                (true, true) => ring.is_zero(x),
                (true, false) => if j - f == i { ring.is_one(x) } else { ring.is_zero(x) },
                (false, true) => if i - f == j { ring.equal(x, &s) } else { ring.is_zero(x) },
                (false, false) => {
                    if i == j {
                        ring.equal(x, &sign.apply(ring, &ring.sigma(x)))
                    } else {
                        ring.is_zero(x)
                    }
                }
            };
            if !ok {
                return Err(Error::Invariant(format!("hyperbolic corner wrong at ({}, {})", lo + i + 1, lo + j + 1)));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
