//! Checks that do not trust the decomposers: the congruence identity,
//! the shape of the blocks, invariant extraction, brute-force congruence on
//! tiny prime-field instances, and operation-count ratios.

use serde::{Deserialize, Serialize};

use crate::decomposition::{Decomposition, StandardBlock};
use crate::form::{materialize, ElementaryOp, OpCounters};
use crate::matrix::Matrix;
use crate::postprocess::{PostProcess, SquareClass};
use crate::scalar::{DivisionRing, Involution, PrimeField, RingKind, Sign};
use crate::{Error, Result};

/// Outcome of [`check_decomposition`], one flag per clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// `A = materialize(log)` has full rank.
    pub transform_invertible: bool,
    /// `A·B·A^{σt}` equals the block diagonal entrywise.
    pub congruence: bool,
    /// Every block is `1×1` or `[[0, 1], [s, 0]]` and the sizes add up to `d`.
    pub blocks_standard: bool,
    /// `radical_dim` = number of zero blocks = `d - rank(B)`.
    pub radical: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.transform_invertible && self.congruence && self.blocks_standard && self.radical
    }
}

/// Verifies `decomp` against the input matrix `b`.
pub fn check_decomposition<R: DivisionRing>(b: &Matrix<R>, sign: Sign, decomp: &Decomposition<R>) -> VerificationReport {
    let ring = b.ring();
    let d = b.rows();
    let shapes_ok = b.is_square() && decomp.dim == d && decomp.log.dim() == d && decomp.sign == sign;
    if !shapes_ok {
        return VerificationReport { transform_invertible: false, congruence: false, blocks_standard: false, radical: false };
    }

    let a = materialize(ring, &decomp.log).ok();
    let transform_invertible = a.is_some() && decomp.log.ops().iter().all(|op| op_invertible(ring, op));

    let total: usize = decomp.blocks.iter().map(StandardBlock::size).sum();
    let blocks_standard = total == d;

    // A·B·A^{σt} = (A·(A·B)^{σt})^{σt}, so both products have A on the left
    let congruence = blocks_standard
        && a.as_ref().is_some_and(|a| {
            let ab = left_sparse_product(a, b);
            let image = left_sparse_product(a, &ab.sigma_transpose()).sigma_transpose();
            image == expected_diagonal(ring, sign, &decomp.blocks, d)
        });

    let zero_blocks = decomp
        .blocks
        .iter()
        .filter(|blk| matches!(blk, StandardBlock::Scalar(x) if ring.is_zero(x)))
        .count();
    let radical = decomp.radical_dim == zero_blocks && zero_blocks == d - b.rank();

    VerificationReport { transform_invertible, congruence, blocks_standard, radical }
}

/// `A` is the product of the logged operations, so it is invertible iff
/// each of them is.
fn op_invertible<R: DivisionRing>(ring: &R, op: &ElementaryOp<R::Elem>) -> bool {
    match op {
        ElementaryOp::Scale { factor, .. } => !ring.is_zero(factor),
        ElementaryOp::Swap { .. } => true,
        ElementaryOp::Transvect { target, source, .. } => target != source,
        ElementaryOp::Block { size, entries, .. } => Matrix::from_vec(ring.clone(), *size, *size, entries.clone())
            .is_ok_and(|t| t.rank() == *size),
    }
}

/// `a·m`, skipping the zero entries of `a`.
fn left_sparse_product<R: DivisionRing>(a: &Matrix<R>, m: &Matrix<R>) -> Matrix<R> {
    let ring = a.ring();
    let n = m.cols();
    let mut out = Matrix::zeros(ring.clone(), a.rows(), n);
    for i in 0..a.rows() {
        let row = out.row_mut(i);
        for (t, x) in a.row(i).iter().enumerate() {
            if ring.is_zero(x) {
                continue;
            }
            for (o, y) in row.iter_mut().zip(m.row(t)) {
                *o = ring.add(o, &ring.mul(x, y));
            }
        }
    }
    out
}

fn expected_diagonal<R: DivisionRing>(ring: &R, sign: Sign, blocks: &[StandardBlock<R::Elem>], d: usize) -> Matrix<R> {
    let mut m = Matrix::zeros(ring.clone(), d, d);
    let mut at = 0;
    for blk in blocks {
        match blk {
            StandardBlock::Scalar(x) => {
                m[(at, at)] = x.clone();
                at += 1;
            }
            StandardBlock::J => {
                m[(at, at + 1)] = ring.one();
                m[(at + 1, at)] = sign.to_elem(ring);
                at += 2;
            }
        }
    }
    m
}

/// Congruence invariants read off a decomposition.
///
/// `square_classes` is present over `GF(p)`, `p` odd, `σ = 1`. Since
/// `[n] ⊕ [n]` is congruent to `[1] ⊕ [1]` for a non-residue `n`, pairs of
/// non-residue classes are replaced by residues, leaving at most one
/// non-residue; the result is sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSummary {
    pub rank: usize,
    pub radical_dim: usize,
    pub j_block_count: usize,
    pub square_classes: Option<Vec<SquareClass>>,
}

pub fn invariants_of<R: PostProcess>(decomp: &Decomposition<R>) -> InvariantSummary {
    let ring = &decomp.ring;
    let descriptor = ring.descriptor();
    let classified = matches!(descriptor.kind, RingKind::PrimeField { p } if p % 2 == 1)
        && descriptor.involution == Involution::Identity;
    let square_classes = classified.then(|| {
        let mut classes: Vec<SquareClass> = decomp
            .blocks
            .iter()
            .filter_map(|blk| match blk {
                StandardBlock::Scalar(x) => ring.square_class(x),
                StandardBlock::J => None,
            })
            .collect();
        let non_residues = classes.iter().filter(|c| **c == SquareClass::NonResidue).count();
        for c in classes.iter_mut() {
            *c = SquareClass::Residue;
        }
        if non_residues % 2 == 1 {
            if let Some(last) = classes.last_mut() {
                *last = SquareClass::NonResidue;
            }
        }
        classes
    });
    InvariantSummary {
        rank: decomp.rank(),
        radical_dim: decomp.radical_dim,
        j_block_count: decomp.j_block_count(),
        square_classes,
    }
}

fn check_small_field(ring: &PrimeField, d: usize) -> Result<u64> {
    let p = ring.modulus();
    if d > 3 || p > 7 {
        return Err(Error::Usage(format!("brute force is limited to d ≤ 3 and p ≤ 7, got d = {d}, p = {p}")));
    }
    Ok(p)
}

/// Calls `visit` on every invertible `d×d` matrix over `GF(p)` (row-major)
/// until it returns `true`; reports whether it did.
fn any_invertible(p: u64, d: usize, mut visit: impl FnMut(&[u64]) -> bool) -> bool {
    let cells = d * d;
    let mut entries = [0u64; 9];
    for code in 0..p.pow(cells as u32) {
        let mut c = code;
        for e in entries.iter_mut().take(cells) {
            *e = c % p;
            c /= p;
        }
        if det_mod(p, d, &entries[..cells]) != 0 && visit(&entries[..cells]) {
            return true;
        }
    }
    false
}

fn det_mod(p: u64, d: usize, m: &[u64]) -> u64 {
    let neg = |x: u64| (p - x % p) % p;
    match d {
        0 => 1 % p,
        1 => m[0] % p,
        2 => (m[0] * m[3] + neg(m[1] * m[2])) % p,
        _ => {
            let minor = |a: usize, b: usize, c: usize, e: usize| (m[a] * m[e] + neg(m[b] * m[c])) % p;
            (m[0] * minor(4, 5, 7, 8) + neg(m[1] * minor(3, 5, 6, 8)) + m[2] * minor(3, 4, 6, 7)) % p
        }
    }
}

fn congruent_image(p: u64, d: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut ab = vec![0u64; d * d];
    for i in 0..d {
        for j in 0..d {
            ab[i * d + j] = (0..d).map(|k| a[i * d + k] * b[k * d + j]).sum::<u64>() % p;
        }
    }
    let mut out = vec![0u64; d * d];
    for i in 0..d {
        for j in 0..d {
            out[i * d + j] = (0..d).map(|k| ab[i * d + k] * a[j * d + k]).sum::<u64>() % p;
        }
    }
    out
}

/// Whether some invertible `A` over `GF(p)` has `A·B₁·A^t = B₂`, by
/// enumerating `GL(d, p)`.
pub fn brute_force_congruence(b1: &Matrix<PrimeField>, b2: &Matrix<PrimeField>, sign: Sign) -> Result<bool> {
    let ring = b1.ring();
    let d = b1.rows();
    if b1.shape() != b2.shape() || !b1.is_square() || ring != b2.ring() {
        return Err(Error::Usage("brute force needs two square matrices of the same shape over one field".into()));
    }
    if !crate::form::validate(b1, sign) || !crate::form::validate(b2, sign) {
        return Err(Error::Usage(format!("inputs must satisfy B = {sign}·B^t")));
    }
    let p = check_small_field(ring, d)?;
    let (x, y) = (b1.entries(), b2.entries());
    Ok(any_invertible(p, d, |a| congruent_image(p, d, a, x) == y))
}

/// Congruence classes of all matrices `B = s·B^t` of size `d` over `GF(p)`:
/// returns the matrices and, for each, the index of its class.
pub fn congruence_orbits(ring: &PrimeField, d: usize, sign: Sign) -> Result<(Vec<Matrix<PrimeField>>, Vec<usize>)> {
    let p = check_small_field(ring, d)?;
    let cells = d * d;
    let mut forms = Vec::new();
    for code in 0..p.pow(cells as u32) {
        let mut c = code;
        let entries: Vec<u64> = (0..cells)
            .map(|_| {
                let e = c % p;
                c /= p;
                e
            })
            .collect();
        let m = Matrix::from_vec(*ring, d, d, entries).expect("shape");
        if crate::form::validate(&m, sign) {
            forms.push(m);
        }
    }
    let index: std::collections::HashMap<Vec<u64>, usize> =
        forms.iter().enumerate().map(|(i, m)| (m.entries().to_vec(), i)).collect();
    let mut class = vec![usize::MAX; forms.len()];
    let mut next = 0;
    for start in 0..forms.len() {
        if class[start] != usize::MAX {
            continue;
        }
        // the orbit of one element is its image set under the whole group
        any_invertible(p, d, |a| {
            let image = congruent_image(p, d, a, forms[start].entries());
            class[index[&image]] = next;
            false
        });
        next += 1;
    }
    Ok((forms, class))
}

/// Acceptance bands for [`counter_report`]. The leading-term band is only
/// applied once the rank reaches `min_rank`, below which the lower-order
/// terms dominate. Equality tests and `σ` applications are held to the exact
/// bounds `C(d, 2) + d` and `C(d, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CounterBands {
    pub leading_low: f64,
    pub leading_high: f64,
    pub min_rank: usize,
    pub inversions_high: f64,
}

impl Default for CounterBands {
    fn default() -> Self {
        CounterBands { leading_low: 0.85, leading_high: 1.25, min_rank: 32, inversions_high: 1.5 }
    }
}

/// Operation counts of an elimination run relative to their leading terms.
/// Ratios with a zero denominator are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterReport {
    pub e: usize,
    /// additions / (e³/3)
    pub additions: Option<f64>,
    /// multiplications / (e³/3)
    pub multiplications: Option<f64>,
    /// inversions / e
    pub inversions: Option<f64>,
    /// equality tests / C(d, 2)
    pub equality_tests: Option<f64>,
    /// σ applications / (C(d, 2) - C(r, 2))
    pub sigma_applications: Option<f64>,
    /// Names of the counts outside their bands.
    pub flagged: Vec<String>,
}

pub fn counter_report(counters: &OpCounters, d: usize, radical_dim: usize) -> CounterReport {
    counter_report_with(counters, d, radical_dim, &CounterBands::default())
}

pub fn counter_report_with(counters: &OpCounters, d: usize, radical_dim: usize, bands: &CounterBands) -> CounterReport {
    let e = d.saturating_sub(radical_dim);
    let ratio = |num: u64, den: f64| (den > 0.0).then(|| num as f64 / den);
    let binom2 = |n: usize| (n * n.saturating_sub(1) / 2) as u64;
    let cube = (e as f64).powi(3) / 3.0;

    let additions = ratio(counters.additions, cube);
    let multiplications = ratio(counters.multiplications, cube);
    let inversions = ratio(counters.inversions, e as f64);
    let mut flagged = Vec::new();
    if e >= bands.min_rank {
        for (name, value) in [("additions", additions), ("multiplications", multiplications)] {
            if value.is_some_and(|v| v < bands.leading_low || v > bands.leading_high) {
                flagged.push(name.to_string());
            }
        }
    }
    if inversions.is_some_and(|v| v > bands.inversions_high) {
        flagged.push("inversions".to_string());
    }
    if counters.equality_tests > binom2(d) + d as u64 {
        flagged.push("equality_tests".to_string());
    }
    if counters.sigma_applications > binom2(d) {
        flagged.push("sigma_applications".to_string());
    }
    CounterReport {
        e,
        additions,
        multiplications,
        inversions,
        equality_tests: ratio(counters.equality_tests, binom2(d) as f64),
        sigma_applications: ratio(counters.sigma_applications, (binom2(d) - binom2(radical_dim)) as f64),
        flagged,
    }
}
