//! Random valid forms for tests and benchmarks.

use rand::Rng;

use crate::form::HermitianForm;
use crate::matrix::Matrix;
use crate::scalar::{random_diagonal, DivisionRing, Involution, Sign};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenOptions {
    /// Probability that an off-diagonal entry of the filled triangle is zero.
    pub zero_prob: f64,
    /// Exact rank of the form; `None` leaves it to chance (almost always full).
    pub rank: Option<usize>,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions { zero_prob: 0.0, rank: None }
    }
}

/// Fills the upper triangle, mirrors it through `s·σ` and draws the
/// diagonal from the elements with `β = s·σ(β)`.
fn random_unconstrained<R: DivisionRing, G: Rng + ?Sized>(
    ring: &R,
    sign: Sign,
    d: usize,
    zero_prob: f64,
    rng: &mut G,
) -> Matrix<R> {
    let mut b = Matrix::zeros(ring.clone(), d, d);
    for i in 0..d {
        b[(i, i)] = random_diagonal(ring, sign, rng);
        for j in i + 1..d {
            if zero_prob > 0.0 && rng.random_bool(zero_prob.min(1.0)) {
                continue;
            }
            let x = ring.random(rng);
            b[(j, i)] = sign.apply(ring, &ring.sigma(&x));
            b[(i, j)] = x;
        }
    }
    b
}

fn random_invertible<R: DivisionRing, G: Rng + ?Sized>(ring: &R, d: usize, rng: &mut G) -> Matrix<R> {
    loop {
        let m = Matrix::from_fn(ring.clone(), d, d, |_, _| ring.random(rng));
        if m.rank() == d {
            return m;
        }
    }
}

/// A random form `B = s·B^{σt}` of dimension `d`.
///
/// With `rank = Some(k)` the form is `M·(B₀ ⊕ 0)·M^{σt}` for a random
/// nonsingular `k×k` form `B₀` and a random invertible `M`. Alternating
/// forms (`σ = 1`, `s = -1`, characteristic not 2) only have even rank.
pub fn random_form<R: DivisionRing, G: Rng + ?Sized>(
    ring: &R,
    sign: Sign,
    d: usize,
    options: &GenOptions,
    rng: &mut G,
) -> Result<HermitianForm<R>> {
    if !(0.0..=1.0).contains(&options.zero_prob) {
        return Err(Error::Usage(format!("zero probability {} outside [0, 1]", options.zero_prob)));
    }
    let Some(k) = options.rank else {
        return HermitianForm::new(random_unconstrained(ring, sign, d, options.zero_prob, rng), sign);
    };
    if k > d {
        return Err(Error::Usage(format!("rank {k} exceeds dimension {d}")));
    }
    let alternating = sign == Sign::Minus && ring.involution() == Involution::Identity && !ring.has_char_two();
    if alternating && k % 2 == 1 {
        return Err(Error::Usage(format!("alternating forms have even rank, got {k}")));
    }
    let core = loop {
        let c = random_unconstrained(ring, sign, k, options.zero_prob, rng);
        if c.rank() == k {
            break c;
        }
    };
    let mut padded = Matrix::zeros(ring.clone(), d, d);
    padded.set_block(0, 0, &core);
    let m = random_invertible(ring, d, rng);
    let b = m.matmul_classical(&padded)?.matmul_classical(&m.sigma_transpose())?;
    HermitianForm::new(b, sign)
}
