use rand::Rng;

use super::literal::split_terms;
use super::{DivisionRing, Involution, PrimeField, RingDescriptor, RingKind, ScalarError};

/// `a + b·x` in `GF(p²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
}

impl Fp2 {
    pub const fn new(a: u64, b: u64) -> Self {
        Fp2 { a, b }
    }
}

/// `GF(p²) = GF(p)[x] / (x² - c1·x - c0)`.
///
/// For odd `p` the modulus is `x² - c` with `c` the smallest quadratic
/// non-residue; for `p = 2` it is `x² + x + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadExt {
    base: PrimeField,
    c0: u64,
    c1: u64,
    involution: Involution,
}

impl QuadExt {
    pub fn new(p: u64, involution: Involution) -> Result<Self, ScalarError> {
        let base = PrimeField::new(p)?;
        if !matches!(involution, Involution::Identity | Involution::Frobenius) {
            return Err(ScalarError::InvalidInvolution {
                ring: format!("gfp2 {p}"),
                involution,
            });
        }
        let (c0, c1) = match base.smallest_non_residue() {
            Some(c) => (c, 0),
            None => (1, 1),
        };
        Ok(QuadExt { base, c0, c1, involution })
    }

    /// `GF(p²)` with the Frobenius involution.
    pub fn hermitian(p: u64) -> Result<Self, ScalarError> {
        Self::new(p, Involution::Frobenius)
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn modulus(&self) -> u64 {
        self.base.modulus()
    }

    /// The generator `x`.
    pub fn gen(&self) -> Fp2 {
        Fp2::new(0, 1)
    }

    pub fn embed(&self, a: u64) -> Fp2 {
        Fp2::new(a % self.modulus(), 0)
    }

    /// Frobenius `z ↦ z^p`, regardless of the configured involution.
    pub fn frobenius(&self, z: &Fp2) -> Fp2 {
        // x^p is the other root of x² - c1·x - c0, namely c1 - x
        let f = &self.base;
        Fp2::new(f.add(&z.a, &f.mul(&z.b, &self.c1)), f.neg(&z.b))
    }

    /// The norm `z·z^p`, an element of `GF(p)`.
    pub fn norm(&self, z: &Fp2) -> u64 {
        let n = self.mul(z, &self.frobenius(z));
        debug_assert_eq!(n.b, 0);
        n.a
    }

    /// Finds `γ ≠ 0` with `γ·σ(γ) = α⁻¹` for `α` in the prime subfield.
    ///
    /// Requires the Frobenius involution. Returns `None` only for `α = 0`;
    /// the norm map onto `GF(p)^*` is surjective so a solution always exists.
    /// The search runs over `b = 0, 1, ...` and takes `a = √(t + c·b²)` where
    /// `t = α⁻¹`, so the answer is deterministic.
    pub fn solve_norm_equation(&self, alpha: &Fp2) -> Result<Option<Fp2>, ScalarError> {
        if self.involution != Involution::Frobenius {
            return Err(ScalarError::Usage(
                "norm equations need the Frobenius involution".into(),
            ));
        }
        if self.frobenius(alpha) != *alpha {
            return Err(ScalarError::Usage(format!(
                "{} is not fixed by the involution",
                self.format(alpha)
            )));
        }
        if alpha.a == 0 {
            return Ok(None);
        }
        let f = &self.base;
        let target = f.inv(&alpha.a)?;
        if f.modulus() == 2 {
            return Ok(Some(self.one()));
        }
        for b in 0..f.modulus() {
            let rhs = f.add(&target, &f.mul(&self.c0, &f.mul(&b, &b)));
            if let Some(a) = f.sqrt(rhs) {
                if a != 0 || b != 0 {
                    return Ok(Some(Fp2::new(a, b)));
                }
            }
        }
        unreachable!("the norm map of GF(p^2) onto GF(p)* is surjective")
    }
}

impl DivisionRing for QuadExt {
    type Elem = Fp2;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor {
            kind: RingKind::QuadExt { p: self.modulus(), c0: self.c0, c1: self.c1 },
            involution: self.involution,
        }
    }

    fn zero(&self) -> Fp2 {
        Fp2::new(0, 0)
    }

    fn one(&self) -> Fp2 {
        Fp2::new(self.base.one(), 0)
    }

    fn from_i64(&self, n: i64) -> Fp2 {
        Fp2::new(self.base.reduce_i64(n), 0)
    }

    #[inline]
    fn add(&self, x: &Fp2, y: &Fp2) -> Fp2 {
        let f = &self.base;
        Fp2::new(f.add(&x.a, &y.a), f.add(&x.b, &y.b))
    }

    #[inline]
    fn sub(&self, x: &Fp2, y: &Fp2) -> Fp2 {
        let f = &self.base;
        Fp2::new(f.sub(&x.a, &y.a), f.sub(&x.b, &y.b))
    }

    #[inline]
    fn neg(&self, x: &Fp2) -> Fp2 {
        let f = &self.base;
        Fp2::new(f.neg(&x.a), f.neg(&x.b))
    }

    #[inline]
    fn mul(&self, x: &Fp2, y: &Fp2) -> Fp2 {
        let f = &self.base;
        let bb = f.mul(&x.b, &y.b);
        let a = f.add(&f.mul(&x.a, &y.a), &f.mul(&bb, &self.c0));
        let b = f.add(&f.add(&f.mul(&x.a, &y.b), &f.mul(&x.b, &y.a)), &f.mul(&bb, &self.c1));
        Fp2::new(a, b)
    }

    fn inv(&self, x: &Fp2) -> Result<Fp2, ScalarError> {
        if self.is_zero(x) {
            return Err(ScalarError::DivisionByZero);
        }
        let n_inv = self.base.inv(&self.norm(x))?;
        let conj = self.frobenius(x);
        Ok(Fp2::new(self.base.mul(&conj.a, &n_inv), self.base.mul(&conj.b, &n_inv)))
    }

    fn sigma(&self, x: &Fp2) -> Fp2 {
        match self.involution {
            Involution::Frobenius => self.frobenius(x),
            _ => *x,
        }
    }

    #[inline]
    fn is_zero(&self, x: &Fp2) -> bool {
        x.a == 0 && x.b == 0
    }

    fn involution(&self) -> Involution {
        self.involution
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn has_char_two(&self) -> bool {
        self.modulus() == 2
    }

    fn parse(&self, literal: &str) -> Result<Fp2, ScalarError> {
        let mut z = self.zero();
        for term in split_terms(literal, &['x'])? {
            let c: i64 = if term.coeff.is_empty() {
                1
            } else {
                term.coeff
                    .parse()
                    .map_err(|_| ScalarError::parse(literal, "coefficients must be integers"))?
            };
            let c = self.base.reduce_i64(if term.negative { -c } else { c });
            let t = if term.unit.is_some() { Fp2::new(0, c) } else { Fp2::new(c, 0) };
            z = self.add(&z, &t);
        }
        Ok(z)
    }

    fn format(&self, x: &Fp2) -> String {
        match (x.a, x.b) {
            (a, 0) => a.to_string(),
            (0, 1) => "x".to_string(),
            (0, b) => format!("{b}*x"),
            (a, 1) => format!("{a}+x"),
            (a, b) => format!("{a}+{b}*x"),
        }
    }

    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> Fp2 {
        Fp2::new(self.base.random(rng), self.base.random(rng))
    }
}
