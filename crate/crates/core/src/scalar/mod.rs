//! Division rings with an involution.
//!
//! Every algorithm in this crate is written against [`DivisionRing`], which
//! bundles exact arithmetic, inversion and a unital anti-automorphism `σ`
//! with `σ² = 1`. Four rings ship with the crate:
//!
//! - [`PrimeField`]: `GF(p)` with the identity involution,
//! - [`QuadExt`]: `GF(p²)` with either the identity or the Frobenius `x ↦ x^p`,
//! - [`Rational`]: `ℚ` with the identity,
//! - [`Quaternion`]: the rational quaternion algebra `(a,b / ℚ)` with standard
//!   conjugation.
//!
//! Ring elements are plain values (`u64`, [`Fp2`], `BigRational`, [`Quat`]);
//! the ring object carries the modulus or algebra parameters and performs the
//! arithmetic.

mod literal;
mod prime;
mod quad;
mod quaternion;
mod rational;

use std::fmt;

use rand::Rng;
use thiserror::Error;

pub use prime::{is_prime, PrimeField};
pub use quad::{Fp2, QuadExt};
pub use quaternion::{Quat, Quaternion};
pub use rational::{rational_sqrt, Rational};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible (reduced norm is zero)")]
    NotInvertible,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range 2 <= p < 2^32")]
    ModulusOutOfRange(u64),
    #[error("involution {involution} is not valid for ring {ring}")]
    InvalidInvolution { ring: String, involution: Involution },
    #[error("cannot parse {literal:?}: {reason}")]
    Parse { literal: String, reason: String },
    #[error("{0}")]
    Usage(String),
}

impl ScalarError {
    pub(crate) fn parse(literal: &str, reason: impl Into<String>) -> Self {
        ScalarError::Parse {
            literal: literal.to_string(),
            reason: reason.into(),
        }
    }
}

/// The involution `σ` carried by a ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Involution {
    Identity,
    Frobenius,
    QuaternionConjugation,
}

impl Involution {
    /// Keyword used by the form file format.
    pub fn keyword(self) -> &'static str {
        match self {
            Involution::Identity => "identity",
            Involution::Frobenius => "frobenius",
            Involution::QuaternionConjugation => "conj",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "identity" => Some(Involution::Identity),
            "frobenius" => Some(Involution::Frobenius),
            "conj" => Some(Involution::QuaternionConjugation),
            _ => None,
        }
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    PrimeField { p: u64 },
    /// `GF(p)[x] / (x² - c1·x - c0)`.
    QuadExt { p: u64, c0: u64, c1: u64 },
    Rational,
    /// The algebra with `i² = a`, `j² = b`, `ij = -ji = k`.
    Quaternion { a: BigRational, b: BigRational },
}

/// Metadata describing a ring and its involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDescriptor {
    pub kind: RingKind,
    pub involution: Involution,
}

impl RingDescriptor {
    /// Checks the pairing rules between ring kinds and involutions.
    pub fn validate(&self) -> Result<(), ScalarError> {
        let ok = match (&self.kind, self.involution) {
            (RingKind::PrimeField { .. }, Involution::Identity) => true,
            (RingKind::QuadExt { .. }, Involution::Identity | Involution::Frobenius) => true,
            (RingKind::Rational, Involution::Identity) => true,
            (RingKind::Quaternion { .. }, Involution::QuaternionConjugation) => true,
            _ => false,
        };
        if !ok {
            return Err(ScalarError::InvalidInvolution {
                ring: self.header(),
                involution: self.involution,
            });
        }
        match &self.kind {
            RingKind::PrimeField { p } | RingKind::QuadExt { p, .. } => {
                prime::check_modulus(*p)?;
            }
            RingKind::Quaternion { a, b } => {
                use num_traits::Zero;
                if a.is_zero() || b.is_zero() {
                    return Err(ScalarError::Usage(
                        "quaternion parameters must be nonzero".into(),
                    ));
                }
            }
            RingKind::Rational => {}
        }
        Ok(())
    }

    /// The `<kind> <params>` part of a `ring` header line.
    pub fn header(&self) -> String {
        match &self.kind {
            RingKind::PrimeField { p } => format!("gfp {p}"),
            RingKind::QuadExt { p, .. } => format!("gfp2 {p}"),
            RingKind::Rational => "rational".to_string(),
            RingKind::Quaternion { a, b } => {
                if *a == rational::from_int(-1) && *b == rational::from_int(-1) {
                    "quaternion".to_string()
                } else {
                    format!("quaternion {a} {b}")
                }
            }
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (sigma = {})", self.header(), self.involution)
    }
}

/// A division ring `Δ` together with an involution `σ`.
///
/// Multiplication is not assumed to commute; implementations of algorithms
/// must keep factors in order. `σ` must satisfy `σ(xy) = σ(y)σ(x)`,
/// `σ(x + y) = σ(x) + σ(y)`, `σ(1) = 1` and `σ(σ(x)) = x`.
pub trait DivisionRing: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Send + Sync;

    fn descriptor(&self) -> RingDescriptor;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Result<Self::Elem, ScalarError>;
    fn sigma(&self, x: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, x: &Self::Elem) -> bool;

    /// Equality of canonical forms; this is the counted "equality test".
    fn equal(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        x == y
    }

    fn involution(&self) -> Involution;
    fn is_commutative(&self) -> bool;
    /// `1 + 1 = 0`.
    fn has_char_two(&self) -> bool;

    fn parse(&self, literal: &str) -> Result<Self::Elem, ScalarError>;
    fn format(&self, x: &Self::Elem) -> String;

    /// A random element. Rings of characteristic zero draw small coefficients.
    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem;

    fn is_one(&self, x: &Self::Elem) -> bool {
        *x == self.one()
    }

    fn div_left(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem, ScalarError> {
        Ok(self.mul(&self.inv(y)?, x))
    }

    fn div_right(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem, ScalarError> {
        Ok(self.mul(x, &self.inv(y)?))
    }
}

/// `+1` or `-1`: the `s` in `B = s·B^{σt}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn apply<R: DivisionRing>(self, ring: &R, x: &R::Elem) -> R::Elem {
        match self {
            Sign::Plus => x.clone(),
            Sign::Minus => ring.neg(x),
        }
    }

    pub fn to_elem<R: DivisionRing>(self, ring: &R) -> R::Elem {
        match self {
            Sign::Plus => ring.one(),
            Sign::Minus => ring.neg(&ring.one()),
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn parse(word: &str) -> Option<Self> {
        match word {
            "+1" | "1" => Some(Sign::Plus),
            "-1" => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Draws an element `β` with `β = s·σ(β)`, i.e. a legal diagonal entry.
pub fn random_diagonal<R: DivisionRing, G: Rng + ?Sized>(ring: &R, s: Sign, rng: &mut G) -> R::Elem {
    let r = ring.random(rng);
    let one = ring.one();
    let s_is_one = s.apply(ring, &one) == one;
    if ring.involution() == Involution::Identity && s_is_one {
        r
    } else {
        ring.add(&r, &s.apply(ring, &ring.sigma(&r)))
    }
}
