use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{DivisionRing, Involution, RingDescriptor, RingKind, ScalarError};

pub(crate) fn from_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn parse_rational(literal: &str) -> Result<BigRational, ScalarError> {
    let bad = || ScalarError::parse(literal, "expected an integer or a fraction a/b");
    let (num, den) = match literal.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (literal, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ScalarError::parse(literal, "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact square root of a nonnegative rational, when it is itself rational.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

/// Small random rational: numerator in `[-9, 9]`, denominator in `[1, 4]`.
pub(crate) fn random_small<G: Rng + ?Sized>(rng: &mut G) -> BigRational {
    let num: i64 = rng.random_range(-9..=9);
    let den: i64 = rng.random_range(1..=4);
    BigRational::new(num.into(), den.into())
}

/// `ℚ` with exact arbitrary-precision fractions and the identity involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rational;

impl DivisionRing for Rational {
    type Elem = BigRational;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor { kind: RingKind::Rational, involution: Involution::Identity }
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        from_int(n)
    }

    fn add(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }

    fn sub(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x - y
    }

    fn neg(&self, x: &BigRational) -> BigRational {
        -x
    }

    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }

    fn inv(&self, x: &BigRational) -> Result<BigRational, ScalarError> {
        if x.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(x.recip())
    }

    fn sigma(&self, x: &BigRational) -> BigRational {
        x.clone()
    }

    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }

    fn involution(&self) -> Involution {
        Involution::Identity
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn has_char_two(&self) -> bool {
        false
    }

    fn parse(&self, literal: &str) -> Result<BigRational, ScalarError> {
        parse_rational(literal)
    }

    fn format(&self, x: &BigRational) -> String {
        format_rational(x)
    }

    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> BigRational {
        random_small(rng)
    }
}
