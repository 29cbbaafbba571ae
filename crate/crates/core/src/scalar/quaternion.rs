use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::literal::split_terms;
use super::rational::{format_rational, from_int, parse_rational, random_small};
use super::{DivisionRing, Involution, RingDescriptor, RingKind, ScalarError};

/// `w + x·i + y·j + z·k` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quat {
    pub w: BigRational,
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
}

impl Quat {
    pub fn new(w: BigRational, x: BigRational, y: BigRational, z: BigRational) -> Self {
        Quat { w, x, y, z }
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        Quat::new(from_int(w), from_int(x), from_int(y), from_int(z))
    }

    pub fn real(w: BigRational) -> Self {
        Quat::new(w, BigRational::zero(), BigRational::zero(), BigRational::zero())
    }

    pub fn is_real(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    fn coeffs(&self) -> [&BigRational; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }
}

/// The quaternion algebra `(a, b / ℚ)`: `i² = a`, `j² = b`, `ij = -ji = k`,
/// with conjugation `w + xi + yj + zk ↦ w - xi - yj - zk`.
///
/// `(-1, -1)` gives Hamilton's quaternions, a division ring. For other
/// parameters the algebra may split, in which case [`DivisionRing::inv`]
/// reports [`ScalarError::NotInvertible`] for zero divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quaternion {
    params: Arc<(BigRational, BigRational)>,
    hamilton: bool,
}

impl Default for Quaternion {
    fn default() -> Self {
        Quaternion::hamilton()
    }
}

impl Quaternion {
    pub fn new(a: BigRational, b: BigRational) -> Result<Self, ScalarError> {
        if a.is_zero() || b.is_zero() {
            return Err(ScalarError::Usage("quaternion parameters must be nonzero".into()));
        }
        let minus_one = -BigRational::one();
        let hamilton = a == minus_one && b == minus_one;
        Ok(Quaternion { params: Arc::new((a, b)), hamilton })
    }

    /// `(-1, -1 / ℚ)`.
    pub fn hamilton() -> Self {
        Quaternion { params: Arc::new((from_int(-1), from_int(-1))), hamilton: true }
    }

    pub fn i(&self) -> Quat {
        Quat::from_ints(0, 1, 0, 0)
    }

    pub fn j(&self) -> Quat {
        Quat::from_ints(0, 0, 1, 0)
    }

    pub fn k(&self) -> Quat {
        Quat::from_ints(0, 0, 0, 1)
    }

    pub fn conj(&self, q: &Quat) -> Quat {
        Quat::new(q.w.clone(), -&q.x, -&q.y, -&q.z)
    }

    /// Reduced norm `q·conj(q) = w² - a·x² - b·y² + ab·z²`.
    pub fn reduced_norm(&self, q: &Quat) -> BigRational {
        let (a, b) = &*self.params;
        &q.w * &q.w - a * &q.x * &q.x - b * &q.y * &q.y + a * b * &q.z * &q.z
    }
}

/// Numerators over the least common denominator of the four components.
fn integral(q: &Quat) -> ([BigInt; 4], BigInt) {
    let parts = [&q.w, &q.x, &q.y, &q.z];
    let den = parts.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = parts.map(|c| c.numer() * (&den / c.denom()));
    (nums, den)
}

impl DivisionRing for Quaternion {
    type Elem = Quat;

    fn descriptor(&self) -> RingDescriptor {
        let (a, b) = &*self.params;
        RingDescriptor {
            kind: RingKind::Quaternion { a: a.clone(), b: b.clone() },
            involution: Involution::QuaternionConjugation,
        }
    }

    fn zero(&self) -> Quat {
        Quat::from_ints(0, 0, 0, 0)
    }

    fn one(&self) -> Quat {
        Quat::from_ints(1, 0, 0, 0)
    }

    fn from_i64(&self, n: i64) -> Quat {
        Quat::from_ints(n, 0, 0, 0)
    }

    fn add(&self, p: &Quat, q: &Quat) -> Quat {
        Quat::new(&p.w + &q.w, &p.x + &q.x, &p.y + &q.y, &p.z + &q.z)
    }

    fn sub(&self, p: &Quat, q: &Quat) -> Quat {
        Quat::new(&p.w - &q.w, &p.x - &q.x, &p.y - &q.y, &p.z - &q.z)
    }

    fn neg(&self, p: &Quat) -> Quat {
        Quat::new(-&p.w, -&p.x, -&p.y, -&p.z)
    }

    fn mul(&self, p: &Quat, q: &Quat) -> Quat {
        let (a, b) = &*self.params;
        if self.hamilton {
            let (pn, pd) = integral(p);
            let (qn, qd) = integral(q);
            let [pw, px, py, pz] = &pn;
            let [qw, qx, qy, qz] = &qn;
            let w = pw * qw - px * qx - py * qy - pz * qz;
            let x = pw * qx + px * qw + py * qz - pz * qy;
            let y = pw * qy + py * qw - px * qz + pz * qx;
            let z = pw * qz + pz * qw + px * qy - py * qx;
            let den = pd * qd;
            return Quat::new(
                BigRational::new(w, den.clone()),
                BigRational::new(x, den.clone()),
                BigRational::new(y, den.clone()),
                BigRational::new(z, den),
            );
        }
        let ab = a * b;
        // i·k = a·j, k·i = -a·j, j·k = -b·i, k·j = b·i, k² = -ab
        let w = &p.w * &q.w + a * &p.x * &q.x + b * &p.y * &q.y - &ab * &p.z * &q.z;
        let x = &p.w * &q.x + &p.x * &q.w - b * &p.y * &q.z + b * &p.z * &q.y;
        let y = &p.w * &q.y + &p.y * &q.w + a * &p.x * &q.z - a * &p.z * &q.x;
        let z = &p.w * &q.z + &p.z * &q.w + &p.x * &q.y - &p.y * &q.x;
        Quat::new(w, x, y, z)
    }

    fn inv(&self, q: &Quat) -> Result<Quat, ScalarError> {
        if self.is_zero(q) {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.reduced_norm(q);
        if n.is_zero() {
            return Err(ScalarError::NotInvertible);
        }
        let c = self.conj(q);
        Ok(Quat::new(&c.w / &n, &c.x / &n, &c.y / &n, &c.z / &n))
    }

    fn sigma(&self, q: &Quat) -> Quat {
        self.conj(q)
    }

    fn is_zero(&self, q: &Quat) -> bool {
        q.coeffs().iter().all(|c| c.is_zero())
    }

    fn involution(&self) -> Involution {
        Involution::QuaternionConjugation
    }

    fn is_commutative(&self) -> bool {
        false
    }

    fn has_char_two(&self) -> bool {
        false
    }

    fn parse(&self, literal: &str) -> Result<Quat, ScalarError> {
        let mut q = self.zero();
        for term in split_terms(literal, &['i', 'j', 'k'])? {
            let mut c = if term.coeff.is_empty() {
                BigRational::one()
            } else {
                parse_rational(term.coeff).map_err(|_| ScalarError::parse(literal, "bad rational coefficient"))?
            };
            if term.negative {
                c = -c;
            }
            match term.unit {
                None => q.w += c,
                Some('i') => q.x += c,
                Some('j') => q.y += c,
                Some('k') => q.z += c,
                Some(_) => unreachable!(),
            }
        }
        Ok(q)
    }

    fn format(&self, q: &Quat) -> String {
        let mut out = String::new();
        for (c, unit) in q.coeffs().into_iter().zip(["", "i", "j", "k"]) {
            if c.is_zero() {
                continue;
            }
            let body = format_rational(c);
            let (neg, mag) = match body.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, body),
            };
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if unit.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(unit);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> Quat {
        Quat::new(random_small(rng), random_small(rng), random_small(rng), random_small(rng))
    }
}
