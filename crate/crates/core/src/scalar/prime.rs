use rand::Rng;

use super::{DivisionRing, Involution, RingDescriptor, RingKind, ScalarError};

/// Deterministic primality test by trial division; adequate for `p < 2^32`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_modulus(p: u64) -> Result<(), ScalarError> {
    if !(2..1 << 32).contains(&p) {
        return Err(ScalarError::ModulusOutOfRange(p));
    }
    if !is_prime(p) {
        return Err(ScalarError::NotPrime(p));
    }
    Ok(())
}

/// The prime field `GF(p)` with the identity involution. Elements are
/// residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        check_modulus(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    /// Euler's criterion. Zero counts as a square.
    pub fn is_square(&self, x: u64) -> bool {
        x == 0 || self.p == 2 || self.pow(x, (self.p - 1) / 2) == 1
    }

    /// Smallest quadratic non-residue; `None` for `p = 2`.
    pub fn smallest_non_residue(&self) -> Option<u64> {
        if self.p == 2 {
            return None;
        }
        (2..self.p).find(|&c| !self.is_square(c))
    }

    /// Square root by Tonelli–Shanks. Of the two roots the smaller residue is
    /// returned; `None` when `x` is a non-residue.
    pub fn sqrt(&self, x: u64) -> Option<u64> {
        let p = self.p;
        let x = x % p;
        if x == 0 || p == 2 {
            return Some(x);
        }
        if !self.is_square(x) {
            return None;
        }
        // p - 1 = q * 2^e with q odd
        let mut q = p - 1;
        let mut e = 0u32;
        while q % 2 == 0 {
            q /= 2;
            e += 1;
        }
        let z = self.smallest_non_residue().expect("odd p has a non-residue");
        let mut m = e;
        let mut c = self.pow(z, q);
        let mut t = self.pow(x, q);
        let mut r = self.pow(x, (q + 1) / 2);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = t2 * t2 % p;
                i += 1;
            }
            let b = self.pow(c, 1 << (m - i - 1));
            m = i;
            c = b * b % p;
            t = t * c % p;
            r = r * b % p;
        }
        Some(r.min(p - r))
    }
}

impl DivisionRing for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor {
            kind: RingKind::PrimeField { p: self.p },
            involution: Involution::Identity,
        }
    }

    #[inline]
    fn zero(&self) -> u64 {
        0
    }

    #[inline]
    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }

    #[inline]
    fn add(&self, x: &u64, y: &u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, x: &u64, y: &u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    #[inline]
    fn neg(&self, x: &u64) -> u64 {
        if *x == 0 {
            0
        } else {
            self.p - x
        }
    }

    #[inline]
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        x * y % self.p
    }

    fn inv(&self, x: &u64) -> Result<u64, ScalarError> {
        if *x == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        // extended Euclid on (x, p)
        let (mut r0, mut r1) = (self.p as i64, *x as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.reduce_i64(t0))
    }

    #[inline]
    fn sigma(&self, x: &u64) -> u64 {
        *x
    }

    #[inline]
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }

    fn involution(&self) -> Involution {
        Involution::Identity
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn has_char_two(&self) -> bool {
        self.p == 2
    }

    fn parse(&self, literal: &str) -> Result<u64, ScalarError> {
        let n: i64 = literal
            .parse()
            .map_err(|_| ScalarError::parse(literal, "expected a decimal integer"))?;
        Ok(self.reduce_i64(n))
    }

    fn format(&self, x: &u64) -> String {
        x.to_string()
    }

    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> u64 {
        rng.random_range(0..self.p)
    }
}
