use std::fmt;
use std::ops::Add;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::scalar::{DivisionRing, Involution, RingDescriptor, ScalarError};

/// Ring-operation tallies of one run. Subtraction and negation count as
/// additions; zero tests and comparisons count as equality tests.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounters {
    pub additions: u64,
    pub multiplications: u64,
    pub inversions: u64,
    pub equality_tests: u64,
    pub sigma_applications: u64,
}

impl Add for OpCounters {
    type Output = OpCounters;

    fn add(self, o: OpCounters) -> OpCounters {
        OpCounters {
            additions: self.additions + o.additions,
            multiplications: self.multiplications + o.multiplications,
            inversions: self.inversions + o.inversions,
            equality_tests: self.equality_tests + o.equality_tests,
            sigma_applications: self.sigma_applications + o.sigma_applications,
        }
    }
}

impl fmt::Display for OpCounters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "additions={} multiplications={} inversions={} equality_tests={} sigma_applications={}",
            self.additions, self.multiplications, self.inversions, self.equality_tests, self.sigma_applications
        )
    }
}

#[derive(Debug, Default)]
struct Tally {
    additions: AtomicU64,
    multiplications: AtomicU64,
    inversions: AtomicU64,
    equality_tests: AtomicU64,
    sigma_applications: AtomicU64,
}

#[inline]
fn bump(c: &AtomicU64) {
    c.fetch_add(1, Ordering::Relaxed);
}

/// Wraps a ring and counts every arithmetic operation performed through it.
///
/// The element type is shared with the wrapped ring, so a matrix can be
/// moved onto the counting ring with [`Matrix::with_ring`](crate::Matrix::with_ring)
/// and back without copying entries. Clones share one tally.
#[derive(Debug, Clone)]
pub struct CountingRing<R: DivisionRing> {
    inner: R,
    tally: Arc<Tally>,
}

impl<R: DivisionRing> PartialEq for CountingRing<R> {
    fn eq(&self, other: &Self) -> bool {
        self.inner == other.inner && Arc::ptr_eq(&self.tally, &other.tally)
    }
}

impl<R: DivisionRing> CountingRing<R> {
    pub fn new(inner: R) -> Self {
        CountingRing { inner, tally: Arc::default() }
    }

    pub fn inner(&self) -> &R {
        &self.inner
    }

    pub fn snapshot(&self) -> OpCounters {
        let t = &self.tally;
        OpCounters {
            additions: t.additions.load(Ordering::Relaxed),
            multiplications: t.multiplications.load(Ordering::Relaxed),
            inversions: t.inversions.load(Ordering::Relaxed),
            equality_tests: t.equality_tests.load(Ordering::Relaxed),
            sigma_applications: t.sigma_applications.load(Ordering::Relaxed),
        }
    }
}

impl<R: DivisionRing> DivisionRing for CountingRing<R> {
    type Elem = R::Elem;

    fn descriptor(&self) -> RingDescriptor {
        self.inner.descriptor()
    }

    fn zero(&self) -> R::Elem {
        self.inner.zero()
    }

    fn one(&self) -> R::Elem {
        self.inner.one()
    }

    fn from_i64(&self, n: i64) -> R::Elem {
        self.inner.from_i64(n)
    }

    #[inline]
    fn add(&self, x: &R::Elem, y: &R::Elem) -> R::Elem {
        bump(&self.tally.additions);
        self.inner.add(x, y)
    }

    #[inline]
    fn sub(&self, x: &R::Elem, y: &R::Elem) -> R::Elem {
        bump(&self.tally.additions);
        self.inner.sub(x, y)
    }

    #[inline]
    fn neg(&self, x: &R::Elem) -> R::Elem {
        bump(&self.tally.additions);
        self.inner.neg(x)
    }

    #[inline]
    fn mul(&self, x: &R::Elem, y: &R::Elem) -> R::Elem {
        bump(&self.tally.multiplications);
        self.inner.mul(x, y)
    }

    fn inv(&self, x: &R::Elem) -> Result<R::Elem, ScalarError> {
        bump(&self.tally.inversions);
        self.inner.inv(x)
    }

    #[inline]
    fn sigma(&self, x: &R::Elem) -> R::Elem {
        bump(&self.tally.sigma_applications);
        self.inner.sigma(x)
    }

    #[inline]
    fn is_zero(&self, x: &R::Elem) -> bool {
        bump(&self.tally.equality_tests);
        self.inner.is_zero(x)
    }

    fn equal(&self, x: &R::Elem, y: &R::Elem) -> bool {
        bump(&self.tally.equality_tests);
        self.inner.equal(x, y)
    }

    fn involution(&self) -> Involution {
        self.inner.involution()
    }

    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }

    fn has_char_two(&self) -> bool {
        self.inner.has_char_two()
    }

    fn parse(&self, literal: &str) -> Result<R::Elem, ScalarError> {
        self.inner.parse(literal)
    }

    fn format(&self, x: &R::Elem) -> String {
        self.inner.format(x)
    }

    fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> R::Elem {
        self.inner.random(rng)
    }

    fn is_one(&self, x: &R::Elem) -> bool {
        bump(&self.tally.equality_tests);
        self.inner.is_one(x)
    }
}
