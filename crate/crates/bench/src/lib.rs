//! Seeded inputs shared by the benchmarks.

use hermform_core::generate::{random_form, GenOptions};
use hermform_core::{DivisionRing, HermitianForm, Matrix, PrimeField, Sign};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The prime used by the decomposition benchmarks.
pub const BENCH_PRIME: u64 = 1009;

pub fn bench_field() -> PrimeField {
    PrimeField::new(BENCH_PRIME).expect("1009 is prime")
}

/// A dense random symmetric form over GF(1009), reproducible from `seed`.
pub fn symmetric_form(d: usize, seed: u64) -> HermitianForm<PrimeField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_form(&bench_field(), Sign::Plus, d, &GenOptions::default(), &mut rng).expect("valid options")
}

pub fn random_matrix<R: DivisionRing>(ring: &R, rows: usize, cols: usize, seed: u64) -> Matrix<R> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..rows).map(|_| (0..cols).map(|_| ring.random(&mut rng)).collect()).collect();
    Matrix::from_rows(ring.clone(), data).expect("rectangular")
}
