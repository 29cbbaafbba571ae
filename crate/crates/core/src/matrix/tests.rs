use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::scalar::{PrimeField, QuadExt, Quaternion, Rational};

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn random<R: DivisionRing>(ring: &R, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix<R> {
    Matrix::from_fn(ring.clone(), rows, cols, |_, _| ring.random(rng))
}

#[test]
fn small_product_over_gf7() {
    let a = Matrix::from_i64_rows(gf(7), &[&[1, 2], &[3, 4]]).unwrap();
    let b = Matrix::from_i64_rows(gf(7), &[&[5, 6], &[0, 1]]).unwrap();
    let expected = Matrix::from_i64_rows(gf(7), &[&[5, 1], &[1, 1]]).unwrap();
    assert_eq!(a.matmul_classical(&b).unwrap(), expected);
    assert_eq!(a.matmul_strassen(&b, 2).unwrap(), expected);
}

#[test]
fn quaternion_product_keeps_order() {
    let h = Quaternion::hamilton();
    let a = Matrix::from_rows(h.clone(), vec![vec![h.i()]]).unwrap();
    let b = Matrix::from_rows(h.clone(), vec![vec![h.j()]]).unwrap();
    assert_eq!(a.matmul_classical(&b).unwrap()[(0, 0)], h.k());
    assert_eq!(b.matmul_classical(&a).unwrap()[(0, 0)], h.neg(&h.k()));
}

#[test]
fn shape_and_ring_errors() {
    let a = Matrix::<PrimeField>::zeros(gf(7), 2, 3);
    assert!(matches!(a.matmul_classical(&a), Err(MatrixError::ShapeMismatch { .. })));
    let b = Matrix::<PrimeField>::zeros(gf(11), 3, 2);
    assert_eq!(a.matmul_classical(&b), Err(MatrixError::RingMismatch));
    assert_eq!(a.matmul_strassen(&a.transpose(), 1), Err(MatrixError::InvalidCutoff(1)));
    assert_eq!(MulBackend::from_cutoff(0), Ok(MulBackend::Classical));
    assert!(MulBackend::from_cutoff(1).is_err());
    assert!(Matrix::from_rows(gf(7), vec![vec![1], vec![1, 2]]).is_err());
    assert_eq!(Matrix::<PrimeField>::zeros(gf(7), 2, 3).invert(), Err(MatrixError::NotSquare(2, 3)));
}

#[test]
fn inverse_and_singular() {
    let a = Matrix::from_i64_rows(gf(7), &[&[1, 2], &[3, 4]]).unwrap();
    let inv = a.invert().unwrap();
    assert!(a.matmul_classical(&inv).unwrap().is_identity());
    let s = Matrix::from_i64_rows(gf(7), &[&[1, 2], &[2, 4]]).unwrap();
    assert_eq!(s.invert(), Err(MatrixError::Singular));
    assert_eq!(s.rank(), 1);
}

#[test]
fn sigma_transpose_reverses_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let h = Quaternion::hamilton();
    let a = random(&h, 3, 4, &mut rng);
    let b = random(&h, 4, 2, &mut rng);
    let lhs = a.matmul_classical(&b).unwrap().sigma_transpose();
    let rhs = b.sigma_transpose().matmul_classical(&a.sigma_transpose()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn direct_sum_and_blocks() {
    let a = Matrix::from_i64_rows(Rational, &[&[1]]).unwrap();
    let b = Matrix::from_i64_rows(Rational, &[&[2, 3], &[4, 5]]).unwrap();
    let s = a.direct_sum(&b).unwrap();
    assert_eq!(s.submatrix(1..3, 1..3), b);
    assert!(s.submatrix(0..1, 1..3).is_zero());
    assert_eq!(s.resized(4, 4).submatrix(0..3, 0..3), s);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn strassen_matches_classical_gf101(seed in any::<u64>(), m in 1usize..40, k in 1usize..40, n in 1usize..40, cutoff in 2usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = gf(101);
        let (a, b) = (random(&f, m, k, &mut rng), random(&f, k, n, &mut rng));
        prop_assert_eq!(a.matmul_strassen(&b, cutoff).unwrap(), a.matmul_classical(&b).unwrap());
        let parallel = a.matmul_with(&b, MulBackend::Strassen { cutoff, parallel: true }).unwrap();
        prop_assert_eq!(parallel, a.matmul_classical(&b).unwrap());
    }

    #[test]
    fn strassen_matches_classical_quaternion(seed in any::<u64>(), m in 1usize..12, k in 1usize..12, n in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = Quaternion::hamilton();
        let (a, b) = (random(&h, m, k, &mut rng), random(&h, k, n, &mut rng));
        prop_assert_eq!(a.matmul_strassen(&b, 2).unwrap(), a.matmul_classical(&b).unwrap());
    }

    #[test]
    fn row_reduction_is_an_echelon_transform(seed in any::<u64>(), m in 1usize..10, n in 1usize..10, rank in 0usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f9 = QuadExt::hermitian(3).unwrap();
        let r = rank.min(m).min(n);
        let m1 = random(&f9, m, r, &mut rng).matmul_classical(&random(&f9, r, n, &mut rng)).unwrap();
        let red = m1.left_row_reduce();
        prop_assert_eq!(red.transform.matmul_classical(&m1).unwrap(), red.reduced.clone());
        prop_assert!(red.reduced.submatrix(red.rank..m, 0..n).is_zero());
        prop_assert!(red.rank <= r);
        prop_assert_eq!(red.transform.invert().is_ok(), true);
        let col = m1.right_column_reduce();
        prop_assert_eq!(m1.matmul_classical(&col.transform).unwrap(), col.reduced.clone());
        prop_assert!(col.reduced.submatrix(0..m, col.rank..n).is_zero());
        prop_assert_eq!(col.rank, red.rank);
    }

    #[test]
    fn inverse_roundtrip_quaternion(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = Quaternion::hamilton();
        let a = random(&h, n, n, &mut rng);
        if let Ok(inv) = a.invert() {
            prop_assert!(a.matmul_classical(&inv).unwrap().is_identity());
            prop_assert!(inv.matmul_classical(&a).unwrap().is_identity());
        } else {
            prop_assert!(a.rank() < n);
        }
    }
}
