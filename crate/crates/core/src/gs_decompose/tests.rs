use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::form::materialize;
use crate::generate::{random_form, GenOptions};
use crate::testutil::{assert_verified, form, gf};
use crate::{QuadExt, Quaternion, Rational};

fn standardized_image(p: u64, sign: Sign, alpha: i64) -> (Vec<StandardBlock<u64>>, Matrix<crate::PrimeField>) {
    let f = gf(p);
    let (log, blocks) = standardize(&f, sign, &f.from_i64(alpha)).unwrap();
    let b = Matrix::from_i64_rows(f, &[&[0, 1], &[sign.as_i8() as i64, alpha]]).unwrap();
    let a = materialize(&f, &log).unwrap();
    let image = a.matmul_classical(&b).unwrap().matmul_classical(&a.sigma_transpose()).unwrap();
    (blocks, image)
}

#[test]
fn standardize_nonzero_alpha() {
    // -s·α⁻¹ = -5 = 2 over GF(7)
    let (blocks, image) = standardized_image(7, Sign::Plus, 3);
    assert_eq!(blocks, vec![StandardBlock::Scalar(2), StandardBlock::Scalar(3)]);
    assert_eq!(image, Matrix::from_i64_rows(gf(7), &[&[2, 0], &[0, 3]]).unwrap());
}

#[test]
fn standardize_hyperbolic_plane() {
    let (blocks, image) = standardized_image(7, Sign::Plus, 0);
    assert_eq!(blocks, vec![StandardBlock::Scalar(2), StandardBlock::Scalar(5)]);
    assert_eq!(image, Matrix::from_i64_rows(gf(7), &[&[2, 0], &[0, -2]]).unwrap());
}

#[test]
fn standardize_keeps_j() {
    let (blocks, image) = standardized_image(7, Sign::Minus, 0);
    assert_eq!(blocks, vec![StandardBlock::J]);
    assert_eq!(image, Matrix::from_i64_rows(gf(7), &[&[0, 1], &[-1, 0]]).unwrap());

    let (blocks, _) = standardized_image(2, Sign::Plus, 0);
    assert_eq!(blocks, vec![StandardBlock::J]);
}

#[test]
fn standardize_rejects_illegal_alpha() {
    // over GF(9) with Frobenius, [[0,1],[1,x]] is not Hermitian
    let f9 = QuadExt::hermitian(3).unwrap();
    assert!(standardize(&f9, Sign::Plus, &f9.gen()).is_err());
}

#[test]
fn zero_form_is_all_radical() {
    for d in 0..5 {
        let f = form(gf(11), &vec![vec![0i64; d].as_slice(); d], Sign::Plus);
        let decomp = decompose_gs(&f).unwrap();
        assert_eq!(decomp.blocks, vec![StandardBlock::Scalar(0); d]);
        assert_eq!(decomp.radical_dim, d);
        assert_eq!(decomp.counters.inversions, 0);
        assert_eq!(decomp.counters.additions, 0);
        assert!(decomp.log.ops().iter().all(|op| matches!(op, ElementaryOp::Swap { .. })));
        assert_verified(&f, &decomp);
    }
}

#[test]
fn symplectic_plane_is_already_standard() {
    let f = form(Rational, &[&[0, 1], &[-1, 0]], Sign::Minus);
    let decomp = decompose_gs(&f).unwrap();
    assert_eq!(decomp.blocks, vec![StandardBlock::J]);
    assert!(decomp.transform().unwrap().is_identity());
}

#[test]
fn isotropic_then_anisotropic() {
    let f = form(gf(7), &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]], Sign::Plus);
    let decomp = decompose_gs(&f).unwrap();
    assert_eq!(decomp.blocks, vec![StandardBlock::Scalar(2), StandardBlock::Scalar(5), StandardBlock::Scalar(5)]);
    assert_verified(&f, &decomp);
}

#[test]
fn radical_goes_to_the_tail() {
    let f = form(gf(7), &[&[0, 0, 0], &[0, 3, 0], &[0, 0, 0]], Sign::Plus);
    let decomp = decompose_gs(&f).unwrap();
    assert_eq!(decomp.blocks, vec![StandardBlock::Scalar(3), StandardBlock::Scalar(0), StandardBlock::Scalar(0)]);
    assert_eq!(decomp.radical_dim, 2);
    assert_verified(&f, &decomp);
}

#[test]
fn hermitian_over_gf9_scales_by_sigma_of_inverse() {
    // B = [[0, x], [σ(x), 0]]: the isotropic pivot γ = x is not σ-fixed
    let f9 = QuadExt::hermitian(3).unwrap();
    let x = f9.gen();
    let b = Matrix::from_rows(f9.clone(), vec![vec![f9.zero(), x.clone()], vec![f9.sigma(&x), f9.zero()]]).unwrap();
    let f = HermitianForm::new(b, Sign::Plus).unwrap();
    let decomp = decompose_gs(&f).unwrap();
    assert_verified(&f, &decomp);
}

#[test]
fn quaternion_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h = Quaternion::hamilton();
    for d in 1..=6 {
        let f = random_form(&h, Sign::Plus, d, &GenOptions { zero_prob: 0.3, rank: None }, &mut rng).unwrap();
        assert_verified(&f, &decompose_gs(&f).unwrap());
    }
}

#[test]
fn alternating_rank_gives_j_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (d, k) in [(6, 2), (7, 4), (8, 8)] {
        let f = random_form(&Rational, Sign::Minus, d, &GenOptions { zero_prob: 0.0, rank: Some(k) }, &mut rng).unwrap();
        let decomp = decompose_gs(&f).unwrap();
        assert_eq!(decomp.j_block_count(), k / 2);
        assert_eq!(decomp.radical_dim, d - k);
        assert_verified(&f, &decomp);
    }
}

#[test]
fn counters_match_closed_forms_on_diagonal_input() {
    // a diagonal form needs only the d diagonal tests, the column scans and
    // one inversion per step
    let f = form(gf(101), &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]], Sign::Plus);
    let decomp = decompose_gs(&f).unwrap();
    assert_eq!(decomp.counters.inversions, 3);
    assert_eq!(decomp.counters.multiplications, 0);
    assert_eq!(decomp.counters.sigma_applications, 0);
    assert_eq!(decomp.counters.equality_tests, 3 + 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gs_output_verifies(seed in any::<u64>(), d in 0usize..12, minus in any::<bool>(), zero_prob in 0.0f64..0.9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sign = if minus { Sign::Minus } else { Sign::Plus };
        let f = random_form(&gf(101), sign, d, &GenOptions { zero_prob, rank: None }, &mut rng).unwrap();
        let decomp = decompose_gs(&f).unwrap();
        let report = crate::verify::check_decomposition(f.matrix(), sign, &decomp);
        prop_assert!(report.passed());
        // J blocks only where standardize cannot split
        if sign == Sign::Plus {
            prop_assert_eq!(decomp.j_block_count(), 0);
        }
    }

    #[test]
    fn gs_counts_within_bounds(seed in any::<u64>(), d in 2usize..24) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_form(&gf(1009), Sign::Plus, d, &GenOptions::default(), &mut rng).unwrap();
        let c = decompose_gs(&f).unwrap().counters;
        let pairs = (d * (d - 1) / 2) as u64;
        prop_assert!(c.equality_tests <= pairs + d as u64);
        prop_assert!(c.sigma_applications <= pairs);
    }

    #[test]
    fn gf9_hermitian_verifies(seed in any::<u64>(), d in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f9 = QuadExt::hermitian(3).unwrap();
        let f = random_form(&f9, Sign::Plus, d, &GenOptions { zero_prob: 0.4, rank: None }, &mut rng).unwrap();
        let decomp = decompose_gs(&f).unwrap();
        prop_assert!(crate::verify::check_decomposition(f.matrix(), Sign::Plus, &decomp).passed());
    }
}
