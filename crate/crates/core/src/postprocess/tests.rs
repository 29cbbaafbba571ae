use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::generate::{random_form, GenOptions};
use crate::gs_decompose::decompose_gs;
use crate::testutil::{assert_verified, form, gf};
use crate::{BigRational, Fp2, Quat};

#[test]
fn normalize_over_gf7() {
    let f = gf(7);
    assert_eq!(normalize_scalar_block(&f, &2).unwrap(), Some(2));
    assert_eq!(normalize_scalar_block(&f, &3).unwrap(), None);
    assert_eq!(normalize_scalar_block(&f, &1).unwrap(), Some(1));
    assert!(normalize_scalar_block(&f, &0).is_err());
    // exhaustive: a factor exists exactly for the residues
    for alpha in 1..7u64 {
        match f.normalizing_factor(&alpha) {
            Some(g) => assert_eq!(g * alpha * g % 7, 1),
            None => assert!(!f.is_square(alpha)),
        }
    }
}

#[test]
fn normalize_with_frobenius_always_succeeds() {
    for p in [3, 5, 7] {
        let f = QuadExt::hermitian(p).unwrap();
        for a in 1..p {
            let alpha = f.embed(a);
            let g = f.normalizing_factor(&alpha).unwrap();
            assert!(f.is_one(&f.mul(&f.mul(&g, &alpha), &f.sigma(&g))), "p = {p}, α = {a}");
        }
    }
}

#[test]
fn normalize_over_gf25_with_identity() {
    let f = QuadExt::new(5, Involution::Identity).unwrap();
    // every element of GF(5) is a square in GF(25)
    for a in 1..5 {
        let alpha = f.embed(a);
        let g = f.normalizing_factor(&alpha).unwrap();
        assert!(f.is_one(&f.mul(&f.mul(&g, &alpha), &g)));
    }
    // x^12 = 2^6 = 4 ≠ 1, so x is not a square
    assert!(f.normalizing_factor(&f.gen()).is_none());
}

#[test]
fn normalize_rationals_and_quaternions() {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    assert_eq!(Rational.normalizing_factor(&q(4, 9)), Some(q(3, 2)));
    assert_eq!(Rational.normalizing_factor(&q(2, 1)), None);
    assert_eq!(Rational.normalizing_factor(&q(-4, 1)), None);
    let h = Quaternion::hamilton();
    assert_eq!(h.normalizing_factor(&Quat::real(q(1, 4))), Some(Quat::real(q(2, 1))));
    assert_eq!(h.normalizing_factor(&Quat::real(q(-1, 1))), None);
    assert_eq!(h.normalizing_factor(&Quat::from_ints(0, 1, 0, 0)), None);
}

#[test]
fn pair_rescale_examples() {
    let f = gf(7);
    let (a, alpha) = pair_rescale(&f, &1, &0).unwrap();
    assert_eq!(alpha, 1);
    assert_eq!(a, Matrix::from_i64_rows(f, &[&[1, 0], &[0, -1]]).unwrap());

    let (a, alpha) = pair_rescale(&f, &1, &2).unwrap();
    assert_eq!(alpha, 5);
    assert_eq!(a.matmul_classical(&a.transpose()).unwrap(), Matrix::from_i64_rows(f, &[&[5, 0], &[0, 5]]).unwrap());

    // GF(9): x·σ(x) + 1 = -x² + 1 = -2 + 1 = 2
    let f9 = QuadExt::hermitian(3).unwrap();
    let (_, alpha) = pair_rescale(&f9, &f9.gen(), &f9.one()).unwrap();
    assert_eq!(alpha, Fp2::new(2, 0));

    assert!(pair_rescale(&f, &0, &0).is_err());
    assert!(pair_rescale(&Quaternion::hamilton(), &Quat::from_ints(1, 0, 0, 0), &Quat::from_ints(0, 1, 0, 0)).is_err());
}

#[test]
fn char2_triple_examples() {
    let f2 = gf(2);
    let a = char2_triple(&f2, &1).unwrap();
    assert_eq!(a.rank(), 3);
    let f4 = QuadExt::hermitian(2).unwrap();
    assert!(char2_triple(&f4, &f4.one()).is_ok());
    assert!(char2_triple(&f2, &0).is_err());
    assert!(char2_triple(&gf(7), &1).is_err());
}

#[test]
fn maximize_turns_opposite_pair_into_j() {
    let f = form(gf(7), &[&[2, 0], &[0, 5]], Sign::Plus);
    let decomp = decompose_gs(&f).unwrap();
    let maxed = maximize_j_blocks(&decomp).unwrap();
    assert_eq!(maxed.blocks, vec![StandardBlock::J]);
    assert_verified(&f, &maxed);
}

#[test]
fn maximize_without_pairs_is_a_no_op() {
    let f = form(gf(7), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]], Sign::Plus);
    let decomp = decompose_gs(&f).unwrap();
    assert_eq!(maximize_j_blocks(&decomp).unwrap(), decomp);
    let zero = form(gf(7), &[&[0, 0], &[0, 0]], Sign::Plus);
    let decomp = decompose_gs(&zero).unwrap();
    assert_eq!(maximize_j_blocks(&decomp).unwrap(), decomp);
    let skew = form(gf(7), &[&[0, 1], &[-1, 0]], Sign::Minus);
    assert!(maximize_j_blocks(&decompose_gs(&skew).unwrap()).is_err());
}

#[test]
fn canonical_examples() {
    let f = form(gf(7), &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 0]], Sign::Plus);
    let sorted = sort_blocks_canonical(&decompose_gs(&f).unwrap()).unwrap();
    assert_eq!(sorted.blocks, vec![StandardBlock::Scalar(1), StandardBlock::Scalar(3), StandardBlock::Scalar(0)]);
    assert_verified(&f, &sorted);

    let ones = form(gf(7), &[&[1, 0], &[0, 1]], Sign::Plus);
    let decomp = decompose_gs(&ones).unwrap();
    assert_eq!(sort_blocks_canonical(&decomp).unwrap(), decomp);

    let two_non_residues = form(gf(7), &[&[3, 0], &[0, 5]], Sign::Plus);
    let sorted = sort_blocks_canonical(&decompose_gs(&two_non_residues).unwrap()).unwrap();
    assert_eq!(sorted.blocks, vec![StandardBlock::Scalar(1), StandardBlock::Scalar(1)]);
    assert_verified(&two_non_residues, &sorted);

    let skew = form(gf(7), &[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]], Sign::Minus);
    let decomp = decompose_gs(&skew).unwrap();
    assert_eq!(sort_blocks_canonical(&decomp).unwrap().blocks, decomp.blocks);

    let q = form(Rational, &[&[1]], Sign::Plus);
    assert!(sort_blocks_canonical(&decompose_gs(&q).unwrap()).is_err());
}

#[test]
fn canonical_converts_j_after_maximizing() {
    let f = form(gf(11), &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 4]], Sign::Plus);
    let maxed = maximize_j_blocks(&decompose_gs(&f).unwrap()).unwrap();
    assert_eq!(maxed.j_block_count(), 1);
    let sorted = sort_blocks_canonical(&maxed).unwrap();
    assert_eq!(sorted.j_block_count(), 0);
    assert_verified(&f, &sorted);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn post_processing_keeps_the_congruence(seed in any::<u64>(), d in 0usize..10, zero_prob in 0.0f64..0.8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for p in [3u64, 7, 101] {
            let f = random_form(&gf(p), Sign::Plus, d, &GenOptions { zero_prob, rank: None }, &mut rng).unwrap();
            let decomp = decompose_gs(&f).unwrap();
            let maxed = maximize_j_blocks(&decomp).unwrap();
            prop_assert!(crate::verify::check_decomposition(f.matrix(), Sign::Plus, &maxed).passed());
            let sorted = sort_blocks_canonical(&maxed).unwrap();
            prop_assert!(crate::verify::check_decomposition(f.matrix(), Sign::Plus, &sorted).passed());
            let again = sort_blocks_canonical(&decomp).unwrap();
            prop_assert_eq!(&sorted.blocks, &again.blocks);
        }
    }

    #[test]
    fn pair_rescale_identity_over_gf9(a in 0u64..3, b in 0u64..3, c in 0u64..3, e in 0u64..3) {
        let f9 = QuadExt::hermitian(3).unwrap();
        let (g, h) = (Fp2::new(a, b), Fp2::new(c, e));
        match pair_rescale(&f9, &g, &h) {
            Ok((m, alpha)) => {
                let image = m.matmul_classical(&m.sigma_transpose()).unwrap();
                prop_assert_eq!(image, Matrix::diagonal(f9.clone(), &[alpha.clone(), alpha]));
            }
            Err(_) => prop_assert!(f9.is_zero(&f9.add(&f9.mul(&g, &f9.sigma(&g)), &f9.mul(&h, &f9.sigma(&h))))),
        }
    }
}
