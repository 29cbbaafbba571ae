use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::generate::{random_form, GenOptions};
use crate::gs_decompose::decompose_gs;
use crate::testutil::{assert_verified, form, gf};
use crate::verify::invariants_of;
use crate::{Quaternion, Rational};

fn blocks(f: &HermitianForm<crate::PrimeField>) -> Decomposition<crate::PrimeField> {
    let decomp = decompose_blocks(f, &BlockOptions::default()).unwrap();
    assert_verified(f, &decomp);
    decomp
}

fn scalars(values: &[u64]) -> Vec<StandardBlock<u64>> {
    values.iter().map(|&v| StandardBlock::Scalar(v)).collect()
}

#[test]
fn radical_detection() {
    let f = form(gf(7), &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 3]], Sign::Plus);
    let (log, core, radical) = detect_radical(&f, MulBackend::Classical).unwrap();
    assert_eq!(radical, 1);
    assert_eq!(core.dim(), 2);
    assert_eq!(core.matrix().rank(), 2);
    assert_eq!(log.len(), 1);

    let nonsingular = form(gf(7), &[&[1, 2], &[2, 1]], Sign::Plus);
    let (log, core, radical) = detect_radical(&nonsingular, MulBackend::Classical).unwrap();
    assert_eq!((radical, log.len()), (0, 0));
    assert_eq!(core, nonsingular);

    let zero = form(gf(7), &[&[0, 0], &[0, 0]], Sign::Plus);
    let (_, core, radical) = detect_radical(&zero, MulBackend::Classical).unwrap();
    assert_eq!((core.dim(), radical), (0, 2));
}

#[test]
fn diagonal_input_splits_cleanly() {
    let f = form(gf(7), &[&[1, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 4]], Sign::Plus);
    assert_eq!(blocks(&f).blocks, scalars(&[1, 2, 3, 4]));
}

#[test]
fn isotropic_half_goes_straight_to_the_isotropic_case() {
    let f = form(gf(7), &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]], Sign::Plus);
    assert_eq!(blocks(&f).blocks, scalars(&[2, 5, 2, 5]));

    let f = form(gf(7), &[&[0, 0, 2, 0], &[0, 0, 0, 3], &[2, 0, 0, 0], &[0, 3, 0, 0]], Sign::Plus);
    assert_eq!(blocks(&f).blocks, scalars(&[2, 5, 2, 5]));
}

#[test]
fn single_hyperbolic_pair() {
    assert_eq!(blocks(&form(gf(7), &[&[0, 1], &[1, 0]], Sign::Plus)).blocks, scalars(&[2, 5]));
    assert_eq!(blocks(&form(gf(7), &[&[0, 1], &[-1, 0]], Sign::Minus)).blocks, vec![StandardBlock::J]);
}

#[test]
fn zero_form() {
    let f = form(gf(5), &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]], Sign::Plus);
    let decomp = blocks(&f);
    assert_eq!(decomp.blocks, scalars(&[0, 0, 0]));
    assert_eq!(decomp.recursion_depth, 0);
}

#[test]
fn skew_rational_full_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f = random_form(&Rational, Sign::Minus, 6, &GenOptions { zero_prob: 0.0, rank: Some(6) }, &mut rng).unwrap();
    let decomp = decompose_blocks(&f, &BlockOptions::default()).unwrap();
    assert_eq!(decomp.blocks, vec![StandardBlock::J; 3]);
    assert_verified(&f, &decomp);
    assert_eq!(invariants_of(&decomp), invariants_of(&decompose_gs(&f).unwrap()));
}

#[test]
fn singular_block_is_rejected() {
    let f = form(gf(7), &[&[1, 0], &[0, 0]], Sign::Plus);
    let mut w = WorkingForm::new(f);
    assert!(matches!(block_anisotropic(&mut w, 0, 2, MulBackend::Classical), Err(Error::Usage(_))));
}

#[test]
fn public_cases_on_subranges() {
    let f = form(gf(7), &[&[0, 0, 1], &[0, 4, 0], &[1, 0, 2]], Sign::Plus);
    let mut w = WorkingForm::new(f.clone());
    let out = block_isotropic(&mut w, 0, 3, 1, MulBackend::Classical).unwrap();
    assert_eq!(out.len(), 3);
    let a = crate::form::materialize(&gf(7), w.log()).unwrap();
    let image = a.matmul_classical(f.matrix()).unwrap().matmul_classical(&a.transpose()).unwrap();
    assert_eq!(&image, w.matrix());
}

#[test]
fn quaternion_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let h = Quaternion::hamilton();
    for d in 1..=6 {
        let f = random_form(&h, Sign::Plus, d, &GenOptions { zero_prob: 0.5, rank: None }, &mut rng).unwrap();
        assert_verified(&f, &decompose_blocks(&f, &BlockOptions::default()).unwrap());
    }
}

fn depth_bound(d: usize) -> usize {
    2 * (d.max(1) as f64).log2().ceil() as usize + 2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn blocks_verify_and_agree_with_gs(
        seed in any::<u64>(),
        d in 0usize..20,
        minus in any::<bool>(),
        zero_prob in 0.0f64..0.95,
        rank_cut in 0usize..4,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sign = if minus { Sign::Minus } else { Sign::Plus };
        let mut rank = d.saturating_sub(rank_cut);
        if minus {
            rank -= rank % 2;
        }
        let f = random_form(&gf(101), sign, d, &GenOptions { zero_prob, rank: Some(rank) }, &mut rng).unwrap();
        let decomp = decompose_blocks(&f, &BlockOptions::default()).unwrap();
        prop_assert!(crate::verify::check_decomposition(f.matrix(), sign, &decomp).passed());
        prop_assert!(decomp.recursion_depth <= depth_bound(d));
        prop_assert_eq!(invariants_of(&decomp), invariants_of(&decompose_gs(&f).unwrap()));
    }

    #[test]
    fn backend_does_not_change_output(seed in any::<u64>(), d in 1usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_form(&gf(101), Sign::Plus, d, &GenOptions { zero_prob: 0.3, rank: None }, &mut rng).unwrap();
        let classical = decompose_blocks(&f, &BlockOptions::with_backend(MulBackend::Classical)).unwrap();
        for cutoff in [2, 8] {
            let fast = decompose_blocks(&f, &BlockOptions::with_backend(MulBackend::from_cutoff(cutoff).unwrap())).unwrap();
            prop_assert!(classical.same_result(&fast));
        }
    }
}
