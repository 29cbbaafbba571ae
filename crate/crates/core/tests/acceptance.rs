//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! `ACCEPTANCE_ONLY=3,9` restricts the run to the listed criteria.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use hermform_core::form::{to_slp, ElementaryOp};
use hermform_core::generate::{random_form, GenOptions};
use hermform_core::postprocess::{char2_triple, maximize_j_blocks, pair_rescale, sort_blocks_canonical, PostProcess};
use hermform_core::verify::{
    brute_force_congruence, check_decomposition, congruence_orbits, counter_report, invariants_of,
};
use hermform_core::{
    decompose_blocks, decompose_gs, standardize, BlockOptions, Decomposition, DivisionRing, HermitianForm, Matrix,
    MulBackend, PrimeField, QuadExt, Quaternion, Rational, Sign, StandardBlock,
};

type Outcome = Result<String, String>;

const FORMS_PER_SIZE: usize = 500;

fn finite_sizes() -> Vec<usize> {
    (1..=16).chain([31, 32, 64]).collect()
}

fn seed_for(config: u64, d: usize, k: usize) -> u64 {
    config << 40 ^ (d as u64) << 20 ^ k as u64
}

/// Mostly generic forms, with a share of sparse and rank-deficient ones so
/// that isotropic steps and radicals are exercised.
fn sample<R: DivisionRing>(ring: &R, sign: Sign, d: usize, seed: u64) -> HermitianForm<R> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alternating = sign == Sign::Minus && ring.is_commutative() && ring.involution() == hermform_core::Involution::Identity;
    let mut opts = GenOptions::default();
    match rng.random_range(0..4) {
        0 => opts.zero_prob = 0.7,
        1 => {
            let mut k = rng.random_range(0..=d);
            if alternating {
                k -= k % 2;
            }
            opts.rank = Some(k);
        }
        _ => {}
    }
    random_form(ring, sign, d, &opts, &mut rng).expect("generator")
}

struct SweepStats {
    forms: usize,
    timings: Vec<(String, f64)>,
    failures: Vec<String>,
    invariant_mismatches: Vec<String>,
    postprocess_failures: Vec<String>,
}

impl SweepStats {
    fn merge(mut self, other: SweepStats) -> SweepStats {
        self.forms += other.forms;
        self.timings.extend(other.timings);
        self.failures.extend(other.failures);
        self.invariant_mismatches.extend(other.invariant_mismatches);
        self.postprocess_failures.extend(other.postprocess_failures);
        self
    }

    fn empty() -> SweepStats {
        SweepStats { forms: 0, timings: vec![], failures: vec![], invariant_mismatches: vec![], postprocess_failures: vec![] }
    }
}

fn postprocess_gfp(form: &HermitianForm<PrimeField>, decomp: &Decomposition<PrimeField>) -> Result<(), String> {
    let sorted = sort_blocks_canonical(decomp).map_err(|e| format!("sort: {e}"))?;
    if !check_decomposition(form.matrix(), form.sign(), &sorted).congruence {
        return Err("sort broke congruence".into());
    }
    if form.sign() == Sign::Plus {
        let maxj = maximize_j_blocks(decomp).map_err(|e| format!("maxj: {e}"))?;
        if !check_decomposition(form.matrix(), form.sign(), &maxj).congruence {
            return Err("maxj broke congruence".into());
        }
    }
    Ok(())
}

fn sweep<R: PostProcess>(
    label: &str,
    ring: &R,
    sign: Sign,
    sizes: &[usize],
    config: u64,
    post: Option<fn(&HermitianForm<R>, &Decomposition<R>) -> Result<(), String>>,
) -> SweepStats {
    let start = Instant::now();
    let jobs: Vec<(usize, usize)> = sizes.iter().flat_map(|&d| (0..FORMS_PER_SIZE).map(move |k| (d, k))).collect();
    let mut stats = jobs
        .par_iter()
        .map(|&(d, k)| {
            let mut stats = SweepStats::empty();
            stats.forms = 1;
            let tag = format!("{label} d={d} #{k}");
            let form = sample(ring, sign, d, seed_for(config, d, k));
            let gs = decompose_gs(&form);
            let blocks = decompose_blocks(&form, &BlockOptions::default());
            match (gs, blocks) {
                (Ok(gs), Ok(blocks)) => {
                    for (name, dec) in [("gs", &gs), ("blocks", &blocks)] {
                        let report = check_decomposition(form.matrix(), sign, dec);
                        if !report.passed() {
                            stats.failures.push(format!("{tag} {name}: {report:?}"));
                        }
                    }
                    if invariants_of(&gs) != invariants_of(&blocks) {
                        stats.invariant_mismatches.push(tag.clone());
                    }
                    if let Some(post) = post {
                        for dec in [&gs, &blocks] {
                            if let Err(e) = post(&form, dec) {
                                stats.postprocess_failures.push(format!("{tag}: {e}"));
                            }
                        }
                    }
                }
                (gs, blocks) => stats.failures.push(format!("{tag}: gs {:?} / blocks {:?}", gs.err(), blocks.err())),
            }
            stats
        })
        .reduce(SweepStats::empty, SweepStats::merge);
    stats.timings.push((label.to_string(), start.elapsed().as_secs_f64()));
    stats
}

fn criterion_sweep() -> SweepStats {
    let finite = finite_sizes();
    let small_q: Vec<usize> = (1..=12).collect();
    let small_h: Vec<usize> = (1..=8).collect();
    let gf101 = PrimeField::new(101).unwrap();
    let gf9 = QuadExt::hermitian(3).unwrap();
    let h = Quaternion::hamilton();
    let post: fn(&HermitianForm<PrimeField>, &Decomposition<PrimeField>) -> Result<(), String> = postprocess_gfp;
    [
        sweep("GF(101) s=+1", &gf101, Sign::Plus, &finite, 1, Some(post)),
        sweep("GF(101) s=-1", &gf101, Sign::Minus, &finite, 2, Some(post)),
        sweep("GF(9) frobenius", &gf9, Sign::Plus, &finite, 3, None),
        sweep("Q s=+1", &Rational, Sign::Plus, &small_q, 4, None),
        sweep("Q s=-1", &Rational, Sign::Minus, &small_q, 5, None),
        sweep("H conj", &h, Sign::Plus, &small_h, 6, None),
    ]
    .into_iter()
    .fold(SweepStats::empty(), SweepStats::merge)
}

fn first_few(items: &[String]) -> String {
    items.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
}

fn criterion_1(stats: &SweepStats, elapsed: Duration) -> Outcome {
    let per_config: Vec<String> = stats.timings.iter().map(|(l, t)| format!("{l} {t:.1}s")).collect();
    let summary = format!(
        "{} forms, both algorithms, {:.1}s ({})",
        stats.forms,
        elapsed.as_secs_f64(),
        per_config.join(", ")
    );
    if !stats.failures.is_empty() {
        return Err(format!("{} failures: {}", stats.failures.len(), first_few(&stats.failures)));
    }
    if elapsed > Duration::from_secs(300) {
        return Err(format!("{summary}; over the 5 min budget"));
    }
    Ok(summary)
}

fn criterion_2(stats: &SweepStats) -> Outcome {
    if stats.invariant_mismatches.is_empty() {
        Ok(format!("invariants agree on {} forms", stats.forms))
    } else {
        Err(format!("{} mismatches: {}", stats.invariant_mismatches.len(), first_few(&stats.invariant_mismatches)))
    }
}

fn criterion_3() -> Outcome {
    let f = PrimeField::new(1009).unwrap();
    let d = 200;
    let binom = d * (d - 1) / 2;
    let mut worst = (f64::MAX, f64::MIN);
    let start = Instant::now();
    for trial in 0..10 {
        let mut rng = ChaCha8Rng::seed_from_u64(3_000 + trial);
        let form = random_form(&f, Sign::Plus, d, &GenOptions { zero_prob: 0.0, rank: Some(d) }, &mut rng).unwrap();
        let dec = decompose_gs(&form).map_err(|e| e.to_string())?;
        let c = dec.counters;
        let report = counter_report(&c, d, dec.radical_dim);
        let isotropic = dec.log.ops().iter().filter(|op| matches!(op, ElementaryOp::Scale { .. })).count() as u64;
        let (add, mul) = (report.additions.unwrap(), report.multiplications.unwrap());
        worst = (worst.0.min(add.min(mul)), worst.1.max(add.max(mul)));
        let checks = [
            ((0.85..=1.25).contains(&add), format!("additions ratio {add:.3}")),
            ((0.85..=1.25).contains(&mul), format!("multiplications ratio {mul:.3}")),
            (c.inversions <= d as u64 + isotropic, format!("inversions {} > d + {isotropic}", c.inversions)),
            (c.equality_tests <= (binom + d) as u64, format!("equality tests {}", c.equality_tests)),
            (c.sigma_applications <= binom as u64, format!("sigma applications {}", c.sigma_applications)),
        ];
        if let Some((_, why)) = checks.into_iter().find(|(ok, _)| !ok) {
            return Err(format!("trial {trial}: {why}"));
        }
    }
    Ok(format!(
        "10 trials at d=200, leading ratios in [{:.3}, {:.3}], {:.1}s",
        worst.0,
        worst.1,
        start.elapsed().as_secs_f64()
    ))
}

fn criterion_4() -> Outcome {
    let f = PrimeField::new(7).unwrap();
    let scalar = |x: u64| StandardBlock::Scalar(x);
    let cases = [
        (Sign::Plus, 3, vec![scalar(2), scalar(3)]),
        (Sign::Plus, 0, vec![scalar(2), scalar(5)]),
        (Sign::Minus, 0, vec![StandardBlock::J]),
    ];
    for (sign, alpha, expected) in cases {
        let (_, blocks) = standardize(&f, sign, &alpha).map_err(|e| e.to_string())?;
        if blocks != expected {
            return Err(format!("s={sign} α={alpha}: got {blocks:?}"));
        }
    }
    Ok("α=3 → [2],[3]; α=0,s=1 → [2],[-2]; α=0,s=-1 → J".into())
}

fn alternating_check<R: DivisionRing>(ring: &R, label: &str, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut count = 0;
    for d in 1..=12 {
        for _ in 0..20 {
            let k = rng.random_range(0..=d / 2);
            let opts = GenOptions { zero_prob: 0.0, rank: Some(2 * k) };
            let form = random_form(ring, Sign::Minus, d, &opts, &mut rng).map_err(|e| e.to_string())?;
            let mut expected = vec![StandardBlock::J; k];
            expected.extend(std::iter::repeat_n(StandardBlock::Scalar(ring.zero()), d - 2 * k));
            let gs = decompose_gs(&form).map_err(|e| e.to_string())?;
            let blocks = decompose_blocks(&form, &BlockOptions::default()).map_err(|e| e.to_string())?;
            if gs.blocks != expected || blocks.blocks != expected {
                return Err(format!("{label} d={d} rank {}: unexpected blocks", 2 * k));
            }
            count += 1;
        }
    }
    Ok(count)
}

fn criterion_5() -> Outcome {
    let q = alternating_check(&Rational, "Q", 5_000)?;
    let f = alternating_check(&PrimeField::new(101).unwrap(), "GF(101)", 5_001)?;
    Ok(format!("{} forms over Q and GF(101) give k J blocks plus zeros", q + f))
}

fn canonical_key(form: &HermitianForm<PrimeField>) -> Result<Vec<String>, String> {
    let dec = decompose_gs(form).map_err(|e| e.to_string())?;
    let sorted = sort_blocks_canonical(&dec).map_err(|e| e.to_string())?;
    Ok(sorted
        .blocks
        .iter()
        .map(|b| match b {
            StandardBlock::Scalar(x) => x.to_string(),
            StandardBlock::J => "J".into(),
        })
        .collect())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let f = PrimeField::new(3).unwrap();
    let (forms, orbit) = congruence_orbits(&f, 3, Sign::Plus).map_err(|e| e.to_string())?;
    if forms.len() != 729 {
        return Err(format!("expected 729 symmetric matrices, found {}", forms.len()));
    }
    let mut keys = Vec::with_capacity(forms.len());
    for m in &forms {
        let form = HermitianForm::new(m.clone(), Sign::Plus).map_err(|e| e.to_string())?;
        keys.push(canonical_key(&form)?);
    }
    // the two partitions agree iff key equality and orbit equality coincide
    let mut by_key: HashMap<&Vec<String>, usize> = HashMap::new();
    let mut by_orbit: HashMap<usize, &Vec<String>> = HashMap::new();
    for (i, key) in keys.iter().enumerate() {
        if *by_key.entry(key).or_insert(orbit[i]) != orbit[i] {
            return Err(format!("form {i}: one canonical list covers two orbits"));
        }
        if *by_orbit.entry(orbit[i]).or_insert(key) != key {
            return Err(format!("form {i}: one orbit has two canonical lists"));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(6_000);
    let mut sampled = 0;
    for _ in 0..300 {
        let (i, j) = (rng.random_range(0..forms.len()), rng.random_range(0..forms.len()));
        let brute = brute_force_congruence(&forms[i], &forms[j], Sign::Plus).map_err(|e| e.to_string())?;
        if brute != (keys[i] == keys[j]) {
            return Err(format!("pair ({i}, {j}): brute force says {brute}"));
        }
        sampled += 1;
    }
    let classes = by_orbit.len();
    Ok(format!(
        "729 forms, {classes} classes, partitions identical; {sampled} pairs rechecked by brute force, {:.1}s",
        start.elapsed().as_secs_f64()
    ))
}

fn strassen_instances<R: DivisionRing>(ring: &R, label: &str, seed: u64, max_dim: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..200 {
        let (m, k, n) = if t == 0 {
            (63, 65, 63)
        } else if t == 1 {
            (65, 63, 64)
        } else {
            (rng.random_range(1..=max_dim), rng.random_range(1..=max_dim), rng.random_range(1..=max_dim))
        };
        let a = Matrix::from_fn(ring.clone(), m, k, |_, _| ring.random(&mut rng));
        let b = Matrix::from_fn(ring.clone(), k, n, |_, _| ring.random(&mut rng));
        let cutoff = rng.random_range(2..=16);
        let classical = a.matmul_classical(&b).map_err(|e| e.to_string())?;
        if a.matmul_strassen(&b, cutoff).map_err(|e| e.to_string())? != classical {
            return Err(format!("{label} instance {t} ({m}x{k}·{k}x{n}, cutoff {cutoff})"));
        }
    }
    Ok(())
}

fn decomposition_bytes<R: DivisionRing>(dec: &Decomposition<R>) -> String {
    let blocks: Vec<String> = dec
        .blocks
        .iter()
        .map(|b| match b {
            StandardBlock::Scalar(x) => dec.ring.format(x),
            StandardBlock::J => "J".into(),
        })
        .collect();
    format!("{}\n{}\n{}", blocks.join(" "), dec.radical_dim, to_slp(&dec.ring, &dec.log).join("\n"))
}

fn backend_identity<R: DivisionRing>(ring: &R, sign: Sign, d: usize, seed: u64) -> Result<(), String> {
    let form = sample(ring, sign, d, seed);
    let outputs: Vec<String> = [0, 8, 64]
        .into_iter()
        .map(|cutoff| {
            let opts = BlockOptions::with_backend(MulBackend::from_cutoff(cutoff).unwrap());
            decompose_blocks(&form, &opts).map(|dec| decomposition_bytes(&dec)).map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    if outputs.windows(2).all(|w| w[0] == w[1]) {
        Ok(())
    } else {
        Err(format!("d={d} seed {seed}: outputs differ across cutoffs"))
    }
}

fn criterion_7() -> Outcome {
    strassen_instances(&PrimeField::new(101).unwrap(), "GF(101)", 7_000, 80)?;
    strassen_instances(&QuadExt::hermitian(3).unwrap(), "GF(9)", 7_001, 80)?;
    strassen_instances(&PrimeField::new(2).unwrap(), "GF(2)", 7_002, 80)?;
    strassen_instances(&Rational, "Q", 7_003, 24)?;
    strassen_instances(&Quaternion::hamilton(), "H", 7_004, 20)?;
    let mut forms = 0;
    for (i, d) in [5, 17, 33, 64, 100, 150].into_iter().enumerate() {
        backend_identity(&PrimeField::new(101).unwrap(), Sign::Plus, d, 7_100 + i as u64)?;
        backend_identity(&PrimeField::new(101).unwrap(), Sign::Minus, d, 7_200 + i as u64)?;
        backend_identity(&QuadExt::hermitian(3).unwrap(), Sign::Plus, d, 7_300 + i as u64)?;
        forms += 3;
    }
    for d in [3, 9, 16] {
        backend_identity(&Quaternion::hamilton(), Sign::Plus, d, 7_400 + d as u64)?;
        backend_identity(&Rational, Sign::Plus, d, 7_500 + d as u64)?;
        forms += 2;
    }
    Ok(format!("1000 products over 5 rings incl. 63x65; {forms} decompositions identical for cutoffs 0/8/64"))
}

fn identity_witnesses<R: DivisionRing>(ring: &R, label: &str, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < 100 {
        let (gamma, delta) = (ring.random(&mut rng), ring.random(&mut rng));
        let norm = ring.add(&ring.mul(&gamma, &ring.sigma(&gamma)), &ring.mul(&delta, &ring.sigma(&delta)));
        if ring.is_zero(&norm) {
            continue;
        }
        let (a, alpha) = pair_rescale(ring, &gamma, &delta).map_err(|e| format!("{label}: {e}"))?;
        let product = a.matmul_classical(&a.sigma_transpose()).map_err(|e| e.to_string())?;
        if product != Matrix::diagonal(ring.clone(), &[alpha.clone(), alpha]) {
            return Err(format!("{label}: pair identity fails"));
        }
        checked += 1;
    }
    Ok(checked)
}

fn criterion_8(stats: &SweepStats) -> Outcome {
    let mut pairs = identity_witnesses(&PrimeField::new(7).unwrap(), "GF(7)", 8_000)?;
    pairs += identity_witnesses(&QuadExt::hermitian(3).unwrap(), "GF(9)", 8_001)?;
    pairs += identity_witnesses(&PrimeField::new(2).unwrap(), "GF(2)", 8_002)?;

    let gf2 = PrimeField::new(2).unwrap();
    let gf4 = QuadExt::new(2, hermform_core::Involution::Identity).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(8_003);
    let mut triples = 0;
    while triples < 100 {
        let ok = if triples % 2 == 0 {
            triple_holds(&gf2, &gf2.one())
        } else {
            let alpha = gf4.random(&mut rng);
            if gf4.is_zero(&alpha) {
                continue;
            }
            triple_holds(&gf4, &alpha)
        };
        ok.map_err(|e| format!("triple identity: {e}"))?;
        triples += 1;
    }
    if !stats.postprocess_failures.is_empty() {
        return Err(format!(
            "{} post-processing failures: {}",
            stats.postprocess_failures.len(),
            first_few(&stats.postprocess_failures)
        ));
    }
    Ok(format!("{pairs} pair witnesses, {triples} triple witnesses, sort/maxj keep congruence on all GF(101) sweep forms"))
}

fn triple_holds<R: DivisionRing>(ring: &R, alpha: &R::Elem) -> Result<(), String> {
    let a = char2_triple(ring, alpha).map_err(|e| e.to_string())?;
    let (zero, one) = (ring.zero(), ring.one());
    let source = Matrix::from_rows(
        ring.clone(),
        vec![
            vec![zero.clone(), one.clone(), zero.clone()],
            vec![one, zero.clone(), zero.clone()],
            vec![zero.clone(), zero, alpha.clone()],
        ],
    )
    .map_err(|e| e.to_string())?;
    let image = a
        .matmul_classical(&source)
        .and_then(|m| m.matmul_classical(&a.sigma_transpose()))
        .map_err(|e| e.to_string())?;
    if image == Matrix::diagonal(ring.clone(), &[alpha.clone(), alpha.clone(), alpha.clone()]) {
        Ok(())
    } else {
        Err("A·M·A^T differs from αI".into())
    }
}

fn fitted_exponent(sizes: &[usize], seconds: &[f64]) -> f64 {
    let xs: Vec<f64> = sizes.iter().map(|&d| (d as f64).ln()).collect();
    let ys: Vec<f64> = seconds.iter().map(|t| t.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn best_of<F: FnMut()>(repeats: usize, mut f: F) -> f64 {
    (0..repeats)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed().as_secs_f64()
        })
        .fold(f64::MAX, f64::min)
}

fn criterion_9() -> Outcome {
    let f = PrimeField::new(1009).unwrap();
    let sizes = [128, 256, 512];
    let mut gs_times = Vec::new();
    let mut block_times = Vec::new();
    for &d in &sizes {
        let mut rng = ChaCha8Rng::seed_from_u64(9_000 + d as u64);
        let form = random_form(&f, Sign::Plus, d, &GenOptions::default(), &mut rng).unwrap();
        let repeats = 3;
        block_times.push(best_of(repeats, || {
            decompose_blocks(&form, &BlockOptions::default()).unwrap();
        }));
        gs_times.push(best_of(repeats, || {
            decompose_gs(&form).unwrap();
        }));
    }
    let (eb, eg) = (fitted_exponent(&sizes, &block_times), fitted_exponent(&sizes, &gs_times));
    let detail = format!(
        "blocks exponent {eb:.2} (times {}), gs exponent {eg:.2} (times {})",
        fmt_times(&block_times),
        fmt_times(&gs_times)
    );
    if (2.3..=3.1).contains(&eb) && (2.7..=3.2).contains(&eg) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fmt_times(ts: &[f64]) -> String {
    ts.iter().map(|t| format!("{t:.3}s")).collect::<Vec<_>>().join("/")
}

fn main() {
    let only: Option<Vec<u32>> =
        std::env::var("ACCEPTANCE_ONLY").ok().map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let wanted = |n: u32| only.as_ref().is_none_or(|v| v.contains(&n));

    let needs_sweep = wanted(1) || wanted(2) || wanted(8);
    let start = Instant::now();
    let stats = needs_sweep.then(criterion_sweep);
    let sweep_time = start.elapsed();

    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    if let Some(stats) = &stats {
        if wanted(1) {
            results.push((1, "correctness sweep", criterion_1(stats, sweep_time)));
        }
        if wanted(2) {
            results.push((2, "cross-algorithm invariants", criterion_2(stats)));
        }
    }
    if wanted(3) {
        results.push((3, "leading-term operation counts", criterion_3()));
    }
    if wanted(4) {
        results.push((4, "standardize golden values", criterion_4()));
    }
    if wanted(5) {
        results.push((5, "alternating canonical form", criterion_5()));
    }
    if wanted(6) {
        results.push((6, "GF(3) congruence completeness", criterion_6()));
    }
    if wanted(7) {
        results.push((7, "Strassen equivalence", criterion_7()));
    }
    if let (true, Some(stats)) = (wanted(8), &stats) {
        results.push((8, "post-processing identities", criterion_8(stats)));
    }
    if wanted(9) {
        results.push((9, "scaling exponents", criterion_9()));
    }

    let mut failed = 0;
    for (n, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {n} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n} FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
