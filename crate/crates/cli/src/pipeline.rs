use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use hermform_core::form::to_slp;
use hermform_core::generate::{random_form, GenOptions};
use hermform_core::postprocess::{maximize_j_blocks, sort_blocks_canonical, PostProcess};
use hermform_core::scalar::RingKind;
use hermform_core::verify::{check_decomposition, counter_report, invariants_of, CounterReport, InvariantSummary, VerificationReport};
use hermform_core::{
    decompose_blocks, decompose_gs, BlockOptions, Decomposition, DivisionRing, Error, HermitianForm, MulBackend,
    OpCounters, PrimeField, QuadExt, Quaternion, Rational, RingDescriptor, ScalarError, Sign, StandardBlock,
};

use crate::file::{emit_form, parse_form_text, FormFile, ParseError, SignSpec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed input, an invalid flag combination or a form that fails
    /// validation.
    Input(String),
    /// A decomposer broke one of its own invariants.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => CliError::Internal(e.to_string()),
            Error::NotHermitian { .. } => CliError::Input(format!("validation error: {e}")),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ScalarError> for CliError {
    fn from(e: ScalarError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(format!("parse error at {e}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Algorithm {
    #[default]
    Gs,
    Blocks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Post {
    #[default]
    None,
    Sort,
    Maxj,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum EmitTransform {
    #[default]
    None,
    Matrix,
    Slp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecomposeOptions {
    pub algorithm: Algorithm,
    pub strassen_cutoff: usize,
    pub post: Post,
    pub emit_transform: EmitTransform,
    pub count_ops: bool,
    pub verify: bool,
    /// When set, the file's ring header must agree with it.
    pub expected_ring: Option<RingDescriptor>,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            algorithm: Algorithm::Gs,
            strassen_cutoff: hermform_core::matrix::DEFAULT_STRASSEN_CUTOFF,
            post: Post::None,
            emit_transform: EmitTransform::None,
            count_ops: false,
            verify: false,
            expected_ring: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockJson {
    pub size: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TransformJson {
    Matrix { rows: Vec<Vec<String>> },
    Slp { lines: Vec<String> },
}

/// Everything a `decompose` run reports. Fields that were not requested
/// are `null` in JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub ring: String,
    pub sigma: String,
    pub s: i8,
    pub sign_detected: bool,
    pub dim: usize,
    pub algorithm: String,
    pub post: String,
    pub blocks: Vec<BlockJson>,
    pub radical_dim: usize,
    pub recursion_depth: usize,
    pub invariants: InvariantSummary,
    pub transform: Option<TransformJson>,
    pub counters: Option<OpCounters>,
    pub counter_report: Option<CounterReport>,
    pub verification: Option<VerificationReport>,
}

impl Report {
    /// `false` only when verification ran and failed.
    pub fn verified(&self) -> bool {
        self.verification.is_none_or(|v| v.passed())
    }
}

/// Builds the concrete ring of a descriptor and evaluates `$body` with it
/// bound to `$ring`.
macro_rules! with_ring {
    ($descriptor:expr, |$ring:ident| $body:expr) => {{
        let descriptor: &RingDescriptor = $descriptor;
        match &descriptor.kind {
            RingKind::PrimeField { p } => {
                let $ring = PrimeField::new(*p)?;
                $body
            }
            RingKind::QuadExt { p, .. } => {
                let $ring = QuadExt::new(*p, descriptor.involution)?;
                $body
            }
            RingKind::Rational => {
                let $ring = Rational;
                $body
            }
            RingKind::Quaternion { a, b } => {
                let $ring = Quaternion::new(a.clone(), b.clone())?;
                $body
            }
        }
    }};
}

/// Parses a `--ring` value such as `gfp:7`, `gfp2:3`, `rational`,
/// `quaternion` or `quaternion:-1:-3`.
pub fn parse_ring_flag(value: &str) -> Result<RingDescriptor, CliError> {
    let words: Vec<&str> = value.split(':').collect();
    let descriptor = crate::file::parse_ring_words(&words).map_err(|m| CliError::Input(format!("--ring {value}: {m}")))?;
    descriptor.validate()?;
    Ok(descriptor)
}

/// Runs parse, decompose, post-process, verify on the text of a form file.
pub fn decompose_text(text: &str, options: &DecomposeOptions) -> Result<Report, CliError> {
    let file = parse_form_text(text)?;
    if let Some(expected) = &options.expected_ring {
        if expected.kind != file.ring.kind {
            return Err(CliError::Input(format!(
                "--ring {} does not match the file's ring {}",
                expected.header(),
                file.ring.header()
            )));
        }
    }
    with_ring!(&file.ring.clone(), |ring| decompose_file(ring, &file, options))
}

fn decompose_file<R: PostProcess>(ring: R, file: &FormFile, options: &DecomposeOptions) -> Result<Report, CliError> {
    let matrix = file.matrix(&ring)?;
    let (form, sign_detected) = match file.sign {
        SignSpec::Fixed(sign) => (HermitianForm::new(matrix, sign)?, false),
        SignSpec::Auto => (HermitianForm::with_detected_sign(matrix)?.0, true),
    };
    let decomp = match options.algorithm {
        Algorithm::Gs => decompose_gs(&form)?,
        Algorithm::Blocks => {
            let backend = MulBackend::from_cutoff(options.strassen_cutoff).map_err(|e| CliError::Input(e.to_string()))?;
            decompose_blocks(&form, &BlockOptions::with_backend(backend))?
        }
    };
    let gs_counts = (options.count_ops && options.algorithm == Algorithm::Gs)
        .then(|| counter_report(&decomp.counters, decomp.dim, decomp.radical_dim));
    let counters = options.count_ops.then_some(decomp.counters);
    let decomp = match options.post {
        Post::None => decomp,
        Post::Sort => sort_blocks_canonical(&decomp)?,
        Post::Maxj => maximize_j_blocks(&decomp)?,
    };
    let verification = options.verify.then(|| check_decomposition(form.matrix(), form.sign(), &decomp));
    let transform = match options.emit_transform {
        EmitTransform::None => None,
        EmitTransform::Matrix => Some(TransformJson::Matrix { rows: decomp.transform()?.to_literal_rows() }),
        EmitTransform::Slp => Some(TransformJson::Slp { lines: to_slp(&ring, &decomp.log) }),
    };
    let descriptor = ring.descriptor();
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        ring: descriptor.header(),
        sigma: descriptor.involution.keyword().to_string(),
        s: form.sign().as_i8(),
        sign_detected,
        dim: form.dim(),
        algorithm: format!("{:?}", options.algorithm).to_lowercase(),
        post: format!("{:?}", options.post).to_lowercase(),
        blocks: blocks_json(&decomp),
        radical_dim: decomp.radical_dim,
        recursion_depth: decomp.recursion_depth,
        invariants: invariants_of(&decomp),
        transform,
        counters,
        counter_report: gs_counts,
        verification,
    })
}

fn blocks_json<R: DivisionRing>(decomp: &Decomposition<R>) -> Vec<BlockJson> {
    let ring = &decomp.ring;
    decomp
        .blocks
        .iter()
        .map(|b| match b {
            StandardBlock::Scalar(x) => BlockJson { size: 1, entries: vec![vec![ring.format(x)]] },
            StandardBlock::J => BlockJson {
                size: 2,
                entries: vec![
                    vec![ring.format(&ring.zero()), ring.format(&ring.one())],
                    vec![ring.format(&decomp.sign.to_elem(ring)), ring.format(&ring.zero())],
                ],
            },
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenRequest {
    pub ring: RingDescriptor,
    pub sign: Sign,
    pub dim: usize,
    pub seed: u64,
    pub rank: Option<usize>,
    pub zero_prob: f64,
}

/// A random form file; the same request always gives the same text.
pub fn generate_text(request: &GenRequest) -> Result<String, CliError> {
    request.ring.validate()?;
    let options = GenOptions { zero_prob: request.zero_prob, rank: request.rank };
    let mut rng = ChaCha8Rng::seed_from_u64(request.seed);
    with_ring!(&request.ring, |ring| {
        let form = random_form(&ring, request.sign, request.dim, &options, &mut rng)?;
        Ok(emit_form(form.matrix(), SignSpec::Fixed(request.sign)))
    })
}

pub fn render_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let detected = if report.sign_detected { " (detected)" } else { "" };
    let _ = writeln!(out, "ring {} sigma {} s {:+}{detected} dim {}", report.ring, report.sigma, report.s, report.dim);
    let _ = writeln!(out, "algorithm {} post {}", report.algorithm, report.post);
    let blocks: Vec<String> = report
        .blocks
        .iter()
        .map(|b| match b.size {
            1 => format!("[{}]", b.entries[0][0]),
            _ => "J".to_string(),
        })
        .collect();
    let _ = writeln!(out, "blocks {}", blocks.join(" "));
    let inv = &report.invariants;
    let _ = writeln!(out, "rank {} radical {} j_blocks {}", inv.rank, inv.radical_dim, inv.j_block_count);
    if let Some(classes) = &inv.square_classes {
        let names: Vec<String> = classes.iter().map(|c| format!("{c:?}").to_lowercase()).collect();
        let _ = writeln!(out, "square_classes {}", names.join(" "));
    }
    match &report.transform {
        Some(TransformJson::Matrix { rows }) => {
            let _ = writeln!(out, "transform");
            for row in rows {
                let _ = writeln!(out, "  {}", row.join(" "));
            }
        }
        Some(TransformJson::Slp { lines }) => {
            let _ = writeln!(out, "transform slp");
            for line in lines {
                let _ = writeln!(out, "  {line}");
            }
        }
        None => {}
    }
    if let Some(c) = &report.counters {
        let _ = writeln!(out, "counters {c}");
    }
    if let Some(r) = &report.counter_report {
        let fmt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.3}"));
        let _ = writeln!(
            out,
            "ratios additions {} multiplications {} inversions {} equality {} sigma {}",
            fmt(r.additions),
            fmt(r.multiplications),
            fmt(r.inversions),
            fmt(r.equality_tests),
            fmt(r.sigma_applications)
        );
        if !r.flagged.is_empty() {
            let _ = writeln!(out, "flagged {}", r.flagged.join(" "));
        }
    }
    if let Some(v) = &report.verification {
        let _ = writeln!(
            out,
            "verification {} (transform_invertible {} congruence {} blocks_standard {} radical {})",
            if v.passed() { "passed" } else { "FAILED" },
            v.transform_invertible,
            v.congruence,
            v.blocks_standard,
            v.radical
        );
    }
    out
}
