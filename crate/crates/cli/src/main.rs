use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hermform_cli::{
    decompose_text, generate_text, parse_ring_flag, render_json, render_text, Algorithm, CliError, DecomposeOptions,
    EmitTransform, GenRequest, Post,
};
use hermform_core::{Involution, Sign};

/// Orthogonal decompositions of symmetric, alternating and Hermitian forms.
#[derive(Parser)]
#[command(name = "hermform", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the form in a file into 1x1 and 2x2 blocks.
    Decompose {
        /// Form file, or `-` for standard input.
        #[arg(long)]
        input: PathBuf,
        /// Require the file to be over this ring (gfp:P, gfp2:P, rational, quaternion[:A:B]).
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, value_enum, default_value_t = Algorithm::Gs)]
        algo: Algorithm,
        /// Base size of Strassen's recursion; 0 multiplies classically.
        #[arg(long, default_value_t = hermform_core::matrix::DEFAULT_STRASSEN_CUTOFF)]
        strassen_cutoff: usize,
        #[arg(long, value_enum, default_value_t = Post::None)]
        post: Post,
        #[arg(long, value_enum, default_value_t = EmitTransform::None)]
        emit_transform: EmitTransform,
        /// Report ring-operation counts.
        #[arg(long)]
        count_ops: bool,
        /// Check the result and exit with status 1 if it is wrong.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print a random valid form file.
    Gen {
        #[arg(long)]
        ring: String,
        /// identity, frobenius or conj; defaults to the ring's natural involution.
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exact rank; by default the form is generic.
        #[arg(long)]
        rank: Option<usize>,
        /// Probability that an off-diagonal entry is zero.
        #[arg(long, default_value_t = 0.0)]
        zero_prob: f64,
    },
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let result = if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map(|_| text)
    } else {
        std::fs::read_to_string(path)
    };
    result.map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Decompose { input, ring, algo, strassen_cutoff, post, emit_transform, count_ops, verify, json } => {
            let options = DecomposeOptions {
                algorithm: algo,
                strassen_cutoff,
                post,
                emit_transform,
                count_ops,
                verify,
                expected_ring: ring.as_deref().map(parse_ring_flag).transpose()?,
            };
            let report = decompose_text(&read_input(&input)?, &options)?;
            if report.sign_detected && !json {
                eprintln!("note: detected s = {:+}", report.s);
            }
            print!("{}", if json { render_json(&report) + "\n" } else { render_text(&report) });
            Ok(report.verified())
        }
        Command::Gen { ring, sigma, s, dim, seed, rank, zero_prob } => {
            let mut descriptor = parse_ring_flag(&ring)?;
            if let Some(word) = sigma {
                descriptor.involution = Involution::from_keyword(&word)
                    .ok_or_else(|| CliError::Input(format!("unknown involution {word:?}")))?;
            }
            let sign = Sign::parse(&s).ok_or_else(|| CliError::Input(format!("bad sign {s:?}")))?;
            print!("{}", generate_text(&GenRequest { ring: descriptor, sign, dim, seed, rank, zero_prob })?);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
