//! Library side of the `hermform` command: the form file format and the
//! decompose and gen pipelines, kept separate from argument parsing so they
//! can be tested directly.

pub mod file;
pub mod pipeline;

pub use file::{emit_form, parse_form_text, FormFile, ParseError, SignSpec};
pub use pipeline::{
    decompose_text, generate_text, parse_ring_flag, render_json, render_text, Algorithm, CliError, DecomposeOptions,
    EmitTransform, GenRequest, Post, Report, SCHEMA_VERSION,
};
