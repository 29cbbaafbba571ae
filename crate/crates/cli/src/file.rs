//! The text format for forms.
//!
//! ```text
//! # optional comment lines anywhere
//! ring gfp 7
//! sigma identity
//! s +1
//! dim 2
//! 1 2
//! 2 3
//! ```
//!
//! `ring` takes `gfp <p>`, `gfp2 <p>`, `rational` or `quaternion [<a> <b>]`;
//! `sigma` one of `identity`, `frobenius`, `conj`; `s` one of `+1`, `-1`,
//! `auto`.

use std::fmt;

use hermform_core::scalar::{BigRational, RingKind};
use hermform_core::{DivisionRing, Involution, Matrix, Rational, RingDescriptor, Sign};

/// A syntax or parse failure, with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn at(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(at(line, message))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignSpec {
    Fixed(Sign),
    Auto,
}

impl fmt::Display for SignSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignSpec::Fixed(s) => write!(f, "{s}"),
            SignSpec::Auto => f.write_str("auto"),
        }
    }
}

/// A form file with its entries still as literals; the ring decides how to
/// read them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormFile {
    pub ring: RingDescriptor,
    pub sign: SignSpec,
    pub rows: Vec<Vec<String>>,
    /// Line number of each matrix row, for error messages.
    pub row_lines: Vec<usize>,
}

/// Parses the `<kind> <params>` words of a ring header. The involution is
/// left at the ring's natural one.
pub fn parse_ring_words(words: &[&str]) -> Result<RingDescriptor, String> {
    let prime = |w: Option<&&str>| -> Result<u64, String> {
        let w = w.ok_or("missing modulus")?;
        w.parse::<u64>().map_err(|_| format!("bad modulus {w:?}"))
    };
    let rational = |w: &str| -> Result<BigRational, String> { Rational.parse(w).map_err(|e| e.to_string()) };
    let (kind, involution, arity) = match words.first().copied() {
        Some("gfp") => (RingKind::PrimeField { p: prime(words.get(1))? }, Involution::Identity, 2),
        Some("gfp2") => (RingKind::QuadExt { p: prime(words.get(1))?, c0: 0, c1: 0 }, Involution::Frobenius, 2),
        Some("rational") => (RingKind::Rational, Involution::Identity, 1),
        Some("quaternion") if words.len() == 1 => {
            (RingKind::Quaternion { a: rational("-1")?, b: rational("-1")? }, Involution::QuaternionConjugation, 1)
        }
        Some("quaternion") => {
            let b = words.get(2).ok_or("quaternion needs both parameters a and b")?;
            (RingKind::Quaternion { a: rational(words[1])?, b: rational(b)? }, Involution::QuaternionConjugation, 3)
        }
        Some(other) => return Err(format!("unknown ring kind {other:?}")),
        None => return Err("missing ring kind".into()),
    };
    if words.len() != arity {
        return Err(format!("unexpected trailing words after ring {:?}", words[..arity].join(" ")));
    }
    Ok(RingDescriptor { kind, involution })
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    /// Next line that is neither blank nor a comment.
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            let t = line.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Some((i + 1, t));
            }
        }
        None
    }

    fn header(&mut self, key: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        let Some((n, line)) = self.next_content() else {
            return err(self.last + 1, format!("expected `{key}` header, found end of file"));
        };
        let mut words = line.split_whitespace();
        if words.next() != Some(key) {
            return err(n, format!("expected `{key}` header"));
        }
        Ok((n, words.collect()))
    }
}

pub fn parse_form_text(text: &str) -> Result<FormFile, ParseError> {
    let mut lines = Lines { inner: text.lines().enumerate(), last: 0 };

    let (n, words) = lines.header("ring")?;
    let mut ring = parse_ring_words(&words).map_err(|m| at(n, m))?;
    if let Err(e) = ring.validate() {
        return err(n, e.to_string());
    }

    let (n, words) = lines.header("sigma")?;
    let [word] = words[..] else {
        return err(n, "`sigma` takes exactly one word");
    };
    ring.involution = Involution::from_keyword(word).ok_or_else(|| at(n, format!("unknown involution {word:?}")))?;
    if let Err(e) = ring.validate() {
        return err(n, e.to_string());
    }

    let (n, words) = lines.header("s")?;
    let sign = match words[..] {
        ["auto"] => SignSpec::Auto,
        [w] => SignSpec::Fixed(Sign::parse(w).ok_or_else(|| at(n, format!("bad sign {w:?}")))?),
        _ => return err(n, "`s` takes exactly one of +1, -1, auto"),
    };

    let (n, words) = lines.header("dim")?;
    let d = match words[..] {
        [w] => w.parse::<usize>().map_err(|_| at(n, format!("bad dimension {w:?}")))?,
        _ => return err(n, "`dim` takes one number"),
    };

    let mut rows = Vec::with_capacity(d);
    let mut row_lines = Vec::with_capacity(d);
    for i in 0..d {
        let Some((n, line)) = lines.next_content() else {
            return err(lines.last + 1, format!("expected row {} of {d}, found end of file", i + 1));
        };
        let row: Vec<String> = line.split_whitespace().map(str::to_string).collect();
        if row.len() != d {
            return err(n, format!("row {} has {} entries, expected {d}", i + 1, row.len()));
        }
        rows.push(row);
        row_lines.push(n);
    }
    if let Some((n, _)) = lines.next_content() {
        return err(n, "unexpected content after the matrix");
    }
    Ok(FormFile { ring, sign, rows, row_lines })
}

impl FormFile {
    /// Reads the entries with `ring`.
    pub fn matrix<R: DivisionRing>(&self, ring: &R) -> Result<Matrix<R>, ParseError> {
        let mut out = Vec::with_capacity(self.rows.len());
        for (row, &line) in self.rows.iter().zip(&self.row_lines) {
            let parsed = row.iter().map(|lit| ring.parse(lit)).collect::<Result<Vec<_>, _>>();
            out.push(parsed.map_err(|e| at(line, e.to_string()))?);
        }
        Matrix::from_rows(ring.clone(), out).map_err(|e| at(0, e.to_string()))
    }
}

/// Writes a form in the file format; [`parse_form_text`] reads it back
/// entry for entry.
pub fn emit_form<R: DivisionRing>(m: &Matrix<R>, sign: SignSpec) -> String {
    let ring = m.ring();
    let descriptor = ring.descriptor();
    let mut out = format!(
        "ring {}\nsigma {}\ns {sign}\ndim {}\n",
        descriptor.header(),
        descriptor.involution.keyword(),
        m.rows()
    );
    for row in m.to_literal_rows() {
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
