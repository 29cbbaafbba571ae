//! Splitting of `a+b*i-c/d*k`-style literals into signed terms.

use super::ScalarError;

/// One signed term: a coefficient string (possibly empty, meaning 1) and the
/// unit symbol (`None` for the constant term).
#[derive(Debug, PartialEq, Eq)]
pub(crate) struct Term<'a> {
    pub negative: bool,
    pub coeff: &'a str,
    pub unit: Option<char>,
}

/// Splits a whitespace-free literal into terms, validating units against
/// `units`.
pub(crate) fn split_terms<'a>(literal: &'a str, units: &[char]) -> Result<Vec<Term<'a>>, ScalarError> {
    if literal.is_empty() {
        return Err(ScalarError::parse(literal, "empty literal"));
    }
    if literal.chars().any(char::is_whitespace) {
        return Err(ScalarError::parse(literal, "whitespace inside literal"));
    }
    let bytes = literal.as_bytes();
    let mut starts = vec![0usize];
    for idx in 1..bytes.len() {
        let c = bytes[idx];
        let prev = bytes[idx - 1];
        if (c == b'+' || c == b'-') && !matches!(prev, b'+' | b'-' | b'*' | b'/') {
            starts.push(idx);
        }
    }
    starts.push(bytes.len());

    let mut terms = Vec::with_capacity(starts.len() - 1);
    for w in starts.windows(2) {
        let mut raw = &literal[w[0]..w[1]];
        let mut negative = false;
        // a leading sign of the term, possibly doubled as in `3+-2*i`
        loop {
            if let Some(rest) = raw.strip_prefix('+') {
                raw = rest;
            } else if let Some(rest) = raw.strip_prefix('-') {
                negative = !negative;
                raw = rest;
            } else {
                break;
            }
        }
        if raw.is_empty() {
            return Err(ScalarError::parse(literal, "dangling sign"));
        }
        let last = raw.chars().last().unwrap();
        let (coeff, unit) = if last.is_ascii_alphabetic() {
            if !units.contains(&last) {
                return Err(ScalarError::parse(literal, format!("unknown unit '{last}'")));
            }
            let body = &raw[..raw.len() - 1];
            let coeff = match body.strip_suffix('*') {
                Some(c) if !c.is_empty() => c,
                Some(_) => return Err(ScalarError::parse(literal, "missing coefficient before '*'")),
                None if body.is_empty() => "",
                None => return Err(ScalarError::parse(literal, "expected '*' before unit")),
            };
            (coeff, Some(last))
        } else {
            (raw, None)
        };
        if coeff.starts_with(['+', '-']) {
            return Err(ScalarError::parse(literal, "misplaced sign"));
        }
        terms.push(Term { negative, coeff, unit });
    }
    Ok(terms)
}
