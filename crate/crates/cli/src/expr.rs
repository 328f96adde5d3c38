//! Potential mini-syntax: `-0.2/r + 0.05r - 1.5r^2`.
//!
//! A term is an optional signed coefficient followed by nothing (constant),
//! `r`, `r^p`, `/r` or `/r^p`, with an optional `*` before `r`. Whitespace is
//! ignored and the Unicode minus sign is accepted. `0` is the zero potential.

use slet_core::{PowerTerm, RadialPotential};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("empty potential expression")]
    Empty,
    #[error("empty term in `{0}`")]
    EmptyTerm(String),
    #[error("bad number `{number}` in term `{term}`")]
    BadNumber { term: String, number: String },
    #[error("cannot read `{rest}` in term `{term}`; expected r, r^p, /r or /r^p")]
    BadSuffix { term: String, rest: String },
    #[error("invalid potential `{0}`")]
    Invalid(String),
}

pub fn parse_potential(text: &str) -> Result<RadialPotential, ExprError> {
    let cleaned: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect();
    if cleaned.is_empty() {
        return Err(ExprError::Empty);
    }
    let terms = split_terms(&cleaned)
        .into_iter()
        .map(parse_term)
        .collect::<Result<Vec<_>, _>>()?;
    RadialPotential::new(terms).map_err(|_| ExprError::Invalid(text.to_string()))
}

/// Splits before each `+`/`-` that is not part of an exponent (`1e-3`, `r^-1`).
fn split_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        let prev = bytes[i - 1];
        let exponent_sign = matches!(prev, b'^' | b'(')
            || (matches!(prev, b'e' | b'E')
                && i >= 2
                && (bytes[i - 2].is_ascii_digit() || bytes[i - 2] == b'.'));
        if matches!(bytes[i], b'+' | b'-') && !exponent_sign {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    terms
}

/// Length of the leading decimal literal, including an `e` exponent.
fn number_len(s: &str) -> usize {
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
        i += 1;
    }
    if i > 0 && i < bytes.len() && matches!(bytes[i], b'e' | b'E') {
        let mut j = i + 1;
        if j < bytes.len() && matches!(bytes[j], b'+' | b'-') {
            j += 1;
        }
        if j < bytes.len() && bytes[j].is_ascii_digit() {
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            i = j;
        }
    }
    i
}

fn parse_number(term: &str, number: &str) -> Result<f64, ExprError> {
    number
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| ExprError::BadNumber {
            term: term.to_string(),
            number: number.to_string(),
        })
}

fn parse_term(term: &str) -> Result<PowerTerm, ExprError> {
    let (sign, body) = match term.as_bytes().first() {
        Some(b'-') => (-1.0, &term[1..]),
        Some(b'+') => (1.0, &term[1..]),
        _ => (1.0, term),
    };
    if body.is_empty() {
        return Err(ExprError::EmptyTerm(term.to_string()));
    }
    let split = number_len(body);
    let (number, rest) = body.split_at(split);
    let coefficient = if number.is_empty() {
        1.0
    } else {
        parse_number(term, number)?
    };
    let bad_suffix = || ExprError::BadSuffix {
        term: term.to_string(),
        rest: rest.to_string(),
    };
    let (inverse, power) = if let Some(p) = rest.strip_prefix('/') {
        (true, p)
    } else {
        (false, rest.strip_prefix('*').unwrap_or(rest))
    };
    let exponent = if power.is_empty() {
        if inverse || number.is_empty() {
            return Err(bad_suffix());
        }
        0.0
    } else {
        let after_r = power.strip_prefix('r').ok_or_else(bad_suffix)?;
        if after_r.is_empty() {
            1.0
        } else {
            let p = after_r.strip_prefix('^').ok_or_else(bad_suffix)?;
            let p = p
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .unwrap_or(p);
            parse_number(term, p)?
        }
    };
    let exponent = if inverse { -exponent } else { exponent };
    Ok(PowerTerm::new(sign * coefficient, exponent))
}
