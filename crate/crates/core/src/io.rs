//! Text formats: inequality system files, cone output, candidate vectors.
//!
//! System file: line 1 is `n m`, then `m` rows of `n` whitespace-separated
//! rationals (signed integers or `p/q` with `q > 0`). Lines starting with
//! `#` are comments. Cone output lists `U <count>` then its rows, `V
//! <count>` then its rows, integers only, lexicographically sorted.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{InequalitySystem, LinearForm, QVector, Rational};
use crate::mb::ConeDescription;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses one token as a rational: an optionally signed integer or `p/q`
/// with `q > 0`.
pub fn parse_rational(token: &str, line: usize) -> Result<Rational> {
    let (num_str, den_str) = match token.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (token, None),
    };
    let numer = BigInt::from_str(num_str)
        .map_err(|_| parse_error(line, format!("malformed rational `{token}`")))?;
    let denom = match den_str {
        Some(q) => BigInt::from_str(q)
            .map_err(|_| parse_error(line, format!("malformed rational `{token}`")))?,
        None => BigInt::one(),
    };
    if denom <= BigInt::zero() {
        return Err(parse_error(
            line,
            format!("denominator must be positive in `{token}`"),
        ));
    }
    Ok(Rational::new(numer, denom))
}

/// Lines of the input that carry data, paired with their 1-based numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

fn parse_row(line_no: usize, line: &str, n: usize) -> Result<QVector> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != n {
        return Err(parse_error(
            line_no,
            format!("expected {n} entries, got {}", tokens.len()),
        ));
    }
    let entries = tokens
        .iter()
        .map(|t| parse_rational(t, line_no))
        .collect::<Result<Vec<_>>>()?;
    Ok(QVector::new(entries))
}

pub fn parse_system(text: &str) -> Result<InequalitySystem> {
    let mut lines = data_lines(text);
    let Some((header_no, header)) = lines.next() else {
        return Err(parse_error(1, "missing `n m` header"));
    };
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_error(header_no, "malformed header, expected `n m`"))?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_error(header_no, "malformed header, expected `n m`"))?;
    if parts.next().is_some() {
        return Err(parse_error(header_no, "trailing tokens after `n m` header"));
    }

    let mut forms = Vec::with_capacity(m);
    let mut last_line = header_no;
    for (line_no, line) in lines {
        if forms.len() == m {
            return Err(parse_error(line_no, format!("more than {m} rows")));
        }
        forms.push(LinearForm::new(parse_row(line_no, line, n)?));
        last_line = line_no;
    }
    if forms.len() != m {
        return Err(parse_error(
            last_line + 1,
            format!("expected {m} rows, got {}", forms.len()),
        ));
    }
    InequalitySystem::new(n, forms)
}

/// Candidate vectors: rows of `n` rationals, `#` comments allowed.
pub fn parse_vectors(text: &str, n: usize) -> Result<Vec<QVector>> {
    data_lines(text)
        .map(|(line_no, line)| parse_row(line_no, line, n))
        .collect()
}

fn write_integral_row(out: &mut String, row: &QVector) {
    let mut first = true;
    for e in row.iter() {
        if !first {
            out.push(' ');
        }
        first = false;
        debug_assert!(e.denom().is_one(), "canonical generators are integral");
        let _ = write!(out, "{}", e.numer());
    }
    out.push('\n');
}

/// Serializes a canonical cone. Generators are integral after
/// canonicalization, so only numerators are written.
pub fn write_cone(cone: &ConeDescription) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "U {}", cone.lineality_basis().len());
    for u in cone.lineality_basis() {
        write_integral_row(&mut out, u);
    }
    let _ = writeln!(out, "V {}", cone.rays().len());
    for v in cone.rays() {
        write_integral_row(&mut out, v);
    }
    out
}

/// Parses the output of [`write_cone`] back into a description.
pub fn parse_cone(text: &str, dimension: usize) -> Result<ConeDescription> {
    let mut lines = data_lines(text);
    let mut read_section = |tag: &str| -> Result<Vec<QVector>> {
        let Some((line_no, line)) = lines.next() else {
            return Err(parse_error(1, format!("missing `{tag} <count>` header")));
        };
        let count: usize = line
            .strip_prefix(tag)
            .and_then(|rest| rest.trim().parse().ok())
            .ok_or_else(|| parse_error(line_no, format!("expected `{tag} <count>`")))?;
        let mut rows = Vec::with_capacity(count);
        for _ in 0..count {
            let Some((row_no, row)) = lines.next() else {
                return Err(parse_error(line_no, format!("truncated `{tag}` section")));
            };
            rows.push(parse_row(row_no, row, dimension)?);
        }
        Ok(rows)
    };
    let lineality = read_section("U")?;
    let rays = read_section("V")?;
    ConeDescription::new(dimension, lineality, rays)
}

pub fn write_system(system: &InequalitySystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", system.dimension(), system.len());
    for form in system.forms() {
        let mut first = true;
        for e in form.coefficients().iter() {
            if !first {
                out.push(' ');
            }
            first = false;
            if e.denom().is_one() {
                let _ = write!(out, "{}", e.numer());
            } else {
                let _ = write!(out, "{}/{}", e.numer(), e.denom());
            }
        }
        out.push('\n');
    }
    out
}
