//! File formats: Cayley tables, automorphism literals, function tables as
//! JSON, and the 17-significant-digit float serialization used by every
//! machine-readable report.

use crate::funcspace::CFunc;
use crate::semigroup::{validate_table, Automorphism, FiniteSemigroup, SemigroupError, MAX_LOADED_ORDER};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;
use std::io::Write;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("empty Cayley file")]
    Empty,
    #[error("line {line}: expected integer, got {token:?}")]
    BadInteger { line: usize, token: String },
    #[error("line {line}: expected {expected} entries, got {got}")]
    BadRowLength { line: usize, expected: usize, got: usize },
    #[error("missing table row {row}")]
    MissingRow { row: usize },
    #[error("order {order} exceeds the loadable maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("bad automorphism literal {literal:?}: {reason}")]
    BadSigma { literal: String, reason: String },
    #[error("bad solution JSON: {0}")]
    BadSolution(String),
}

/// Parse the Cayley file format: optional `#` comment lines, then the order
/// `n`, then `n` rows of `n` whitespace-separated products (row `x` holds
/// `x·0 … x·(n−1)`).
pub fn parse_cayley(text: &str) -> Result<FiniteSemigroup, FormatError> {
    let mut data_lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (first_line_no, first) = data_lines.next().ok_or(FormatError::Empty)?;
    let order: usize = first
        .parse()
        .map_err(|_| FormatError::BadInteger { line: first_line_no, token: first.to_string() })?;
    if order > MAX_LOADED_ORDER {
        return Err(FormatError::OrderTooLarge { order, max: MAX_LOADED_ORDER });
    }
    let mut rows = Vec::with_capacity(order);
    for x in 0..order {
        let (line_no, line) = data_lines.next().ok_or(FormatError::MissingRow { row: x })?;
        let mut row = Vec::with_capacity(order);
        for token in line.split_whitespace() {
            let v: usize = token.parse().map_err(|_| FormatError::BadInteger {
                line: line_no,
                token: token.to_string(),
            })?;
            row.push(v);
        }
        if row.len() != order {
            return Err(FormatError::BadRowLength { line: line_no, expected: order, got: row.len() });
        }
        rows.push(row);
    }
    Ok(validate_table(order, &rows)?)
}

pub fn format_cayley(s: &FiniteSemigroup) -> String {
    let mut out = String::new();
    if let Some(label) = s.label() {
        out.push_str(&format!("# {label}\n"));
    }
    out.push_str(&s.to_string());
    out
}

/// Parse an automorphism literal: `id`, a comma-separated image list such
/// as `1,2,0`, or `pow:BASE:K` for the K-th power of a base literal.
pub fn parse_sigma(literal: &str, s: &FiniteSemigroup) -> Result<Automorphism, FormatError> {
    let literal = literal.trim();
    if literal == "id" {
        return Ok(Automorphism::identity(s.order()));
    }
    if let Some(rest) = literal.strip_prefix("pow:") {
        let (base_str, k_str) = rest.rsplit_once(':').ok_or_else(|| FormatError::BadSigma {
            literal: literal.to_string(),
            reason: "pow form is pow:BASE:K".to_string(),
        })?;
        let k: usize = k_str.parse().map_err(|_| FormatError::BadSigma {
            literal: literal.to_string(),
            reason: format!("bad exponent {k_str:?}"),
        })?;
        let base = parse_sigma(base_str, s)?;
        return Ok(base.power(k));
    }
    let mut image = Vec::new();
    for token in literal.split(',') {
        let v: usize = token.trim().parse().map_err(|_| FormatError::BadSigma {
            literal: literal.to_string(),
            reason: format!("bad image entry {token:?}"),
        })?;
        image.push(v);
    }
    Automorphism::new(s, image).map_err(|e| FormatError::BadSigma {
        literal: literal.to_string(),
        reason: e.to_string(),
    })
}

/// `[re, im]` pair for a complex value.
pub fn complex_to_json(z: Complex64) -> Value {
    Value::Array(vec![json_f64(z.re), json_f64(z.im)])
}

/// `[[re, im], …]` array for a function table.
pub fn cfunc_to_json(f: &CFunc) -> Value {
    Value::Array(f.values().iter().map(|&z| complex_to_json(z)).collect())
}

pub fn json_f64(v: f64) -> Value {
    let v = if v == 0.0 { 0.0 } else { v }; // fold -0.0 into 0.0
    Value::Number(serde_json::Number::from_f64(v).expect("finite float"))
}

pub fn complex_from_json(v: &Value) -> Result<Complex64, FormatError> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| FormatError::BadSolution("complex value must be [re, im]".into()))?;
    let re = arr[0]
        .as_f64()
        .ok_or_else(|| FormatError::BadSolution("non-numeric real part".into()))?;
    let im = arr[1]
        .as_f64()
        .ok_or_else(|| FormatError::BadSolution("non-numeric imaginary part".into()))?;
    Ok(Complex64::new(re, im))
}

pub fn cfunc_from_json(v: &Value) -> Result<CFunc, FormatError> {
    let arr = v
        .as_array()
        .ok_or_else(|| FormatError::BadSolution("function table must be an array".into()))?;
    arr.iter().map(complex_from_json).collect::<Result<Vec<_>, _>>().map(CFunc::new)
}

/// Parse a solution pair `{"f": [[re,im],…], "g": [[re,im],…]}` and check
/// both tables against the semigroup order.
pub fn parse_solution_pair(text: &str, order: usize) -> Result<(CFunc, CFunc), FormatError> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| FormatError::BadSolution(e.to_string()))?;
    let f = cfunc_from_json(
        v.get("f").ok_or_else(|| FormatError::BadSolution("missing \"f\"".into()))?,
    )?;
    let g = cfunc_from_json(
        v.get("g").ok_or_else(|| FormatError::BadSolution("missing \"g\"".into()))?,
    )?;
    if f.len() != order || g.len() != order {
        return Err(FormatError::BadSolution(format!(
            "tables have lengths {} and {}, expected {order}",
            f.len(),
            g.len()
        )));
    }
    Ok((f, g))
}

struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        // 17 significant digits: enough to round-trip any f64 exactly.
        write!(writer, "{value:.16e}")
    }
}

/// Serialize a JSON value with every float printed to 17 significant
/// digits, so identical runs produce byte-identical reports.
pub fn to_json_string(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value.serialize(&mut ser).expect("JSON serialization cannot fail");
    String::from_utf8(out).expect("serializer emits UTF-8")
}
