//! Text and JSON formats for matrices and polynomials.
//!
//! Matrices: one row per line of whitespace-separated integers, or a JSON
//! array of arrays whose entries are integer strings or integer numbers.
//! Polynomials: a JSON array of integer strings, constant term first.

use num_bigint::BigInt;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::poly::IntPoly;

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

fn json_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => parse_int(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_int(&n.to_string()),
        other => Err(Error::Parse(format!("not an integer: {other}"))),
    }
}

/// Parses a possibly rectangular matrix in either format.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    let rows: Vec<Vec<BigInt>> = if trimmed.starts_with('[') {
        let value: Value = serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
        let Value::Array(rows) = value else {
            return Err(Error::Parse("expected an array of rows".into()));
        };
        rows.iter()
            .map(|row| match row {
                Value::Array(xs) => xs.iter().map(json_int).collect(),
                other => Err(Error::Parse(format!("row is not an array: {other}"))),
            })
            .collect::<Result<_>>()?
    } else {
        trimmed
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split_whitespace().map(parse_int).collect())
            .collect::<Result<_>>()?
    };
    if rows.is_empty() || rows[0].is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    let width = rows[0].len();
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != width) {
        return Err(Error::Parse(format!("row {} has {} entries, expected {width}", i + 1, r.len())));
    }
    IntMatrix::from_rows(rows)
}

pub fn parse_square_matrix(text: &str) -> Result<IntMatrix> {
    let m = parse_matrix(text)?;
    if !m.is_square() {
        return Err(Error::Parse(format!("matrix is {}x{}, expected square", m.rows(), m.cols())));
    }
    Ok(m)
}

pub fn parse_poly(text: &str) -> Result<IntPoly> {
    let value: Value = serde_json::from_str(text.trim()).map_err(|e| Error::Parse(e.to_string()))?;
    let Value::Array(xs) = value else {
        return Err(Error::Parse("expected an array of coefficients".into()));
    };
    Ok(IntPoly::new(xs.iter().map(json_int).collect::<Result<_>>()?))
}

pub fn big_to_json(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn vector_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big_to_json).collect())
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_to_json(m.row(i))).collect())
}

pub fn poly_to_json(p: &IntPoly) -> Value {
    vector_to_json(p.coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_agree() {
        let a = parse_matrix("2 1\n1 1\n").unwrap();
        let b = parse_matrix(r#"[["2", "1"], [1, "1"]]"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_matrix(&serde_json::to_string(&matrix_to_json(&a)).unwrap()).unwrap(), a);
    }

    #[test]
    fn ragged_and_non_square_rejected() {
        assert!(matches!(parse_matrix("1 2\n3"), Err(Error::Parse(_))));
        assert!(matches!(parse_square_matrix("1 2 3\n4 5 6"), Err(Error::Parse(_))));
        assert!(matches!(parse_matrix("1 x"), Err(Error::Parse(_))));
    }

    #[test]
    fn poly_round_trip() {
        let p = parse_poly(r#"["1", "-3", "1"]"#).unwrap();
        assert_eq!(p, IntPoly::from_i64(&[1, -3, 1]));
        assert_eq!(poly_to_json(&p).to_string(), r#"["1","-3","1"]"#);
    }
}
