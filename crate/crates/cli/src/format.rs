//! Text and JSON encodings shared by every subcommand.
//!
//! * exact matrices: `{"rows": r, "cols": c, "entries": [[string, ...], ...]}`
//! * complex matrices: nested `[re, im]` pairs
//! * braid words: `{"n": int, "letters": [[i, sign], ...]}`
//! * R-matrix files: `{"dim": d, "ring": "rational" | "laurent:q" | "complex", "matrix": [[...]]}`

use std::io;
use std::str::FromStr;

use braidrep::ring::{LaurentPoly, Matrix, Ring};
use braidrep::yang_baxter::RMatrix;
use braidrep::BraidWord;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot parse `{0}` as a rational number")]
    Rational(String),
    #[error("cannot parse `{0}` as a complex number (expected a+bi)")]
    Complex(String),
    #[error("bad matrix JSON: {0}")]
    Matrix(String),
    #[error("bad R-matrix file: {0}")]
    RFile(String),
    #[error("bad braid word JSON: {0}")]
    Word(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// `p/q`, an integer, or a terminating decimal such as `-0.25`.
pub fn parse_rational(text: &str) -> Result<BigRational, FormatError> {
    let t = text.trim();
    let err = || FormatError::Rational(text.to_string());
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        let int = int.trim_start_matches(['-', '+']);
        if frac.is_empty() && int.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let whole = if int.is_empty() { <BigInt as Zero>::zero() } else { BigInt::from_str(int).map_err(|_| err())? };
        let digits =
            if frac.is_empty() { <BigInt as Zero>::zero() } else { BigInt::from_str(frac).map_err(|_| err())? };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let q = BigRational::new(whole * &scale + digits, scale);
        return Ok(if negative { -q } else { q });
    }
    let q = BigRational::from_str(t).map_err(|_| err())?;
    Ok(q)
}

/// `a+bi`, `a-bi`, `a`, `bi`, `i`, with optional exponents (`1e-3-2i`).
pub fn parse_complex(text: &str) -> Result<Complex64, FormatError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || FormatError::Complex(text.to_string());
    if t.is_empty() {
        return Err(err());
    }
    let real = |s: &str| -> Result<f64, FormatError> {
        if s.contains('/') {
            return parse_rational(s).map(|q| braidrep::ring::rational_to_f64(&q)).map_err(|_| err());
        }
        s.parse::<f64>().map_err(|_| err())
    };
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return Ok(Complex64::new(real(&t)?, 0.0));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => real(s)?,
    };
    Ok(Complex64::new(real(re)?, im))
}

/// Rational or complex input for `λ`: exact `p/q` when it parses as one.
pub fn parse_scalar(text: &str) -> Result<Complex64, FormatError> {
    match parse_rational(text) {
        Ok(q) => Ok(Complex64::new(braidrep::ring::rational_to_f64(&q), 0.0)),
        Err(_) => parse_complex(text),
    }
}

pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact matrix JSON with entries rendered by `Display`.
pub fn exact_matrix_json<T: Ring + std::fmt::Display>(m: &Matrix<T>) -> Value {
    let entries: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

pub fn rational_matrix_json(m: &Matrix<BigRational>) -> Value {
    let entries: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(rational_string).collect()).collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

pub fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn complex_matrix_json(m: &Matrix<Complex64>) -> Value {
    Value::Array(m.to_rows().into_iter().map(|r| Value::Array(r.into_iter().map(complex_json).collect())).collect())
}

#[derive(Debug, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Value>>,
}

fn entry_string(v: &Value) -> Result<String, FormatError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() => Ok(n.to_string()),
        other => Err(FormatError::Matrix(format!("entry {other} is not a string or integer"))),
    }
}

fn entry_complex(v: &Value) -> Result<Complex64, FormatError> {
    match v {
        Value::Array(pair) if pair.len() == 2 => {
            let part = |x: &Value| x.as_f64().ok_or_else(|| FormatError::Matrix(format!("bad complex part {x}")));
            Ok(Complex64::new(part(&pair[0])?, part(&pair[1])?))
        }
        Value::String(s) => parse_complex(s),
        Value::Number(n) => {
            n.as_f64().map(|x| Complex64::new(x, 0.0)).ok_or_else(|| FormatError::Complex(n.to_string()))
        }
        other => Err(FormatError::Matrix(format!("entry {other} is not a complex number"))),
    }
}

fn build<T: Ring>(rows: Vec<Vec<T>>) -> Result<Matrix<T>, FormatError> {
    Matrix::from_rows(rows).map_err(|e| FormatError::Matrix(e.to_string()))
}

fn check_shape(m: &MatrixJson) -> Result<(), FormatError> {
    if m.entries.len() != m.rows || m.entries.iter().any(|r| r.len() != m.cols) {
        return Err(FormatError::Matrix(format!("entries do not form a {}x{} array", m.rows, m.cols)));
    }
    Ok(())
}

pub fn parse_laurent_matrix(v: &Value) -> Result<Matrix<LaurentPoly>, FormatError> {
    let m: MatrixJson = serde_json::from_value(v.clone())?;
    check_shape(&m)?;
    let rows = m
        .entries
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let s = entry_string(x)?;
                    LaurentPoly::from_str(&s).map_err(|e| FormatError::Matrix(e.to_string()))
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<_>>, FormatError>>()?;
    build(rows)
}

pub fn parse_rational_matrix(v: &Value) -> Result<Matrix<BigRational>, FormatError> {
    let m: MatrixJson = serde_json::from_value(v.clone())?;
    check_shape(&m)?;
    let rows = m
        .entries
        .iter()
        .map(|r| r.iter().map(|x| parse_rational(&entry_string(x)?)).collect())
        .collect::<Result<Vec<Vec<_>>, FormatError>>()?;
    build(rows)
}

pub fn parse_complex_matrix(v: &Value) -> Result<Matrix<Complex64>, FormatError> {
    let rows: Vec<Vec<Value>> = serde_json::from_value(v.clone())?;
    let rows =
        rows.iter().map(|r| r.iter().map(entry_complex).collect()).collect::<Result<Vec<Vec<_>>, FormatError>>()?;
    build(rows)
}

/// A loaded R-matrix together with its coefficient ring.
#[derive(Debug, Clone)]
pub enum LoadedR {
    Rational(RMatrix<BigRational>),
    Laurent(RMatrix<LaurentPoly>),
    Complex(RMatrix<Complex64>),
}

impl LoadedR {
    pub fn ring_name(&self) -> &'static str {
        match self {
            LoadedR::Rational(_) => "rational",
            LoadedR::Laurent(_) => "laurent:q",
            LoadedR::Complex(_) => "complex",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            LoadedR::Rational(r) => r.dim(),
            LoadedR::Laurent(r) => r.dim(),
            LoadedR::Complex(r) => r.dim(),
        }
    }

    pub fn to_json(&self) -> Value {
        let matrix = match self {
            LoadedR::Rational(r) => rational_matrix_json(r.matrix())["entries"].clone(),
            LoadedR::Laurent(r) => exact_matrix_json(r.matrix())["entries"].clone(),
            LoadedR::Complex(r) => complex_matrix_json(r.matrix()),
        };
        json!({"dim": self.dim(), "ring": self.ring_name(), "matrix": matrix})
    }
}

#[derive(Debug, Deserialize)]
struct RFile {
    dim: usize,
    ring: String,
    matrix: Vec<Vec<Value>>,
}

pub fn parse_r_matrix(text: &str) -> Result<LoadedR, FormatError> {
    let f: RFile = serde_json::from_str(text)?;
    let side = f.dim * f.dim;
    let wrap =
        |rows: Vec<Vec<Value>>| json!({"rows": rows.len(), "cols": rows.first().map_or(0, Vec::len), "entries": rows});
    let bad = |e: braidrep::yang_baxter::YbeError| FormatError::RFile(e.to_string());
    if f.matrix.len() != side {
        return Err(FormatError::RFile(format!("dim {} needs a {side}x{side} matrix", f.dim)));
    }
    match f.ring.as_str() {
        "rational" => Ok(LoadedR::Rational(RMatrix::new(f.dim, parse_rational_matrix(&wrap(f.matrix))?).map_err(bad)?)),
        "laurent:q" => {
            let m = parse_laurent_matrix(&wrap(f.matrix))?;
            if let Some(v) = m.entries().iter().flat_map(|p| p.variables()).find(|v| v.as_str() != "q") {
                return Err(FormatError::RFile(format!("variable `{v}` in a laurent:q matrix")));
            }
            Ok(LoadedR::Laurent(RMatrix::new(f.dim, m).map_err(bad)?))
        }
        "complex" => Ok(LoadedR::Complex(
            RMatrix::new(f.dim, parse_complex_matrix(&Value::Array(f.matrix.into_iter().map(Value::Array).collect()))?)
                .map_err(bad)?,
        )),
        other => Err(FormatError::RFile(format!("unknown ring `{other}`"))),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct WordJson {
    n: usize,
    letters: Vec<(usize, i64)>,
}

pub fn parse_word_json(text: &str) -> Result<BraidWord, FormatError> {
    let w: WordJson = serde_json::from_str(text)?;
    BraidWord::from_pairs(w.n, &w.letters).map_err(|e| FormatError::Word(e.to_string()))
}

pub fn word_json(w: &BraidWord) -> Value {
    serde_json::to_value(WordJson { n: w.strands(), letters: w.pairs() }).expect("plain data")
}

/// Single-line JSON with `", "` and `": "` separators.
#[derive(Debug, Default)]
pub struct SpacedFormatter;

impl Formatter for SpacedFormatter {
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }
}

pub fn to_json_string(v: &Value, pretty: bool) -> String {
    if pretty {
        return serde_json::to_string_pretty(v).expect("serializable");
    }
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SpacedFormatter);
    v.serialize(&mut ser).expect("serializable");
    String::from_utf8(buf).expect("utf-8 JSON")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("7/3").unwrap(), q(7, 3));
        assert_eq!(parse_rational("-4").unwrap(), q(-4, 1));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(rational_string(&q(6, 4)), "3/2");
        assert_eq!(rational_string(&q(-6, 3)), "-2");
    }

    #[test]
    fn complexes() {
        assert_eq!(parse_complex("0.1+0.05i").unwrap(), Complex64::new(0.1, 0.05));
        assert_eq!(parse_complex("0.1-0.05i").unwrap(), Complex64::new(0.1, -0.05));
        assert_eq!(parse_complex("-2").unwrap(), Complex64::new(-2.0, 0.0));
        assert_eq!(parse_complex("3i").unwrap(), Complex64::new(0.0, 3.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("1e-3-2e-1i").unwrap(), Complex64::new(1e-3, -0.2));
        assert_eq!(parse_complex("1/2+1/4i").unwrap(), Complex64::new(0.5, 0.25));
        assert!(parse_complex("1+2").is_err());
        assert!(parse_complex("").is_err());
        assert_eq!(parse_scalar("7/3").unwrap(), Complex64::new(7.0 / 3.0, 0.0));
    }

    #[test]
    fn spaced_output() {
        let v = json!({"conway": "s^-2 - 1 + s^2", "components": 1, "xs": [1, 2]});
        assert_eq!(to_json_string(&v, false), r#"{"conway": "s^-2 - 1 + s^2", "components": 1, "xs": [1, 2]}"#);
    }

    #[test]
    fn matrix_round_trips() {
        let m = Matrix::from_rows(vec![
            vec![LaurentPoly::from_str("1 - t").unwrap(), LaurentPoly::from_str("t").unwrap()],
            vec![LaurentPoly::one(), LaurentPoly::zero()],
        ])
        .unwrap();
        assert_eq!(parse_laurent_matrix(&exact_matrix_json(&m)).unwrap(), m);
        let r = Matrix::from_rows(vec![vec![q(1, 2), q(-3, 1)]]).unwrap();
        assert_eq!(parse_rational_matrix(&rational_matrix_json(&r)).unwrap(), r);
        let c = Matrix::from_rows(vec![vec![Complex64::new(0.1, -2.0)]]).unwrap();
        assert_eq!(parse_complex_matrix(&complex_matrix_json(&c)).unwrap(), c);
        assert!(parse_rational_matrix(&json!({"rows": 2, "cols": 1, "entries": [["1"]]})).is_err());
    }

    #[test]
    fn r_files() {
        let text = r#"{"dim": 2, "ring": "laurent:q", "matrix": [["q","0","0","0"],["0","0","1","0"],["0","1","q - q^-1","0"],["0","0","0","q"]]}"#;
        let r = parse_r_matrix(text).unwrap();
        assert_eq!(r.ring_name(), "laurent:q");
        let again = parse_r_matrix(&r.to_json().to_string()).unwrap();
        assert_eq!(again.to_json(), r.to_json());
        let bad = r#"{"dim": 2, "ring": "laurent:q", "matrix": [["t","0","0","0"],["0","0","1","0"],["0","1","0","0"],["0","0","0","1"]]}"#;
        assert!(parse_r_matrix(bad).is_err());
        let complex = r#"{"dim": 1, "ring": "complex", "matrix": [[[0.5, 1.0]]]}"#;
        assert!(matches!(parse_r_matrix(complex).unwrap(), LoadedR::Complex(_)));
        assert!(parse_r_matrix(r#"{"dim": 2, "ring": "rational", "matrix": [["1"]]}"#).is_err());
    }

    #[test]
    fn word_round_trip() {
        let w = BraidWord::parse("s1 s2^-1 s1", 3).unwrap();
        let text = word_json(&w).to_string();
        assert_eq!(text, r#"{"n":3,"letters":[[1,1],[2,-1],[1,1]]}"#);
        assert_eq!(parse_word_json(&text).unwrap(), w);
    }
}
