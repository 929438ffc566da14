//! Matrix and operator documents.
//!
//! Exact scalars are rationals written as `"p/q"` in lowest terms with
//! `q > 0` (integers as `"p"`). Float scalars are JSON numbers. Matrix
//! documents also have a plain-text form: the dimension on the first line,
//! then one whitespace-separated row per line. Blank lines and lines
//! starting with `#` are ignored.

use std::fmt;
use std::str::FromStr;

use copos::scalar::{rational_from_f64, Rational, Scalar};
use copos::symspace::{basis_len, LinOp};
use copos::{dense::Dense, SymMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Canonical basis tag for operator documents.
pub const BASIS_TAG: &str = "diag-then-offdiag-lex";

/// Default upper bound on the dimension accepted from documents.
pub const MAX_DIM: usize = copos::copositivity::DEFAULT_MAX_DIM;

#[derive(Debug, Error, PartialEq)]
pub enum DocError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid scalar {0:?}")]
    Scalar(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("non-finite float entry")]
    NonFinite,
    #[error("dimension must be between 1 and {MAX_DIM}, found {0}")]
    Dimension(usize),
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("entry {0} is a float but the document mode is exact")]
    FloatInExact(usize),
    #[error("matrix is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("unsupported basis {0:?}, expected {BASIS_TAG:?}")]
    Basis(String),
    #[error("empty document")]
    Empty,
    #[error("line {line}: expected {expected} entries, found {found}")]
    RowLength { line: usize, expected: usize, found: usize },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Self::Exact),
            "float" => Ok(Self::Float),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exact => "exact",
            Self::Float => "float",
        })
    }
}

/// A scalar as it appears in JSON: strings and integers are exact, other
/// numbers are floats.
#[derive(Debug, Clone, PartialEq)]
pub enum Num {
    Exact(Rational),
    Float(f64),
}

impl Num {
    pub fn to_rational(&self) -> Result<Rational, DocError> {
        match self {
            Self::Exact(q) => Ok(q.clone()),
            Self::Float(v) => rational_from_f64(*v).ok_or(DocError::NonFinite),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Exact(q) => Scalar::to_f64(q),
            Self::Float(v) => *v,
        }
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Exact(q) => s.serialize_str(&q.to_string()),
            Self::Float(v) => s.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct NumVisitor;

        impl Visitor<'_> for NumVisitor {
            type Value = Num;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string, an integer, or a number")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Num, E> {
                Ok(Num::Exact(Rational::from_integer(BigInt::from(v))))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
                Ok(Num::Exact(Rational::from_integer(BigInt::from(v))))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Num, E> {
                if v.is_finite() {
                    Ok(Num::Float(v))
                } else {
                    Err(E::custom("non-finite number"))
                }
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Num, E> {
                parse_rational(v).map(Num::Exact).map_err(E::custom)
            }
        }

        d.deserialize_any(NumVisitor)
    }
}

/// Parses `p`, `p/q` or a finite decimal such as `-1.25` exactly.
pub fn parse_rational(s: &str) -> Result<Rational, DocError> {
    let bad = || DocError::Scalar(s.to_owned());
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_integer(p).ok_or_else(bad)?;
        let q = parse_integer(q).ok_or_else(bad)?;
        if q.is_zero() {
            return Err(DocError::ZeroDenominator(s.to_owned()));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int_part, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 4096 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.starts_with('-');
        let whole = match int_part {
            "" | "-" | "+" => BigInt::zero(),
            _ => parse_integer(int_part).ok_or_else(bad)?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_val: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = whole.magnitude().clone() * scale.magnitude() + frac_val.magnitude();
        let signed = if negative {
            -BigInt::from(magnitude)
        } else {
            BigInt::from(magnitude)
        };
        return Ok(Rational::new(signed, scale));
    }
    parse_integer(s).map(Rational::from_integer).ok_or_else(bad)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || digits.len() > 4096 || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_float(s: &str) -> Result<f64, DocError> {
    let v: f64 = s.parse().map_err(|_| DocError::Scalar(s.to_owned()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(DocError::NonFinite)
    }
}

/// A validated symmetric matrix in either arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub enum Matrix {
    Exact(SymMatrix<Rational>),
    Float(SymMatrix<f64>),
}

impl Matrix {
    pub fn n(&self) -> usize {
        match self {
            Self::Exact(m) => m.n(),
            Self::Float(m) => m.n(),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Self::Exact(_) => Mode::Exact,
            Self::Float(_) => Mode::Float,
        }
    }

    /// Exact value of every entry (floats convert to their binary value).
    pub fn to_exact(&self) -> Result<SymMatrix<Rational>, DocError> {
        match self {
            Self::Exact(m) => Ok(m.clone()),
            Self::Float(m) => {
                let entries = m
                    .row_major()
                    .iter()
                    .map(|v| rational_from_f64(*v).ok_or(DocError::NonFinite))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(SymMatrix::from_row_major(m.n(), entries).expect("already symmetric"))
            }
        }
    }

    pub fn to_float(&self) -> SymMatrix<f64> {
        match self {
            Self::Exact(m) => m.map(Scalar::to_f64),
            Self::Float(m) => m.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub n: usize,
    pub mode: Mode,
    pub entries: Vec<Num>,
}

impl MatrixDocument {
    pub fn from_exact(m: &SymMatrix<Rational>) -> Self {
        Self {
            n: m.n(),
            mode: Mode::Exact,
            entries: m.row_major().iter().cloned().map(Num::Exact).collect(),
        }
    }

    pub fn from_float(m: &SymMatrix<f64>) -> Self {
        Self {
            n: m.n(),
            mode: Mode::Float,
            entries: m.row_major().iter().copied().map(Num::Float).collect(),
        }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        match m {
            Matrix::Exact(m) => Self::from_exact(m),
            Matrix::Float(m) => Self::from_float(m),
        }
    }

    pub fn validate(&self) -> Result<Matrix, DocError> {
        check_dim(self.n)?;
        let expected = self.n * self.n;
        if self.entries.len() != expected {
            return Err(DocError::EntryCount {
                expected,
                found: self.entries.len(),
            });
        }
        match self.mode {
            Mode::Exact => {
                let entries = self
                    .entries
                    .iter()
                    .enumerate()
                    .map(|(k, v)| match v {
                        Num::Exact(q) => Ok(q.clone()),
                        Num::Float(_) => Err(DocError::FloatInExact(k + 1)),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                symmetric(self.n, entries).map(Matrix::Exact)
            }
            Mode::Float => {
                let entries = self.entries.iter().map(Num::to_f64).collect();
                symmetric(self.n, entries).map(Matrix::Float)
            }
        }
    }
}

fn check_dim(n: usize) -> Result<(), DocError> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(DocError::Dimension(n))
    }
}

fn symmetric<S: Scalar>(n: usize, entries: Vec<S>) -> Result<SymMatrix<S>, DocError> {
    SymMatrix::from_row_major(n, entries).map_err(|e| match e {
        copos::Error::Asymmetric { i, j } => DocError::Asymmetric(i, j),
        other => DocError::Scalar(other.to_string()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDocument {
    pub n: usize,
    pub basis: String,
    /// Row-major `N x N` coefficients, `N = n(n+1)/2`; column `k` is the
    /// image of basis element `k`.
    pub coeffs: Vec<Num>,
}

impl OperatorDocument {
    pub fn from_op(op: &LinOp<Rational>) -> Self {
        Self {
            n: op.n(),
            basis: BASIS_TAG.to_owned(),
            coeffs: op.coeffs().data.iter().cloned().map(Num::Exact).collect(),
        }
    }

    pub fn validate(&self) -> Result<LinOp<Rational>, DocError> {
        if self.basis != BASIS_TAG {
            return Err(DocError::Basis(self.basis.clone()));
        }
        check_dim(self.n)?;
        let big_n = basis_len(self.n);
        if self.coeffs.len() != big_n * big_n {
            return Err(DocError::EntryCount {
                expected: big_n * big_n,
                found: self.coeffs.len(),
            });
        }
        let data = self
            .coeffs
            .iter()
            .map(Num::to_rational)
            .collect::<Result<Vec<_>, _>>()?;
        let coeffs = Dense {
            rows: big_n,
            cols: big_n,
            data,
        };
        Ok(LinOp::from_coeffs(self.n, coeffs).expect("shape checked"))
    }
}

/// Parses a JSON matrix document.
pub fn parse_matrix_json(input: &str) -> Result<Matrix, DocError> {
    let doc: MatrixDocument = serde_json::from_str(input).map_err(|e| DocError::Json(e.to_string()))?;
    doc.validate()
}

pub fn parse_operator_json(input: &str) -> Result<LinOp<Rational>, DocError> {
    let doc: OperatorDocument = serde_json::from_str(input).map_err(|e| DocError::Json(e.to_string()))?;
    doc.validate()
}

/// Parses the plain-text matrix format. Entries are read exactly when every
/// token is an integer, fraction or decimal; otherwise as floats.
pub fn parse_matrix_text(input: &str) -> Result<Matrix, DocError> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or(DocError::Empty)?;
    let n: usize = header.parse().map_err(|_| DocError::Scalar(header.to_owned()))?;
    check_dim(n)?;
    let mut tokens = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (line, text) in lines {
        let row: Vec<&str> = text.split_whitespace().collect();
        if row.len() != n {
            return Err(DocError::RowLength {
                line,
                expected: n,
                found: row.len(),
            });
        }
        rows += 1;
        if rows > n {
            return Err(DocError::RowCount {
                expected: n,
                found: rows,
            });
        }
        tokens.extend(row);
    }
    if rows != n {
        return Err(DocError::RowCount {
            expected: n,
            found: rows,
        });
    }
    match tokens.iter().map(|t| parse_rational(t)).collect::<Result<Vec<_>, _>>() {
        Ok(entries) => symmetric(n, entries).map(Matrix::Exact),
        Err(DocError::ZeroDenominator(s)) => Err(DocError::ZeroDenominator(s)),
        Err(_) => {
            let entries = tokens.iter().map(|t| parse_float(t)).collect::<Result<Vec<_>, _>>()?;
            symmetric(n, entries).map(Matrix::Float)
        }
    }
}

/// JSON if the first non-blank character is `{`, text otherwise.
pub fn parse_matrix(input: &str) -> Result<Matrix, DocError> {
    if input.trim_start().starts_with('{') {
        parse_matrix_json(input)
    } else {
        parse_matrix_text(input)
    }
}

pub fn format_matrix_text(m: &Matrix) -> String {
    fn render<S: Scalar>(m: &SymMatrix<S>, fmt: impl Fn(&S) -> String) -> String {
        let mut out = format!("{}\n", m.n());
        for row in m.rows() {
            let cells: Vec<String> = row.iter().map(&fmt).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
    match m {
        Matrix::Exact(m) => render(m, ToString::to_string),
        // `{:?}` prints the shortest string that round-trips
        Matrix::Float(m) => render(m, |v| format!("{v:?}")),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents always serialize")
}
