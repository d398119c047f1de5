//! The JSON input document and its canonical serialization.
//!
//! Canonical form is compact JSON with keys in the order
//! `q, p, n, l_polynomials, labels`, integers as bare numbers and
//! non-integral rationals as `["a","b"]` in lowest terms with `b > 0`.
//! `labels` is omitted when absent.

use std::fmt::Write as _;

use aqalg_core::arith::{monic_to_l_polynomial, Poly};
use aqalg_core::motives::ZetaData;
use aqalg_core::{PrimePower, Rational};
use num::{BigInt, One, Zero};
use serde::Deserialize;
use serde_json::Number;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message} at line {line} column {column}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(message: impl Into<String>) -> Self {
        ParseError { line: 0, column: 0, message: message.into() }
    }

    pub(crate) fn from_json(e: &serde_json::Error) -> Self {
        let msg = e.to_string();
        let message = match msg.find(" at line ") {
            Some(i) => msg[..i].to_string(),
            None => msg,
        };
        ParseError { line: e.line(), column: e.column(), message }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    q: Number,
    p: Number,
    n: Number,
    l_polynomials: Vec<Vec<RawCoeff>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoeff {
    Int(Number),
    Ratio(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub base: PrimePower,
    pub n: usize,
    /// `L`-polynomials `P_0, ..., P_{2n}`, ascending coefficients.
    pub l_polynomials: Vec<Poly>,
    pub labels: Option<Vec<String>>,
}

pub(crate) fn parse_int(s: &str) -> Result<BigInt, ParseError> {
    s.parse::<BigInt>().map_err(|_| ParseError::new(format!("expected an integer, found {s}")))
}

fn parse_coeff(c: &RawCoeff) -> Result<Rational, ParseError> {
    match c {
        RawCoeff::Int(n) => Ok(Rational::from_integer(parse_int(n.as_str())?)),
        RawCoeff::Ratio(a, b) => {
            let (a, b) = (parse_int(a)?, parse_int(b)?);
            if b.is_zero() {
                return Err(ParseError::new("zero denominator"));
            }
            Ok(Rational::new(a, b))
        }
    }
}

impl InputDocument {
    /// Parses a document. With `monic`, the polynomials are monic
    /// characteristic polynomials and are converted to `L`-polynomials.
    pub fn parse(text: &str, monic: bool) -> Result<Self, ParseError> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| ParseError::from_json(&e))?;
        let q = parse_int(raw.q.as_str())?;
        let base = PrimePower::from_q(&q).map_err(|e| ParseError::new(format!("q: {e}")))?;
        let p = parse_int(raw.p.as_str())?;
        if p != BigInt::from(base.p()) {
            return Err(ParseError::new(format!("p = {p} is not the characteristic of q = {q}")));
        }
        let n: usize = raw.n.as_str().parse().map_err(|_| ParseError::new("n must be a nonnegative integer"))?;
        let mut l_polynomials = Vec::new();
        for (i, coeffs) in raw.l_polynomials.iter().enumerate() {
            let poly = Poly::new(coeffs.iter().map(parse_coeff).collect::<Result<_, _>>()?);
            let poly = if monic {
                monic_to_l_polynomial(&poly).map_err(|e| ParseError::new(format!("polynomial {i}: {e}")))?
            } else {
                poly
            };
            l_polynomials.push(poly);
        }
        if l_polynomials.len() != 2 * n + 1 {
            return Err(ParseError::new(format!(
                "expected {} polynomials for n = {n}, found {}",
                2 * n + 1,
                l_polynomials.len()
            )));
        }
        if let Some(i) = l_polynomials.iter().position(|l| !l.constant_term().is_one()) {
            return Err(ParseError::new(format!("polynomial {i} does not have constant term 1")));
        }
        Ok(InputDocument { base, n, l_polynomials, labels: raw.labels })
    }

    pub fn from_zeta(z: &ZetaData, labels: Option<Vec<String>>) -> Self {
        InputDocument { base: z.base().clone(), n: z.dim_n(), l_polynomials: z.l_polys().to_vec(), labels }
    }

    pub fn zeta(&self) -> ZetaData {
        ZetaData::new(self.base.clone(), self.n, self.l_polynomials.clone()).expect("checked on parse")
    }

    pub fn label(&self) -> Option<&str> {
        self.labels.as_ref().and_then(|l| l.first()).map(String::as_str)
    }

    /// The canonical compact JSON text.
    pub fn to_canonical(&self) -> String {
        let mut out = String::new();
        write!(out, "{{\"q\":{},\"p\":{},\"n\":{},\"l_polynomials\":[", self.base.q(), self.base.p(), self.n).unwrap();
        for (i, l) in self.l_polynomials.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('[');
            for (j, c) in l.coeffs().iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                if c.is_integer() {
                    write!(out, "{}", c.numer()).unwrap();
                } else {
                    write!(out, "[\"{}\",\"{}\"]", c.numer(), c.denom()).unwrap();
                }
            }
            out.push(']');
        }
        out.push(']');
        if let Some(labels) = &self.labels {
            out.push_str(",\"labels\":");
            out.push_str(&serde_json::to_string(labels).expect("strings serialize"));
        }
        out.push('}');
        out
    }
}

/// Exact rendering used in reports: `a` or `a/b`.
pub fn rational_str(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn poly_coeff_strs(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(rational_str).collect()
}
