//! JSON-lines isogeny-class records: one object per line,
//! `{"label":"...","q":Q,"g":G,"coeffs":[1,a_1,...,a_2g]}` with the
//! ascending integer coefficients of the `L`-polynomial of `H^1`.

use std::fmt::Write as _;

use aqalg_core::arith::{exterior_charpoly, reciprocal_transform, Poly};
use aqalg_core::PrimePower;
use num::{BigInt, One, Zero};
use serde::Deserialize;
use serde_json::Number;

use crate::document::{parse_int, InputDocument, ParseError};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    label: String,
    q: Number,
    g: Number,
    coeffs: Vec<Number>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyRecord {
    pub label: String,
    pub base: PrimePower,
    pub g: usize,
    pub coeffs: Vec<BigInt>,
}

/// A rejected line, numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineDiagnostic {
    pub line: usize,
    pub error: ParseError,
}

impl IsogenyRecord {
    pub fn parse(line: &str) -> Result<Self, ParseError> {
        let raw: RawRecord = serde_json::from_str(line).map_err(|e| ParseError::from_json(&e))?;
        let base = PrimePower::from_q(&parse_int(raw.q.as_str())?).map_err(|e| ParseError::new(format!("q: {e}")))?;
        let g: usize = raw.g.as_str().parse().map_err(|_| ParseError::new("g must be a positive integer"))?;
        if g == 0 {
            return Err(ParseError::new("g must be a positive integer"));
        }
        let coeffs = raw.coeffs.iter().map(|c| parse_int(c.as_str())).collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() != 2 * g + 1 || coeffs.last().is_some_and(Zero::is_zero) {
            return Err(ParseError::new(format!("coeffs must have degree 2g = {}", 2 * g)));
        }
        if !coeffs[0].is_one() {
            return Err(ParseError::new("constant coefficient must be 1"));
        }
        Ok(IsogenyRecord { label: raw.label, base, g, coeffs })
    }

    pub fn l_polynomial(&self) -> Poly {
        Poly::from_integers(&self.coeffs)
    }

    /// Zeta data of the isogeny class: `H^i = Λ^i H^1`, which for `g = 1`
    /// is the curve data `{1 - T, L, 1 - qT}`.
    pub fn to_document(&self) -> InputDocument {
        let l = self.l_polynomial();
        let c1 = reciprocal_transform(&l, 2 * self.g).expect("validated on parse");
        let l_polynomials = (0..=2 * self.g)
            .map(|i| {
                let c = exterior_charpoly(&c1, i).expect("small dimension");
                c.reverse(c.deg())
            })
            .collect();
        InputDocument { base: self.base.clone(), n: self.g, l_polynomials, labels: Some(vec![self.label.clone()]) }
    }

    pub fn to_canonical(&self) -> String {
        let mut out = String::new();
        let label = serde_json::to_string(&self.label).expect("string serializes");
        write!(out, "{{\"label\":{label},\"q\":{},\"g\":{},\"coeffs\":[", self.base.q(), self.g).unwrap();
        let cs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        out.push_str(&cs.join(","));
        out.push_str("]}");
        out
    }
}

/// Parses every nonblank line; malformed lines become diagnostics and do
/// not stop the others.
pub fn ingest(text: &str) -> (Vec<IsogenyRecord>, Vec<LineDiagnostic>) {
    let mut records = Vec::new();
    let mut diagnostics = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match IsogenyRecord::parse(line) {
            Ok(r) => records.push(r),
            Err(error) => diagnostics.push(LineDiagnostic { line: i + 1, error }),
        }
    }
    (records, diagnostics)
}

pub fn ingest_isogeny_file(path: &std::path::Path) -> std::io::Result<(Vec<InputDocument>, Vec<LineDiagnostic>)> {
    let text = std::fs::read_to_string(path)?;
    let (records, diagnostics) = ingest(&text);
    Ok((records.iter().map(IsogenyRecord::to_document).collect(), diagnostics))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elliptic_record() {
        let line = r#"{"label":"1.2.ab","q":2,"g":1,"coeffs":[1,-1,2]}"#;
        let r = IsogenyRecord::parse(line).unwrap();
        assert_eq!(r.to_canonical(), line);
        let d = r.to_document();
        assert_eq!(d.to_canonical(), r#"{"q":2,"p":2,"n":1,"l_polynomials":[[1,-1],[1,-1,2],[1,-2]],"labels":["1.2.ab"]}"#);
    }

    #[test]
    fn surface_record() {
        let r = IsogenyRecord::parse(r#"{"label":"s","q":2,"g":2,"coeffs":[1,0,0,0,4]}"#).unwrap();
        let d = r.to_document();
        assert_eq!(d.n, 2);
        assert_eq!(d.l_polynomials[4], Poly::from_ints(&[1, -4]));
        assert_eq!(d.l_polynomials[2].deg(), 6);
    }

    #[test]
    fn diagnostics_by_line() {
        let text = "{\"label\":\"a\",\"q\":2,\"g\":1,\"coeffs\":[1,-1,2]}\n\n{\"label\":\"b\",\"q\":2,\"g\":1,\"coeffs\":[1,-1]}\nnot json\n";
        let (records, diags) = ingest(text);
        assert_eq!(records.len(), 1);
        assert_eq!(diags.iter().map(|d| d.line).collect::<Vec<_>>(), vec![3, 4]);
        assert!(diags[0].error.message.contains("degree"));
    }
}
