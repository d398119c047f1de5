use std::fmt::Write as _;

use aqalg_core::arith::{factor_rational_poly, reciprocal_transform, Poly};
use aqalg_core::endalg::{compute_a_in_degree, honda_tate_dimension, rank_from_algebra, witt_vector_rank, CSAData};
use aqalg_core::motives::{
    kunneth_idempotents, motive_of, validate_zeta, zeta_product, DegreeFailure, ZetaData,
};
use aqalg_core::padic::NewtonPolygon;
use aqalg_core::weil::{coniveau_sub, mth_root_factors, slope_filtration_dim, verify_weil, NotWeilReason, WeilError, WeilOrbit};
use aqalg_core::{PrimePower, Rational};
use num::{BigInt, One, Signed, Zero};
use serde_json::{json, Value};

use crate::document::{poly_coeff_strs, rational_str, InputDocument};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Success = 0,
    DomainFailure = 1,
    ParseError = 2,
}

/// A command result: the machine-readable report, its human-readable
/// rendering and the exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub status: Status,
}

impl Outcome {
    fn failure(command: &str, input: Option<&InputDocument>, message: String) -> Self {
        let mut json = envelope(command, input);
        json["error"] = json!(message);
        Outcome { json, text: format!("error: {message}\n"), status: Status::DomainFailure }
    }
}

fn envelope(command: &str, input: Option<&InputDocument>) -> Value {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let Some(doc) = input {
        v["input"] = serde_json::from_str(&doc.to_canonical()).expect("canonical text is JSON");
    }
    v
}

fn poly_json(p: &Poly) -> Value {
    json!(poly_coeff_strs(p))
}

fn polygon_json(np: &NewtonPolygon) -> Value {
    json!(np
        .segments()
        .iter()
        .map(|(s, m)| json!({ "slope": rational_str(s), "multiplicity": m }))
        .collect::<Vec<_>>())
}

fn polygon_text(np: &NewtonPolygon) -> String {
    let parts: Vec<String> = np.segments().iter().map(|(s, m)| format!("{}^{m}", rational_str(s))).collect();
    format!("[{}]", parts.join(", "))
}

fn header(doc: &InputDocument) -> String {
    match doc.label() {
        Some(l) => format!("{l}: q = {}, n = {}\n", doc.base.q(), doc.n),
        None => format!("q = {}, n = {}\n", doc.base.q(), doc.n),
    }
}

fn failure_json(f: &DegreeFailure, index: usize) -> Value {
    match f {
        DegreeFailure::Weight { found } => {
            json!({ "kind": "weight", "reason": format!("weight {found}, expected {index}"), "found": found })
        }
        DegreeFailure::NotWeil(NotWeilReason::WrongConstantValuation) => {
            json!({ "kind": "weight", "reason": NotWeilReason::WrongConstantValuation.as_str() })
        }
        DegreeFailure::NotWeil(r) => json!({ "kind": "not_weil", "reason": r.as_str() }),
    }
}

/// Weight of every irreducible factor of every `P_i`, plus the endpoint
/// and coprimality checks.
pub fn cmd_verify(doc: &InputDocument) -> Outcome {
    let z = doc.zeta();
    let report = validate_zeta(&z);
    let mut json = envelope("verify", Some(doc));
    let mut text = header(doc);
    text.push_str("i  deg  result\n");
    let mut degrees = Vec::new();
    for d in &report.degrees {
        let failures: Vec<Value> = d.failures.iter().map(|f| failure_json(f, d.index)).collect();
        let result = if d.passed() {
            format!("weight {}", d.index)
        } else {
            let parts: Vec<String> = failures
                .iter()
                .map(|f| format!("FAIL {} ({})", f["kind"].as_str().unwrap(), f["reason"].as_str().unwrap()))
                .collect();
            parts.join("; ")
        };
        writeln!(text, "{:<2} {:<4} {result}", d.index, d.degree).unwrap();
        degrees.push(json!({
            "index": d.index,
            "degree": d.degree,
            "passed": d.passed(),
            "weight": if d.passed() { json!(d.index) } else { Value::Null },
            "failures": failures,
        }));
    }
    for i in &report.endpoint_failures {
        writeln!(text, "FAIL endpoint P_{i}").unwrap();
    }
    for (i, j) in &report.not_coprime {
        writeln!(text, "FAIL P_{i} and P_{j} share eigenvalues").unwrap();
    }
    let passed = report.passed();
    text.push_str(if passed { "all degrees pass\n" } else { "verification failed\n" });
    json["degrees"] = json!(degrees);
    json["endpoint_failures"] = json!(report.endpoint_failures);
    json["not_coprime"] = json!(report.not_coprime);
    json["passed"] = json!(passed);
    Outcome { json, text, status: if passed { Status::Success } else { Status::DomainFailure } }
}

fn block_json(b: &CSAData) -> Value {
    json!({
        "r": b.r(),
        "center_poly": poly_json(&b.center_poly),
        "center_degree": b.orbit_size,
        "index_e": b.index_e,
        "real_places": b.real_places,
        "real_invariant": rational_str(&b.real_invariant),
        "finite_invariants": b.finite_invariants.iter().map(|(pl, inv)| json!({
            "place": pl.place_id,
            "slope": rational_str(&pl.slope),
            "local_degree": pl.local_degree,
            "invariant": rational_str(inv),
        })).collect::<Vec<_>>(),
    })
}

fn block_text(i: usize, b: &CSAData) -> String {
    let finite: Vec<String> = b
        .finite_invariants
        .iter()
        .map(|(pl, inv)| {
            format!("{} (slope {}, deg {})", rational_str(inv), rational_str(&pl.slope), pl.local_degree)
        })
        .collect();
    let real = if b.real_places == 0 {
        "none".to_string()
    } else {
        format!("{} x {}", b.real_places, rational_str(&b.real_invariant))
    };
    format!(
        "{:<6} {:<3} {:<5} {:<3} {}  | p: {}; real: {real}\n",
        i + 1,
        b.r(),
        b.orbit_size,
        b.index_e,
        b.center_poly,
        finite.join(", ")
    )
}

/// The algebra `A(X)` from the weight-`n` part.
pub fn cmd_aqalg(doc: &InputDocument, n: Option<usize>) -> Outcome {
    let z = doc.zeta();
    let n = n.unwrap_or(doc.n);
    let a = match compute_a_in_degree(&z, n) {
        Ok(a) => a,
        Err(e) => return Outcome::failure("aqalg", Some(doc), e.to_string()),
    };
    let rank = rank_from_algebra(&a);
    let mut json = envelope("aqalg", Some(doc));
    json["n"] = json!(n);
    json["blocks"] = json!(a.blocks.iter().map(block_json).collect::<Vec<_>>());
    json["dim_q"] = json!(a.dim_q());
    json["rank"] = json!(rank);
    json["is_zero"] = json!(a.is_zero());
    let mut text = header(doc);
    writeln!(text, "A(X) = {}", a.to_string().trim_start_matches("A(X) = ")).unwrap();
    if !a.is_zero() {
        text.push_str("block  r   [Z:Q] e   center\n");
        for (i, b) in a.blocks.iter().enumerate() {
            text.push_str(&block_text(i, b));
        }
    }
    writeln!(text, "dim_Q A = {}", a.dim_q()).unwrap();
    writeln!(text, "rank = {rank}").unwrap();
    if n == doc.n {
        if let Ok(w) = witt_vector_rank(&z) {
            json["witt_vector_rank"] = json!(w);
            writeln!(text, "rank H^n(WO) = {w}").unwrap();
        }
    }
    Outcome { json, text, status: Status::Success }
}

/// Coniveau (for integral `r >= 0`) and slope filtration dimensions per
/// degree, with Newton polygons.
pub fn cmd_filtration(doc: &InputDocument, r: &Rational) -> Outcome {
    let z = doc.zeta();
    let m = match motive_of(&z) {
        Ok(m) => m,
        Err(e) => return Outcome::failure("filtration", Some(doc), e.to_string()),
    };
    let integral_r = (r.is_integer() && !r.is_negative()).then(|| r.to_integer());
    let mut json = envelope("filtration", Some(doc));
    json["r"] = json!(rational_str(r));
    let mut text = header(doc);
    writeln!(text, "r = {}", rational_str(r)).unwrap();
    text.push_str("i  dim  coniveau  slope>=r  polygons\n");
    let mut rows = Vec::new();
    for i in 0..=2 * doc.n {
        let v = m.part(i as i64);
        let coniveau = match &integral_r {
            Some(k) => match u32::try_from(k).ok().map(|k| coniveau_sub(&v, k)) {
                Some(Ok(s)) => Some(s.dim()),
                Some(Err(e)) => return Outcome::failure("filtration", Some(doc), e.to_string()),
                None => Some(0),
            },
            None => None,
        };
        let slope = slope_filtration_dim(&v, r);
        let orbits: Vec<Value> = v
            .parts()
            .iter()
            .map(|(o, mult)| {
                json!({ "min_poly": poly_json(o.min_poly()), "multiplicity": mult, "newton_polygon": polygon_json(&o.newton_polygon()) })
            })
            .collect();
        let polys: Vec<String> = v.parts().iter().map(|(o, mult)| format!("{}x{}", mult, polygon_text(&o.newton_polygon()))).collect();
        writeln!(
            text,
            "{:<2} {:<4} {:<9} {:<9} {}",
            i,
            v.dim(),
            coniveau.map_or("-".to_string(), |c| c.to_string()),
            slope,
            polys.join(" ")
        )
        .unwrap();
        rows.push(json!({
            "index": i,
            "dim": v.dim(),
            "coniveau_dim": coniveau,
            "slope_dim": slope,
            "orbits": orbits,
        }));
    }
    json["degrees"] = json!(rows);
    Outcome { json, text, status: Status::Success }
}

/// Integer `m`-th root of `q`, if `q` is an `m`-th power of a prime power.
fn root_base(q: &PrimePower, m: u32) -> Option<PrimePower> {
    q.a().is_multiple_of(m).then(|| PrimePower::new(q.p(), q.a() / m).expect("positive exponent"))
}

/// Weights, Honda-Tate dimensions and `m`-th root data of one polynomial.
pub fn cmd_honda(l_or_monic: &Poly, monic: bool, q: &PrimePower, m: Option<u32>) -> Outcome {
    let mut json = json!({ "schema_version": SCHEMA_VERSION, "command": "honda", "q": q.q().to_string() });
    json["polynomial"] = poly_json(l_or_monic);
    let c = if monic {
        l_or_monic.clone()
    } else {
        match reciprocal_transform(l_or_monic, l_or_monic.deg()) {
            Ok(c) => c,
            Err(e) => {
                json["error"] = json!(e.to_string());
                return Outcome { json, text: format!("error: {e}\n"), status: Status::DomainFailure };
            }
        }
    };
    if !c.is_monic() || c.is_constant() || c.constant_term().is_zero() {
        json["error"] = json!("expected a nonconstant monic polynomial with nonzero constant term");
        return Outcome { text: format!("error: {}\n", json["error"].as_str().unwrap()), json, status: Status::DomainFailure };
    }
    json["charpoly"] = poly_json(&c);
    let mut text = format!("q = {}\ncharacteristic polynomial {c}\n", q.q());
    let mut status = Status::Success;
    let mut factors = Vec::new();
    for (f, mult) in factor_rational_poly(&c).expect("nonzero").factors {
        let mut entry = json!({ "min_poly": poly_json(&f), "multiplicity": mult });
        match verify_weil(&f, q) {
            Err(WeilError::NotWeil(reason)) => {
                status = Status::DomainFailure;
                entry["error"] = json!(format!("NotWeil: {reason}"));
                writeln!(text, "{f}: NotWeil ({reason})").unwrap();
            }
            Err(e) => {
                status = Status::DomainFailure;
                entry["error"] = json!(e.to_string());
                writeln!(text, "{f}: {e}").unwrap();
            }
            Ok(w) => {
                entry["weight"] = json!(w);
                let mut line = format!("{f}: weight {w}");
                let orbit = WeilOrbit::with_weight(f.clone(), q.clone(), w).expect("verified");
                if w == 1 {
                    match honda_tate_dimension(&orbit) {
                        Ok(g) => {
                            entry["g"] = json!(g);
                            write!(line, ", g = {g}").unwrap();
                        }
                        Err(e) => {
                            entry["g_error"] = json!(e.to_string());
                            write!(line, ", g: {e}").unwrap();
                        }
                    }
                }
                if let Some(m) = m.filter(|&m| m as i64 == w) {
                    match mth_root_factors(&f, q, m) {
                        Ok(fs) => {
                            let names: Vec<String> = fs.iter().map(|o| format!("({})", o.min_poly())).collect();
                            entry["weight1_factors"] = json!(fs.iter().map(|o| poly_json(o.min_poly())).collect::<Vec<_>>());
                            write!(line, ", weight-1 factors {}", names.join("")).unwrap();
                        }
                        Err(e) => entry["weight1_error"] = json!(e.to_string()),
                    }
                }
                text.push_str(&line);
                text.push('\n');
            }
        }
        factors.push(entry);
    }
    json["factors"] = json!(factors);
    if let Some(m) = m {
        let lifted = c.substitute_power(m as usize);
        json["m"] = json!(m);
        json["restricted"] = poly_json(&lifted);
        writeln!(text, "P(T^{m}) = {lifted}").unwrap();
        if let Some(b) = root_base(q, m) {
            json["restricted_base"] = json!(b.q().to_string());
            writeln!(text, "restriction from F_{} to F_{}", q.q(), b.q()).unwrap();
        }
    }
    Outcome { json, text, status }
}

/// Künneth projector polynomials `P^i(T)`.
pub fn cmd_idempotents(doc: &InputDocument) -> Outcome {
    let z = doc.zeta();
    let ps = match kunneth_idempotents(&z) {
        Ok(p) => p,
        Err(e) => return Outcome::failure("idempotents", Some(doc), e.to_string()),
    };
    let modulus: Poly = z.charpolys().into_iter().product();
    let mut json = envelope("idempotents", Some(doc));
    json["modulus"] = poly_json(&modulus);
    json["idempotents"] = json!(ps.iter().map(poly_json).collect::<Vec<_>>());
    let mut text = header(doc);
    writeln!(text, "modulus degree {}", modulus.deg()).unwrap();
    for (i, p) in ps.iter().enumerate() {
        writeln!(text, "P^{i}(T) = {p}").unwrap();
    }
    Outcome { json, text, status: Status::Success }
}

/// Künneth product of two documents; the text form is the canonical
/// document of the product.
pub fn cmd_zeta_product(a: &InputDocument, b: &InputDocument) -> Outcome {
    match zeta_product(&a.zeta(), &b.zeta()) {
        Ok(z) => {
            let labels = match (a.label(), b.label()) {
                (Some(x), Some(y)) => Some(vec![format!("{x} x {y}")]),
                _ => None,
            };
            let doc = InputDocument::from_zeta(&z, labels);
            let mut json = envelope("zeta-product", None);
            json["document"] = serde_json::from_str(&doc.to_canonical()).expect("canonical");
            Outcome { json, text: format!("{}\n", doc.to_canonical()), status: Status::Success }
        }
        Err(e) => Outcome::failure("zeta-product", None, e.to_string()),
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b) = (a.trim().parse::<BigInt>().ok()?, b.trim().parse::<BigInt>().ok()?);
            (!b.is_zero()).then(|| Rational::new(a, b))
        }
        None => s.trim().parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Parses `"1,-1,2"` or `"[1,-1,2]"`; entries may be fractions `a/b`.
pub fn parse_coeff_list(s: &str) -> Option<Poly> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    let cs = inner.split(',').map(parse_rational).collect::<Option<Vec<_>>>()?;
    Some(Poly::new(cs))
}

pub fn is_point(z: &ZetaData) -> bool {
    z.dim_n() == 0 && z.l_poly(0).constant_term().is_one()
}
