use std::io::Read;
use std::path::{Path, PathBuf};

use aqalg_core::arith::Poly;
use aqalg_core::PrimePower;
use clap::{Parser, Subcommand};
use num::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::commands::{
    cmd_aqalg, cmd_filtration, cmd_honda, cmd_idempotents, cmd_verify, cmd_zeta_product, parse_coeff_list,
    parse_rational, Outcome, Status, SCHEMA_VERSION,
};
use crate::document::{InputDocument, ParseError};
use crate::isogeny::{ingest, LineDiagnostic};

#[derive(Debug, Parser)]
#[command(name = "aqalg", version, about = "Exact invariants of zeta data of varieties over finite fields")]
pub struct Cli {
    /// Emit one JSON object instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// Input file; `-` or absent reads stdin.
    #[arg(long, global = true, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Polynomials are monic characteristic polynomials, not L-polynomials.
    #[arg(long, global = true)]
    pub monic: bool,
    /// Input is JSON-lines isogeny-class records; each record is processed.
    #[arg(long, global = true)]
    pub isogeny: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check weights, endpoints and coprimality of every P_i.
    Verify,
    /// Wedderburn and Brauer description of A(X).
    Aqalg {
        /// Cohomological degree; defaults to the middle degree.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Coniveau and slope filtration dimensions with Newton polygons.
    Filtration {
        /// Integer or fraction `a/b`.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        r: String,
    },
    /// Weight, Honda-Tate dimension and m-th root data of one polynomial.
    Honda {
        #[arg(long)]
        q: String,
        /// Ascending coefficients, e.g. `1,-1,2`; read from the input when absent.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[arg(long)]
        m: Option<u32>,
    },
    /// Künneth projector polynomials.
    Idempotents,
    /// Zeta data of the product of the input with a second document.
    ZetaProduct {
        /// Second document.
        right: PathBuf,
    },
    /// Convert isogeny records to canonical documents, one per line.
    Ingest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Aqalg { .. } => "aqalg",
            Command::Filtration { .. } => "filtration",
            Command::Honda { .. } => "honda",
            Command::Idempotents => "idempotents",
            Command::ZetaProduct { .. } => "zeta-product",
            Command::Ingest => "ingest",
        }
    }
}

/// What an invocation writes and how it exits.
#[derive(Clone, Debug, PartialEq)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub status: Status,
}

fn read_source(path: Option<&Path>, stdin: &mut dyn Read) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn input_error(cli: &Cli, kind: &str, message: String, pos: Option<&ParseError>) -> Invocation {
    let stdout = if cli.json {
        let mut err = json!({ "kind": kind, "message": message });
        if let Some(p) = pos {
            err["line"] = json!(p.line);
            err["column"] = json!(p.column);
        }
        format!("{}\n", json!({ "schema_version": SCHEMA_VERSION, "command": cli.command.name(), "error": err }))
    } else {
        String::new()
    };
    let text = match pos {
        Some(p) => format!("{kind} error: {p}\n"),
        None => format!("{kind} error: {message}\n"),
    };
    Invocation { stdout, stderr: text, status: Status::ParseError }
}

fn render(cli: &Cli, out: Outcome) -> Invocation {
    let stdout = if cli.json { format!("{}\n", out.json) } else { out.text };
    let stderr = match (&out.status, out.json.get("error")) {
        (Status::DomainFailure, Some(Value::String(e))) => format!("error: {e}\n"),
        _ => String::new(),
    };
    Invocation { stdout, stderr, status: out.status }
}

fn diagnostics_json(diags: &[LineDiagnostic]) -> Value {
    json!(diags
        .iter()
        .map(|d| json!({ "line": d.line, "column": d.error.column, "message": d.error.message }))
        .collect::<Vec<_>>())
}

fn warnings(diags: &[LineDiagnostic]) -> String {
    diags.iter().map(|d| format!("warning: line {}: {}\n", d.line, d.error.message)).collect()
}

/// Runs one document-level command.
fn per_document(command: &Command, doc: &InputDocument) -> Outcome {
    match command {
        Command::Verify => cmd_verify(doc),
        Command::Aqalg { n } => cmd_aqalg(doc, *n),
        Command::Filtration { r } => cmd_filtration(doc, &parse_rational(r).expect("checked before dispatch")),
        Command::Idempotents => cmd_idempotents(doc),
        _ => unreachable!("not a per-document command"),
    }
}

fn batch(cli: &Cli, text: &str) -> Invocation {
    let (records, diags) = ingest(text);
    if records.is_empty() && !diags.is_empty() {
        let first = &diags[0];
        return Invocation {
            stderr: warnings(&diags),
            ..input_error(cli, "parse", format!("no valid records (line {}: {})", first.line, first.error.message), None)
        };
    }
    let outcomes: Vec<Outcome> = records.par_iter().map(|r| per_document(&cli.command, &r.to_document())).collect();
    let status = outcomes.iter().map(|o| o.status).max().unwrap_or(Status::Success);
    let stdout = if cli.json {
        let v = json!({
            "schema_version": SCHEMA_VERSION,
            "command": cli.command.name(),
            "records": outcomes.iter().map(|o| &o.json).collect::<Vec<_>>(),
            "diagnostics": diagnostics_json(&diags),
        });
        format!("{v}\n")
    } else {
        outcomes.iter().map(|o| o.text.as_str()).collect::<Vec<_>>().join("\n")
    };
    Invocation { stdout, stderr: warnings(&diags), status }
}

fn ingest_command(cli: &Cli, text: &str) -> Invocation {
    let (records, diags) = ingest(text);
    let docs: Vec<String> = records.iter().map(|r| r.to_document().to_canonical()).collect();
    let stdout = if cli.json {
        let parsed: Vec<Value> = docs.iter().map(|d| serde_json::from_str(d).expect("canonical")).collect();
        let v = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "ingest",
            "documents": parsed,
            "diagnostics": diagnostics_json(&diags),
        });
        format!("{v}\n")
    } else {
        docs.iter().map(|d| format!("{d}\n")).collect()
    };
    let status = if records.is_empty() && !diags.is_empty() { Status::ParseError } else { Status::Success };
    Invocation { stdout, stderr: warnings(&diags), status }
}

fn honda(cli: &Cli, q: &str, coeffs: Option<&str>, m: Option<u32>, stdin: &mut dyn Read) -> Invocation {
    let base = match q.trim().parse::<BigInt>().map_err(|e| e.to_string()).and_then(|q| {
        PrimePower::from_q(&q).map_err(|e| e.to_string())
    }) {
        Ok(b) => b,
        Err(e) => return input_error(cli, "parse", format!("q: {e}"), None),
    };
    let source = match coeffs {
        Some(c) => c.to_string(),
        None => match read_source(cli.input.as_deref(), stdin) {
            Ok(s) => s,
            Err(e) => return input_error(cli, "io", e.to_string(), None),
        },
    };
    let poly: Poly = match parse_coeff_list(&source) {
        Some(p) if !p.is_zero() => p,
        _ => return input_error(cli, "parse", format!("cannot read coefficients from {:?}", source.trim()), None),
    };
    let mut out = cmd_honda(&poly, cli.monic, &base, m);
    out.json["monic"] = json!(cli.monic);
    render(cli, out)
}

/// Executes a parsed command line. `stdin` is read only when the input
/// comes from standard input.
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Invocation {
    if let Command::Filtration { r } = &cli.command {
        if parse_rational(r).is_none() {
            return input_error(cli, "parse", format!("--r expects an integer or a/b, found {r}"), None);
        }
    }
    if let Command::Honda { q, coeffs, m } = &cli.command {
        return honda(cli, q, coeffs.as_deref(), *m, stdin);
    }
    let text = match read_source(cli.input.as_deref(), stdin) {
        Ok(t) => t,
        Err(e) => return input_error(cli, "io", e.to_string(), None),
    };
    if let Command::Ingest = cli.command {
        return ingest_command(cli, &text);
    }
    if cli.isogeny {
        if let Command::ZetaProduct { .. } = cli.command {
            return input_error(cli, "usage", "zeta-product does not take isogeny records".into(), None);
        }
        return batch(cli, &text);
    }
    let doc = match InputDocument::parse(&text, cli.monic) {
        Ok(d) => d,
        Err(e) => return input_error(cli, "parse", e.message.clone(), Some(&e)),
    };
    let out = match &cli.command {
        Command::ZetaProduct { right } => {
            let rtext = match std::fs::read_to_string(right) {
                Ok(t) => t,
                Err(e) => return input_error(cli, "io", format!("{}: {e}", right.display()), None),
            };
            let rdoc = match InputDocument::parse(&rtext, cli.monic) {
                Ok(d) => d,
                Err(e) => return input_error(cli, "parse", e.message.clone(), Some(&e)),
            };
            cmd_zeta_product(&doc, &rdoc)
        }
        c => per_document(c, &doc),
    };
    render(cli, out)
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, S>(args: I, stdin: &mut dyn Read) -> Invocation
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdin),
        Err(e) => {
            let status = if e.use_stderr() { Status::ParseError } else { Status::Success };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Invocation { stdout: String::new(), stderr: rendered, status }
            } else {
                Invocation { stdout: rendered, stderr: String::new(), status }
            }
        }
    }
}
