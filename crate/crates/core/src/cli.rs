//! Command-line front end. `run` takes explicit streams so it can be driven
//! from tests; the binary only forwards the process streams.
//!
//! Exit codes: 0 success, 1 legitimate negative result, 2 input error.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::certify::{self, EmbeddingReport, FIVE_CP2_LABEL};
use crate::forms::{CyclicLinkingForm, FormError, GramPairing};
use crate::intmatrix::{IntMatrix, MatrixError};
use crate::presentations::{self as pres, PresentationCertificate, PresentationError, SearchLimits};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Magnitude up to which integers are written as JSON numbers.
const JSON_SAFE_INT: i64 = (1 << 53) - 1;

#[derive(Debug, Parser)]
#[command(
    name = "lensform",
    version,
    about = "Construct and verify intersection pairings presenting lens space linking forms (q/p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Rank1,
    Rank2,
    Rank2Constructive,
    Even,
    Definite,
    Plumbing,
    Search,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a pairing presenting (q/p) and print its certificate as JSON.
    #[command(allow_negative_numbers = true)]
    Present {
        p: BigInt,
        q: BigInt,
        #[arg(long, value_enum, default_value_t = Target::Rank2)]
        target: Target,
        /// Rank cap for `--target search`.
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        /// Accepted for symmetry; certificates are always JSON.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = numtheory_default_ceiling())]
        ceiling: u64,
    },
    /// Check whether a Gram matrix presents (q/p).
    #[command(allow_negative_numbers = true)]
    Verify {
        p: BigInt,
        q: BigInt,
        /// JSON matrix document; standard input when absent.
        #[arg(long)]
        matrix_file: Option<std::path::PathBuf>,
        /// Accepted for symmetry; output is always JSON.
        #[arg(long)]
        json: bool,
    },
    /// Embedding report for (q/p).
    #[command(allow_negative_numbers = true)]
    Certify {
        p: BigInt,
        q: BigInt,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = numtheory_default_ceiling())]
        ceiling: u64,
    },
}

fn numtheory_default_ceiling() -> u64 {
    crate::numtheory::DEFAULT_CEILING
}

/// Integer as a JSON number when it fits in 53 bits, else as a string.
pub fn int_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if v.abs() <= JSON_SAFE_INT => Value::from(v),
        _ => Value::String(x.to_string()),
    }
}

/// Accepts JSON numbers (any size) and decimal strings.
pub fn int_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.to_string().parse().ok(),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(int_to_json).collect()))
            .collect(),
    )
}

fn target_json(t: &CyclicLinkingForm) -> Value {
    json!({ "p": int_to_json(t.p()), "q": int_to_json(t.q()) })
}

pub fn certificate_json(c: &PresentationCertificate) -> Value {
    json!({
        "target": target_json(&c.target),
        "construction": c.construction.name(),
        "rank": c.rank(),
        "gram": matrix_to_json(c.gram.gram()),
        "parity": c.gram.parity().to_string(),
        "definiteness": c.gram.definiteness().to_string(),
        "det": int_to_json(&c.gram.determinant()),
        "verified": c.verified,
        "trace": c.trace,
    })
}

pub fn report_json(r: &EmbeddingReport) -> Value {
    json!({
        "target": target_json(&r.target),
        "coboundary_b2": r.coboundary_b2,
        "coboundary_witness": certificate_json(&r.coboundary_witness),
        "cp2_cp2bar_bound": r.cp2_cp2bar_bound,
        "cp2_cp2bar_witness": certificate_json(&r.cp2_cp2bar_witness),
        "s2xs2_bound": r.s2xs2_bound,
        "s2xs2_witness": certificate_json(&r.s2xs2_witness),
        "cp2_bound": r.cp2_bound,
        "cp2_witnesses": r.cp2_witnesses.iter().map(certificate_json).collect::<Vec<_>>(),
        "five_cp2_flag": r.five_cp2_flag,
        "five_cp2_note": FIVE_CP2_LABEL,
        "all_verified": r.all_verified(),
        "assumptions": r.assumptions,
    })
}

#[derive(Debug)]
enum MatrixDocError {
    Json(String),
    Shape(String),
    Entry(String),
}

impl std::fmt::Display for MatrixDocError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MatrixDocError::Json(e) => write!(f, "malformed matrix document: {e}"),
            MatrixDocError::Shape(e) => write!(f, "bad matrix shape: {e}"),
            MatrixDocError::Entry(e) => write!(f, "bad matrix entry: {e}"),
        }
    }
}

/// Parses `{"rank": n, "gram": [[...], ...]}` into a square integer matrix.
fn parse_matrix_document(text: &str) -> Result<IntMatrix, MatrixDocError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| MatrixDocError::Json(e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| MatrixDocError::Json("expected a JSON object".into()))?;
    let rows = obj
        .get("gram")
        .and_then(Value::as_array)
        .ok_or_else(|| MatrixDocError::Json("missing array field \"gram\"".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| MatrixDocError::Shape(format!("row {i} is not an array")))?;
        if row.len() != rows.len() {
            return Err(MatrixDocError::Shape(format!(
                "row {i} has {} entries, expected {}",
                row.len(),
                rows.len()
            )));
        }
        let parsed: Option<Vec<BigInt>> = row.iter().map(int_from_json).collect();
        out.push(parsed.ok_or_else(|| MatrixDocError::Entry(format!("row {i} holds a non-integer")))?);
    }
    if let Some(rank) = obj.get("rank") {
        let rank = rank
            .as_u64()
            .ok_or_else(|| MatrixDocError::Json("\"rank\" must be a nonnegative integer".into()))?;
        if rank as usize != out.len() {
            return Err(MatrixDocError::Shape(format!(
                "rank {rank} does not match {} rows",
                out.len()
            )));
        }
    }
    if out.is_empty() {
        return Ok(IntMatrix::zeros(0, 0));
    }
    IntMatrix::from_rows(out).map_err(|e| MatrixDocError::Shape(e.to_string()))
}

fn write_json(out: &mut dyn Write, v: &Value) {
    let _ = writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(v).expect("values serialize")
    );
}

fn input_error(err: &mut dyn Write, msg: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    EXIT_INPUT
}

fn presentation_failure(err: &mut dyn Write, e: PresentationError) -> i32 {
    match e {
        PresentationError::Form(_) | PresentationError::InvalidInput(_) | PresentationError::RankCap { .. } => {
            input_error(err, e)
        }
        other => {
            let _ = writeln!(err, "{other}");
            EXIT_NEGATIVE
        }
    }
}

fn cmd_present(
    p: &BigInt,
    q: &BigInt,
    target: Target,
    max_rank: usize,
    limits: &SearchLimits,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let result = match target {
        Target::Rank1 => pres::rank1_presentation(p, q),
        Target::Rank2 => pres::rank2_presentation_with(p, q, limits).map(Some),
        Target::Rank2Constructive => pres::rank2_constructive_with(p, q, limits).map(Some),
        Target::Even => pres::even_presentation_with(p, q, limits).map(Some),
        Target::Definite => pres::definite_presentation_with(p, q, limits).map(Some),
        Target::Plumbing => pres::plumbing_presentation(p, q).map(Some),
        Target::Search => pres::search_definite_presentation_with(p, q, max_rank, limits),
    };
    match result {
        Ok(Some(c)) => {
            write_json(out, &certificate_json(&c));
            if c.verified {
                EXIT_OK
            } else {
                let _ = writeln!(err, "certificate failed verification");
                EXIT_NEGATIVE
            }
        }
        Ok(None) => {
            let qn = CyclicLinkingForm::new(p.clone(), q.clone())
                .map(|t| t.q().clone())
                .unwrap_or_else(|_| q.clone());
            let msg = match target {
                Target::Rank1 => format!(
                    "no rank-1 presentation: neither \u{b1}{qn} is a square mod {p}"
                ),
                _ => format!(
                    "no positive-definite presentation of rank <= {max_rank} for ({qn}/{p})"
                ),
            };
            let _ = writeln!(err, "{msg}");
            EXIT_NEGATIVE
        }
        Err(e) => presentation_failure(err, e),
    }
}

fn cmd_verify(
    p: &BigInt,
    q: &BigInt,
    matrix_file: Option<&std::path::Path>,
    input: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let target = match CyclicLinkingForm::new(p.clone(), q.clone()) {
        Ok(t) => t,
        Err(e) => return input_error(err, e),
    };
    let text = match matrix_file {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return input_error(err, format!("cannot read {}: {e}", path.display())),
        },
        None => {
            let mut s = String::new();
            if let Err(e) = input.read_to_string(&mut s) {
                return input_error(err, format!("cannot read standard input: {e}"));
            }
            s
        }
    };
    let matrix = match parse_matrix_document(&text) {
        Ok(m) => m,
        Err(e) => return input_error(err, e),
    };
    let gram = match GramPairing::new(matrix) {
        Ok(g) => g,
        Err(FormError::Matrix(MatrixError::NotSymmetric)) => {
            return input_error(err, "matrix is not symmetric")
        }
        Err(FormError::Singular) => return input_error(err, "matrix is singular"),
        Err(e) => return input_error(err, e),
    };
    let lf = gram.presented_linking_form();
    let presents = gram.presents(&target);
    let mut presented = Map::new();
    presented.insert(
        "invariant_factors".into(),
        Value::Array(lf.invariant_factors().iter().map(int_to_json).collect()),
    );
    presented.insert(
        "cyclic_q_canonical".into(),
        lf.as_cyclic()
            .map(|c| int_to_json(&c.canonical_q()))
            .unwrap_or(Value::Null),
    );
    write_json(
        out,
        &json!({
            "presents": presents,
            "presented": Value::Object(presented),
            "det": int_to_json(&gram.determinant()),
        }),
    );
    if presents {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn cmd_certify(
    p: &BigInt,
    q: &BigInt,
    as_json: bool,
    limits: &SearchLimits,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    match certify::embedding_report_with(p, q, limits) {
        Ok(r) => {
            if as_json {
                write_json(out, &report_json(&r));
            } else {
                let _ = write!(out, "{}", r.to_text());
            }
            EXIT_OK
        }
        Err(e) => presentation_failure(err, e),
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, input: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match cli.command {
        Command::Present {
            p,
            q,
            target,
            max_rank,
            json: _,
            ceiling,
        } => cmd_present(&p, &q, target, max_rank, &SearchLimits { ceiling }, out, err),
        Command::Verify {
            p,
            q,
            matrix_file,
            json: _,
        } => cmd_verify(&p, &q, matrix_file.as_deref(), input, out, err),
        Command::Certify {
            p,
            q,
            json,
            ceiling,
        } => cmd_certify(&p, &q, json, &SearchLimits { ceiling }, out, err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut input = stdin.as_bytes();
        let argv: Vec<&str> = std::iter::once("lensform").chain(args.iter().copied()).collect();
        let code = run(argv, &mut input, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn json_integers_switch_to_strings() {
        assert_eq!(int_to_json(&BigInt::from(JSON_SAFE_INT)), json!(JSON_SAFE_INT));
        assert_eq!(
            int_to_json(&(BigInt::from(JSON_SAFE_INT) + 1)),
            json!("9007199254740992")
        );
        assert_eq!(
            int_to_json(&BigInt::from(-JSON_SAFE_INT - 1)),
            json!("-9007199254740992")
        );
        let big: Value = serde_json::from_str("123456789012345678901234567890").unwrap();
        assert_eq!(
            int_from_json(&big),
            Some("123456789012345678901234567890".parse().unwrap())
        );
        assert_eq!(int_from_json(&json!("-7")), Some(BigInt::from(-7)));
        assert_eq!(int_from_json(&json!(1.5)), None);
    }

    #[test]
    fn matrix_document_parsing() {
        let m = parse_matrix_document(r#"{"rank": 2, "gram": [[-15, 10], [10, "-7"]]}"#).unwrap();
        assert_eq!(m, IntMatrix::from_i64(&[[-15, 10], [10, -7]]));
        assert!(parse_matrix_document(r#"{"rank": 3, "gram": [[1]]}"#).is_err());
        assert!(parse_matrix_document(r#"{"gram": [[1, 2]]}"#).is_err());
        assert!(parse_matrix_document("not json").is_err());
        assert_eq!(
            parse_matrix_document(r#"{"rank": 0, "gram": []}"#).unwrap().rows(),
            0
        );
    }

    #[test]
    fn present_rank1_negative_result() {
        let (code, _, err) = call(&["present", "5", "2", "--target", "rank1"], "");
        assert_eq!(code, 1);
        assert!(err.contains("no rank-1 presentation: neither \u{b1}2 is a square mod 5"));
    }

    #[test]
    fn negative_q_is_accepted() {
        let (code, out, _) = call(&["present", "5", "-3", "--target", "rank2"], "");
        assert_eq!(code, 0);
        assert!(out.contains("\"verified\": true"));
    }

    #[test]
    fn bad_input_exits_two() {
        assert_eq!(call(&["present", "6", "4"], "").0, 2);
        assert_eq!(call(&["present", "5", "2", "--target", "nope"], "").0, 2);
        assert_eq!(call(&["present", "5", "2", "--target", "search", "--max-rank", "5"], "").0, 2);
        assert_eq!(call(&["verify", "5", "2"], "{\"gram\": [[1, 2], [0, 1]]}").0, 2);
    }
}
