//! The bit-exact JSON contracts and the tangle text grammar.
//!
//! Input link file:
//! `{ "n": int, "N": int, "link": { "strands": int, "braid": [signed ints],
//!    "framings": [ints] }, "colors": "all" | [[ints per weight]] }`
//!
//! Invariant output:
//! `{ "fieldLevel": 4N, "value": [[num, den], ...phi(4N) entries],
//!    "approx": {"re", "im"}, "sigma": int, "components": int }`
//! plus a `generatedAt` timestamp excluded from determinism comparisons.
//! Numerators and denominators are arbitrary-precision JSON numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use ospq_core::invariant::FramedLink;
use ospq_core::poly::euler_phi;
use ospq_core::rootdata::Weight;
use ospq_core::tangles::{Atom, AtomKind, TangleDiagram};
use ospq_core::Scalar;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};
use std::str::FromStr;

#[derive(Deserialize)]
pub struct LinkInput {
    pub n: Option<usize>,
    #[serde(rename = "N")]
    pub big_n: Option<u32>,
    pub link: LinkBody,
    #[serde(default)]
    pub colors: ColorsSpec,
}

#[derive(Deserialize)]
pub struct LinkBody {
    pub strands: usize,
    pub braid: Vec<i32>,
    pub framings: Vec<i64>,
}

#[derive(Deserialize, Default, Clone, PartialEq)]
#[serde(untagged)]
pub enum ColorsSpec {
    #[default]
    Unset,
    All(String),
    Explicit(Vec<Vec<i64>>),
}

impl LinkBody {
    pub fn to_link(&self) -> FramedLink {
        FramedLink {
            strands: self.strands,
            braid: self.braid.clone(),
            framings: self.framings.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct InvariantRecord {
    #[serde(rename = "fieldLevel")]
    pub field_level: u32,
    pub value: Value,
    pub approx: Approx,
    pub sigma: usize,
    pub components: usize,
    #[serde(rename = "generatedAt")]
    pub generated_at: String,
}

#[derive(Serialize)]
pub struct Approx {
    pub re: f64,
    pub im: f64,
}

/// Exact scalar -> `[[num, den], ...]` with arbitrary-precision JSON numbers.
pub fn scalar_to_json(s: &Scalar, level: u32) -> Value {
    let coeffs = s.to_rational_coeffs(level);
    Value::Array(
        coeffs
            .iter()
            .map(|c| {
                Value::Array(vec![
                    Value::Number(Number::from_string_unchecked(c.numer().to_string())),
                    Value::Number(Number::from_string_unchecked(c.denom().to_string())),
                ])
            })
            .collect(),
    )
}

/// Parse the `[[num, den], ...]` array back to an exact scalar.
pub fn scalar_from_json(v: &Value, level: u32) -> Option<Scalar> {
    let arr = v.as_array()?;
    if arr.len() != euler_phi(level) {
        return None;
    }
    let mut coeffs = Vec::with_capacity(arr.len());
    for entry in arr {
        let pair = entry.as_array()?;
        if pair.len() != 2 {
            return None;
        }
        let num = BigInt::from_str(&json_number_string(&pair[0])?).ok()?;
        let den = BigInt::from_str(&json_number_string(&pair[1])?).ok()?;
        coeffs.push(BigRational::new(num, den));
    }
    Some(Scalar::from_rational_coeffs(level, coeffs))
}

fn json_number_string(v: &Value) -> Option<String> {
    match v {
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

pub fn weight_from_ints(n: usize, ints: &[i64]) -> Option<Weight> {
    if ints.len() != n {
        return None;
    }
    Some(Weight(ints.to_vec()))
}

// ---------------------------------------------------------------------------
// Tangle text grammar
// ---------------------------------------------------------------------------

/// Grammar (one row of atoms per line, top row first):
///
/// ```text
/// components: 2
/// framings: 0 1            # optional; blackboard framing when absent
/// colors: 1 ; 1            # optional; weight per component, default eps_1
/// I+(0) Cup+(1)
/// X+(0,1) I-(1)
/// X+(1,0) I-(1)
/// I+(0) Cap-(1)
/// ```
///
/// Tokens: `I+ I- X+ X- Cup+ Cup- Cap+ Cap-`, each followed by its component
/// indices in parentheses (two for crossings).
pub fn parse_diagram_text(
    n: usize,
    text: &str,
) -> Result<(TangleDiagram, Vec<Weight>), ParseError> {
    let mut components: Option<usize> = None;
    let mut framings: Option<Vec<i64>> = None;
    let mut colors: Option<Vec<Weight>> = None;
    let mut rows = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("components:") {
            components = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| ParseError::at(lineno, "invalid component count"))?,
            );
            continue;
        }
        if let Some(rest) = line.strip_prefix("framings:") {
            let parsed: Result<Vec<i64>, _> =
                rest.split_whitespace().map(|t| t.parse::<i64>()).collect();
            framings = Some(parsed.map_err(|_| ParseError::at(lineno, "invalid framing integer"))?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("colors:") {
            let mut ws = Vec::new();
            for chunk in rest.split(';') {
                let parts: Result<Vec<i64>, _> =
                    chunk.split_whitespace().map(|t| t.parse::<i64>()).collect();
                let parts = parts.map_err(|_| ParseError::at(lineno, "invalid colour entry"))?;
                let w = weight_from_ints(n, &parts)
                    .ok_or_else(|| ParseError::at(lineno, "colour has the wrong rank"))?;
                ws.push(w);
            }
            colors = Some(ws);
            continue;
        }
        // a row of atoms
        let mut row = Vec::new();
        for (col, token) in line.split_whitespace().enumerate() {
            row.push(parse_atom(token).ok_or_else(|| ParseError {
                line: lineno + 1,
                column: col + 1,
                message: format!("unrecognised atom token `{token}`"),
            })?);
        }
        rows.push(row);
    }
    let components = components.ok_or_else(|| ParseError::at(0, "missing `components:` header"))?;
    let colors = colors.unwrap_or_else(|| vec![Weight::eps(n, 0); components]);
    Ok((
        TangleDiagram {
            components,
            rows,
            framings,
        },
        colors,
    ))
}

fn parse_atom(token: &str) -> Option<Atom> {
    let open = token.find('(')?;
    if !token.ends_with(')') {
        return None;
    }
    let kind = match &token[..open] {
        "I+" => AtomKind::IdDown,
        "I-" => AtomKind::IdUp,
        "X+" => AtomKind::CrossPos,
        "X-" => AtomKind::CrossNeg,
        "Cap+" => AtomKind::CapPlus,
        "Cap-" => AtomKind::CapMinus,
        "Cup+" => AtomKind::CupPlus,
        "Cup-" => AtomKind::CupMinus,
        _ => return None,
    };
    let args: Result<Vec<usize>, _> = token[open + 1..token.len() - 1]
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect();
    let comps = args.ok()?;
    let want = match kind {
        AtomKind::CrossPos | AtomKind::CrossNeg => 2,
        _ => 1,
    };
    if comps.len() != want {
        return None;
    }
    Some(Atom { kind, comps })
}

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: &str) -> Self {
        ParseError {
            line: line + 1,
            column: 1,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}
