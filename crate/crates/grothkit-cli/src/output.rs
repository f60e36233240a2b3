//! JSON and LaTeX assembly shared by the subcommands.
//!
//! All machine output is a single JSON document. Objects rely on serde_json's
//! sorted key order and arrays follow the canonical term order of the
//! library, so a fixed invocation always produces the same bytes.

use grothkit::charring::latex::{
    exponential_var_strings, join_summands, monomial_var_strings, summand,
};
use grothkit::typea::variable_powers;
use grothkit::{BetaScalar, CharElement};
use num::{BigInt, BigRational, One, Signed, Zero};
use serde_json::{json, Value};
use std::fmt;
use std::str::FromStr;

/// How beta appears in output: kept symbolic, or evaluated at an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaMode {
    Symbolic,
    Value(i64),
}

impl FromStr for BetaMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "symbolic" {
            return Ok(BetaMode::Symbolic);
        }
        if let Some(q) = s
            .strip_prefix("value(")
            .and_then(|rest| rest.strip_suffix(')'))
            .and_then(|q| q.parse::<i64>().ok())
        {
            return Ok(BetaMode::Value(q));
        }
        Err(format!(
            "--beta must be \"symbolic\" or \"value(q)\" with an integer q, got {s:?}"
        ))
    }
}

impl fmt::Display for BetaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaMode::Symbolic => f.write_str("symbolic"),
            BetaMode::Value(q) => write!(f, "value({q})"),
        }
    }
}

/// Variable naming in the LaTeX field: per-variable powers for type A,
/// exponential weight notation for every other type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarStyle {
    TypeA,
    Weights,
}

fn var_strings(f: &CharElement, style: VarStyle) -> Vec<String> {
    match style {
        VarStyle::TypeA => monomial_var_strings(f, |_, e| variable_powers(e)),
        VarStyle::Weights => exponential_var_strings(f),
    }
}

/// Evaluate a scalar at beta = q exactly. The only failure is a pole at zero.
pub fn specialize(c: &BetaScalar, q: i64) -> Result<BigRational, String> {
    c.eval(&BigRational::from_integer(BigInt::from(q)))
        .map_err(|_| "the value has a pole at beta = 0".to_string())
}

fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational_magnitude_latex(mag: &BigRational) -> String {
    if mag.is_integer() {
        mag.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
    }
}

/// Counterpart of the symbolic summand renderer for specialized
/// coefficients: fold away a magnitude of one when variables are present.
fn rational_summand(r: &BigRational, vars: &str) -> (bool, String) {
    let negative = r.is_negative();
    let mag = r.abs();
    if vars.is_empty() {
        (negative, rational_magnitude_latex(&mag))
    } else if mag.is_one() {
        (negative, vars.to_string())
    } else {
        (negative, format!("{} {vars}", rational_magnitude_latex(&mag)))
    }
}

/// A scalar as JSON: the symbolic form is the sorted `[exponent,
/// coefficient]` pair list.
pub fn scalar_json(c: &BetaScalar) -> Value {
    Value::Array(c.terms().map(|(e, coef)| json!([e, coef])).collect())
}

fn term_json(f: &CharElement, exp: &[i32], coefficient: Value) -> Value {
    let rank = f.rank();
    let mut exponents = serde_json::Map::new();
    for (pos, b) in f.blocks().iter().enumerate() {
        exponents.insert(b.to_string(), json!(exp[pos * rank..(pos + 1) * rank]));
    }
    json!({ "coefficient": coefficient, "exponents": exponents })
}

/// The canonical JSON form of an element together with its LaTeX rendering.
/// Under `value(q)` the coefficients are evaluated and terms that vanish at
/// the chosen beta are dropped.
pub fn element_output(
    f: &CharElement,
    style: VarStyle,
    mode: BetaMode,
) -> Result<(Value, String), String> {
    let vars = var_strings(f, style);
    let shell = |terms: Vec<Value>| {
        let blocks: Vec<String> = f.blocks().iter().map(|b| b.to_string()).collect();
        json!({ "rank": f.rank(), "blocks": blocks, "terms": terms })
    };
    match mode {
        BetaMode::Symbolic => {
            let terms = f
                .terms()
                .map(|(exp, c)| term_json(f, exp, scalar_json(c)))
                .collect();
            let parts = f
                .terms()
                .zip(&vars)
                .map(|((_, c), v)| summand(c, v))
                .collect();
            Ok((shell(terms), join_summands(parts)))
        }
        BetaMode::Value(q) => {
            let mut terms = Vec::new();
            let mut parts = Vec::new();
            for ((exp, c), v) in f.terms().zip(&vars) {
                let r = specialize(c, q)?;
                if r.is_zero() {
                    continue;
                }
                terms.push(term_json(f, exp, Value::String(rational_string(&r))));
                parts.push(rational_summand(&r, v));
            }
            Ok((shell(terms), join_summands(parts)))
        }
    }
}
