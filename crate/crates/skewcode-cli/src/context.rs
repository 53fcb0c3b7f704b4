//! Building the skew ring and parsing user polynomials.

use std::fmt;
use std::io::Write;

use serde_json::Value;
use skewcode::text::{format_automorphism, format_ring_spec, parse_automorphism, parse_poly, parse_ring_elem, parse_ring_spec};
use skewcode::{RingElem, SkewPoly, SkewRing};

use crate::{Format, RingArgs};

/// A usage or specification error; exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = Result<T, CliError>;

pub fn fail<T>(msg: impl fmt::Display) -> CliResult<T> {
    Err(CliError(msg.to_string()))
}

pub trait Context<T> {
    fn ctx(self, what: &str) -> CliResult<T>;
}

impl<T, E: fmt::Display> Context<T> for Result<T, E> {
    fn ctx(self, what: &str) -> CliResult<T> {
        self.map_err(|e| CliError(format!("{what}: {e}")))
    }
}

/// `R_k[x; Θ]` from the common flags.
pub fn skew_ring(a: &RingArgs) -> CliResult<SkewRing> {
    let mut spec = format!("{}^{}", a.p, a.m);
    if let Some(coeffs) = &a.field_modulus {
        let list: Vec<String> = coeffs.iter().map(u32::to_string).collect();
        spec.push(':');
        spec.push_str(&list.join(","));
    }
    spec.push_str(&format!("|{}", a.k));
    let ring = parse_ring_spec(&spec).ctx("ring")?;
    if a.eta.len() + 1 > a.k.max(1) {
        return fail(format!("{} eta values given but k - 1 = {}", a.eta.len(), a.k.saturating_sub(1)));
    }
    let mut auto = format!("theta={}", a.theta);
    for (i, e) in a.eta.iter().enumerate() {
        auto.push_str(&format!(";eta{}={}", i + 1, e));
    }
    let auto = parse_automorphism(&ring, &auto).ctx("automorphism")?;
    Ok(SkewRing::new(ring, auto))
}

pub fn poly(s: &SkewRing, text: &str, what: &str) -> CliResult<SkewPoly> {
    parse_poly(s, text).ctx(&format!("{what} {text:?}"))
}

pub fn elem(s: &SkewRing, text: &str, what: &str) -> CliResult<RingElem> {
    parse_ring_elem(s.ring(), text).ctx(&format!("{what} {text:?}"))
}

/// Ring and automorphism descriptors shared by every JSON report.
pub fn header(s: &SkewRing) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("ring".into(), Value::String(format_ring_spec(s.ring())));
    m.insert("automorphism".into(), Value::String(format_automorphism(s.ring(), s.auto())));
    m
}

/// Prints JSON, or `key: value` lines with nested keys joined by dots.
pub fn emit(value: &Value, format: Format) {
    let mut out = std::io::stdout().lock();
    match format {
        Format::Json => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(value).expect("JSON values serialize"));
        }
        Format::Table => {
            let mut lines = Vec::new();
            flatten("", value, &mut lines);
            let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in lines {
                if writeln!(out, "{k:<width$}  {v}").is_err() {
                    return;
                }
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Array(_) | Value::Object(_) => None,
        other => Some(other.to_string()),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) && items.iter().all(|x| !matches!(x, Value::String(_))) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            out.push((prefix.to_string(), format!("[{}]", parts.join(", "))));
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push((prefix.to_string(), "[]".into()));
            }
            for (i, x) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other).unwrap_or_default())),
    }
}
