//! JSON/CSV emission with a fixed numeric precision.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

/// Version of every JSON document, NDJSON record and CSV table layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Rounds to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Formats like C's `%.12g`.
pub fn fmt_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (mantissa, exponent) = s.split_once('e').expect("scientific format");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exponent}")
    }
}

fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            serde_json::Number::from_f64(sig12(n.as_f64().expect("f64")))
                .map(Value::Number)
                .unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_floats).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_floats(v))).collect())
        }
        other => other,
    }
}

/// Serializes `body` with `schema_version` first and floats rounded.
pub fn document<T: Serialize>(body: &T) -> Value {
    let mut out = Map::new();
    out.insert("schema_version".into(), SCHEMA_VERSION.into());
    match serde_json::to_value(body).expect("serializable") {
        Value::Object(map) => out.extend(map),
        other => {
            out.insert("value".into(), other);
        }
    }
    round_floats(Value::Object(out))
}

pub fn pretty(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

pub fn line(doc: &Value) -> String {
    let mut s = serde_json::to_string(doc).expect("serializable");
    s.push('\n');
    s
}

/// Writes to `path`, or stdout when absent.
pub fn emit(path: Option<&Path>, contents: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, contents),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(contents.as_bytes())?;
            out.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_g12(0.5), "0.5");
        assert_eq!(fmt_g12(18.872187554086717), "18.8721875541");
        assert_eq!(fmt_g12(1000.0), "1000");
        assert_eq!(fmt_g12(1.5e-7), "1.5e-7");
        assert_eq!(fmt_g12(-0.25), "-0.25");
        assert_eq!(sig12(0.1 + 0.2), 0.3);
    }

    #[test]
    fn documents_carry_the_schema_version() {
        let doc = document(&serde_json::json!({"x": 1.0 / 3.0, "k": 3}));
        assert_eq!(doc["schema_version"], 1);
        assert_eq!(doc["x"].as_f64().unwrap(), 0.333333333333);
        assert_eq!(doc["k"], 3);
    }
}
