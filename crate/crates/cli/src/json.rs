//! Canonical JSON output: sorted keys and floats rounded to 12 significant
//! digits, so identical results print identical bytes.

use serde_json::{Number, Value};

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn canonical(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| Number::from_f64(round12(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(items) => Value::Array(items.into_iter().map(canonical).collect()),
        // serde_json keeps object keys sorted.
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, canonical(v))).collect())
        }
        other => other,
    }
}

/// Pretty-printed canonical form with a trailing newline.
pub fn render(value: Value) -> String {
    let mut out = serde_json::to_string_pretty(&canonical(value)).expect("values always serialize");
    out.push('\n');
    out
}

/// Single-line canonical form with a trailing newline.
pub fn render_line(value: Value) -> String {
    let mut out = serde_json::to_string(&canonical(value)).expect("values always serialize");
    out.push('\n');
    out
}
