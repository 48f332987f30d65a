//! Number formatting shared by every command: 12 significant digits.

use geodiscord::matcore::round_sig;
use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};

pub const DIGITS: usize = 12;

pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    format!("{:?}", round_sig(v, DIGITS))
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(f) = n.as_f64().filter(|_| !n.is_i64() && !n.is_u64()) {
                if let Some(r) = serde_json::Number::from_f64(round_sig(f, DIGITS)) {
                    *n = r;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with every float rounded.
pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut v = serde_json::to_value(value).map_err(|e| CliError::usage(e.to_string()))?;
    round_value(&mut v);
    Ok(serde_json::to_string_pretty(&v).expect("a Value always serialises"))
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
