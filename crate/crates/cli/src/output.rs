use std::fs;
use std::io::Write;

use photodist_core::photon_dist::format_float;
use serde_json::Value;

use crate::error::CliError;
use crate::Common;

pub fn emit(common: &Common, text: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// `key,value` rows under a `key,value` header.
pub fn key_value_csv(rows: &[(&str, String)]) -> String {
    let mut out = String::from("key,value\n");
    for (k, v) in rows {
        out.push_str(k);
        out.push(',');
        out.push_str(v);
        out.push('\n');
    }
    out
}

pub fn f(v: f64) -> String {
    format_float(v)
}

/// JSON number, or a string for non-finite values.
pub fn json_f(v: f64) -> Value {
    if v.is_finite() {
        Value::from(v)
    } else {
        Value::from(format_float(v))
    }
}
