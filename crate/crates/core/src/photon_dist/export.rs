use std::fmt::Write as _;

use serde_json::{json, Value};

use super::PhotonDistribution;

/// Fixed 17-significant-digit scientific notation; `-0` prints as `0`.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        return format!("{:.16e}", 0.0);
    }
    if v.is_nan() {
        return "NaN".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{:.16e}", v)
}

/// `#`-prefixed metadata lines, then `n,re,im` rows, LF line endings.
pub fn to_csv(dist: &PhotonDistribution) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# classification={}", dist.classification());
    let _ = writeln!(out, "# truncation={}", dist.truncation());
    let _ = writeln!(out, "# tail_bound={}", format_float(dist.tail_bound()));
    let total = dist.total();
    let _ = writeln!(out, "# total={},{}", format_float(total.re), format_float(total.im));
    out.push_str("n,re,im\n");
    for (n, v) in dist.values().iter().enumerate() {
        let _ = writeln!(out, "{n},{},{}", format_float(v.re), format_float(v.im));
    }
    out
}

pub fn to_json(dist: &PhotonDistribution) -> Value {
    let values: Vec<Value> = dist
        .values()
        .iter()
        .map(|v| json!({"re": v.re, "im": v.im}))
        .collect();
    let tail = if dist.tail_bound().is_finite() {
        json!(dist.tail_bound())
    } else {
        json!("inf")
    };
    json!({
        "values": values,
        "truncation": dist.truncation(),
        "tail_bound": tail,
        "classification": dist.classification().to_string(),
    })
}
