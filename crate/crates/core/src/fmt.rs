//! Fixed-precision float output shared by the CSV and JSON writers.

use serde_json::Value;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to 12 significant digits. Non-finite values pass through.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    let s = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    s.parse().expect("formatted float parses")
}

/// Shortest text of the rounded value: `2`, `0.195928352056`, `inf`.
pub fn sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig(x);
    if r == r.trunc() && r.abs() < 1e15 {
        format!("{}", r as i64)
    } else {
        format!("{r}")
    }
}

/// Rounds every float in a JSON tree in place.
pub fn round_json(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            if let Some(x) = num.as_f64() {
                if let Some(r) = serde_json::Number::from_f64(round_sig(x)) {
                    *num = r;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(sig(2.0), "2");
        assert_eq!(sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig(2.0 - 2.0 * (std::f64::consts::PI / 10.0).cos()), "0.0978869674097");
        assert_eq!(sig(0.99999999999999), "1");
        assert_eq!(sig(f64::INFINITY), "inf");
        assert_eq!(sig(-1234.5678901234567), "-1234.56789012");
    }

    #[test]
    fn json_floats_only() {
        let mut v = serde_json::json!({"a": 0.1234567890123456, "b": [3, 1e-20], "c": "x"});
        round_json(&mut v);
        assert_eq!(v.to_string(), r#"{"a":0.123456789012,"b":[3,1e-20],"c":"x"}"#);
    }
}
