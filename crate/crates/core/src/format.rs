//! Fixed-precision number rendering for reports.

use serde::Serialize;
use serde_json::Value;

/// Rounds to `digits` significant decimal digits. Negative zero becomes zero.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let rendered = format!("{:.*e}", digits.saturating_sub(1), x);
    let y: f64 = rendered.parse().expect("scientific rendering parses");
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

/// Shortest rendering of `x` rounded to `digits` significant digits;
/// scientific notation below 1e-4 and from 1e15 up.
pub fn format_significant(x: f64, digits: usize) -> String {
    let y = round_significant(x, digits);
    let a = y.abs();
    if !y.is_finite() {
        format!("{y}")
    } else if a != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{y:e}")
    } else if y == y.trunc() {
        format!("{y:.1}")
    } else {
        format!("{y}")
    }
}

/// Serializes to pretty JSON with every float rounded to 15 significant digits.
pub fn to_json_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_floats(&mut v, 15);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

fn round_floats(v: &mut Value, digits: usize) {
    match v {
        Value::Number(num) if num.is_f64() => {
            let x = num.as_f64().expect("is_f64");
            if let Some(r) = serde_json::Number::from_f64(round_significant(x, digits)) {
                *num = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|item| round_floats(item, digits)),
        Value::Object(map) => map.values_mut().for_each(|item| round_floats(item, digits)),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(format_significant(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_significant(2.0 / 3.0, 12), "0.666666666667");
        assert_eq!(format_significant(1.0, 12), "1.0");
        assert_eq!(format_significant(-0.0, 12), "0.0");
        assert_eq!(round_significant(123456.789, 3), 123000.0);
        assert_eq!(format_significant(-1.0859e-21, 3), "-1.09e-21");
        assert_eq!(format_significant(2.5e17, 12), "2.5e17");
        assert_eq!(format_significant(0.00012345, 3), "0.000123");
    }

    #[test]
    fn json_rounding() {
        let s = to_json_string(&vec![0.1 + 0.2, 1.0 / 3.0]).unwrap();
        assert!(s.contains("0.3\n") || s.contains("0.3,"), "{s}");
        assert!(s.contains("0.333333333333333"), "{s}");
        assert!(!s.contains("0.3333333333333333"), "{s}");
    }
}
