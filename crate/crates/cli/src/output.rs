//! Output conventions shared by every subcommand.
//!
//! JSON objects are serialized with sorted keys (the default `serde_json`
//! map) and pretty-printed, so fixed inputs give byte-identical output.
//! Floats are rendered as strings with 12 significant digits, exact
//! integers and rationals as decimal strings, and complex numbers as a
//! pair of `_re`/`_im` fields.

use folner_lab::report::{rational_str, rational_to_f64, sig12};
use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{Map, Value};

/// A float, printed to 12 significant digits.
pub fn float(x: f64) -> Value {
    Value::String(sig12(x))
}

/// An arbitrary-precision integer as a decimal string.
pub fn big(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

/// An exact rational as `p/q` (or `p` when the denominator is one).
pub fn rational(r: &BigRational) -> Value {
    Value::String(rational_str(r))
}

/// Both views of a rational: the exact string under `key` and its float
/// rendering under `key_approx`.
pub fn rational_pair(map: &mut Map<String, Value>, key: &str, r: &BigRational) {
    map.insert(key.to_string(), rational(r));
    map.insert(format!("{key}_approx"), float(rational_to_f64(r)));
}

/// A complex value as `prefix_re`/`prefix_im` fields.
pub fn complex(map: &mut Map<String, Value>, prefix: &str, z: Complex64) {
    map.insert(format!("{prefix}_re"), float(z.re));
    map.insert(format!("{prefix}_im"), float(z.im));
}

/// Pretty-print an object with sorted keys and a trailing newline.
pub fn render(map: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("json render");
    s.push('\n');
    s
}

/// Pretty-print an arbitrary value with a trailing newline.
pub fn render_value(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json render");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn keys_come_out_sorted() {
        let mut map = Map::new();
        map.insert("zeta".into(), Value::from(1));
        map.insert("alpha".into(), Value::from(2));
        let s = render(map);
        assert!(s.find("alpha").unwrap() < s.find("zeta").unwrap());
        assert!(s.ends_with('\n'));
    }

    #[test]
    fn numeric_renderings_are_fixed() {
        assert_eq!(float(0.0), Value::String("0.00000000000e0".into()));
        let r = BigRational::new(BigInt::from(4), BigInt::from(9));
        assert_eq!(rational(&r), Value::String("4/9".into()));
        let mut map = Map::new();
        rational_pair(&mut map, "ratio", &r);
        assert_eq!(map["ratio_approx"], Value::String("4.44444444444e-1".into()));
    }
}
