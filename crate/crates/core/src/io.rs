//! Output helpers shared by the library and the command line.

use num_bigint::BigInt;
use serde_json::Value;

use crate::lorentz::Vec3Z;

/// JSON number with the exact digits of a big integer.
pub fn json_bigint(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).unwrap_or(Value::Null)
}

pub fn json_vec3(v: &Vec3Z) -> Value {
    Value::Array(v.0.iter().map(json_bigint).collect())
}

/// JSON number for a float, `null` when not finite.
pub fn json_f64(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

/// Float with 17 significant digits, enough to round-trip.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 15.168_390_4] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
    }

    #[test]
    fn big_integers_survive() {
        let n: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(json_bigint(&n).to_string(), "123456789012345678901234567890");
    }
}
