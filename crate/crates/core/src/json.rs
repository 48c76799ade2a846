//! JSON output conventions shared by every report type.
//!
//! Floats are written in scientific notation with 17 significant digits,
//! which round-trips every `f64` exactly, so parsing and re-emitting a report
//! reproduces it byte for byte. Non-finite values become `null`. Key order is
//! the struct field order.

use serde::ser::{Error as _, SerializeSeq};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_owned()
    }
}

struct F17(f64);

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawValue::from_string(format_f64(self.0))
            .map_err(S::Error::custom)?
            .serialize(serializer)
    }
}

pub fn f64<S: Serializer>(x: &f64, serializer: S) -> Result<S::Ok, S::Error> {
    F17(*x).serialize(serializer)
}

pub fn vec_f64<S: Serializer>(xs: &[f64], serializer: S) -> Result<S::Ok, S::Error> {
    let mut seq = serializer.serialize_seq(Some(xs.len()))?;
    for &x in xs {
        seq.serialize_element(&F17(x))?;
    }
    seq.end()
}

pub fn opt_vec_f64<S: Serializer>(xs: &Option<Vec<f64>>, serializer: S) -> Result<S::Ok, S::Error> {
    match xs {
        Some(v) => vec_f64(v, serializer),
        None => serializer.serialize_none(),
    }
}

/// Vertex lists are written 1-indexed; use with `#[serde(with = ...)]`.
pub mod one_based {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(vs: &[usize], serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(vs.iter().map(|v| v + 1))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<usize>, D::Error> {
        let raw = Vec::<usize>::deserialize(deserializer)?;
        raw.into_iter()
            .map(|v| v.checked_sub(1).ok_or_else(|| D::Error::custom("vertex labels start at 1")))
            .collect()
    }
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Sample {
        #[serde(serialize_with = "f64")]
        a: f64,
        #[serde(serialize_with = "vec_f64")]
        b: Vec<f64>,
        #[serde(serialize_with = "opt_vec_f64")]
        c: Option<Vec<f64>>,
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(format_f64(-2.0), "-2.0000000000000000e0");
        assert_eq!(format_f64(f64::NAN), "null");
    }

    #[test]
    fn reserialization_is_stable() {
        let s = Sample {
            a: std::f64::consts::PI,
            b: vec![1e-300, -0.0, 123456.789],
            c: None,
        };
        let first = to_string(&s);
        let parsed: serde_json::Value = serde_json::from_str(&first).unwrap();
        let a = parsed["a"].as_f64().unwrap();
        let b: Vec<f64> = parsed["b"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
        assert!(parsed["c"].is_null());
        let second = to_string(&Sample { a, b, c: None });
        assert_eq!(first, second);
    }
}
