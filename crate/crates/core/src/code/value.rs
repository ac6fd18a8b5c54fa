use std::fmt;

use serde::{Deserialize, Serialize};

/// Absolute tolerance used when comparing floating-point results.
pub const FLOAT_TOLERANCE: f64 = 1e-6;

/// A test input or a returned value, serialized as plain JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    List(Vec<Value>),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Null => "null",
            Value::Bool(_) => "boolean",
            Value::Int(_) => "integer",
            Value::Float(_) => "float",
            Value::Str(_) => "string",
            Value::List(_) => "list",
        }
    }
}

/// Integers compare exactly; a float on either side switches to an absolute
/// tolerance of [`FLOAT_TOLERANCE`].
impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Null, Value::Null) => true,
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Int(a), Value::Int(b)) => a == b,
            (Value::Float(a), Value::Float(b)) => floats_close(*a, *b),
            (Value::Int(a), Value::Float(b)) | (Value::Float(b), Value::Int(a)) => floats_close(*a as f64, *b),
            (Value::Str(a), Value::Str(b)) => a == b,
            (Value::List(a), Value::List(b)) => a == b,
            _ => false,
        }
    }
}

fn floats_close(a: f64, b: f64) -> bool {
    if a.is_nan() || b.is_nan() {
        return false;
    }
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= FLOAT_TOLERANCE
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match serde_json::to_string(self) {
            Ok(s) => f.write_str(&s),
            Err(_) => f.write_str("<unprintable>"),
        }
    }
}

/// One input/expected-output pair of a corpus program.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestCase {
    pub inputs: Vec<Value>,
    pub expected: Value,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_tolerance_applies_only_with_floats() {
        assert_eq!(Value::Float(1.0), Value::Float(1.0 + 1e-7));
        assert_ne!(Value::Float(1.0), Value::Float(1.0 + 1e-5));
        assert_eq!(Value::Int(2), Value::Float(2.0));
        assert_ne!(Value::Int(2), Value::Int(3));
        assert_ne!(Value::Bool(true), Value::Int(1));
        assert_ne!(Value::Float(f64::NAN), Value::Float(f64::NAN));
    }

    #[test]
    fn json_shapes() {
        let v: Value = serde_json::from_str("[1, 2.5, true, null, \"x\", [3]]").unwrap();
        match &v {
            Value::List(items) => {
                assert!(matches!(items[0], Value::Int(1)));
                assert!(matches!(items[1], Value::Float(_)));
                assert!(matches!(items[2], Value::Bool(true)));
                assert!(matches!(items[3], Value::Null));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(v.to_string(), "[1,2.5,true,null,\"x\",[3]]");
    }
}
