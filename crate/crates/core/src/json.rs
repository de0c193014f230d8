//! Deterministic JSON rendering of exact integers and matrices.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::linalg::IntMatrix;

/// A JSON number when the value fits in `i64`, otherwise a decimal string.
pub fn int_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(x.to_string()),
    }
}

/// `{"rows": r, "cols": c, "data": [...]}` with row-major entries.
pub fn matrix_value(m: &IntMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "data": m.data().iter().map(int_value).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_values_become_strings() {
        let big = BigInt::from(i64::MAX) * 4;
        assert_eq!(int_value(&big), Value::String(big.to_string()));
        assert_eq!(int_value(&BigInt::from(-3)), Value::from(-3));
    }
}
