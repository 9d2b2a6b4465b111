//! Matrix literals: row-major arrays whose entries are either an integer code
//! or the element's coefficient vector over `F_p`, lowest power first.

use std::sync::Arc;

use serde_json::Value;

use super::{LinalgError, Mat};
use crate::gf::Gf;

/// One entry in literal form.
pub fn entry_json(field: &Gf, code: u64) -> Value {
    if field.prime_degree() == 1 {
        return Value::from(code);
    }
    let p = field.characteristic();
    let mut c = code;
    let digits: Vec<Value> = (0..field.prime_degree())
        .map(|_| {
            let d = c % p;
            c /= p;
            Value::from(d)
        })
        .collect();
    Value::Array(digits)
}

fn entry_from_json(field: &Gf, v: &Value) -> Result<u64, LinalgError> {
    let code = match v {
        Value::Number(n) => n.as_u64().ok_or_else(|| LinalgError::Literal(format!("not a field code: {n}")))?,
        Value::Array(digits) => {
            if digits.len() != field.prime_degree() {
                return Err(LinalgError::Literal(format!(
                    "coefficient vector of length {} for a field of degree {}",
                    digits.len(),
                    field.prime_degree()
                )));
            }
            let p = field.characteristic();
            let mut code = 0u64;
            for d in digits.iter().rev() {
                let d = d
                    .as_u64()
                    .filter(|&d| d < p)
                    .ok_or_else(|| LinalgError::Literal(format!("bad coefficient {d}")))?;
                code = code * p + d;
            }
            code
        }
        other => return Err(LinalgError::Literal(format!("unexpected entry {other}"))),
    };
    if !field.contains(code) {
        return Err(LinalgError::NotInField { code, order: field.order() });
    }
    Ok(code)
}

impl Mat {
    /// Integers over a prime field, coefficient vectors otherwise.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array(self.row(i).iter().map(|&c| entry_json(&self.field, c)).collect()))
                .collect(),
        )
    }

    /// Parses a literal; `cols` fixes the width of an empty row list.
    pub fn from_json(field: &Arc<Gf>, v: &Value, cols: Option<usize>) -> Result<Mat, LinalgError> {
        let rows = v.as_array().ok_or_else(|| LinalgError::Literal("matrix must be an array of rows".into()))?;
        if rows.is_empty() {
            return Ok(Mat::zeros(field, 0, cols.unwrap_or(0)));
        }
        let mut parsed = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r.as_array().ok_or_else(|| LinalgError::Literal("row must be an array".into()))?;
            parsed.push(r.iter().map(|e| entry_from_json(field, e)).collect::<Result<Vec<_>, _>>()?);
        }
        Mat::from_rows(field, &parsed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn roundtrip_prime_and_extension() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, t, alpha) in [(2, 1, 1), (3, 1, 1), (2, 2, 3), (3, 2, 2)] {
            let ctx = FieldCtx::new(p, t, alpha).unwrap();
            for f in [ctx.base(), ctx.ext()] {
                let a = Mat::random(f, 3, 2, &mut rng);
                assert_eq!(Mat::from_json(f, &a.to_json(), None).unwrap(), a);
            }
        }
    }

    #[test]
    fn accepts_codes_and_vectors() {
        let ctx = FieldCtx::new(2, 2, 1).unwrap();
        let v: Value = serde_json::from_str("[[3, [0, 1]], [[1, 0], 0]]").unwrap();
        let a = Mat::from_json(ctx.base(), &v, None).unwrap();
        assert_eq!(a.to_rows(), vec![vec![3, 2], vec![1, 0]]);
        let bad: Value = serde_json::from_str("[[4]]").unwrap();
        assert!(Mat::from_json(ctx.base(), &bad, None).is_err());
    }
}
