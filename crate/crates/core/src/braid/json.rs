//! Matrix exchange format: a JSON array of rows, each row an array of `[re, im]` pairs.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::qcalc::C64;

use super::tensor::{CMatrix, LambdaMatrix, TensorOperator};

pub fn matrix_to_json(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|r| Value::Array((0..m.ncols()).map(|c| serde_json::json!([m[(r, c)].re, m[(r, c)].im])).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<CMatrix> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("expected an array of rows".into()))?;
    let nrows = rows.len();
    let mut data: Vec<Vec<C64>> = Vec::with_capacity(nrows);
    for (r, row) in rows.iter().enumerate() {
        let cells = row.as_array().ok_or_else(|| Error::Parse(format!("row {r} is not an array")))?;
        let mut parsed = Vec::with_capacity(cells.len());
        for (c, cell) in cells.iter().enumerate() {
            let pair = cell.as_array().filter(|p| p.len() == 2);
            let (re, im) = match pair.map(|p| (p[0].as_f64(), p[1].as_f64())) {
                Some((Some(re), Some(im))) => (re, im),
                _ => return Err(Error::Parse(format!("entry ({r}, {c}) is not a [re, im] pair"))),
            };
            parsed.push(C64::new(re, im));
        }
        data.push(parsed);
    }
    let ncols = data.first().map_or(0, Vec::len);
    if data.iter().any(|row| row.len() != ncols) {
        return Err(Error::Parse("rows have different lengths".into()));
    }
    Ok(CMatrix::from_fn(nrows, ncols, |r, c| data[r][c]))
}

impl LambdaMatrix {
    pub fn to_json(&self) -> Value {
        matrix_to_json(self.entries())
    }

    /// Reads a `d^2 x d^2` matrix; `d` is inferred from the size.
    pub fn from_json(v: &Value) -> Result<Self> {
        let m = matrix_from_json(v)?;
        let d = (m.nrows() as f64).sqrt().round() as usize;
        if d * d != m.nrows() {
            return Err(Error::DimensionMismatch(format!("{} rows is not a perfect square", m.nrows())));
        }
        LambdaMatrix::new(d, m)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }
}

impl TensorOperator {
    pub fn to_json(&self) -> Value {
        matrix_to_json(self.matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let lam =
            LambdaMatrix::from_fn(2, |i, j, k, l| C64::new(i as f64 - 0.125 * j as f64, (k * 3 + l) as f64 / 7.0))
                .unwrap();
        let text = lam.to_json().to_string();
        assert_eq!(LambdaMatrix::from_json_str(&text).unwrap(), lam);
    }

    #[test]
    fn malformed_input_is_reported() {
        assert!(matches!(LambdaMatrix::from_json_str("[[1, 2]]"), Err(Error::Parse(_))));
        assert!(matches!(LambdaMatrix::from_json_str("[[[1,0],[0,0]],[[0,0]]]"), Err(Error::Parse(_))));
        assert!(matches!(
            LambdaMatrix::from_json_str("[[[1,0],[0,0]],[[0,0],[1,0]]]"),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(LambdaMatrix::from_json_str("not json").is_err());
    }
}
