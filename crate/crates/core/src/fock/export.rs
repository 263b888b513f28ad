use serde_json::Value;

use super::{CMat, C};
use crate::error::{Error, Result};

/// Nested rows of `[re, im]` pairs.
pub fn matrix_to_json(m: &CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array((0..m.ncols()).map(|j| serde_json::json!([m[(i, j)].re, m[(i, j)].im])).collect())
            })
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<CMat> {
    let bad = |msg: &str| Error::Config(format!("matrix json: {msg}"));
    let rows = v.as_array().ok_or_else(|| bad("expected an array of rows"))?;
    let nrows = rows.len();
    let ncols = rows.first().and_then(|r| r.as_array()).map_or(0, |r| r.len());
    let mut out = CMat::zeros(nrows, ncols);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| bad("row is not an array"))?;
        if row.len() != ncols {
            return Err(bad("ragged rows"));
        }
        for (j, cell) in row.iter().enumerate() {
            let pair: [f64; 2] =
                serde_json::from_value(cell.clone()).map_err(|_| bad("cell is not [re, im]"))?;
            out[(i, j)] = C::new(pair[0], pair[1]);
        }
    }
    Ok(out)
}

/// Row-major CSV with cells written as `re+imi`.
pub fn matrix_to_csv(m: &CMat) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| {
                let z = m[(i, j)];
                // adding 0.0 turns -0 into 0
                format!("{}{:+}i", z.re + 0.0, z.im + 0.0)
            })
            .collect();
        w.write_record(&row).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv is utf-8")
}
