//! Matrices as JSON arrays of rows of `[re, im]` pairs.

use std::path::Path;

use posmap::{Complex64, Matrix};
use serde_json::Value;

use crate::error::CliError;
use crate::report::complex;

pub fn parse_matrix(text: &str) -> Result<Matrix, CliError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("matrix is not valid JSON: {e}")))?;
    let rows = value.as_array().ok_or_else(|| CliError::Input("matrix must be a JSON array of rows".into()))?;
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.as_array()
                .ok_or_else(|| CliError::Input(format!("row {i} is not an array")))?
                .iter()
                .enumerate()
                .map(|(j, entry)| {
                    parse_entry(entry).ok_or_else(|| CliError::Input(format!("entry ({i},{j}) is not a [re, im] pair")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if parsed.is_empty() {
        return Err(CliError::Input("matrix is empty".into()));
    }
    Matrix::from_rows(parsed).map_err(crate::error::input)
}

fn parse_entry(v: &Value) -> Option<Complex64> {
    match v.as_array()?.as_slice() {
        [re, im] => Some(Complex64::new(re.as_f64()?, im.as_f64()?)),
        _ => None,
    }
}

pub fn read_matrix(path: &Path) -> Result<Matrix, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text)
}

pub fn matrix_value(m: &Matrix) -> Value {
    Value::Array(m.rows().iter().map(|r| Value::Array(r.iter().map(|z| complex(*z)).collect())).collect())
}
