//! The space file format: a single JSON document
//!
//! ```json
//! { "name": "pair", "points": ["a", "b"], "dist": [[0, 1], [1, 0]] }
//! ```
//!
//! Matrix entries may be integers, decimal literals, or `"p/q"` strings;
//! every form is read as an exact rational (`0.1` is exactly one tenth —
//! `serde_json`'s arbitrary-precision mode hands us the literal digits, so
//! nothing ever goes through floating point). Emission writes integers as
//! bare numbers and every other value as a `"p/q"` string, producing
//! byte-identical output for equal spaces.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use ghmetric::{FiniteMetricSpace, Scalar};

use crate::error::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceFile {
    pub name: String,
    pub points: Vec<String>,
    pub dist: Vec<Vec<serde_json::Value>>,
}

fn entry_to_scalar(
    value: &serde_json::Value,
    path: &str,
    row: usize,
    col: usize,
) -> Result<Scalar, CliError> {
    let literal = match value {
        serde_json::Value::Number(n) => n.to_string(),
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    Scalar::from_str(&literal).map_err(|_| CliError::Entry {
        path: path.to_string(),
        row,
        col,
        literal,
    })
}

fn scalar_to_entry(value: &Scalar) -> serde_json::Value {
    if value.is_integer() {
        let n = serde_json::Number::from_str(&value.to_string())
            .expect("integer digits are a valid JSON number");
        serde_json::Value::Number(n)
    } else {
        serde_json::Value::String(value.to_string())
    }
}

/// Parses and validates a space from JSON text. `path` is used in error
/// messages only.
pub fn parse_space_str(text: &str, path: &str) -> Result<(String, FiniteMetricSpace), CliError> {
    let file: SpaceFile = serde_json::from_str(text).map_err(|e| CliError::Json {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    let mut rows = Vec::with_capacity(file.dist.len());
    for (i, row) in file.dist.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (j, v) in row.iter().enumerate() {
            out.push(entry_to_scalar(v, path, i, j)?);
        }
        rows.push(out);
    }
    let space = FiniteMetricSpace::new(file.points, rows)
        .map_err(|e| CliError::with_context(e, path))?;
    Ok((file.name, space))
}

/// Reads, parses and validates a space file.
pub fn read_space(path: &Path) -> Result<(String, FiniteMetricSpace), CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_space_str(&text, &shown)
}

/// Renders a space as the canonical pretty-printed JSON document (with a
/// trailing newline).
pub fn emit_space(name: &str, space: &FiniteMetricSpace) -> String {
    let file = SpaceFile {
        name: name.to_string(),
        points: space.labels().to_vec(),
        dist: space
            .rows()
            .iter()
            .map(|row| row.iter().map(scalar_to_entry).collect())
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("space files always serialize");
    text.push('\n');
    text
}

pub fn write_space(path: &Path, name: &str, space: &FiniteMetricSpace) -> Result<(), CliError> {
    std::fs::write(path, emit_space(name, space)).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}
