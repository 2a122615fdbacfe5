//! The run report every subcommand prints on standard output: one compact
//! JSON object with a fixed field set. Rational values are printed as
//! exact `p/q` strings (they re-parse to the exact computed values); the
//! decimal field is a convenience approximation.

use serde::Serialize;

use ghmetric::Scalar;

#[derive(Debug, Serialize)]
pub struct InputRef {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputRef>,
    pub value: Option<String>,
    pub value_decimal: Option<f64>,
    pub witness: serde_json::Value,
    pub nodes: Option<u64>,
    pub millis: u64,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Vec::new(),
            value: None,
            value_decimal: None,
            witness: serde_json::Value::Null,
            nodes: None,
            millis: 0,
        }
    }

    pub fn with_value(mut self, value: &Scalar) -> Self {
        self.value = Some(value.to_string());
        self.value_decimal = Some(value.to_f64());
        self
    }

    pub fn with_witness(mut self, witness: serde_json::Value) -> Self {
        self.witness = witness;
        self
    }

    pub fn with_nodes(mut self, nodes: u64) -> Self {
        self.nodes = Some(nodes);
        self
    }

    pub fn render(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }
}

pub fn input_ref(path: &std::path::Path, bytes: &[u8]) -> InputRef {
    use sha2::{Digest, Sha256};
    InputRef {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(bytes)),
    }
}

/// Rational list as exact strings, for witness payloads.
pub fn scalars_json(values: &[Scalar]) -> serde_json::Value {
    serde_json::Value::Array(
        values
            .iter()
            .map(|v| serde_json::Value::String(v.to_string()))
            .collect(),
    )
}
