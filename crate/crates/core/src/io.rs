//! JSON documents.
//!
//! A metric space is stored as
//! `{"kind":"metric","n":2,"labels":["a","b"],"d":[[0,1],[1,0]]}`. Labels and a
//! `provenance` object are optional. Distances are JSON numbers or strings
//! such as `"1/3"` or `"0.25"`; rational mode writes non-integers as `"p/q"`.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use crate::scalar::{ParseScalarError, Scalar};
use crate::space::{FiniteMetricSpace, MetricError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {message}")]
    File { path: String, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error(transparent)]
    Scalar(#[from] ParseScalarError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// The metric document of `m`, with `provenance` attached when given.
pub fn metric_to_json<S: Scalar>(m: &FiniteMetricSpace<S>, provenance: Option<&Value>) -> Value {
    let d: Vec<Vec<Value>> = m
        .rows()
        .map(|row| row.iter().map(|v| v.to_json()).collect())
        .collect();
    let mut doc = json!({"kind": "metric", "n": m.len(), "d": d});
    if let Some(labels) = m.labels() {
        doc["labels"] = json!(labels);
    }
    if let Some(p) = provenance {
        doc["provenance"] = p.clone();
    }
    doc
}

/// Reads and validates a metric document.
pub fn metric_from_json<S: Scalar>(doc: &Value) -> Result<FiniteMetricSpace<S>, IoError> {
    let malformed = |msg: &str| IoError::Malformed(msg.to_string());
    if doc.get("kind").and_then(Value::as_str) != Some("metric") {
        return Err(malformed("expected \"kind\": \"metric\""));
    }
    let rows = doc
        .get("d")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("missing \"d\" array"))?;
    if let Some(n) = doc.get("n") {
        let n = n
            .as_u64()
            .ok_or_else(|| malformed("\"n\" must be a non-negative integer"))?;
        if n as usize != rows.len() {
            return Err(IoError::Malformed(format!(
                "\"n\" is {n} but \"d\" has {} rows",
                rows.len()
            )));
        }
    }
    let matrix = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| malformed("every row of \"d\" must be an array"))?
                .iter()
                .map(|v| S::from_json(v).map_err(IoError::from))
                .collect::<Result<Vec<S>, IoError>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let space = FiniteMetricSpace::validate(matrix)?;
    match doc.get("labels") {
        None | Some(Value::Null) => Ok(space),
        Some(Value::Array(labels)) => {
            let labels = labels
                .iter()
                .map(|l| {
                    l.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| malformed("labels must be strings"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(space.with_labels(labels)?)
        }
        Some(_) => Err(malformed("labels must be an array")),
    }
}

/// Parses a JSON file.
pub fn read_json(path: &Path) -> Result<Value, IoError> {
    let text = fs::read_to_string(path).map_err(|e| IoError::File {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| IoError::Json(format!("{}: {e}", path.display())))
}

pub fn read_metric<S: Scalar>(path: &Path) -> Result<FiniteMetricSpace<S>, IoError> {
    metric_from_json(&read_json(path)?)
}

/// Writes pretty-printed JSON followed by a newline.
pub fn write_json(path: &Path, value: &Value) -> Result<(), IoError> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    fs::write(path, text + "\n").map_err(|e| IoError::File {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
