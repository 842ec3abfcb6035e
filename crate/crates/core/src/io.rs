//! Text formats: signals (JSON array or one value per line), vertex sets and
//! sample files (JSON object mapping vertex id to value).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{VertexId, VertexSet};
use crate::scalar::Scalar;

/// Parses a signal given either as a JSON array of numbers or as plain text
/// with one value per line (blank lines and `#` comments ignored).
pub fn parse_signal<T: Scalar>(text: &str) -> Result<Vec<T>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let values: Vec<f64> = serde_json::from_str(trimmed)?;
        return Ok(values.into_iter().map(T::of).collect());
    }
    let mut values = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| Error::Parse {
            line: idx + 1,
            message: format!("invalid number {line:?}"),
        })?;
        values.push(T::of(v));
    }
    Ok(values)
}

/// One value per line with 17 significant digits.
pub fn format_signal<T: Scalar>(values: &[T]) -> String {
    let mut out = String::new();
    for v in values {
        out.push_str(&format!("{:.16e}\n", v.as_f64()));
    }
    out
}

/// Parses a vertex set from a JSON array or from ids separated by commas
/// and/or whitespace.
pub fn parse_vertex_set(text: &str) -> Result<VertexSet> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        return Ok(serde_json::from_str(trimmed)?);
    }
    trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<VertexId>().map_err(|_| Error::Parse {
                line: 1,
                message: format!("invalid vertex id {t:?}"),
            })
        })
        .collect()
}

/// Parses a sample file: a JSON object whose keys are vertex ids.
pub fn parse_samples<T: Scalar>(text: &str) -> Result<BTreeMap<VertexId, T>> {
    let raw: BTreeMap<String, f64> = serde_json::from_str(text)?;
    raw.into_iter()
        .map(|(k, v)| {
            k.trim()
                .parse::<VertexId>()
                .map(|id| (id, T::of(v)))
                .map_err(|_| Error::Parse {
                    line: 1,
                    message: format!("invalid vertex id {k:?}"),
                })
        })
        .collect()
}

pub fn format_samples<T: Scalar>(samples: &BTreeMap<VertexId, T>) -> Result<String> {
    let raw: BTreeMap<String, f64> = samples
        .iter()
        .map(|(k, v)| (k.to_string(), v.as_f64()))
        .collect();
    Ok(serde_json::to_string_pretty(&raw)?)
}
