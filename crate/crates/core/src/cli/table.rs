//! Numeric curve tables with a `#`-prefixed metadata header, emitted as CSV
//! (comma-separated, unquoted numeric payload) or JSON. Floats are printed
//! with 17 significant digits so identical configs produce byte-identical
//! files and parsing recovers the exact values.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("CSV parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveTable {
    /// Input echo and provenance, emitted as `# key = value` lines.
    pub metadata: Vec<(String, String)>,
    /// Column names with unit annotations.
    pub columns: Vec<String>,
    /// Row-major numeric data; row length equals the column count.
    pub rows: Vec<Vec<f64>>,
}

/// 17-significant-digit scientific form: round-trips f64 exactly and is
/// byte-stable across runs.
pub fn fmt_g17(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.16e}")
    }
}

impl CurveTable {
    pub fn new(columns: Vec<String>) -> Self {
        CurveTable {
            metadata: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row length must match column count"
        );
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| fmt_g17(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, TableError> {
        let mut metadata = Vec::new();
        let mut columns: Option<Vec<String>> = None;
        let mut rows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some((k, v)) = rest.split_once('=') {
                    metadata.push((k.trim().to_string(), v.trim().to_string()));
                }
                continue;
            }
            match &columns {
                None => {
                    columns = Some(line.split(',').map(|s| s.to_string()).collect());
                }
                Some(cols) => {
                    let cells: Result<Vec<f64>, _> = line
                        .split(',')
                        .map(|c| {
                            if c == "nan" {
                                Ok(f64::NAN)
                            } else {
                                c.parse::<f64>()
                            }
                        })
                        .collect();
                    let cells = cells.map_err(|e| TableError::Parse {
                        line: i + 1,
                        message: e.to_string(),
                    })?;
                    if cells.len() != cols.len() {
                        return Err(TableError::Parse {
                            line: i + 1,
                            message: format!("expected {} cells, got {}", cols.len(), cells.len()),
                        });
                    }
                    rows.push(cells);
                }
            }
        }
        Ok(CurveTable {
            metadata,
            columns: columns.ok_or(TableError::Parse {
                line: 0,
                message: "missing header row".into(),
            })?,
            rows,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let meta: serde_json::Map<String, serde_json::Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        serde_json::json!({
            "metadata": meta,
            "columns": self.columns,
            "rows": self.rows,
        })
    }
}
