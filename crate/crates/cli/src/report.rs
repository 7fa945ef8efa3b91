//! Reports and their JSON, CSV and table renderings.

use clap::ValueEnum;
use serde_json::{Map, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// A report as a JSON document plus a flat table view for CSV and table
/// output.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Report {
        Report {
            json,
            header: header.iter().map(|h| h.to_string()).collect(),
            rows,
        }
    }
}

/// Recursively orders object keys so output never depends on map internals.
pub fn sort_keys(value: Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut pairs: Vec<(String, Value)> = map.into_iter().collect();
            pairs.sort_by(|a, b| a.0.cmp(&b.0));
            let mut sorted = Map::new();
            for (k, v) in pairs {
                sorted.insert(k, sort_keys(v));
            }
            Value::Object(sorted)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

pub fn emit(report: &Report, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(&sort_keys(report.json.clone()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(&report.header)?;
            for row in &report.rows {
                writer.write_record(row)?;
            }
            writer
                .into_inner()
                .map_err(|e| CliError::Internal(format!("csv flush failed: {e}")))
        }
        Format::Table => Ok(table(&report.header, &report.rows).into_bytes()),
    }
}

fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out += &line(&rule);
    for row in rows {
        out += &line(row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn empty_csv_has_header_only() {
        let report = Report::new(json!({"rows": []}), &["a", "b"], vec![]);
        assert_eq!(emit(&report, Format::Csv).unwrap(), b"a,b\n");
    }

    #[test]
    fn json_keys_are_sorted() {
        let report = Report::new(json!({"z": 1, "a": {"y": 2, "b": 3}}), &[], vec![]);
        let text = String::from_utf8(emit(&report, Format::Json).unwrap()).unwrap();
        let a = text.find("\"a\"").unwrap();
        let z = text.find("\"z\"").unwrap();
        assert!(a < z);
        assert!(text.find("\"b\"").unwrap() < text.find("\"y\"").unwrap());
    }

    #[test]
    fn table_aligns_columns() {
        let report = Report::new(Value::Null, &["x", "long"], vec![vec!["wide".into(), "1".into()]]);
        let text = String::from_utf8(emit(&report, Format::Table).unwrap()).unwrap();
        assert_eq!(text, "x     long\n----  ----\nwide  1\n");
    }
}
