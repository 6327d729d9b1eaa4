use std::collections::BTreeSet;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, RunConfig};
use crate::error::CliError;

/// A rendered command result: the JSON document and the rows used for CSV.
pub struct Report {
    pub json: Value,
    pub rows: Vec<Value>,
}

impl Report {
    pub fn new(doc: impl Serialize, rows: Vec<Value>) -> Result<Self, CliError> {
        Ok(Report { json: to_value(doc)?, rows })
    }
}

pub fn to_value(v: impl Serialize) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Io(e.into()))
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => {
            xs.iter().map(cell).collect::<Vec<_>>().join(";")
        }
        Value::Array(_) | Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

/// Flat objects to CSV; the header is the sorted union of keys.
pub fn csv_table(rows: &[Value]) -> Result<String, CliError> {
    let keys: BTreeSet<&str> = rows.iter().filter_map(Value::as_object).flat_map(|o| o.keys().map(String::as_str)).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.into());
    w.write_record(&keys).map_err(io)?;
    for r in rows {
        w.write_record(keys.iter().map(|k| r.get(k).map(cell).unwrap_or_default())).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).map_err(|e| CliError::Io(e.into()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv_table(&report.rows),
    }
}

pub fn emit(report: &Report, cfg: &RunConfig) -> Result<(), CliError> {
    let text = render(report, cfg.format)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn arrays_flatten_with_semicolons() {
        let rows = vec![json!({"q": [1, 0], "name": "a,b"}), json!({"q": [], "extra": null})];
        let t = csv_table(&rows).unwrap();
        assert_eq!(t, "extra,name,q\n,\"a,b\",1;0\n,,\n");
    }
}
