use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::Format;

/// What a subcommand produced, before the manifest is attached.
pub struct Report {
    pub results: Value,
    /// Replaces the generic text rendering when set.
    pub text: Option<String>,
}

impl Report {
    pub fn new(results: Value) -> Self {
        Self { results, text: None }
    }
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub command: &'static str,
    pub params: Value,
    pub seed: u64,
    pub threads: usize,
    pub version: &'static str,
    pub duration_secs: f64,
}

/// An exact integer as a JSON number of any size.
pub fn big_number(v: &BigUint) -> Value {
    serde_json::from_str(&v.to_string()).expect("decimal digits parse as a JSON number")
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result types serialize to JSON")
}

pub fn render(report: &Report, manifest: &Manifest, format: Format) -> Result<String, csv::Error> {
    match format {
        Format::Json => {
            let doc = json!({
                "command": manifest.command,
                "params": manifest.params,
                "results": report.results,
                "manifest": to_value(manifest),
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv_table(&report.results),
        Format::Text => Ok(report.text.clone().unwrap_or_else(|| text(&report.results))),
    }
}

fn rows(results: &Value) -> Vec<&Map<String, Value>> {
    match results {
        Value::Array(items) => items.iter().filter_map(Value::as_object).collect(),
        Value::Object(m) => vec![m],
        _ => Vec::new(),
    }
}

/// CSV cell: floats with 17 significant digits, nested values as compact JSON.
fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_f64() => format!("{:.16e}", n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_table(results: &Value) -> Result<String, csv::Error> {
    let rows = rows(results);
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(first) = rows.first() {
        let header: Vec<&String> = first.keys().collect();
        w.write_record(&header)?;
        for row in &rows {
            w.write_record(header.iter().map(|k| row.get(*k).map(cell).unwrap_or_default()))?;
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 cells"))
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn text(results: &Value) -> String {
    let mut out = String::new();
    match results {
        Value::Array(_) => {
            let rows = rows(results);
            let Some(first) = rows.first() else { return out };
            let header: Vec<&String> = first.keys().collect();
            let cells: Vec<Vec<String>> =
                rows.iter().map(|r| header.iter().map(|k| r.get(*k).map(plain).unwrap_or_default()).collect()).collect();
            let widths: Vec<usize> = header
                .iter()
                .enumerate()
                .map(|(i, h)| cells.iter().map(|r| r[i].len()).chain([h.len()]).max().unwrap_or(0))
                .collect();
            let line = |items: Vec<&str>| {
                items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect::<Vec<_>>().join("  ")
            };
            let _ = writeln!(out, "{}", line(header.iter().map(|s| s.as_str()).collect()));
            for r in &cells {
                let _ = writeln!(out, "{}", line(r.iter().map(|s| s.as_str()).collect()));
            }
        }
        Value::Object(m) => {
            let width = m.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in m {
                let _ = writeln!(out, "{k:<width$}  {}", plain(v));
            }
        }
        other => {
            let _ = writeln!(out, "{}", plain(other));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_formats_floats_and_integers() {
        let v = json!([{"x": 10, "mean": 0.1, "name": "a"}, {"x": 20, "mean": 2.5, "name": "b,c"}]);
        let s = csv_table(&v).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "x,mean,name");
        assert_eq!(lines[1], "10,1.0000000000000001e-1,a");
        assert_eq!(lines[2], "20,2.5000000000000000e0,\"b,c\"");
    }

    #[test]
    fn big_numbers_stay_exact() {
        let n = BigUint::from(u128::MAX) * 7u32;
        let v = json!({ "value": big_number(&n) });
        assert_eq!(v.to_string(), format!("{{\"value\":{n}}}"));
    }

    #[test]
    fn text_table_aligns() {
        let v = json!([{"a": 1, "bb": "x"}, {"a": 100, "bb": "yy"}]);
        assert_eq!(text(&v), "  a  bb\n  1   x\n100  yy\n");
    }
}
