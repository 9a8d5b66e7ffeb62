use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Compact JSON with every float written to 17 significant digits.
struct Precise;

impl Formatter for Precise {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Precise);
    value.serialize(&mut ser).expect("report serializes");
    String::from_utf8(buf).expect("json is utf-8")
}

fn scalar(v: &Value, digits: usize) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format!("{:.*e}", digits, n.as_f64().unwrap()),
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Flattens nested objects into dotted keys; arrays of objects become rows
/// elsewhere, here they stay as JSON text.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        other => out.push((prefix.to_string(), other.clone())),
    }
}

pub fn to_csv(value: &Value, digits: usize) -> String {
    let mut fields = Vec::new();
    flatten("", value, &mut fields);
    let mut w = csv_line(&["key", "value"]);
    for (k, v) in fields {
        w.push_str(&csv_line(&[&k, &scalar(&v, digits)]));
    }
    w
}

pub fn rows_to_csv(header: &[&str], rows: &[Vec<f64>], digits: usize) -> String {
    let mut w = csv_line(header);
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.digits$e}")).collect();
        let refs: Vec<&str> = cells.iter().map(String::as_str).collect();
        w.push_str(&csv_line(&refs));
    }
    w
}

fn csv_line(cells: &[&str]) -> String {
    let quoted: Vec<String> = cells
        .iter()
        .map(|c| if c.contains([',', '"', '\n']) { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.to_string() })
        .collect();
    quoted.join(",") + "\n"
}

pub fn to_table(value: &Value, digits: usize) -> String {
    let mut fields = Vec::new();
    flatten("", value, &mut fields);
    let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    fields
        .iter()
        .map(|(k, v)| format!("{k:<width$}  {}\n", scalar(v, digits)))
        .collect()
}

pub fn emit(text: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits() {
        let s = to_json(&serde_json::json!({ "v": 0.1f64, "n": 3 }));
        assert_eq!(s, r#"{"n":3,"v":1.0000000000000001e-1}"#);
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["v"].as_f64().unwrap(), 0.1);
    }

    #[test]
    fn csv_flattens() {
        let v = serde_json::json!({ "a": { "b": 1.5 }, "s": "x,y" });
        assert_eq!(to_csv(&v, 3), "key,value\na.b,1.500e0\ns,\"x,y\"\n");
    }
}
