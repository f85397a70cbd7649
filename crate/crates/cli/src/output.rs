//! Report emission: pretty JSON or flat CSV.

use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Renders a JSON value in the selected format. CSV mirrors the JSON fields
/// flat: one `field,value` row per leaf, with dotted paths for nesting.
pub fn render(value: &serde_json::Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(value).expect("serializable");
            text.push('\n');
            text
        }
        Format::Csv => {
            let mut rows = Vec::new();
            flatten(value, String::new(), &mut rows);
            let mut out = String::from("field,value\n");
            for (field, cell) in rows {
                let _ = writeln!(out, "{},{}", csv_quote(&field), csv_quote(&cell));
            }
            out
        }
    }
}

fn flatten(value: &serde_json::Value, path: String, rows: &mut Vec<(String, String)>) {
    match value {
        serde_json::Value::Object(map) => {
            for (key, inner) in map {
                let next = if path.is_empty() {
                    key.clone()
                } else {
                    format!("{path}.{key}")
                };
                flatten(inner, next, rows);
            }
        }
        serde_json::Value::Array(items) => {
            for (idx, inner) in items.iter().enumerate() {
                flatten(inner, format!("{path}.{idx}"), rows);
            }
        }
        serde_json::Value::Null => rows.push((path, String::new())),
        serde_json::Value::Bool(b) => rows.push((path, b.to_string())),
        serde_json::Value::Number(n) => rows.push((path, n.to_string())),
        serde_json::Value::String(s) => rows.push((path, s.clone())),
    }
}

fn csv_quote(text: &str) -> String {
    if text.contains(',') || text.contains('"') || text.contains('\n') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}
