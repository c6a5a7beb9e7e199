use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

/// Leaf paths of a JSON value in document order, e.g. `chief.unique`.
fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&join(k), v, out);
            }
        }
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
            let cells: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_string(), cells.join(" ")));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), v, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Renders a report; `tsv_override` replaces the generic key/value table.
pub fn render(report: &Value, format: Format, tsv_override: Option<String>) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Tsv => tsv_override.unwrap_or_else(|| {
            let mut rows = Vec::new();
            flatten("", report, &mut rows);
            rows.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect()
        }),
        Format::Text => {
            let mut rows = Vec::new();
            flatten("", report, &mut rows);
            rows.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
        }
    }
}
