use std::fmt::Write;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Dot,
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn table_rows(rows: &[Value], out: &mut String) {
    let Some(Value::Object(first)) = rows.first() else {
        for r in rows {
            let _ = writeln!(out, "{}", cell(r));
        }
        return;
    };
    let cols: Vec<&String> = first.keys().collect();
    let grid: Vec<Vec<String>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c.as_str()).map(cell).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(k, c)| grid.iter().map(|row| row[k].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(cols.iter().map(|c| c.to_string()).collect()));
    for row in grid {
        let _ = writeln!(out, "{}", line(row));
    }
}

/// Plain-text rendering: arrays of objects become aligned tables, other
/// fields one `key: value` line each.
pub fn render_table(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Array(rows) => table_rows(rows, &mut out),
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
                        let _ = writeln!(out, "{k}:");
                        table_rows(rows, &mut out);
                    }
                    _ => {
                        let _ = writeln!(out, "{k}: {}", cell(x));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{}", cell(other));
        }
    }
    out
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Table => render_table(v),
        _ => {
            let mut s = serde_json::to_string(v).expect("serializable");
            s.push('\n');
            s
        }
    }
}
