//! Text and JSON rendering of command documents.

use crate::commands::{Doc, Failure};
use crate::Format;
use gentrig::complex::{fmt_complex, fmt_sig};
use gentrig::{ErrorKind, C64};
use serde_json::{json, Map, Value};
use std::io::Write;

fn write_stdout(s: &str) {
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

pub fn emit(doc: &Doc, format: Format) {
    match format {
        Format::Json => write_stdout(&format!("{}\n", pretty(&doc.to_json()))),
        Format::Text => write_stdout(&text(doc)),
    }
}

pub fn emit_error(f: &Failure, format: Format) {
    let kind = match f.error.kind() {
        ErrorKind::Input => "input",
        ErrorKind::Numerical => "numerical",
    };
    if format == Format::Json {
        let doc = json!({
            "command": f.command,
            "inputs": Value::Null,
            "results": Value::Null,
            "diagnostics": {"error": f.error.to_string(), "kind": kind},
        });
        write_stdout(&format!("{}\n", pretty(&doc)));
    }
    eprintln!("error ({kind}): {}", f.error);
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn as_complex(v: &Value) -> Option<C64> {
    let o = v.as_object()?;
    if o.len() != 2 {
        return None;
    }
    let part = |k: &str| match o.get(k)? {
        Value::Null => Some(f64::NAN),
        x => x.as_f64(),
    };
    Some(C64::new(part("re")?, part("im")?))
}

fn scalar(v: &Value) -> Option<String> {
    if let Some(z) = as_complex(v) {
        return Some(fmt_complex(z));
    }
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(match n.as_i64() {
            Some(i) => i.to_string(),
            None => fmt_sig(n.as_f64().unwrap_or(f64::NAN), 12),
        }),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn inline(v: &Value) -> String {
    if let Some(s) = scalar(v) {
        return s;
    }
    match v {
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| format!("{k}={}", inline(x)))
            .collect::<Vec<_>>()
            .join("  "),
        _ => unreachable!("scalars handled above"),
    }
}

/// Rows of scalars, printed as an aligned grid.
fn grid(items: &[Value]) -> Option<Vec<Vec<String>>> {
    if items.is_empty() {
        return None;
    }
    items
        .iter()
        .map(|row| match row {
            Value::Array(cells) if !cells.is_empty() => cells.iter().map(scalar).collect(),
            _ => None,
        })
        .collect()
}

fn block(out: &mut String, map: &Map<String, Value>, indent: usize) {
    let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
    let pad = " ".repeat(indent);
    for (key, v) in map {
        match v {
            Value::Array(items) if grid(items).is_some() => {
                out.push_str(&format!("{pad}{key}:\n"));
                let rows = grid(items).unwrap_or_default();
                let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
                let widths: Vec<usize> = (0..cols)
                    .map(|j| {
                        rows.iter()
                            .filter_map(|r| r.get(j))
                            .map(|s| s.len())
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                for row in &rows {
                    let cells: Vec<String> = row
                        .iter()
                        .enumerate()
                        .map(|(j, s)| format!("{s:>w$}", w = widths[j]))
                        .collect();
                    out.push_str(&format!("{pad}  {}\n", cells.join("  ")));
                }
            }
            Value::Array(items)
                if items
                    .iter()
                    .any(|x| x.is_object() && as_complex(x).is_none()) =>
            {
                out.push_str(&format!("{pad}{key}:\n"));
                for item in items {
                    out.push_str(&format!("{pad}  {}\n", inline(item)));
                }
            }
            Value::Object(inner) if as_complex(v).is_none() => {
                out.push_str(&format!("{pad}{key}:\n"));
                block(out, inner, indent + 2);
            }
            _ => out.push_str(&format!("{pad}{key:<width$}  {}\n", inline(v))),
        }
    }
}

fn text(doc: &Doc) -> String {
    if doc.command == "verify" {
        return verify_table(doc);
    }
    let mut out = format!("command: {}\n", doc.command);
    for (title, v) in [
        ("inputs", &doc.inputs),
        ("results", &doc.results),
        ("diagnostics", &doc.diagnostics),
    ] {
        if let Value::Object(map) = v {
            if map.is_empty() {
                continue;
            }
            out.push_str(&format!("{title}:\n"));
            block(&mut out, map, 2);
        }
    }
    out
}

fn verify_table(doc: &Doc) -> String {
    let mut out = String::new();
    let empty = Vec::new();
    let rows = doc.results["criteria"].as_array().unwrap_or(&empty);
    for r in rows {
        let passed = r["passed"].as_bool().unwrap_or(false);
        out.push_str(&format!(
            "{} {:>2}  {:<50} measured {:>18}  tol {:>6}",
            if passed { "PASS" } else { "FAIL" },
            r["id"].as_u64().unwrap_or(0),
            r["title"].as_str().unwrap_or(""),
            scalar(&r["measured"]).unwrap_or_default(),
            scalar(&r["tolerance"]).unwrap_or_default(),
        ));
        if r["runtime_ok"] == Value::Bool(false) {
            out.push_str("  [runtime limit exceeded]");
        }
        if let Some(d) = r["detail"].as_str().filter(|d| !d.is_empty()) {
            out.push_str(&format!("  {d}"));
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "{} passed, {} failed\n",
        doc.diagnostics["passed"], doc.diagnostics["failed"]
    ));
    out
}
