use serde_json::Value;

/// Indented `key: value` rendering; arrays of flat objects become tables.
pub fn render(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

/// Scalars and object-free arrays print on one line.
fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(is_flat),
        _ => true,
    }
}

fn write_value(out: &mut String, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                if is_flat(v) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(v)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_value(out, v, indent + 1);
                }
            }
        }
        Value::Array(items) => {
            let rows: Option<Vec<_>> = items
                .iter()
                .map(|item| item.as_object().filter(|m| m.values().all(is_flat)))
                .collect();
            match rows {
                Some(rows) if !rows.is_empty() => write_table(out, &rows, &pad),
                _ => {
                    for item in items {
                        out.push_str(&format!("{pad}-\n"));
                        write_value(out, item, indent + 1);
                    }
                }
            }
        }
        flat => out.push_str(&format!("{pad}{}\n", scalar(flat))),
    }
}

fn write_table(out: &mut String, rows: &[&serde_json::Map<String, Value>], pad: &str) {
    let headers: Vec<&String> = rows[0].keys().collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| headers.iter().map(|h| r.get(*h).map(scalar).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| cells.iter().map(|c| c[i].chars().count()).max().unwrap_or(0).max(h.chars().count()))
        .collect();
    let line = |cols: Vec<String>| -> String {
        let padded: Vec<String> = cols.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{pad}{}\n", padded.join("  ").trim_end())
    };
    out.push_str(&line(headers.iter().map(|h| h.to_string()).collect()));
    for row in cells {
        out.push_str(&line(row));
    }
}
