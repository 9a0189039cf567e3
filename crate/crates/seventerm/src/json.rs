//! Indented JSON that keeps arrays of scalars on one line, so tables and
//! matrices read row by row.

use serde::Serialize;
use serde_json::Value;

pub fn to_string<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable without maps keyed by non-strings");
    let mut out = String::new();
    write(&v, 0, &mut out);
    out.push('\n');
    out
}

fn flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

/// Single-line rendering of a flat array or of an array of flat arrays.
fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Array(xs) if flat(v) => Some(format!("[{}]", xs.iter().map(scalar).collect::<Vec<_>>().join(", "))),
        Value::Array(xs) if xs.iter().all(|x| x.is_array() && flat(x)) => {
            let s = format!("[{}]", xs.iter().filter_map(inline).collect::<Vec<_>>().join(", "));
            (s.len() <= INLINE_WIDTH).then_some(s)
        }
        _ => None,
    }
}

const INLINE_WIDTH: usize = 48;

fn scalar(v: &Value) -> String {
    serde_json::to_string(v).expect("scalars serialize")
}

fn write(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(_) if inline(v).is_some() => out.push_str(&inline(v).expect("checked")),
        Value::Array(xs) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad);
                write(x, indent + 1, out);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&scalar(&Value::String(k.clone())));
                out.push_str(": ");
                write(x, indent + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        _ => out.push_str(&scalar(v)),
    }
}
