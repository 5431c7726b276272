//! JSON values for reports, and the plain-text rendering of a report.

use std::collections::BTreeMap;

use clap::ValueEnum;
use galcoh::abelian::{Int, IntMatrix, InvariantFactors};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub fn invariants(f: &InvariantFactors) -> Value {
    serde_json::to_value(f).expect("invariant factors serialize")
}

fn ints(v: &[Int]) -> Value {
    v.iter().map(|x| Value::String(x.to_string())).collect()
}

/// Matrices as arrays of rows of decimal strings.
pub fn matrices(ms: &[IntMatrix]) -> Value {
    ms.iter().map(|m| m.row_vecs().iter().map(|r| ints(r)).collect::<Value>()).collect()
}

/// Cocycles as maps from element-index tuples to coordinate vectors.
/// Tuples with a zero value are omitted.
pub fn cochains(reps: &[Vec<Int>], order: usize, degree: usize, rank: usize) -> Value {
    reps.iter()
        .map(|c| {
            let mut map = BTreeMap::new();
            for (t, block) in c.chunks(rank.max(1)).enumerate() {
                if block.iter().all(|x| *x == Int::from(0u8)) {
                    continue;
                }
                let mut tuple = vec![0usize; degree];
                let mut rest = t;
                for slot in tuple.iter_mut().rev() {
                    *slot = rest % order;
                    rest /= order;
                }
                let key = tuple.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                map.insert(format!("({key})"), ints(block));
            }
            json!(map)
        })
        .collect()
}

fn is_invariants(v: &Value) -> bool {
    v.as_object().is_some_and(|o| o.len() == 2 && o.contains_key("free_rank") && o.contains_key("torsion"))
}

fn group_string(v: &Value) -> String {
    let free = v["free_rank"].as_u64().unwrap_or(0);
    let mut parts: Vec<String> = Vec::new();
    if free == 1 {
        parts.push("Z".into());
    } else if free > 1 {
        parts.push(format!("Z^{free}"));
    }
    for t in v["torsion"].as_array().into_iter().flatten() {
        parts.push(format!("Z/{}", t.as_str().unwrap_or("?")));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ if is_invariants(v) => Some(group_string(v)),
        _ => None,
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize"),
        Format::Text => {
            let mut out = String::new();
            text(report, 0, &mut out);
            out.trim_end().to_string()
        }
    }
}
