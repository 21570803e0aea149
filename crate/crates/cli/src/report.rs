//! Reports: one JSON tree, rendered as pretty JSON or indented text.

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
}

impl Report {
    /// Field order is fixed: command, inputs, results, version, exact_arithmetic.
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "version": env!("CARGO_PKG_VERSION"),
            "exact_arithmetic": true,
        })
    }

    pub fn render(&self, format: Format) -> String {
        let value = self.to_json();
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&value).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                if let Value::Object(map) = &value {
                    write_map(&mut out, map, 0);
                }
                out
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(|x| scalar(x).expect("scalar")).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn write_map(out: &mut String, map: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, v) in map {
        match scalar(v) {
            Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
            None => {
                out.push_str(&format!("{pad}{k}:\n"));
                write_nested(out, v, depth + 1);
            }
        }
    }
}

fn write_nested(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => write_map(out, m, depth),
        Value::Array(items) => {
            for item in items {
                match (scalar(item), item) {
                    (Some(s), _) => out.push_str(&format!("{pad}- {s}\n")),
                    (None, Value::Object(m)) => {
                        out.push_str(&format!("{pad}-\n"));
                        write_map(out, m, depth + 1);
                    }
                    (None, other) => {
                        out.push_str(&format!("{pad}-\n"));
                        write_nested(out, other, depth + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).expect("scalar"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_order_is_fixed() {
        let mut results = Map::new();
        results.insert("z".into(), json!(1));
        results.insert("a".into(), json!([{"b": [1, 2]}]));
        let r = Report {
            command: "kottwitz".into(),
            inputs: Map::new(),
            results,
        };
        let json = r.render(Format::Json);
        let keys = [
            "\"command\"",
            "\"inputs\"",
            "\"results\"",
            "\"z\"",
            "\"a\"",
            "\"version\"",
            "\"exact_arithmetic\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(
            r.render(Format::Text),
            "command: kottwitz\ninputs:\nresults:\n  z: 1\n  a:\n    -\n      b: [1, 2]\nversion: 0.1.0\nexact_arithmetic: true\n"
        );
    }
}
