//! Report envelope and deterministic JSON rendering.
//!
//! Every subcommand emits the same envelope: `command`, `params_echo`,
//! `results`, `status`, `tool_version`. Rendering is byte-stable: object keys
//! are sorted (serde_json's default `BTreeMap` backing), floats are printed
//! with 17 significant digits via [`nwhyp_core::render::float17`], and
//! nothing time- or environment-dependent (timestamps, hostnames, thread
//! counts) is ever included.

use nwhyp_core::render::float17;
use serde_json::Value;

pub struct Report {
    pub command: &'static str,
    pub params_echo: Value,
    pub results: Value,
    /// `ok`, `falsified`, or `error`.
    pub status: &'static str,
}

impl Report {
    pub fn to_json(&self) -> String {
        let envelope = serde_json::json!({
            "command": self.command,
            "params_echo": self.params_echo,
            "results": self.results,
            "status": self.status,
            "tool_version": env!("CARGO_PKG_VERSION"),
        });
        render_json(&envelope)
    }

    /// Flat `path = value` lines for terminal reading; same content as the
    /// JSON rendering, same ordering.
    pub fn to_text(&self) -> String {
        let envelope = serde_json::json!({
            "command": self.command,
            "params_echo": self.params_echo,
            "results": self.results,
            "status": self.status,
            "tool_version": env!("CARGO_PKG_VERSION"),
        });
        let mut lines = Vec::new();
        flatten("", &envelope, &mut lines);
        lines.join("\n") + "\n"
    }
}

/// Compact JSON with deterministic float formatting.
///
/// serde_json's own serializer uses shortest-round-trip floats, whose width
/// varies by value; report files must instead be column-stable and identical
/// across platforms, so numbers go through [`float17`].
pub fn render_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, &mut out);
    out
}

fn write_value(value: &Value, out: &mut String) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_u64() || n.is_i64() {
                out.push_str(&n.to_string());
            } else {
                out.push_str(&float17(n.as_f64().expect("finite f64 in report")));
            }
        }
        Value::String(s) => {
            out.push_str(&serde_json::to_string(s).expect("string serialization"));
        }
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (key, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(key).expect("key serialization"));
                out.push(':');
                write_value(item, out);
            }
            out.push('}');
        }
    }
}

fn flatten(prefix: &str, value: &Value, lines: &mut Vec<String>) {
    match value {
        Value::Object(map) => {
            for (key, item) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten(&path, item, lines);
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), item, lines);
            }
        }
        Value::Null => lines.push(format!("{prefix} = null")),
        Value::Bool(b) => lines.push(format!("{prefix} = {b}")),
        Value::Number(n) => {
            if n.is_u64() || n.is_i64() {
                lines.push(format!("{prefix} = {n}"));
            } else {
                lines.push(format!(
                    "{prefix} = {}",
                    float17(n.as_f64().expect("finite f64 in report"))
                ));
            }
        }
        Value::String(s) => lines.push(format!("{prefix} = {s}")),
    }
}
