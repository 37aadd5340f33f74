//! Machine-readable analysis reports.
//!
//! Every report is a JSON object with sorted keys:
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "command": "proper",
//!   "input_digest": "sha256:…",
//!   "result": { … },
//!   "witnesses": { … },
//!   "stats": { "nodes_visited": 123, "elapsed_ms": 4 },
//!   "status": "ok"
//! }
//! ```
//!
//! `input_digest` is `sha256:` followed by the lowercase hex SHA-256 of the raw
//! input file bytes (or of the catalog name for commands without a file).
//! Apart from `stats.elapsed_ms`, equal inputs and flags give byte-identical
//! reports.

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::io::FORMAT_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    InvalidInput,
    BudgetExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InvalidInput => 2,
            Status::BudgetExceeded => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisReport {
    pub command: String,
    pub input_digest: String,
    pub result: Value,
    pub witnesses: Value,
    pub nodes_visited: u64,
    pub elapsed_ms: u64,
    pub status: Status,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

impl AnalysisReport {
    pub fn new(command: &str, input_digest: String) -> Self {
        AnalysisReport {
            command: command.to_string(),
            input_digest,
            result: json!({}),
            witnesses: json!({}),
            nodes_visited: 0,
            elapsed_ms: 0,
            status: Status::Ok,
        }
    }

    pub fn to_value(&self) -> Value {
        // serde_json's default map keeps keys sorted, which fixes the order.
        json!({
            "format_version": FORMAT_VERSION,
            "command": self.command,
            "input_digest": self.input_digest,
            "result": self.result,
            "witnesses": self.witnesses,
            "stats": { "nodes_visited": self.nodes_visited, "elapsed_ms": self.elapsed_ms },
            "status": self.status,
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("reports serialize");
        s.push('\n');
        s
    }

    /// JSON with the timing field zeroed, for determinism comparisons.
    pub fn to_json_without_timing(&self) -> String {
        AnalysisReport {
            elapsed_ms: 0,
            ..self.clone()
        }
        .to_json_string()
    }

    /// Indented `key: value` rendering of the report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render_text(&self.to_value(), 0, &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::String(_) | Value::Number(_) | Value::Bool(_))) => {
            Some(format!(
                "[{}]",
                a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")
            ))
        }
        _ => None,
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_sha256_hex() {
        assert_eq!(
            digest(b""),
            "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn keys_are_sorted_and_version_present() {
        let r = AnalysisReport::new("validate", digest(b"x"));
        let s = r.to_json_string();
        let command = s.find("\"command\"").unwrap();
        let status = s.find("\"status\"").unwrap();
        assert!(command < status);
        assert!(s.contains("\"format_version\": 1"));
        let reparsed: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string_pretty(&reparsed).unwrap() + "\n", s);
    }

    #[test]
    fn text_rendering() {
        let mut r = AnalysisReport::new("proper", "d".into());
        r.result = json!({"verdict": "proper", "obstructions": [{"source": "b"}]});
        let t = r.to_text();
        assert!(t.contains("verdict: proper"));
        assert!(t.contains("source: b"));
    }
}
