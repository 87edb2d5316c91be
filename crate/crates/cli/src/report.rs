//! Run reports: what was read, what was computed and what was written.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
}

impl InputRecord {
    pub fn new(path: &str, contents: &[u8]) -> Self {
        let digest = Sha256::digest(contents);
        let sha256 = digest.iter().map(|b| format!("{b:02x}")).collect();
        Self {
            path: path.to_string(),
            sha256,
        }
    }
}

/// The structured record of one CLI invocation. Deterministic unless `timing_ms` is requested.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: Option<u64>,
    pub inputs: Vec<InputRecord>,
    pub results: Value,
    pub warnings: Vec<String>,
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl RunReport {
    pub fn new(command: &str, seed: Option<u64>) -> Self {
        Self {
            command: command.to_string(),
            seed,
            inputs: Vec::new(),
            results: Value::Null,
            warnings: Vec::new(),
            outputs: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Indented `key: value` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        for input in &self.inputs {
            out.push_str(&format!("input: {} sha256={}\n", input.path, input.sha256));
        }
        render(&self.results, 0, &mut out);
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        for o in &self.outputs {
            out.push_str(&format!("wrote: {o}\n"));
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("timing_ms: {ms}\n"));
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Array(xs)
            if xs
                .iter()
                .all(|x| matches!(x, Value::String(_) | Value::Number(_))) =>
        {
            let items: Vec<String> = xs.iter().filter_map(scalar).collect();
            Some(format!("[{}]", items.join(", ")))
        }
        _ => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::String(s) => {
            for line in s.lines() {
                out.push_str(&format!("{pad}{line}\n"));
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hashes_are_hex_sha256() {
        let r = InputRecord::new("x", b"abc");
        assert_eq!(
            r.sha256,
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn text_rendering_lists_nested_values() {
        let mut r = RunReport::new("check", Some(3));
        r.results = serde_json::json!({"flags": {"a": true}, "list": ["1", "2"]});
        let t = r.to_text();
        assert!(t.contains("seed: 3\n"));
        assert!(t.contains("flags:\n  a: true\n"));
        assert!(t.contains("list: [1, 2]\n"));
    }
}
