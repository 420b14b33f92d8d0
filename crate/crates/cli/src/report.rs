//! Command reports. The text form is rendered from the JSON value, so both
//! carry the same numbers.

use serde_json::{json, Map, Value};

use crate::error::{EXIT_CROSS_CHECK, EXIT_OK};

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            results: Map::new(),
            checks: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> &mut Self {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
        self
    }

    pub fn warn(&mut self, message: impl Into<String>) -> &mut Self {
        self.warnings.push(message.into());
        self
    }

    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().all(|c| c.passed) {
            EXIT_OK
        } else {
            EXIT_CROSS_CHECK
        }
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect();
        json!({
            "command": self.command,
            "results": Value::Object(self.results.clone()),
            "checks": checks,
            "warnings": self.warnings,
            "exit": self.exit_code(),
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        render_object(&self.results, 0, &mut out);
        if !self.checks.is_empty() {
            out.push_str("checks:\n");
            for c in &self.checks {
                let mark = if c.passed { "ok" } else { "FAILED" };
                out.push_str(&format!("  {mark} {}: {}\n", c.name, c.detail));
            }
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out.push_str(&format!("exit: {}\n", self.exit_code()));
        out
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && is_flat(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn render_object(map: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    for (k, v) in map {
        if is_flat(v) {
            out.push_str(&format!("{pad}{k}: {}\n", inline(v)));
            continue;
        }
        out.push_str(&format!("{pad}{k}:\n"));
        render_value(v, indent + 2, out);
    }
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => render_object(m, indent, out),
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(m) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_object(m, indent + 2, out);
                    }
                    other if is_flat(other) => out.push_str(&format!("{pad}- {}\n", inline(other))),
                    other => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(other, indent + 2, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}
