//! Reports: an ordered list of named sections plus an exit code, rendered
//! as JSON or as indented text.

use serde_json::{json, Value};

/// Outcome of one named check inside a section.
pub fn check(name: &str, expected: Value, observed: Value, pass: bool) -> Value {
    json!({"check": name, "expected": expected, "observed": observed, "pass": pass})
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub title: String,
    pub mode: String,
    pub sections: Vec<(String, Value)>,
    pub notes: Vec<String>,
    pub exit_code: i32,
}

impl Report {
    pub fn new(title: impl Into<String>, mode: &str) -> Self {
        Report { title: title.into(), mode: mode.into(), sections: Vec::new(), notes: Vec::new(), exit_code: 0 }
    }

    pub fn section(&mut self, name: impl Into<String>, body: Value) {
        self.sections.push((name.into(), body));
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Keeps the most severe code seen.
    pub fn raise(&mut self, code: i32) {
        self.exit_code = self.exit_code.max(code);
    }

    /// Object keys are sorted and sections keep their order, so the output
    /// depends only on the contents.
    pub fn to_json(&self) -> String {
        let sections: Vec<Value> = self.sections.iter().map(|(n, b)| json!({"name": n, "result": b})).collect();
        let doc = json!({
            "schema": 1,
            "title": self.title,
            "mode": self.mode,
            "sections": sections,
            "notes": self.notes,
            "exit_code": self.exit_code,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} [{} mode]\n", self.title, self.mode);
        for (name, body) in &self.sections {
            out.push_str(&format!("\n== {name} ==\n"));
            render(body, 1, &mut out);
        }
        if !self.notes.is_empty() {
            out.push_str("\nnotes:\n");
            for n in &self.notes {
                out.push_str(&format!("  - {n}\n"));
            }
        }
        out.push_str(&format!("\nexit code: {}\n", self.exit_code));
        out
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar_text).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match scalar_text(val) {
                    Some(t) => out.push_str(&format!("{pad}{k}: {t}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(val, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar_text(item) {
                    Some(t) => out.push_str(&format!("{pad}- {t}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other).unwrap_or_default())),
    }
}
