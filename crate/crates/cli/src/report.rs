use serde::Serialize;
use serde_json::{Map, Value};

/// One result line of a run, with its supporting facts.
#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub name: String,
    pub ok: bool,
    pub facts: Map<String, Value>,
}

impl Item {
    pub fn new(name: impl Into<String>, ok: bool) -> Self {
        Item {
            name: name.into(),
            ok,
            facts: Map::new(),
        }
    }

    pub fn fact(mut self, key: &str, value: impl Serialize) -> Self {
        self.facts
            .insert(key.to_string(), serde_json::to_value(value).expect("facts serialize"));
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub status: String,
    pub exit_code: i32,
    pub items: Vec<Item>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl RunReport {
    pub fn new(status: impl Into<String>, exit_code: i32, items: Vec<Item>) -> Self {
        RunReport {
            command: Vec::new(),
            status: status.into(),
            exit_code,
            items,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("$ e2pm {}\n", self.command.join(" "));
        for item in &self.items {
            out.push_str(&format!("[{}] {}\n", if item.ok { "ok" } else { "FAIL" }, item.name));
            for (k, v) in &item.facts {
                render(&mut out, k, v);
            }
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("timing: {ms} ms\n"));
        }
        out.push_str(&format!("status: {} (exit {})\n", self.status, self.exit_code));
        out
    }
}

fn render(out: &mut String, key: &str, v: &Value) {
    match v {
        Value::String(s) => out.push_str(&format!("  {key}: {s}\n")),
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_string) => {
            out.push_str(&format!("  {key}:\n"));
            for s in items {
                out.push_str(&format!("    {}\n", s.as_str().expect("checked")));
            }
        }
        other => out.push_str(&format!("  {key}: {other}\n")),
    }
}
