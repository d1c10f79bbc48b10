use serde::Serialize;
use serde_json::{Map, Value};

/// Version of the JSON report layout. Bump on incompatible changes.
pub const SCHEMA: &str = "copguard-report/1";

/// JSON report printed by every command. Keys keep insertion order so the
/// output is byte-identical for identical runs (timing excluded).
pub struct Report {
    fields: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, input: Value) -> Self {
        let mut fields = Map::new();
        fields.insert("schema".into(), SCHEMA.into());
        fields.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        fields.insert("command".into(), command.into());
        fields.insert("input".into(), input);
        Report { fields }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.fields.insert(key.into(), v);
        self
    }

    pub fn verdict(&self) -> Option<&Value> {
        self.fields.get("verdict")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.fields).expect("report serializes")
    }
}

/// Renders a verdict for comparison with `--expect`: strings as-is,
/// everything else as compact JSON.
pub fn verdict_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
