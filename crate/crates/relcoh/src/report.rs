//! Report envelope shared by every command, rendered as text or JSON.

use serde::Serialize;
use serde_json::Value;

/// Version of `report.schema.json`.
pub const SCHEMA_VERSION: u32 = 1;

/// The JSON schema reports validate against.
pub const SCHEMA: &str = include_str!("../report.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// A verdict or value was computed.
    Ok,
    /// No decision procedure applies to this input.
    Unsupported,
    /// A search or semi-decision ran out of budget, or a hypothesis failed.
    Inconclusive,
    Timeout,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Error => 1,
            Status::Unsupported | Status::Inconclusive | Status::Timeout => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub status: Status,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: &str, seed: u64, status: Status) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            status,
            seed,
            result: None,
            error: None,
        }
    }

    pub fn with_result(mut self, result: Value) -> Self {
        self.result = Some(result);
        self
    }

    pub fn with_error(mut self, message: impl Into<String>) -> Self {
        self.error = Some(message.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// `key: value` lines; nested values are printed as compact JSON.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, status_word(self.status));
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        if let Some(Value::Object(map)) = &self.result {
            for (k, v) in map {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out.push_str(&format!("{k}: {shown}\n"));
            }
        }
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Unsupported => "unsupported",
        Status::Inconclusive => "inconclusive",
        Status::Timeout => "timeout",
        Status::Error => "error",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn exit_codes() {
        assert_eq!(Status::Ok.exit_code(), 0);
        assert_eq!(Status::Error.exit_code(), 1);
        assert_eq!(Status::Unsupported.exit_code(), 2);
        assert_eq!(Status::Timeout.exit_code(), 2);
    }

    #[test]
    fn text_lists_result_fields_in_order() {
        let r = Report::new("cd", 0, Status::Ok).with_result(json!({"cd": 1, "radical": ["x"]}));
        assert_eq!(r.to_text(), "cd: ok\ncd: 1\nradical: [\"x\"]\n");
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["status"], "ok");
        assert!(v.get("error").is_none());
    }
}
