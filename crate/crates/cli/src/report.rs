use chrono::{DateTime, SecondsFormat, Utc};
use serde::Serialize;
use serde_json::{json, Value};

use crate::json::to_canonical_string;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Wall clock, or a fixed instant when `SOURCE_DATE_EPOCH` is set so that
/// reports can be compared byte for byte.
pub fn timestamp() -> String {
    let fixed = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|secs| DateTime::<Utc>::from_timestamp(secs, 0));
    fixed.unwrap_or_else(Utc::now).to_rfc3339_opts(SecondsFormat::Millis, true)
}

/// Top-level envelope shared by every command.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: &'static str,
    pub config: Value,
    pub results: Value,
    pub violations: u64,
    pub started_at: String,
    pub finished_at: String,
}

impl RunReport {
    pub fn new(command: &'static str, config: impl Serialize, started_at: String) -> Self {
        Self {
            command,
            config: to_value(config),
            results: Value::Null,
            violations: 0,
            started_at,
            finished_at: String::new(),
        }
    }

    pub fn finish(mut self, results: Value, violations: u64) -> Self {
        self.results = results;
        self.violations = violations;
        self.finished_at = timestamp();
        self
    }

    pub fn to_value(&self) -> Value {
        json!({
            "version": VERSION,
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "violations": self.violations,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
        })
    }

    pub fn to_json(&self) -> String {
        to_canonical_string(&self.to_value())
    }
}

pub fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("report values serialize to JSON")
}
