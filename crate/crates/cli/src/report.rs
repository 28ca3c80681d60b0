use serde::{Deserialize, Serialize};
use serde_json::Value;

use gbf_core::verdict::{Verdict, SCHEMA_VERSION};

/// Run metadata, excluded from golden comparisons.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub wall_ms: u64,
}

/// The single structured document emitted per invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    pub parameters: Value,
    pub verdict: Option<Verdict>,
    /// Command-specific results (matrices, witnesses).
    pub payload: Option<Value>,
    pub timings: Timings,
    pub cache_hits: u32,
}

impl ReportDocument {
    pub fn new(command: &str, parameters: Value) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            parameters,
            verdict: None,
            payload: None,
            timings: Timings::default(),
            cache_hits: 0,
        }
    }

    /// The document without run metadata.
    pub fn canonical(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("timings");
            obj.remove("cache_hits");
        }
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
