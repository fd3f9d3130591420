use std::collections::BTreeMap;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutcomeKind {
    Value,
    Witness,
    Certificate,
    Counterexample,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub seed: Option<u64>,
    /// Seconds since the Unix epoch; only filled in when timing is requested.
    pub timestamp: Option<u64>,
    pub runtime_ms: Option<f64>,
}

/// One line of machine-readable output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub outcome: OutcomeKind,
    pub payload: Value,
    pub provenance: Provenance,
}

impl ResultRecord {
    pub fn new(command: &str, outcome: OutcomeKind, payload: Value) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            outcome,
            payload,
            provenance: Provenance {
                version: ARTIFACT_VERSION.to_string(),
                seed: None,
                timestamp: None,
                runtime_ms: None,
            },
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.provenance.seed = Some(seed);
        self
    }

    pub fn stamp(&mut self, runtime: Duration) {
        self.provenance.timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
        self.provenance.runtime_ms = Some(runtime.as_secs_f64() * 1e3);
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialise")
    }
}
