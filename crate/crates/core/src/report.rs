use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of an exhaustive verification sweep.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub checked: u64,
    pub counterexamples: Vec<Value>,
    /// Probes of unproven statements; their failures are reported but do
    /// not count as a verification failure.
    #[serde(default)]
    pub experimental: bool,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn experimental(name: impl Into<String>) -> Self {
        Report {
            experimental: true,
            ..Report::new(name)
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Record one check; the payload is kept only on failure.
    pub fn record(&mut self, ok: bool, payload: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.counterexamples.push(payload());
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.counterexamples.extend(other.counterexamples);
    }
}
