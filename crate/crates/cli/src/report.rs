//! Machine-readable run reports. Checks are sorted by name before
//! serialization so report content is order-independent.

use std::collections::BTreeMap;
use std::time::Instant;

use kbraid::verify::Check;
use serde::Serialize;

#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub cartan: String,
    pub status: String,
    pub checks: Vec<Check>,
    pub timing_ms: u128,
    #[serde(flatten)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

impl RunReport {
    pub fn new(command: &str, cartan: &str, mut checks: Vec<Check>, started: Instant) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let status = if checks.iter().all(|c| c.pass) {
            "pass"
        } else {
            "fail"
        };
        RunReport {
            command: command.to_string(),
            cartan: cartan.to_string(),
            status: status.to_string(),
            checks,
            timing_ms: started.elapsed().as_millis(),
            extra: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: serde_json::Value) -> Self {
        self.extra.insert(key.to_string(), value);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn print_json(&self) {
        println!("{}", serde_json::to_string(self).expect("report serializes"));
    }

    pub fn print_human_summary(&self) {
        for check in self.checks.iter().filter(|c| !c.pass) {
            println!("FAIL  {} — {}", check.name, check.detail);
        }
        println!(
            "{} [{}]: {} ({} checks, {} ms)",
            self.command,
            self.cartan,
            self.status,
            self.checks.len(),
            self.timing_ms
        );
    }
}
