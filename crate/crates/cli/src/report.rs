use std::io::Write;

use anyhow::Result;
use metric_geom::report::Check;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Output of `compute` and `suite`. Everything except `timing_ms` is a
/// function of the inputs.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub space: String,
    pub seed: u64,
    pub result: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: String, inputs: &Value, space: String, seed: u64, result: Value, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Report { command, inputs_digest: digest(inputs), space, seed, result, checks, pass, timing_ms: 0.0 }
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&serde_json::to_value(self)?)?)
    }

    /// One row per check. Drops `result`.
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["command", "name", "lhs", "rhs", "slack", "pass"])?;
        for c in &self.checks {
            w.write_record([
                self.command.clone(),
                c.name.clone(),
                c.lhs.to_string(),
                c.rhs.to_string(),
                c.slack.to_string(),
                c.pass.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// SHA-256 of the canonical (sorted-key, compact) JSON form.
pub fn digest(v: &Value) -> String {
    let canonical = serde_json::to_string(v).expect("values always serialize");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// Collapses a batch of checks of one property into its worst instance,
/// named `name` and suffixed with the instance count.
pub fn worst(name: &str, checks: impl IntoIterator<Item = Check>) -> Check {
    let mut count = 0usize;
    let mut out: Option<Check> = None;
    for c in checks {
        count += 1;
        if out.as_ref().is_none_or(|o| c.slack < o.slack || (!c.pass && o.pass)) {
            out = Some(c);
        }
    }
    let mut c = out.unwrap_or_else(|| Check::flag(name, false));
    c.name = format!("{name} ({count} cases)");
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_ignores_key_order() {
        let a: Value = serde_json::from_str(r#"{"b": 1, "a": [1, 2]}"#).unwrap();
        let b: Value = serde_json::from_str(r#"{"a": [1, 2], "b": 1}"#).unwrap();
        assert_eq!(digest(&a), digest(&b));
    }

    #[test]
    fn worst_picks_smallest_slack() {
        let c = worst("p", [Check::le("a", 1.0, 3.0, 0.0), Check::le("b", 1.0, 1.5, 0.0)]);
        assert_eq!(c.slack, 0.5);
        assert_eq!(c.name, "p (2 cases)");
        assert!(!worst("q", []).pass);
    }
}
