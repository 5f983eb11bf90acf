use std::path::Path;

use serde::{Serialize, Serializer};

use crate::CliError;

/// One line of a report: what was expected, what was measured, and how far
/// apart they may be.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub measured: String,
    pub tolerance: String,
    pub passed: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        expected: impl ToString,
        measured: impl ToString,
        tolerance: impl ToString,
        passed: bool,
    ) -> Self {
        Check {
            name: name.into(),
            expected: expected.to_string(),
            measured: measured.to_string(),
            tolerance: tolerance.to_string(),
            passed,
        }
    }

    /// `|measured - expected| <= tol`.
    pub fn close(name: impl Into<String>, expected: f64, measured: f64, tol: f64) -> Self {
        let passed = (measured - expected).abs() <= tol;
        Check::new(
            name,
            format!("{expected:.12}"),
            format!("{measured:.12}"),
            format!("{tol:.0e}"),
            passed,
        )
    }

    pub fn exact(
        name: impl Into<String>,
        expected: impl ToString,
        measured: impl ToString,
    ) -> Self {
        let (e, m) = (expected.to_string(), measured.to_string());
        let passed = e == m;
        Check::new(name, e, m, "exact", passed)
    }
}

/// Structured record of one invocation. Field order is fixed; wall time is
/// only present when requested, so reports are otherwise reproducible.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    pub seed: u64,
    #[serde(serialize_with = "ordered_map")]
    pub inputs: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

fn ordered_map<S: Serializer>(pairs: &[(String, String)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(pairs.iter().map(|(k, v)| (k, v)))
}

impl RunReport {
    pub fn new(command: &str, seed: u64) -> Self {
        RunReport {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed,
            inputs: Vec::new(),
            checks: Vec::new(),
            passed: true,
            wall_time_ms: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.push((key.into(), value.to_string()));
    }

    pub fn push(&mut self, check: Check) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn table(&self) -> String {
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let mut out = format!(
            "{:<width$}  {:>20}  {:>20}  {:>9}  status\n",
            "check", "expected", "measured", "tolerance"
        );
        for c in &self.checks {
            out.push_str(&format!(
                "{:<width$}  {:>20}  {:>20}  {:>9}  {}\n",
                c.name,
                c.expected,
                c.measured,
                c.tolerance,
                if c.passed { "PASS" } else { "FAIL" }
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "{} checks, {} failed\n",
            self.checks.len(),
            failed
        ));
        if let Some(ms) = self.wall_time_ms {
            out.push_str(&format!("wall time {ms} ms\n"));
        }
        out
    }

    pub fn write_json(&self, path: &Path) -> Result<(), CliError> {
        let text =
            serde_json::to_string_pretty(self).map_err(|e| CliError::input(e.to_string()))?;
        std::fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_status_is_the_and_of_checks() {
        let mut r = RunReport::new("t", 3);
        r.push(Check::close("a", 1.0, 1.0 + 1e-9, 1e-6));
        assert!(r.passed);
        r.push(Check::exact("b", "27/64", "27/65"));
        assert!(!r.passed);
        assert_eq!(
            r.failures().map(|c| c.name.as_str()).collect::<Vec<_>>(),
            vec!["b"]
        );
        let table = r.table();
        assert!(table.ends_with("2 checks, 1 failed\n"));
        assert!(table.lines().nth(2).unwrap().ends_with("FAIL"));
    }

    #[test]
    fn json_field_order_is_fixed() {
        let mut r = RunReport::new("t", 0);
        r.input("z", 1);
        r.input("a", 2);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            format!(
                r#"{{"command":"t","version":"{}","seed":0,"inputs":{{"z":"1","a":"2"}},"checks":[],"passed":true}}"#,
                env!("CARGO_PKG_VERSION")
            )
        );
    }
}
