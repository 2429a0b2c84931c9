//! Certification reports: one record per check, rendered as JSON or Markdown.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "lie-cert-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub target: String,
    /// The statement the check certifies.
    pub reference: String,
    pub status: Status,
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl CheckRecord {
    pub fn new(name: &str, target: &str, reference: &str, pass: bool, witness: Value) -> Self {
        CheckRecord {
            name: name.to_string(),
            target: target.to_string(),
            reference: reference.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            witness,
            timing_ms: None,
        }
    }

    pub fn error(name: &str, target: &str, reference: &str, message: String) -> Self {
        CheckRecord {
            name: name.to_string(),
            target: target.to_string(),
            reference: reference.to_string(),
            status: Status::Error,
            witness: Value::String(message),
            timing_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Skipped {
    pub name: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Config {
    pub types: Vec<String>,
    pub seed: u64,
    pub budget: u64,
    pub denominator_bound: Option<u64>,
    pub samples: usize,
    pub allow_large: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub config: Config,
    pub checks: Vec<CheckRecord>,
    pub skipped: Vec<Skipped>,
    pub verdict: Status,
}

impl Report {
    pub fn new(command: Vec<String>, config: Config, checks: Vec<CheckRecord>, skipped: Vec<Skipped>) -> Self {
        let verdict = if checks.iter().all(|c| c.passed()) {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            schema: SCHEMA,
            command,
            config,
            checks,
            skipped,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# lie-cert report ({})\n\n", self.schema));
        out.push_str(&format!("command: `{}`\n\n", self.command.join(" ")));
        let c = &self.config;
        out.push_str(&format!(
            "seed {}, budget {}, denominator bound {}, samples {}, types {}\n\n",
            c.seed,
            c.budget,
            c.denominator_bound.map_or("default".to_string(), |d| d.to_string()),
            c.samples,
            c.types.join(", ")
        ));
        out.push_str("| check | target | status | statement |\n|---|---|---|---|\n");
        for r in &self.checks {
            let status = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
            };
            let time = r.timing_ms.map_or(String::new(), |t| format!(" ({t} ms)"));
            out.push_str(&format!(
                "| {}{} | {} | {} | {} |\n",
                r.name, time, r.target, status, r.reference
            ));
        }
        if !self.skipped.is_empty() {
            out.push_str("\nSkipped:\n\n");
            for s in &self.skipped {
                out.push_str(&format!("- {}: {}\n", s.name, s.reason));
            }
        }
        for r in self.checks.iter().filter(|r| !r.passed()) {
            out.push_str(&format!(
                "\n## {} on {}\n\n```json\n{}\n```\n",
                r.name, r.target, r.witness
            ));
        }
        out.push_str(&format!("\nverdict: {}\n", if self.passed() { "pass" } else { "FAIL" }));
        out
    }
}
