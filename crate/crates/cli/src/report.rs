//! Verification reports and their text/JSON rendering.

use rootlift::lifts::{Mismatch, Verdict};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root_system: Option<String>,
    pub verdict: Verdict,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compared: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Check {
    pub fn new(name: &str, root: Option<&str>, ok: bool, summary: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            root_system: root.map(Into::into),
            verdict: Verdict::from_bool(ok),
            summary: summary.into(),
            compared: None,
            first_mismatch: None,
            data: Value::Null,
        }
    }

    pub fn with_data<T: Serialize>(mut self, data: &T) -> Self {
        self.data = serde_json::to_value(data).expect("report data serializes");
        self
    }

    pub fn error(name: &str, root: Option<&str>, e: impl std::fmt::Display) -> Self {
        Check::new(name, root, false, format!("error: {e}"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigSummary {
    pub root_systems: Vec<String>,
    pub q_prec: i64,
    pub xi_prec: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Stats {
    pub wall_clock_ms: u128,
    pub cache_hits: usize,
    pub cache_misses: usize,
    pub cache_writes: usize,
    pub cache_enabled: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub command: String,
    pub version: String,
    pub config: ConfigSummary,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<Stats>,
}

impl VerificationReport {
    pub fn new(command: &str, config: ConfigSummary, checks: Vec<Check>) -> Self {
        let ok = checks.iter().all(|c| c.verdict.is_pass());
        VerificationReport {
            command: command.into(),
            version: crate::VERSION.into(),
            config,
            checks,
            verdict: Verdict::from_bool(ok),
            stats: None,
        }
    }

    /// Pretty JSON with object keys sorted.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.verdict.is_pass() { "PASS" } else { "FAIL" };
            let root = c.root_system.as_deref().map(|r| format!(" [{r}]")).unwrap_or_default();
            out.push_str(&format!("{tag} {}{root}: {}\n", c.name, c.summary));
            if let Some(m) = &c.first_mismatch {
                out.push_str(&format!(
                    "     first mismatch at q^{} ζ^({}) ξ^{}: {} vs {}\n",
                    m.n,
                    m.l.join(", "),
                    m.m,
                    m.left,
                    m.right
                ));
            }
        }
        if let Some(s) = &self.stats {
            out.push_str(&format!(
                "time {} ms, cache {} hits / {} misses / {} writes{}\n",
                s.wall_clock_ms,
                s.cache_hits,
                s.cache_misses,
                s.cache_writes,
                if s.cache_enabled { "" } else { " (disabled)" }
            ));
        }
        let n = self.checks.len();
        let failed = self.checks.iter().filter(|c| !c.verdict.is_pass()).count();
        out.push_str(&format!(
            "{}: {} of {n} checks passed\n",
            if failed == 0 { "pass" } else { "fail" },
            n - failed
        ));
        out
    }
}
