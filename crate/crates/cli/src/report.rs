//! Report documents: check results plus the inputs they were computed from.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde_json::{json, Map, Value};
use weakhopf::io::SCHEMA_VERSION;
use weakhopf::report::{CheckReport, Outcome};

use crate::ReportFormat;

pub fn check_to_value(r: &CheckReport) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), Value::from(r.name.clone()));
    let outcome = match &r.outcome {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::Skipped(why) => {
            m.insert("reason".into(), Value::from(why.clone()));
            "skipped"
        }
    };
    m.insert("outcome".into(), Value::from(outcome));
    if r.witness_count > 0 {
        m.insert("witness-count".into(), Value::from(r.witness_count));
        let ws = r
            .witnesses
            .iter()
            .map(|w| json!({"index": w.index, "expected": w.expected.to_string(), "actual": w.actual.to_string()}))
            .collect();
        m.insert("witnesses".into(), Value::Array(ws));
    }
    if !r.info.is_empty() {
        // Ordered as recorded, not by key.
        let info = r.info.iter().map(|(k, v)| json!([k, v])).collect();
        m.insert("info".into(), Value::Array(info));
    }
    if !r.notes.is_empty() {
        m.insert("notes".into(), json!(r.notes));
    }
    if !r.children.is_empty() {
        m.insert("children".into(), Value::Array(r.children.iter().map(check_to_value).collect()));
    }
    Value::Object(m)
}

/// Checks in order, with the hashes of every input file.
pub struct ReportDocument {
    command: String,
    inputs: BTreeMap<String, String>,
    checks: Vec<(CheckReport, Option<Duration>)>,
    timings: bool,
}

impl ReportDocument {
    pub fn new(command: &str, timings: bool) -> Self {
        ReportDocument {
            command: command.into(),
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            timings,
        }
    }

    pub fn input(&mut self, name: String, sha256: String) {
        self.inputs.insert(name, sha256);
    }

    pub fn push(&mut self, r: CheckReport) {
        self.checks.push((r, None));
    }

    /// Runs `f`, recording its wall time when timings are on.
    pub fn timed(&mut self, f: impl FnOnce() -> CheckReport) {
        let start = Instant::now();
        let r = f();
        let took = self.timings.then(|| start.elapsed());
        self.checks.push((r, took));
    }

    /// True when no check failed; skipped checks count as passing.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(r, _)| !r.failed_outcome())
    }

    pub fn to_value(&self) -> Value {
        let checks = self
            .checks
            .iter()
            .map(|(r, t)| {
                let mut v = check_to_value(r);
                if let (Some(t), Value::Object(m)) = (t, &mut v) {
                    m.insert("wall-time-ms".into(), Value::from(t.as_secs_f64() * 1e3));
                }
                v
            })
            .collect();
        json!({
            "kind": "report",
            "schema-version": SCHEMA_VERSION,
            "tool-version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "inputs": self.inputs,
            "passed": self.passed(),
            "checks": Value::Array(checks),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, hash) in &self.inputs {
            out.push_str(&format!("input {name} sha256={hash}\n"));
        }
        for (r, t) in &self.checks {
            let text = r.to_text();
            match t {
                Some(t) => {
                    let (first, rest) = text.split_once('\n').unwrap_or((&text, ""));
                    out.push_str(&format!("{first} ({:.1} ms)\n{rest}", t.as_secs_f64() * 1e3));
                }
                None => out.push_str(&text),
            }
        }
        out.push_str(if self.passed() { "overall: PASS\n" } else { "overall: FAIL\n" });
        out
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_value()).expect("plain data");
                s.push('\n');
                s
            }
            ReportFormat::Text => self.to_text(),
        }
    }
}
