//! Verification reports shared by every subcommand.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use rbm2_core::Op4;

/// Violations listed in full; the rest are only counted.
pub const MAX_LISTED: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ReportOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator: Option<Op4>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub status: Status,
    pub counts: BTreeMap<String, Value>,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl VerificationReport {
    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Collects counts and violations; the status follows from them on `finish`.
pub struct ReportBuilder {
    claim: String,
    assertive: bool,
    counts: BTreeMap<String, Value>,
    violations: Vec<Violation>,
    total_violations: u64,
    started: Instant,
}

impl ReportBuilder {
    pub fn assertive(claim: impl Into<String>) -> ReportBuilder {
        ReportBuilder::new(claim.into(), true)
    }

    pub fn report_only(claim: impl Into<String>) -> ReportBuilder {
        ReportBuilder::new(claim.into(), false)
    }

    fn new(claim: String, assertive: bool) -> ReportBuilder {
        ReportBuilder {
            claim,
            assertive,
            counts: BTreeMap::new(),
            violations: Vec::new(),
            total_violations: 0,
            started: Instant::now(),
        }
    }

    pub fn count(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.counts.insert(key.into(), value.into());
        self
    }

    pub fn violation(&mut self, operator: Option<Op4>, reason: impl Into<String>) -> &mut Self {
        self.total_violations += 1;
        if self.violations.len() < MAX_LISTED {
            self.violations.push(Violation {
                operator,
                reason: reason.into(),
            });
        }
        self
    }

    pub fn has_violations(&self) -> bool {
        self.total_violations > 0
    }

    pub fn finish(mut self, timing: bool) -> VerificationReport {
        let status = match (self.assertive, self.total_violations) {
            (false, _) => Status::ReportOnly,
            (true, 0) => Status::Pass,
            (true, _) => Status::Fail,
        };
        self.counts
            .insert("violations".into(), self.total_violations.into());
        VerificationReport {
            claim: self.claim,
            status,
            counts: self.counts,
            violations: self.violations,
            wall_time_ms: timing.then(|| self.started.elapsed().as_millis() as u64),
        }
    }
}

/// One line per report, e.g. `PASS  weight0-dichotomy-F3  members=161 violations=0`.
pub fn human_summary(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let tag = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ReportOnly => "INFO",
        };
        let counts: Vec<String> = r
            .counts
            .iter()
            .map(|(k, v)| format!("{k}={}", compact(v)))
            .collect();
        out.push_str(&format!("{tag:<5} {}  {}\n", r.claim, counts.join(" ")));
        for v in &r.violations {
            match &v.operator {
                Some(op) => out.push_str(&format!("      {}: {op}\n", v.reason)),
                None => out.push_str(&format!("      {}\n", v.reason)),
            }
        }
    }
    out
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_violations() {
        let mut b = ReportBuilder::assertive("x");
        b.count("n", 3);
        let r = b.finish(false);
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.wall_time_ms, None);
        let mut b = ReportBuilder::assertive("y");
        for _ in 0..100 {
            b.violation(None, "bad");
        }
        let r = b.finish(true);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.violations.len(), MAX_LISTED);
        assert_eq!(r.counts["violations"], 100);
        let mut b = ReportBuilder::report_only("z");
        b.violation(None, "note");
        assert_eq!(b.finish(false).status, Status::ReportOnly);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains(r#""status":"fail""#));
    }
}
