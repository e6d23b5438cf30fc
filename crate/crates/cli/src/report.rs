//! Verification-suite reports: one named check per acceptance property,
//! bundled into suites with a seed and a wall-clock stamp.

use serde::Serialize;

/// Outcome of one verification check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    /// Stable identifier, unique within any suite.
    pub id: &'static str,
    /// Whether every assertion of the check held.
    pub pass: bool,
    /// Human-readable summary with the exact rationals that were measured.
    pub detail: String,
}

/// A named bundle of checks run under one seed.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    /// The suite that was run.
    pub suite_name: String,
    /// Seed used by the randomized portions.
    pub seed: u64,
    /// Wall-clock duration; the only nondeterministic field.
    pub elapsed_ms: u64,
    /// Check outcomes in declaration order.
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    /// True iff every check passed.
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Serialize)]
struct CheckJson<'a> {
    id: &'a str,
    status: &'a str,
    detail: &'a str,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    suite_name: &'a str,
    seed: u64,
    elapsed_ms: u64,
    overall: &'a str,
    checks: Vec<CheckJson<'a>>,
}

/// Renders the report as pretty JSON (keys sorted, trailing newline).
pub fn render_report(report: &SuiteReport) -> String {
    let json = ReportJson {
        suite_name: &report.suite_name,
        seed: report.seed,
        elapsed_ms: report.elapsed_ms,
        overall: if report.pass() { "pass" } else { "fail" },
        checks: report
            .checks
            .iter()
            .map(|c| CheckJson {
                id: c.id,
                status: if c.pass { "pass" } else { "fail" },
                detail: &c.detail,
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&json).expect("report serialization is total");
    out.push('\n');
    out
}
