//! Verification reports and their JSON and Markdown renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::config::ReportFormat;
use crate::error::{Error, Result};

/// How a residual is compared with its tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Below,
    #[serde(rename = ">")]
    Above,
    #[serde(rename = ">=")]
    AtLeast,
}

impl Relation {
    pub fn holds(self, residual: f64, tolerance: f64) -> bool {
        match self {
            Relation::Below => residual < tolerance,
            Relation::Above => residual > tolerance,
            Relation::AtLeast => residual >= tolerance,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Below => "<",
            Relation::Above => ">",
            Relation::AtLeast => ">=",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub tag: String,
    /// `None` when the check raised an error.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub relation: Relation,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckRecord {
    pub fn measured(
        id: String,
        tag: String,
        residual: f64,
        tolerance: f64,
        relation: Relation,
    ) -> Self {
        let verdict = if residual.is_finite() && relation.holds(residual, tolerance) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let (residual, error) = if residual.is_finite() {
            (Some(residual), None)
        } else {
            (None, Some(format!("non-finite residual {residual}")))
        };
        CheckRecord {
            id,
            tag,
            residual,
            tolerance,
            relation,
            verdict,
            error,
        }
    }

    pub fn errored(
        id: String,
        tag: String,
        tolerance: f64,
        relation: Relation,
        err: &Error,
    ) -> Self {
        CheckRecord {
            id,
            tag,
            residual: None,
            tolerance,
            relation,
            verdict: Verdict::Fail,
            error: Some(err.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub version: String,
    pub seed: u64,
    /// Sign conventions the checks were run under.
    pub calibration: BTreeMap<String, String>,
    pub checks: Vec<CheckRecord>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn new(suite: &str, seed: u64, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let verdict = if checks.iter().all(|c| c.verdict == Verdict::Pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        VerificationReport {
            suite: suite.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed,
            calibration: calibration(),
            checks,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Usage(format!("report: {e}")))
    }
}

fn calibration() -> BTreeMap<String, String> {
    [
        ("commutator", "[J_m, J_n] = i eps_mnp J_p"),
        ("chern", "C(gamma_h) = -2h, counterclockwise outward faces"),
        (
            "holonomy",
            "counterclockwise loop of solid angle W: exp(i h W) = exp(-i C W / 2)",
        ),
        ("parallel", "J_par = h k_hat on every chart"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect()
}

pub fn emit_report(report: &VerificationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s =
                serde_json::to_string_pretty(report).expect("reports contain only finite numbers");
            s.push('\n');
            s
        }
        ReportFormat::Md => markdown(report),
    }
}

fn markdown(r: &VerificationReport) -> String {
    let mut s = String::new();
    let verdict = if r.passed() { "PASS" } else { "FAIL" };
    let _ = writeln!(s, "# Verification report: {}\n", r.suite);
    let _ = writeln!(
        s,
        "version {}, seed {}, verdict **{verdict}**\n",
        r.version, r.seed
    );
    let _ = writeln!(s, "| tag | check | residual | bound | verdict |");
    let _ = writeln!(s, "|---|---|---|---|---|");
    for c in &r.checks {
        let res = c
            .residual
            .map_or_else(|| "error".to_string(), |x| format!("{x:.3e}"));
        let v = match c.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
        };
        let _ = writeln!(
            s,
            "| {} | `{}` | {res} | {} {:.1e} | {v} |",
            c.tag,
            c.id,
            c.relation.symbol(),
            c.tolerance
        );
    }
    if r.checks.iter().any(|c| c.error.is_some()) {
        let _ = writeln!(s, "\n## Errors\n");
        for c in r.checks.iter().filter(|c| c.error.is_some()) {
            let _ = writeln!(
                s,
                "- `{}`: {}",
                c.id,
                c.error.as_deref().unwrap_or_default()
            );
        }
    }
    let _ = writeln!(s, "\n## Conventions\n");
    for (k, v) in &r.calibration {
        let _ = writeln!(s, "- {k}: `{v}`");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_passes() {
        let r = VerificationReport::new("gauge", 42, vec![]);
        assert!(r.passed());
        let json = emit_report(&r, ReportFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["checks"].as_array().unwrap().len(), 0);
        assert_eq!(v["verdict"], "pass");
        assert!(emit_report(&r, ReportFormat::Md).contains("**PASS**"));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let checks = vec![
            CheckRecord::measured(
                "b".into(),
                "so3".into(),
                1.234_567_890_123e-13,
                1e-10,
                Relation::Below,
            ),
            CheckRecord::measured("a".into(), "closure".into(), 0.7, 0.1, Relation::Above),
            CheckRecord::measured(
                "c".into(),
                "obstruction".into(),
                f64::NAN,
                1.0,
                Relation::AtLeast,
            ),
            CheckRecord::errored(
                "d".into(),
                "chern".into(),
                0.5,
                Relation::Below,
                &Error::Refine("coarse".into()),
            ),
        ];
        let r = VerificationReport::new("all", 1, checks);
        assert_eq!(r.checks[0].id, "a");
        assert!(!r.passed() && r.failures().count() == 2);
        let json = emit_report(&r, ReportFormat::Json);
        let back = VerificationReport::from_json(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(emit_report(&back, ReportFormat::Json), json);
    }
}
