//! Verification reports and their structured, tabular and human renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith::ExactRational;
use crate::error::{Error, Result};
use crate::ENGINE_VERSION;

/// Version of the structured and tabular report layouts.
pub const REPORT_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimKind {
    Theorem,
    Identity,
    Lemma,
    Recurrence,
    Certificate,
    Conjecture,
}

impl ClaimKind {
    /// Findings are reported but do not fail a run unless strict mode asks.
    pub fn is_finding(self) -> bool {
        matches!(self, ClaimKind::Conjecture)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimKind::Theorem => "theorem",
            ClaimKind::Identity => "identity",
            ClaimKind::Lemma => "lemma",
            ClaimKind::Recurrence => "recurrence",
            ClaimKind::Certificate => "certificate",
            ClaimKind::Conjecture => "conjecture",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureReason {
    /// Both sides evaluated and disagree.
    Mismatch,
    /// The difference has a denominator sharing a factor with the modulus.
    IllPosed,
    /// Evaluation itself failed.
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub index: u64,
    pub reason: FailureReason,
    pub lhs: Option<ExactRational>,
    pub rhs: Option<ExactRational>,
    /// `lhs - rhs` reduced modulo the claim's modulus, or the raw difference
    /// for identities.
    pub residue: Option<String>,
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Note {
    pub index: Option<u64>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub kind: ClaimKind,
    pub statement: String,
    pub first: u64,
    pub last: u64,
    pub status: Status,
    pub checked: u64,
    pub passed: u64,
    pub failures: Vec<Failure>,
    pub notes: Vec<Note>,
    pub details: BTreeMap<String, String>,
    pub elapsed_ms: Option<u64>,
    pub engine_version: String,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }
}

/// Accumulates per-index outcomes into a [`VerificationReport`].
pub struct ReportBuilder {
    report: VerificationReport,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(claim: impl Into<String>, kind: ClaimKind, statement: impl Into<String>) -> Self {
        ReportBuilder {
            report: VerificationReport {
                claim: claim.into(),
                kind,
                statement: statement.into(),
                first: 0,
                last: 0,
                status: Status::Pass,
                checked: 0,
                passed: 0,
                failures: vec![],
                notes: vec![],
                details: BTreeMap::new(),
                elapsed_ms: None,
                engine_version: ENGINE_VERSION.to_string(),
            },
            started: Instant::now(),
        }
    }

    pub fn range(mut self, first: u64, last: u64) -> Self {
        self.report.first = first;
        self.report.last = last;
        self
    }

    pub fn pass(&mut self) {
        self.report.checked += 1;
        self.report.passed += 1;
    }

    pub fn fail(&mut self, failure: Failure) {
        self.report.checked += 1;
        self.report.failures.push(failure);
    }

    pub fn note(&mut self, index: Option<u64>, message: impl Into<String>) {
        self.report.notes.push(Note {
            index,
            message: message.into(),
        });
    }

    pub fn detail(&mut self, key: impl Into<String>, value: impl ToString) {
        self.report.details.insert(key.into(), value.to_string());
    }

    pub fn finish(self, timings: bool) -> VerificationReport {
        let mut r = self.report;
        r.failures.sort_by_key(|f| f.index);
        r.notes.sort_by_key(|n| n.index);
        r.status = if r.failures.is_empty() { Status::Pass } else { Status::Fail };
        if timings {
            r.elapsed_ms = Some(self.started.elapsed().as_millis() as u64);
        }
        r
    }
}

#[derive(Serialize, Deserialize)]
struct ReportDocument {
    format: String,
    version: u32,
    reports: Vec<VerificationReport>,
}

/// Structured JSON document holding a list of reports.
pub fn to_structured(reports: &[VerificationReport]) -> String {
    let doc = ReportDocument {
        format: "binsum-report".into(),
        version: REPORT_FORMAT_VERSION,
        reports: reports.to_vec(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
    s.push('\n');
    s
}

pub fn from_structured(text: &str) -> Result<Vec<VerificationReport>> {
    let doc: ReportDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("report document: {e}")))?;
    if doc.format != "binsum-report" || doc.version != REPORT_FORMAT_VERSION {
        return Err(Error::Parse(format!(
            "unsupported report format {} v{}",
            doc.format, doc.version
        )));
    }
    Ok(doc.reports)
}

/// Tab-separated table, one row per claim.
pub fn to_tabular(reports: &[VerificationReport]) -> String {
    let mut out = format!("# binsum-report-table v{REPORT_FORMAT_VERSION}\n");
    out.push_str("claim\tkind\tstatus\tfirst\tlast\tchecked\tpassed\tfailures\tfirst_failure\telapsed_ms\n");
    for r in reports {
        let first_failure = r
            .failures
            .first()
            .map(|f| f.index.to_string())
            .unwrap_or_else(|| "-".into());
        let elapsed = r.elapsed_ms.map(|e| e.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.claim,
            r.kind.as_str(),
            if r.passed() { "pass" } else { "fail" },
            r.first,
            r.last,
            r.checked,
            r.passed,
            r.failures.len(),
            first_failure,
            elapsed
        );
    }
    out
}

pub fn to_human(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let tag = match (r.passed(), r.kind.is_finding()) {
            (true, _) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FINDING",
        };
        let _ = writeln!(
            out,
            "[{tag}] {} ({}) {}..={}: {}/{} checked indices pass",
            r.claim,
            r.kind.as_str(),
            r.first,
            r.last,
            r.passed,
            r.checked
        );
        let _ = writeln!(out, "       {}", r.statement);
        for (k, v) in &r.details {
            let _ = writeln!(out, "       {k} = {v}");
        }
        for n in &r.notes {
            match n.index {
                Some(i) => {
                    let _ = writeln!(out, "       note @{i}: {}", n.message);
                }
                None => {
                    let _ = writeln!(out, "       note: {}", n.message);
                }
            }
        }
        for f in r.failures.iter().take(10) {
            let show = |v: &Option<ExactRational>| {
                v.as_ref().map(|x| x.to_string()).unwrap_or_else(|| "?".into())
            };
            let _ = writeln!(
                out,
                "       failure @{} [{:?}]: lhs={} rhs={} residue={}{}",
                f.index,
                f.reason,
                show(&f.lhs),
                show(&f.rhs),
                f.residue.as_deref().unwrap_or("?"),
                f.message.as_deref().map(|m| format!(" ({m})")).unwrap_or_default()
            );
        }
        if r.failures.len() > 10 {
            let _ = writeln!(out, "       ... {} more failures", r.failures.len() - 10);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        let mut b = ReportBuilder::new("demo", ClaimKind::Theorem, "x = y").range(1, 3);
        b.pass();
        b.fail(Failure {
            index: 3,
            reason: FailureReason::Mismatch,
            lhs: Some(ExactRational::new(7, 3)),
            rhs: Some(ExactRational::from(2)),
            residue: Some("1/3".into()),
            message: None,
        });
        b.fail(Failure {
            index: 2,
            reason: FailureReason::IllPosed,
            lhs: None,
            rhs: None,
            residue: None,
            message: Some("denominator".into()),
        });
        b.note(Some(2), "symbol convention");
        b.detail("observed", 4);
        b.finish(false)
    }

    #[test]
    fn failures_force_fail_status_and_are_sorted() {
        let r = sample();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.failures[0].index, 2);
        assert_eq!(r.elapsed_ms, None);
        assert_eq!(r.checked, 3);
    }

    #[test]
    fn structured_round_trip() {
        let reports = vec![sample(), ReportBuilder::new("ok", ClaimKind::Lemma, "").finish(true)];
        let text = to_structured(&reports);
        assert_eq!(from_structured(&text).unwrap(), reports);
        assert!(from_structured("{}").is_err());
    }

    #[test]
    fn tabular_has_one_row_per_claim() {
        let t = to_tabular(&[sample()]);
        let lines: Vec<_> = t.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("demo\ttheorem\tfail\t1\t3\t3\t1\t2\t2\t-"));
        assert!(to_human(&[sample()]).contains("[FAIL] demo"));
    }
}
