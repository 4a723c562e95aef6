//! Structured pass/fail findings with witnesses.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::set::ElementSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// One named check. Witness sets are ascending element lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub check: String,
    pub status: Status,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub subject: String,
    pub findings: Vec<Finding>,
}

impl AuditReport {
    pub fn new(subject: impl Into<String>) -> Self {
        AuditReport {
            subject: subject.into(),
            findings: Vec::new(),
        }
    }

    /// True when no finding failed. Skipped findings do not count as failures.
    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.status != Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&Finding> {
        self.findings.iter().find(|f| f.status == Status::Fail)
    }

    pub fn finding(&self, check: &str) -> Option<&Finding> {
        self.findings.iter().find(|f| f.check == check)
    }

    pub fn pass(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.push(check, Status::Pass, detail, Vec::new());
    }

    pub fn skip(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.push(check, Status::Skip, detail, Vec::new());
    }

    pub fn fail(
        &mut self,
        check: impl Into<String>,
        detail: impl Into<String>,
        witness: impl IntoIterator<Item = ElementSet>,
    ) {
        let witness = witness.into_iter().map(ElementSet::to_vec).collect();
        self.push(check, Status::Fail, detail, witness);
    }

    pub fn push(
        &mut self,
        check: impl Into<String>,
        status: Status,
        detail: impl Into<String>,
        witness: Vec<Vec<usize>>,
    ) {
        self.findings.push(Finding {
            check: check.into(),
            status,
            detail: detail.into(),
            witness,
        });
    }

    pub fn extend(&mut self, other: AuditReport) {
        self.findings.extend(other.findings);
    }

    /// One-line description: overall verdict plus the first failure, if any.
    pub fn summary(&self) -> String {
        match self.first_failure() {
            None => format!("{}: pass", self.subject),
            Some(f) => format!("{}: FAIL at {}: {}", self.subject, f.check, f.detail),
        }
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for finding in &self.findings {
            let tag = match finding.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            write!(f, "  [{tag}] {}: {}", finding.check, finding.detail)?;
            if !finding.witness.is_empty() {
                write!(f, " witness=")?;
                for (i, w) in finding.witness.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{w:?}")?;
                }
            }
            writeln!(f)?;
        }
        write!(
            f,
            "overall: {}",
            if self.passed() { "pass" } else { "fail" }
        )
    }
}
