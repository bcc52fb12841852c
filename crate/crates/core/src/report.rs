//! Check results shared by every verifier.
//!
//! A failing identity is data, not an error: each check carries its status and
//! the witness polynomials (in canonical text form) that show the defect.

use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::exactpoly::MultiPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(id: impl Into<String>) -> Self {
        Check { id: id.into(), status: Status::Pass, witnesses: Vec::new(), detail: None }
    }

    pub fn fail(id: impl Into<String>, witnesses: Vec<String>) -> Self {
        Check { id: id.into(), status: Status::Fail, witnesses, detail: None }
    }

    pub fn skipped(id: impl Into<String>, why: impl Into<String>) -> Self {
        Check { id: id.into(), status: Status::Skipped, witnesses: Vec::new(), detail: Some(why.into()) }
    }

    /// Pass if every defect is zero, otherwise fail listing the nonzero ones.
    pub fn from_defects(id: impl Into<String>, defects: &[MultiPoly]) -> Self {
        let witnesses: Vec<String> = defects.iter().filter(|d| !d.is_zero()).map(|d| d.to_string()).collect();
        if witnesses.is_empty() {
            Check::pass(id)
        } else {
            Check::fail(id, witnesses)
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub checks: Vec<Check>,
    /// Wall time, shown in human output only so that JSON stays reproducible.
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), checks: Vec::new(), elapsed: None }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// `Fail` iff any check failed; skips alone never fail a report.
    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn skipped(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Skipped)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} pass, {} fail, {} skipped)",
            self.name,
            self.status(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        )?;
        if let Some(t) = self.elapsed {
            write!(f, " in {:.1?}", t)?;
        }
        for c in self.failures() {
            write!(f, "\n  FAIL {}", c.id)?;
            for w in &c.witnesses {
                write!(f, "\n    witness: {w}")?;
            }
            if let Some(d) = &c.detail {
                write!(f, "\n    {d}")?;
            }
        }
        Ok(())
    }
}
