use serde::Serialize;

use crate::report::{Check, Report, Status};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportOut {
    pub name: String,
    pub status: Status,
    pub counts: Counts,
    pub checks: Vec<Check>,
}

impl From<&Report> for ReportOut {
    fn from(r: &Report) -> Self {
        ReportOut {
            name: r.name.clone(),
            status: r.status(),
            counts: Counts {
                pass: r.count(Status::Pass),
                fail: r.count(Status::Fail),
                skipped: r.count(Status::Skipped),
            },
            checks: r.checks.clone(),
        }
    }
}

/// The machine report of one command.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub schema_version: u32,
    pub command: String,
    pub subject: String,
    pub status: Status,
    pub reports: Vec<ReportOut>,
    pub data: serde_json::Value,
    #[serde(skip)]
    pub human: String,
}

impl Envelope {
    pub fn new(command: &str, subject: impl Into<String>, reports: &[Report], data: serde_json::Value) -> Self {
        let status = if reports.iter().all(Report::passed) { Status::Pass } else { Status::Fail };
        let mut human = String::new();
        for r in reports {
            human.push_str(&format!("{r}\n"));
        }
        Envelope {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            subject: subject.into(),
            status,
            reports: reports.iter().map(ReportOut::from).collect(),
            data,
            human,
        }
    }

    pub fn with_human(mut self, extra: &str) -> Self {
        self.human.push_str(extra);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// 1 on any failure; 3 if some report could evaluate none of its checks,
    /// or, when `strict`, if any check was skipped at the truncation.
    pub fn exit_code(&self, strict: bool) -> i32 {
        if self.status == Status::Fail {
            return 1;
        }
        let starved = self.reports.iter().any(|r| !r.checks.is_empty() && r.counts.pass == 0);
        let skipped = self.reports.iter().any(|r| r.counts.skipped > 0);
        if starved || (strict && skipped) {
            3
        } else {
            0
        }
    }
}
