//! Verification reports: one JSON line per check family.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub witness: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub check: String,
    pub p: u32,
    pub count: u64,
    pub failures: Vec<Failure>,
}

impl CheckSummary {
    pub fn new(check: &str, p: u32) -> Self {
        CheckSummary {
            check: check.to_string(),
            p,
            count: 0,
            failures: Vec::new(),
        }
    }

    /// Folds per-case outcomes into a summary.
    pub fn collect(
        check: &str,
        p: u32,
        outcomes: impl IntoIterator<Item = Option<Failure>>,
    ) -> Self {
        let mut s = CheckSummary::new(check, p);
        for o in outcomes {
            s.count += 1;
            s.failures.extend(o);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<CheckSummary>,
}

impl Report {
    pub fn push(&mut self, s: CheckSummary) {
        self.checks.push(s);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn total_checks(&self) -> u64 {
        self.checks.iter().map(|c| c.count).sum()
    }

    pub fn total_failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures.len()).sum()
    }

    pub fn is_ok(&self) -> bool {
        self.total_failures() == 0
    }

    pub fn to_json_lines(&self) -> String {
        self.checks
            .iter()
            .map(|c| serde_json::to_string(c).expect("summary serializes") + "\n")
            .collect()
    }

    pub fn from_json_lines(text: &str) -> Result<Self> {
        let checks = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| serde_json::from_str(l).map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<_>>()?;
        Ok(Report { checks })
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{} failures / {} checks",
            self.total_failures(),
            self.total_checks()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = Report::default();
        r.push(CheckSummary::collect("unit", 3, [None, None]));
        r.push(CheckSummary::collect(
            "oracle",
            3,
            [Some(Failure {
                witness: vec!["L:1,2".into(), "P:1,1".into()],
                detail: "differs".into(),
            })],
        ));
        let text = r.to_json_lines();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(Report::from_json_lines(&text).unwrap(), r);
        assert_eq!(r.summary_line(), "1 failures / 3 checks");
        assert!(!r.is_ok());
    }
}
