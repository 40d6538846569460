//! Check reports.
//!
//! Every law checker returns a `Report`: a named check over a named instance
//! with the list of failing witnesses. An empty failure list means the check
//! passed. Failures are data, not errors — checkers never abort on a law
//! violation.

use std::time::Duration;

/// One failing witness of a law check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    /// The basis vector / triple / pair on which the law broke.
    pub witness: String,
    /// What was expected vs what was computed.
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckStatus::Pass => f.write_str("PASS"),
            CheckStatus::Fail => f.write_str("FAIL"),
        }
    }
}

/// Outcome of one named check on one named instance.
#[derive(Debug, Clone)]
pub struct Report {
    pub check: String,
    pub instance: String,
    pub failures: Vec<Failure>,
    pub elapsed: Option<Duration>,
}

/// How many failures are shown in non-verbose renderings.
pub const FAILURE_DISPLAY_LIMIT: usize = 10;

impl Report {
    pub fn new(check: impl Into<String>, instance: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            instance: instance.into(),
            failures: Vec::new(),
            elapsed: None,
        }
    }

    pub fn fail(&mut self, witness: impl Into<String>, detail: impl Into<String>) {
        self.failures.push(Failure {
            witness: witness.into(),
            detail: detail.into(),
        });
    }

    pub fn status(&self) -> CheckStatus {
        if self.failures.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn id(&self) -> String {
        format!("{}:{}", self.check, self.instance)
    }

    /// Renders one stable line per report. Failure output is capped at
    /// [`FAILURE_DISPLAY_LIMIT`] witnesses plus a total unless `verbose`.
    pub fn render(&self, verbose: bool) -> String {
        let mut out = format!("{} {}", self.id(), self.status());
        if !self.failures.is_empty() {
            out.push_str(&format!(" ({} failures)", self.failures.len()));
            let shown = if verbose {
                self.failures.len()
            } else {
                self.failures.len().min(FAILURE_DISPLAY_LIMIT)
            };
            for f in &self.failures[..shown] {
                out.push_str(&format!("\n  witness {}: {}", f.witness, f.detail));
            }
            if shown < self.failures.len() {
                out.push_str(&format!(
                    "\n  ... {} more (run verbose for the full dump)",
                    self.failures.len() - shown
                ));
            }
        }
        if verbose {
            if let Some(t) = self.elapsed {
                out.push_str(&format!("\n  elapsed: {}us", t.as_micros()));
            }
        }
        out
    }
}

/// Merges reports deterministically by check id.
pub fn merge_sorted(mut reports: Vec<Report>) -> Vec<Report> {
    reports.sort_by(|a, b| a.id().cmp(&b.id()));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_fail_and_capping() {
        let mut r = Report::new("ring.assoc", "M2");
        assert_eq!(r.status(), CheckStatus::Pass);
        for i in 0..15 {
            r.fail(format!("w{i}"), "lhs != rhs");
        }
        assert_eq!(r.status(), CheckStatus::Fail);
        let short = r.render(false);
        assert!(short.contains("5 more"));
        let full = r.render(true);
        assert!(full.contains("w14"));
    }

    #[test]
    fn merge_is_sorted_by_id() {
        let reports = vec![
            Report::new("b", "y"),
            Report::new("a", "z"),
            Report::new("a", "x"),
        ];
        let merged = merge_sorted(reports);
        let ids: Vec<String> = merged.iter().map(|r| r.id()).collect();
        assert_eq!(ids, vec!["a:x", "a:z", "b:y"]);
    }
}
