//! Line-oriented reports: `name<TAB>status<TAB>detail`.

use std::fmt;

use hopfcyc_core::lie::Violation;

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// The identity holds on every tested case.
    Pass,
    /// At least one counterexample was found.
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// One report line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    /// Dotted check name, e.g. `lie.jacobi`.
    pub name: String,
    /// Outcome.
    pub status: Status,
    /// Case count on success, first counterexample on failure.
    pub detail: String,
}

impl CheckLine {
    /// A passing line.
    pub fn pass(name: &str, detail: impl Into<String>) -> Self {
        CheckLine { name: name.into(), status: Status::Pass, detail: detail.into() }
    }

    /// A failing line.
    pub fn fail(name: &str, detail: impl Into<String>) -> Self {
        CheckLine { name: name.into(), status: Status::Fail, detail: detail.into() }
    }

    /// Summarizes a list of violations under one name.
    pub fn from_violations(name: &str, violations: &[Violation], cases: &str) -> Self {
        match violations.first() {
            None => CheckLine::pass(name, cases),
            Some(v) => {
                let mut detail = v.check.clone();
                if !v.indices.is_empty() {
                    let idx: Vec<String> = v.indices.iter().map(usize::to_string).collect();
                    detail.push_str(&format!(" at ({})", idx.join(",")));
                }
                if !v.detail.is_empty() {
                    detail.push_str(&format!(": {}", v.detail));
                }
                if violations.len() > 1 {
                    detail.push_str(&format!(" (+{} more)", violations.len() - 1));
                }
                CheckLine::fail(name, detail)
            }
        }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // tabs and newlines inside the detail would break the line format
        let detail: String = self.detail.chars().map(|c| if c == '\t' || c == '\n' { ' ' } else { c }).collect();
        write!(f, "{}\t{}\t{}", self.name, self.status, detail)
    }
}

/// Whether every line passed.
pub fn all_pass(lines: &[CheckLine]) -> bool {
    lines.iter().all(|l| l.status == Status::Pass)
}
