//! Named pass/fail checks shared by the validators.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// First offending index tuple or value, when the check failed.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn pass(&mut self, name: &str) {
        self.record(name, None);
    }

    /// Record a check; `witness = None` means it passed.
    pub fn record(&mut self, name: &str, witness: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "check.{}=pass", c.name)?,
                Some(w) => writeln!(f, "check.{}=FAIL witness={}", c.name, w)?,
            }
        }
        Ok(())
    }
}
