//! Deterministic verification reports.
//!
//! Every checker in the crate produces a [`Report`]: an ordered list of
//! named laws, each either holding or violated with a concrete witness.
//! Rendering is line-oriented and prefixed with `PASS`/`FAIL` so the CLI
//! output can be parsed by scripts.

use std::fmt;

/// One variable bound to a carrier element in a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub var: String,
    pub index: usize,
    pub name: String,
}

/// A law that failed, with the assignment that breaks it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<Binding>,
    pub detail: String,
}

impl Violation {
    pub fn new(law: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation {
            law: law.into(),
            witness: Vec::new(),
            detail: detail.into(),
        }
    }

    pub fn bind(mut self, var: &str, index: usize, name: &str) -> Self {
        self.witness.push(Binding {
            var: var.to_string(),
            index,
            name: name.to_string(),
        });
        self
    }

    /// Index bound to `var`, if any.
    pub fn get(&self, var: &str) -> Option<usize> {
        self.witness.iter().find(|b| b.var == var).map(|b| b.index)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.law)?;
        for b in &self.witness {
            write!(f, " {}={}", b.var, b.name)?;
        }
        if !self.detail.is_empty() {
            write!(f, " | {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// A component check that must hold before the main laws are meaningful.
    Precondition,
    Law,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub law: String,
    pub kind: CheckKind,
    pub violation: Option<Violation>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    /// Records the outcome of one law.
    pub fn record(&mut self, law: impl Into<String>, outcome: Result<(), Violation>) {
        self.checks.push(Check {
            law: law.into(),
            kind: CheckKind::Law,
            violation: outcome.err(),
        });
    }

    pub fn record_pre(&mut self, law: impl Into<String>, outcome: Result<(), Violation>) {
        self.checks.push(Check {
            law: law.into(),
            kind: CheckKind::Precondition,
            violation: outcome.err(),
        });
    }

    /// Appends the checks of `other`, prefixing their law names.
    pub fn absorb(&mut self, prefix: &str, other: Report, kind: CheckKind) {
        for c in other.checks {
            let law = format!("{prefix}{}", c.law);
            let violation = c.violation.map(|mut v| {
                v.law = format!("{prefix}{}", v.law);
                v
            });
            self.checks.push(Check { law, kind, violation });
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn precondition_failed(&self) -> bool {
        self.checks
            .iter()
            .any(|c| c.kind == CheckKind::Precondition && !c.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Violation> {
        self.checks.iter().filter_map(|c| c.violation.as_ref())
    }

    pub fn first_failure(&self) -> Option<&Violation> {
        self.failures().next()
    }

    pub fn check(&self, law: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.law == law)
    }

    /// Converts a failing report into an error carrying its first witness.
    pub fn into_result(self) -> Result<(), Violation> {
        match self.checks.into_iter().find_map(|c| c.violation) {
            Some(v) => Err(v),
            None => Ok(()),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            match &c.violation {
                None => out.push_str(&format!("PASS {} {}\n", self.subject, c.law)),
                Some(v) => out.push_str(&format!("FAIL {} {}\n", self.subject, v)),
            }
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
