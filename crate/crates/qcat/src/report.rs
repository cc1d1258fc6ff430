//! Pass/fail reports with witnesses, shared by all law checkers.

use std::fmt;

/// How much of the (possibly infinite) quantification a check covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Every case in a finite carrier was tested.
    Exhaustive,
    /// A finite sample of an infinite (or too large) domain was tested.
    Sampled { cases: usize },
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Exhaustive => write!(f, "exhaustive"),
            Scope::Sampled { cases } => write!(f, "sampled ({cases} cases)"),
        }
    }
}

/// One violated law together with a concrete witness.
#[derive(Clone, Debug)]
pub struct Violation {
    pub law: String,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.witness)
    }
}

/// Outcome of one named check: empty `violations` means pass on the tested scope.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub scope: Scope,
    pub violations: Vec<Violation>,
    /// Disclosures about truncation and sampling limits.
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, scope: Scope) -> Self {
        CheckReport {
            name: name.into(),
            scope,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn violate(&mut self, law: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(Violation {
            law: law.into(),
            witness: witness.into(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when `law` appears among the violations.
    pub fn has_violation(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "[{}] {} ({})",
            if self.passed() { "pass" } else { "FAIL" },
            self.name,
            self.scope
        )?;
        for v in &self.violations {
            writeln!(f, "  violated {v}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
