//! Verification reports: a list of violations, empty when everything holds.

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    violations: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    /// Record a violation, keeping only the first one of each kind.
    pub fn note(&mut self, kind: &str, message: impl Into<String>) {
        if !self.violations.iter().any(|(k, _)| k == kind) {
            self.violations.push((kind.to_string(), message.into()));
        }
    }

    pub fn check(&mut self, kind: &str, holds: bool, message: impl Fn() -> String) {
        if !holds {
            self.note(kind, message());
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> Vec<String> {
        self.violations.iter().map(|(k, m)| format!("{k}: {m}")).collect()
    }

    pub fn merge(&mut self, other: Report) {
        for (k, m) in other.violations {
            self.note(&k, m);
        }
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_ok() {
            write!(f, "ok")
        } else {
            write!(f, "{}", self.violations().join("; "))
        }
    }
}
