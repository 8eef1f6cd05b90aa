//! Pass/fail records produced by the identity checkers.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail(String),
    /// Computed and kept for inspection, but not asserted.
    Recorded(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub label: String,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            entries: Vec::new(),
        }
    }

    /// Records a check; `describe` builds the failure message lazily.
    pub fn check(&mut self, label: impl Into<String>, ok: bool, describe: impl FnOnce() -> String) {
        let outcome = if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(describe())
        };
        self.entries.push(Entry {
            label: label.into(),
            outcome,
        });
    }

    pub fn pass(&mut self, label: impl Into<String>) {
        self.check(label, true, String::new);
    }

    pub fn fail(&mut self, label: impl Into<String>, why: impl Into<String>) {
        let why = why.into();
        self.check(label, false, || why);
    }

    pub fn record(&mut self, label: impl Into<String>, value: impl Into<String>) {
        self.entries.push(Entry {
            label: label.into(),
            outcome: Outcome::Recorded(value.into()),
        });
    }

    pub fn extend(&mut self, other: Report) {
        let prefix = other.name;
        self.entries.extend(other.entries.into_iter().map(|e| Entry {
            label: format!("{prefix}: {}", e.label),
            outcome: e.outcome,
        }));
    }

    pub fn passed(&self) -> bool {
        !self
            .entries
            .iter()
            .any(|e| matches!(e.outcome, Outcome::Fail(_)))
    }

    pub fn checked(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| !matches!(e.outcome, Outcome::Recorded(_)))
            .count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.outcome, Outcome::Fail(_)))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            match &e.outcome {
                Outcome::Pass => writeln!(f, "PASS {}: {}", self.name, e.label)?,
                Outcome::Fail(why) => writeln!(f, "FAIL {}: {} ({why})", self.name, e.label)?,
                Outcome::Recorded(v) => writeln!(f, "NOTE {}: {} = {v}", self.name, e.label)?,
            }
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} {}: {} checked, {} failed",
            if failed == 0 { "OK" } else { "FAILED" },
            self.name,
            self.checked(),
            failed
        )
    }
}
