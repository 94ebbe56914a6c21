//! Law reports shared by every checker.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub subject: String,
    pub checked: usize,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl LawReport {
    pub fn new(subject: impl Into<String>) -> Self {
        LawReport { subject: subject.into(), ..Default::default() }
    }

    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fail(&mut self, law: impl Into<String>, witness: Vec<String>) {
        self.violations.push(Violation { law: law.into(), witness });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn tick(&mut self) {
        self.checked += 1;
    }

    /// Appends another report's findings, prefixing its laws with its subject.
    pub fn absorb(&mut self, other: LawReport) {
        self.checked += other.checked;
        for v in other.violations {
            self.violations.push(Violation {
                law: format!("{}: {}", other.subject, v.law),
                witness: v.witness,
            });
        }
        for n in other.notes {
            self.notes.push(format!("{}: {}", other.subject, n));
        }
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    /// One structured record per line: a header followed by one line per witness.
    pub fn records(&self) -> Vec<String> {
        let mut out = vec![serde_json::json!({
            "subject": self.subject,
            "pass": self.is_pass(),
            "checked": self.checked,
        })
        .to_string()];
        for v in &self.violations {
            out.push(serde_json::json!({"law": v.law, "witness": v.witness}).to_string());
        }
        for n in &self.notes {
            out.push(serde_json::json!({"note": n}).to_string());
        }
        out
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.is_pass() { "PASS" } else { "FAIL" };
        writeln!(f, "{verdict} {} ({} instances)", self.subject, self.checked)?;
        for v in &self.violations {
            writeln!(f, "  violated {}: [{}]", v.law, v.witness.join(", "))?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

/// Early-exit helper: record the failure and return the report.
macro_rules! bail_law {
    ($rep:expr, $law:expr, $($w:expr),* $(,)?) => {{
        $rep.fail($law, vec![$($w.to_string()),*]);
        return Ok($rep);
    }};
}
pub(crate) use bail_law;
