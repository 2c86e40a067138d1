//! Itemized pass/fail reports with witnesses.

use std::fmt;

use serde::Serialize;

use crate::analysis::Verdict;
use crate::magma::Elem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<Elem>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub items: Vec<CheckItem>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(name, Status::Pass, Vec::new(), String::new());
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: Vec<Elem>, detail: impl Into<String>) {
        self.push(name, Status::Fail, witness, detail.into());
    }

    pub fn skip(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(name, Status::Skipped, Vec::new(), detail.into());
    }

    pub fn verdict(&mut self, name: impl Into<String>, v: Verdict) {
        match v {
            Verdict::Holds => self.pass(name),
            Verdict::Fails { witness, detail } => self.fail(name, witness, detail),
        }
    }

    /// Record a boolean outcome with a lazily built witness.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> Vec<Elem>) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, witness(), "");
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn push(&mut self, name: impl Into<String>, status: Status, witness: Vec<Elem>, detail: String) {
        self.items.push(CheckItem {
            name: name.into(),
            status,
            witness,
            detail,
        });
    }

    /// No item failed (skipped items do not count against).
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|i| i.status == Status::Pass)
    }

    pub fn extend(&mut self, prefix: &str, other: Report) {
        for mut item in other.items {
            item.name = format!("{prefix}{}", item.name);
            self.items.push(item);
        }
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            let tag = match item.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            write!(f, "{tag} {}", item.name)?;
            if !item.witness.is_empty() {
                write!(f, " witness={:?}", item.witness)?;
            }
            if !item.detail.is_empty() {
                write!(f, " ({})", item.detail)?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}
