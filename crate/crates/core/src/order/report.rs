use std::fmt;

use serde::Serialize;
use serde_json::{json, Value as Json};

use super::verdict::{Tri, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

impl Status {
    pub fn from_tri(t: Tri) -> Self {
        match t {
            Tri::True => Status::Pass,
            Tri::False => Status::Fail,
            Tri::Unknown => Status::Unknown,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unknown => "unknown",
        }
    }

    /// Combined status: any failure wins, then any unknown.
    pub fn combine(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Unknown, _) | (_, Status::Unknown) => Status::Unknown,
            _ => Status::Pass,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub check: String,
    /// Name of the property checked, e.g. `order.add-compatible`.
    pub property: String,
    pub status: Status,
    pub detail: String,
    pub witness: Option<Witness>,
    pub spent: u64,
}

impl Entry {
    pub fn new(check: impl Into<String>, property: impl Into<String>, status: Status) -> Self {
        Entry {
            check: check.into(),
            property: property.into(),
            status,
            detail: String::new(),
            witness: None,
            spent: 0,
        }
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn witness(mut self, witness: Option<Witness>) -> Self {
        self.witness = witness;
        self
    }

    pub fn spent(mut self, spent: u64) -> Self {
        self.spent = spent;
        self
    }
}

/// Ordered list of check results. Evidence reports are not proofs unless
/// `exhaustive` is set.
#[derive(Clone, Debug)]
pub struct Report {
    pub title: String,
    pub exhaustive: bool,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            exhaustive: false,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, entry: Entry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: Report) {
        let prefix = other.title.clone();
        for mut e in other.entries {
            e.check = format!("{prefix}: {}", e.check);
            self.entries.push(e);
        }
    }

    pub fn status(&self) -> Status {
        self.entries
            .iter()
            .fold(Status::Pass, |acc, e| acc.combine(e.status))
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn entry(&self, check: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.check == check)
    }

    pub fn spent(&self) -> u64 {
        self.entries.iter().map(|e| e.spent).sum()
    }

    pub fn to_json(&self) -> Json {
        let entries: Vec<Json> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "check": e.check,
                    "property": e.property,
                    "status": e.status.label(),
                    "detail": e.detail,
                    "witness": e.witness.as_ref().map(Witness::to_json),
                    "spent": e.spent,
                })
            })
            .collect();
        json!({
            "title": self.title,
            "exhaustive": self.exhaustive,
            "status": self.status().label(),
            "entries": entries,
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "== {} [{}{}]",
            self.title,
            self.status().label(),
            if self.exhaustive { ", exhaustive" } else { "" }
        )?;
        for e in &self.entries {
            write!(f, "  {:<7} {} ({})", e.status.label(), e.check, e.property)?;
            if !e.detail.is_empty() {
                write!(f, ": {}", e.detail)?;
            }
            if let Some(w) = &e.witness {
                write!(f, " | witness {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
