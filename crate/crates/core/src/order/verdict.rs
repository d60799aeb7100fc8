use std::fmt;

use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::element::Element;

/// Three-valued outcome of a decision or semi-decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Tri::True
    }

    pub fn is_false(self) -> bool {
        self == Tri::False
    }

    pub fn definite(self) -> Option<bool> {
        match self {
            Tri::True => Some(true),
            Tri::False => Some(false),
            Tri::Unknown => None,
        }
    }

    pub fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::False, _) | (_, Tri::False) => Tri::False,
            (Tri::True, Tri::True) => Tri::True,
            _ => Tri::Unknown,
        }
    }

    pub fn not(self) -> Tri {
        match self {
            Tri::True => Tri::False,
            Tri::False => Tri::True,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tri::True => "true",
            Tri::False => "false",
            Tri::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// Replayable justification attached to verdicts and report entries.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Element(Element),
    Pair(Element, Element),
    Elements(Vec<Element>),
    Chain { label: String, prefix: Vec<Element> },
    Rule(String),
}

impl Witness {
    pub fn rule(text: impl Into<String>) -> Self {
        Witness::Rule(text.into())
    }

    pub fn to_json(&self) -> Json {
        let show = |xs: &[Element]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        match self {
            Witness::Element(x) => json!({ "element": x.to_string() }),
            Witness::Pair(x, y) => json!({ "pair": [x.to_string(), y.to_string()] }),
            Witness::Elements(xs) => json!({ "elements": show(xs) }),
            Witness::Chain { label, prefix } => {
                json!({ "chain": label, "prefix": show(prefix) })
            }
            Witness::Rule(r) => json!({ "rule": r }),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Element(x) => write!(f, "{x}"),
            Witness::Pair(x, y) => write!(f, "({x}, {y})"),
            Witness::Elements(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
            Witness::Chain { label, prefix } => {
                let parts: Vec<String> = prefix.iter().take(4).map(|x| x.to_string()).collect();
                write!(f, "chain {label}: {}, …", parts.join(", "))
            }
            Witness::Rule(r) => write!(f, "{r}"),
        }
    }
}

/// Verdict with the exploration cost and an optional witness.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub tri: Tri,
    pub spent: u64,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn new(tri: Tri, witness: Option<Witness>) -> Self {
        Verdict {
            tri,
            spent: 0,
            witness,
        }
    }

    pub fn decided(b: bool, witness: Witness) -> Self {
        Verdict::new(Tri::from_bool(b), Some(witness))
    }

    pub fn rule(b: bool, text: impl Into<String>) -> Self {
        Verdict::decided(b, Witness::rule(text))
    }

    pub fn unknown(note: impl Into<String>) -> Self {
        Verdict::new(Tri::Unknown, Some(Witness::rule(note)))
    }

    pub fn is_true(&self) -> bool {
        self.tri.is_true()
    }

    pub fn is_false(&self) -> bool {
        self.tri.is_false()
    }
}

/// Exploration allowance measured in materialized elements and chain terms.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    spent: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, spent: 0 }
    }

    /// Charges `n` units; returns `false` once the allowance is exceeded.
    pub fn spend(&mut self, n: u64) -> bool {
        self.spent = self.spent.saturating_add(n);
        self.spent <= self.limit
    }

    pub fn exhausted(&self) -> bool {
        self.spent >= self.limit
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    /// Number of terms a search may still materialize (at least one).
    pub fn horizon(&self) -> usize {
        self.limit.saturating_sub(self.spent).max(1) as usize
    }
}
