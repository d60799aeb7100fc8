use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::element::{Element, FamilyId, Value};
use crate::error::Result;
use crate::number::Real;

use super::chain::Chain;
use super::cut::Cut;
use super::verdict::{Budget, Verdict, Witness};

/// The category a family claims membership of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Class {
    PreCu,
    C,
    Cu,
    Unknown,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Class::PreCu => "PreCu",
            Class::C => "C",
            Class::Cu => "Cu",
            Class::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub enum SupVerdict {
    Sup { value: Element, witness: Witness },
    NoSup { witness: Witness, reason: String },
    Unknown(String),
}

impl SupVerdict {
    pub fn no_sup(witness: Witness, reason: impl Into<String>) -> Self {
        SupVerdict::NoSup {
            witness,
            reason: reason.into(),
        }
    }

    pub fn value(&self) -> Option<&Element> {
        match self {
            SupVerdict::Sup { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_no_sup(&self) -> bool {
        matches!(self, SupVerdict::NoSup { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SupVerdict::Sup { witness, .. } | SupVerdict::NoSup { witness, .. } => Some(witness),
            SupVerdict::Unknown(_) => None,
        }
    }
}

/// A chain a family offers for membership probing, with its declared bound
/// when it is bounded.
#[derive(Clone, Debug)]
pub struct Probe {
    pub chain: Chain,
    pub bound: Option<Element>,
}

/// Contract of a positively ordered abelian monoid.
///
/// Arguments are already validated for family and payload by the public
/// entry points in [`super::checks`]. Only `leq`, `add` and `zero` are
/// mandatory; every optional procedure feeds either a closed-form rule or
/// the generic budgeted searches.
pub trait Monoid: Send + Sync {
    fn family(&self) -> &FamilyId;
    fn claimed_class(&self) -> Class;
    fn validate(&self, value: &Value) -> Result<()>;
    fn zero(&self) -> Element;
    fn add(&self, x: &Element, y: &Element) -> Element;
    fn leq(&self, x: &Element, y: &Element, budget: &mut Budget) -> Verdict;

    /// Closed-form `≪`, when the family has one.
    fn way_below_rule(&self, _x: &Element, _y: &Element, _budget: &mut Budget) -> Option<Verdict> {
        None
    }

    /// Supremum of a chain that is not known to be stationary.
    fn sup_rule(&self, _chain: &Chain, _budget: &mut Budget) -> SupVerdict {
        SupVerdict::Unknown("no supremum rule".into())
    }

    /// A rapidly increasing chain with supremum `x`.
    fn approximants(&self, _x: &Element) -> Option<Chain> {
        None
    }

    /// `n`-th element of an enumeration of the carrier (repetitions allowed).
    fn enumerate(&self, _n: usize) -> Option<Element> {
        None
    }

    /// The whole carrier, for finite families.
    fn carrier(&self) -> Option<Vec<Element>> {
        None
    }

    fn cut(&self, _x: &Element) -> Option<Cut> {
        None
    }

    /// Monotone numeric coordinates; chain ambients live in this space.
    fn shadow(&self, _x: &Element) -> Option<Vec<Real>> {
        None
    }

    /// Coordinatewise sum of shadows, matching `shadow(x + y)`.
    fn shadow_add(&self, a: &[Real], b: &[Real]) -> Option<Vec<Real>> {
        if a.len() != b.len() {
            return None;
        }
        a.iter().zip(b).map(|(x, y)| x.checked_add(y)).collect()
    }

    fn all_compact(&self) -> bool {
        false
    }

    /// `x ≤ y` iff `shadow(x) ≤ shadow(y)` coordinatewise, and each
    /// coordinate ranges over a discrete set, so an increasing chain attains
    /// every finite coordinate supremum.
    fn discrete_shadow(&self) -> bool {
        false
    }

    /// Elements are classes of representatives, so equal classes may have
    /// distinct payloads.
    fn quotient(&self) -> bool {
        false
    }

    /// Why `leq` is antisymmetric (asserted by the family, sampled by checks).
    fn antisymmetry(&self) -> &'static str;

    fn probes(&self) -> Vec<Probe> {
        Vec::new()
    }

    /// A small deterministic sample for evidence checks.
    fn samples(&self) -> Vec<Element> {
        if let Some(c) = self.carrier() {
            return c;
        }
        let mut out: Vec<Element> = Vec::new();
        for n in 0..64 {
            if out.len() >= 8 {
                break;
            }
            if let Some(x) = self.enumerate(n) {
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        if out.is_empty() {
            out.push(self.zero());
        }
        out
    }

    /// Parses the textual form of an element (as printed by `Display`).
    fn parse_element(&self, text: &str) -> Result<Element> {
        Err(crate::error::Error::invalid(
            self.family().to_string(),
            format!("no element syntax for `{text}`"),
        ))
    }

    fn describe(&self) -> String {
        self.family().to_string()
    }

    fn elem(&self, value: Value) -> Element {
        Element::new(self.family(), value)
    }
}

pub type MonoidHandle = Arc<dyn Monoid>;

impl fmt::Debug for dyn Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monoid({})", self.family())
    }
}

/// `≤` decided by cut inclusion.
pub fn cut_leq(m: &dyn Monoid, x: &Element, y: &Element) -> Verdict {
    match (m.cut(x), m.cut(y)) {
        (Some(a), Some(b)) => match a.within(&b) {
            Some(v) => Verdict::rule(v, format!("W({x}) = {a} {} W({y}) = {b}", if v { "⊆" } else { "⊄" })),
            None => Verdict::unknown(format!("levels of {x} and {y} are not comparable exactly")),
        },
        _ => Verdict::unknown("no cut available"),
    }
}

/// `≪` decided by cut membership.
pub fn cut_way_below(m: &dyn Monoid, x: &Element, y: &Element) -> Option<Verdict> {
    let a = m.cut(x)?;
    let b = m.cut(y)?;
    Some(match a.way_below(&b) {
        Some(v) => Verdict::rule(v, format!("{x} {} W({y}) = {b}", if v { "∈" } else { "∉" })),
        None => Verdict::unknown(format!("levels of {x} and {y} are not comparable exactly")),
    })
}

/// Checks a payload for a family and wraps it.
pub fn element(m: &dyn Monoid, value: Value) -> Result<Element> {
    m.validate(&value)?;
    Ok(m.elem(value))
}
