use std::fmt;
use std::sync::Arc;

use crate::element::{Element, FamilyId};
use crate::number::Real;

pub type TermFn = Arc<dyn Fn(usize) -> Element + Send + Sync>;

/// An increasing sequence given by a deterministic term procedure.
///
/// `stable_from = Some(k)` means the chain is constant from index `k`;
/// `None` marks a lazy chain, which closed-form rules treat as
/// non-stationary. `ambient` is the declared coordinatewise supremum of the
/// numeric shadow of the terms; it is prefix-checked, never inferred.
#[derive(Clone)]
pub struct Chain {
    terms: TermFn,
    stable_from: Option<usize>,
    pub rapid: bool,
    pub ambient: Option<Vec<Real>>,
    pub label: String,
}

impl Chain {
    /// A finite list, continued by its last term.
    pub fn finite(label: impl Into<String>, list: Vec<Element>) -> Self {
        assert!(!list.is_empty(), "a chain needs at least one term");
        let last = list.len() - 1;
        let list = Arc::new(list);
        Chain {
            terms: Arc::new(move |n| list[n.min(last)].clone()),
            stable_from: Some(last),
            rapid: false,
            ambient: None,
            label: label.into(),
        }
    }

    pub fn constant(label: impl Into<String>, value: Element) -> Self {
        Chain::finite(label, vec![value])
    }

    /// Terms from `f`, constant from index `from` on.
    pub fn stationary(
        label: impl Into<String>,
        from: usize,
        f: impl Fn(usize) -> Element + Send + Sync + 'static,
    ) -> Self {
        Chain {
            terms: Arc::new(move |n| f(n.min(from))),
            stable_from: Some(from),
            rapid: false,
            ambient: None,
            label: label.into(),
        }
    }

    pub fn lazy(
        label: impl Into<String>,
        f: impl Fn(usize) -> Element + Send + Sync + 'static,
        ambient: Option<Vec<Real>>,
    ) -> Self {
        Chain {
            terms: Arc::new(f),
            stable_from: None,
            rapid: false,
            ambient,
            label: label.into(),
        }
    }

    pub fn from_fn(
        label: impl Into<String>,
        terms: TermFn,
        stable_from: Option<usize>,
        ambient: Option<Vec<Real>>,
    ) -> Self {
        Chain {
            terms,
            stable_from,
            rapid: false,
            ambient,
            label: label.into(),
        }
    }

    pub fn rapid(mut self, rapid: bool) -> Self {
        self.rapid = rapid;
        self
    }

    pub fn with_ambient(mut self, ambient: Option<Vec<Real>>) -> Self {
        self.ambient = ambient;
        self
    }

    pub fn term(&self, n: usize) -> Element {
        (self.terms)(n)
    }

    pub fn terms(&self) -> TermFn {
        self.terms.clone()
    }

    pub fn stable_from(&self) -> Option<usize> {
        self.stable_from
    }

    pub fn is_stationary(&self) -> bool {
        self.stable_from.is_some()
    }

    /// Eventual value of a stationary chain.
    pub fn eventual(&self) -> Option<Element> {
        self.stable_from.map(|k| self.term(k))
    }

    pub fn family(&self) -> FamilyId {
        self.term(0).family
    }

    pub fn prefix(&self, n: usize) -> Vec<Element> {
        (0..n).map(|i| self.term(i)).collect()
    }

    /// Number of terms worth inspecting: the stationary part needs one term
    /// past its start, lazy chains use the supplied horizon.
    pub fn span(&self, horizon: usize) -> usize {
        match self.stable_from {
            Some(k) => k + 1,
            None => horizon.max(1),
        }
    }

    /// Termwise image under `f`.
    pub fn map(
        &self,
        label: impl Into<String>,
        f: Arc<dyn Fn(&Element) -> Element + Send + Sync>,
        ambient: Option<Vec<Real>>,
    ) -> Chain {
        let terms = self.terms.clone();
        Chain {
            terms: Arc::new(move |n| f(&terms(n))),
            stable_from: self.stable_from,
            rapid: false,
            ambient,
            label: label.into(),
        }
    }

    /// Shifts the chain so that its `k`-th term becomes the first.
    pub fn tail(&self, k: usize) -> Chain {
        let terms = self.terms.clone();
        Chain {
            terms: Arc::new(move |n| terms(n + k)),
            stable_from: self.stable_from.map(|s| s.saturating_sub(k)),
            rapid: self.rapid,
            ambient: self.ambient.clone(),
            label: format!("{}[{k}..]", self.label),
        }
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Chain")
            .field("label", &self.label)
            .field("stable_from", &self.stable_from)
            .field("rapid", &self.rapid)
            .field("ambient", &self.ambient)
            .finish()
    }
}
