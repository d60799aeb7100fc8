use std::fmt;
use std::sync::Arc;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::number::Real;

use super::chain::Chain;
use super::monoid::MonoidHandle;
use super::verdict::{Budget, Witness};

type ApplyFn = Arc<dyn Fn(&Element) -> Result<Element> + Send + Sync>;
type AmbientFn = Arc<dyn Fn(&[Real]) -> Option<Vec<Real>> + Send + Sync>;
type PreimageFn = Arc<dyn Fn(&Element, &mut Budget) -> Preimage + Send + Sync>;

/// Outcome of a preimage search.
#[derive(Clone, Debug)]
pub enum Preimage {
    Found(Element),
    /// Certified absence.
    Absent(Witness),
    Unknown,
}

/// A map descriptor between two registered monoids.
///
/// `ambient` transports declared chain suprema through the map (so image
/// chains keep a checkable ambient); `preimage` is an optional closed-form
/// inverse used by hereditary checks.
#[derive(Clone)]
pub struct MonoidMap {
    pub name: String,
    pub dom: MonoidHandle,
    pub cod: MonoidHandle,
    apply: ApplyFn,
    ambient: Option<AmbientFn>,
    preimage: Option<PreimageFn>,
}

impl MonoidMap {
    pub fn new(
        name: impl Into<String>,
        dom: MonoidHandle,
        cod: MonoidHandle,
        apply: impl Fn(&Element) -> Result<Element> + Send + Sync + 'static,
    ) -> Self {
        MonoidMap {
            name: name.into(),
            dom,
            cod,
            apply: Arc::new(apply),
            ambient: None,
            preimage: None,
        }
    }

    pub fn identity(h: MonoidHandle) -> Self {
        MonoidMap::new("id", h.clone(), h, |x| Ok(x.clone())).with_ambient(|a| Some(a.to_vec()))
    }

    pub fn with_ambient(
        mut self,
        f: impl Fn(&[Real]) -> Option<Vec<Real>> + Send + Sync + 'static,
    ) -> Self {
        self.ambient = Some(Arc::new(f));
        self
    }

    pub fn with_preimage(
        mut self,
        f: impl Fn(&Element, &mut Budget) -> Preimage + Send + Sync + 'static,
    ) -> Self {
        self.preimage = Some(Arc::new(f));
        self
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.family != *self.dom.family() {
            return Err(Error::MixedFamily {
                left: x.family.to_string(),
                right: self.dom.family().to_string(),
            });
        }
        (self.apply)(x)
    }

    pub fn transport_ambient(&self, a: &[Real]) -> Option<Vec<Real>> {
        self.ambient.as_ref().and_then(|f| f(a))
    }

    pub fn preimage_hook(&self, x: &Element, budget: &mut Budget) -> Option<Preimage> {
        self.preimage.as_ref().map(|f| f(x, budget))
    }

    /// Termwise image of a chain in the domain.
    pub fn image_chain(&self, c: &Chain) -> Chain {
        let apply = self.apply.clone();
        let ambient = c.ambient.as_ref().and_then(|a| self.transport_ambient(a));
        c.map(
            format!("{}({})", self.name, c.label),
            Arc::new(move |x| apply(x).expect("map defined on chain terms")),
            ambient,
        )
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &MonoidMap) -> Result<MonoidMap> {
        if self.cod.family() != g.dom.family() {
            return Err(Error::MixedFamily {
                left: self.cod.family().to_string(),
                right: g.dom.family().to_string(),
            });
        }
        let (f1, f2) = (self.apply.clone(), g.apply.clone());
        let mut out = MonoidMap::new(
            format!("{}∘{}", g.name, self.name),
            self.dom.clone(),
            g.cod.clone(),
            move |x| f2(&f1(x)?),
        );
        if let (Some(a1), Some(a2)) = (self.ambient.clone(), g.ambient.clone()) {
            out = out.with_ambient(move |a| a2(&a1(a)?));
        }
        Ok(out)
    }
}

impl fmt::Debug for MonoidMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MonoidMap({}: {} → {})",
            self.name,
            self.dom.family(),
            self.cod.family()
        )
    }
}
