//! The dyadic lattices `S_i = 2^{-i}ℕ` and the doubled monoids
//! `T₁, T₂ = S ⊔ S′` over `S = ⋃ S_i`.

use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::element::{Element, FamilyId, Value};
use crate::error::{Error, Result};
use crate::number::{cantor_unpair, parse_rational, pow2_inv, Dyadic, Real};
use crate::order::{
    cut_leq, cut_way_below, Budget, Chain, Class, Cut, Monoid, MonoidHandle, Probe, SupVerdict,
    Verdict, Witness,
};

fn dyadic_of(x: &Element) -> &Dyadic {
    match &x.value {
        Value::Dyadic(d) => d,
        Value::Doubled { base, .. } => base,
        _ => unreachable!("validated dyadic payload"),
    }
}

fn level_of(d: &Dyadic) -> Real {
    Real::rational(d.to_rational())
}

/// Every nonnegative dyadic appears: index ↦ (numerator, level) by Cantor
/// unpairing.
pub fn dyadic_enum(n: usize) -> Dyadic {
    let (num, level) = cantor_unpair(n as u64);
    Dyadic::new(num, level as u32)
}

pub fn parse_dyadic(text: &str) -> Option<Dyadic> {
    Dyadic::from_rational(&parse_rational(text)?)
}

/// `S_i = 2^{-i}ℕ`: discrete, so every element is compact.
#[derive(Debug)]
pub struct DyadicLattice {
    id: FamilyId,
    level: u32,
}

impl DyadicLattice {
    pub fn handle(level: u32) -> MonoidHandle {
        Arc::new(DyadicLattice {
            id: format!("dyadic({level})").into(),
            level,
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }
}

impl Monoid for DyadicLattice {
    fn family(&self) -> &FamilyId {
        &self.id
    }
    fn claimed_class(&self) -> Class {
        Class::C
    }
    fn validate(&self, value: &Value) -> Result<()> {
        match value {
            Value::Dyadic(d) if d.level() <= self.level => Ok(()),
            v => Err(Error::invalid(
                self.id.to_string(),
                format!("{v} is not in 2^-{}ℕ", self.level),
            )),
        }
    }
    fn zero(&self) -> Element {
        self.elem(Value::Dyadic(Dyadic::zero()))
    }
    fn add(&self, x: &Element, y: &Element) -> Element {
        self.elem(Value::Dyadic(dyadic_of(x).add(dyadic_of(y))))
    }
    fn leq(&self, x: &Element, y: &Element, _: &mut Budget) -> Verdict {
        cut_leq(self, x, y)
    }
    fn way_below_rule(&self, x: &Element, y: &Element, _: &mut Budget) -> Option<Verdict> {
        cut_way_below(self, x, y)
    }
    fn sup_rule(&self, c: &Chain, _: &mut Budget) -> SupVerdict {
        if let Some([a]) = c.ambient.as_deref() {
            if !a.is_infinite() {
                return SupVerdict::Unknown(format!(
                    "chain {} is declared non-stationary with a finite ambient, impossible in a discrete lattice",
                    c.label
                ));
            }
        }
        SupVerdict::no_sup(
            Witness::Chain {
                label: c.label.clone(),
                prefix: c.prefix(8),
            },
            format!("terms of a non-stationary chain in 2^-{}ℕ grow without bound", self.level),
        )
    }
    fn approximants(&self, x: &Element) -> Option<Chain> {
        Some(Chain::constant(format!("const {x}"), x.clone()).rapid(true))
    }
    fn enumerate(&self, n: usize) -> Option<Element> {
        Some(self.elem(Value::Dyadic(Dyadic::new(n as u64, self.level))))
    }
    fn cut(&self, x: &Element) -> Option<Cut> {
        Some(Cut::closed(level_of(dyadic_of(x))))
    }
    fn shadow(&self, x: &Element) -> Option<Vec<Real>> {
        Some(vec![level_of(dyadic_of(x))])
    }
    fn all_compact(&self) -> bool {
        true
    }
    fn discrete_shadow(&self) -> bool {
        true
    }
    fn antisymmetry(&self) -> &'static str {
        "canonical dyadic payloads, total order of the rationals"
    }
    fn probes(&self) -> Vec<Probe> {
        let step = Dyadic::new(1u32, self.level);
        let e = |d: Dyadic| self.elem(Value::Dyadic(d));
        let id = self.id.clone();
        let level = self.level;
        vec![
            Probe {
                chain: Chain::finite(
                    "0,h,2h",
                    vec![e(Dyadic::zero()), e(step.clone()), e(step.add(&step))],
                ),
                bound: Some(e(step.add(&step))),
            },
            Probe {
                chain: Chain::lazy(
                    "n·h",
                    move |n| Element::new(&id, Value::Dyadic(Dyadic::new(n as u64, level))),
                    Some(vec![Real::Infinity]),
                ),
                bound: None,
            },
        ]
    }
    fn parse_element(&self, text: &str) -> Result<Element> {
        let d = parse_dyadic(text)
            .ok_or_else(|| Error::invalid(self.id.to_string(), format!("cannot parse `{text}`")))?;
        let v = Value::Dyadic(d);
        self.validate(&v)?;
        Ok(self.elem(v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    T1,
    T2,
}

/// `S ⊔ S′` with `a + b′ = (a+b)′` and `a′ + b′ = (a+b)′`.
///
/// T₁ orders `a′ < a` and is linear; T₂ makes `a` and `a′` incomparable.
/// In cut form: `a ↦ (a, closed)`, and `a′ ↦ (a, open)` in T₁ or
/// `(a, closed with a second tag)` in T₂.
#[derive(Debug)]
pub struct Doubled {
    id: FamilyId,
    variant: Variant,
}

impl Doubled {
    pub fn handle(variant: Variant) -> MonoidHandle {
        Arc::new(Doubled {
            id: match variant {
                Variant::T1 => "T1".into(),
                Variant::T2 => "T2".into(),
            },
            variant,
        })
    }

    fn parts<'a>(&self, x: &'a Element) -> (&'a Dyadic, bool) {
        match &x.value {
            Value::Doubled { base, primed } => (base, *primed),
            _ => unreachable!("validated doubled payload"),
        }
    }

    fn make(&self, base: Dyadic, primed: bool) -> Element {
        self.elem(Value::Doubled { base, primed })
    }

    /// Base chain `r(1 − 2⁻ⁿ)`-style terms, unprimed.
    pub fn base_chain(&self, label: &str, f: impl Fn(usize) -> Dyadic + Send + Sync + 'static, limit: Real) -> Chain {
        let id = self.id.clone();
        Chain::lazy(
            label,
            move |n| Element::new(&id, Value::Doubled { base: f(n), primed: false }),
            Some(vec![limit]),
        )
    }
}

/// `r·(1 − 2^{-(n+k)})` as a dyadic, for dyadic `r`.
pub fn dyadic_below(r: &Dyadic, n: usize) -> Dyadic {
    let q = r.to_rational() * (BigRational::one() - pow2_inv(n));
    Dyadic::from_rational(&q).expect("dyadic times dyadic")
}

impl Monoid for Doubled {
    fn family(&self) -> &FamilyId {
        &self.id
    }
    fn claimed_class(&self) -> Class {
        Class::PreCu
    }
    fn validate(&self, value: &Value) -> Result<()> {
        match value {
            Value::Doubled { base, primed } if !(*primed && base.is_zero()) => Ok(()),
            Value::Doubled { .. } => Err(Error::invalid(self.id.to_string(), "0′ is not an element (S′ = S ∖ {0})")),
            v => Err(Error::invalid(self.id.to_string(), format!("{v} is not a doubled dyadic"))),
        }
    }
    fn zero(&self) -> Element {
        self.make(Dyadic::zero(), false)
    }
    fn add(&self, x: &Element, y: &Element) -> Element {
        let (a, p) = self.parts(x);
        let (b, q) = self.parts(y);
        self.make(a.add(b), p || q)
    }
    fn leq(&self, x: &Element, y: &Element, _: &mut Budget) -> Verdict {
        cut_leq(self, x, y)
    }
    fn way_below_rule(&self, x: &Element, y: &Element, _: &mut Budget) -> Option<Verdict> {
        cut_way_below(self, x, y)
    }
    fn sup_rule(&self, c: &Chain, _: &mut Budget) -> SupVerdict {
        doubled_sup_rule(self, c)
    }
    fn approximants(&self, x: &Element) -> Option<Chain> {
        let (a, primed) = self.parts(x);
        if self.variant == Variant::T1 && primed {
            let a = a.clone();
            let limit = level_of(&a);
            return Some(
                self.base_chain(&format!("{a}·(1-2^-(n+1))"), move |n| dyadic_below(&a, n + 1), limit)
                    .rapid(true),
            );
        }
        Some(Chain::constant(format!("const {x}"), x.clone()).rapid(true))
    }
    fn enumerate(&self, n: usize) -> Option<Element> {
        let base = dyadic_enum(n / 2);
        let primed = n % 2 == 1 && !base.is_zero();
        Some(self.make(base, primed))
    }
    fn cut(&self, x: &Element) -> Option<Cut> {
        let (a, primed) = self.parts(x);
        let level = level_of(a);
        Some(match (primed, self.variant) {
            (false, _) => Cut::closed(level),
            (true, Variant::T1) => Cut::open(level),
            (true, Variant::T2) => Cut::tagged(level, 1),
        })
    }
    fn shadow(&self, x: &Element) -> Option<Vec<Real>> {
        Some(vec![level_of(self.parts(x).0)])
    }
    fn antisymmetry(&self) -> &'static str {
        "distinct elements have distinct cuts (level, tip)"
    }
    fn samples(&self) -> Vec<Element> {
        let d = |p: u64, l: u32| Dyadic::new(p, l);
        vec![
            self.zero(),
            self.make(d(1, 1), false),
            self.make(d(1, 1), true),
            self.make(d(3, 2), false),
            self.make(d(3, 2), true),
            self.make(d(1, 0), false),
            self.make(d(1, 0), true),
            self.make(d(3, 1), false),
        ]
    }
    fn probes(&self) -> Vec<Probe> {
        let one = Dyadic::integer(1);
        let bound = Some(self.make(one.clone(), false));
        vec![
            Probe {
                chain: self.base_chain("1-2^-n", move |n| dyadic_below(&one, n), Real::from_u64(1)),
                bound: bound.clone(),
            },
            Probe {
                chain: third_truncations(self),
                bound,
            },
        ]
    }
    fn parse_element(&self, text: &str) -> Result<Element> {
        let t = text.trim();
        let (body, primed) = match t.strip_suffix('′').or_else(|| t.strip_suffix('\'')) {
            Some(b) => (b, true),
            None => (t, false),
        };
        let base = parse_dyadic(body)
            .ok_or_else(|| Error::invalid(self.id.to_string(), format!("cannot parse `{text}`")))?;
        let v = Value::Doubled { base, primed };
        self.validate(&v)?;
        Ok(self.elem(v))
    }
}

/// Binary truncations `⌊4ⁿ/3⌋/4ⁿ` of 1/3: bounded, with a non-dyadic limit.
pub fn third_truncations(t: &Doubled) -> Chain {
    t.base_chain(
        "1/3-truncations",
        |n| {
            let four_n = BigUint::one() << (2 * n);
            Dyadic::new(four_n / 3u32, 2 * n as u32)
        },
        Real::rational(crate::number::rat(1, 3)),
    )
}

/// Supremum of a non-stationary doubled chain from the supremum `r` of its
/// base values: T₁ gives `r′`, T₂ has two incomparable minimal upper
/// bounds `r` and `r′`; a base limit outside S leaves no supremum.
pub fn doubled_sup_rule(t: &Doubled, c: &Chain) -> SupVerdict {
    let Some([r]) = c.ambient.as_deref() else {
        return SupVerdict::Unknown(format!("chain {} declares no ambient supremum", c.label));
    };
    let dyadic = r.as_rational().and_then(Dyadic::from_rational);
    match (dyadic, t.variant) {
        (Some(r), Variant::T1) => SupVerdict::Sup {
            value: t.make(r.clone(), true),
            witness: Witness::rule(format!(
                "base values approach {r}; below {r} lie only smaller levels, and {r}′ < {r}"
            )),
        },
        (Some(r), Variant::T2) => SupVerdict::no_sup(
            Witness::Elements(vec![t.make(r.clone(), false), t.make(r, true)]),
            "the minimal upper bounds r and r′ are incomparable",
        ),
        (None, _) => SupVerdict::no_sup(
            Witness::Chain {
                label: c.label.clone(),
                prefix: c.prefix(8),
            },
            format!("the base values approach {r}, which is not a dyadic rational"),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{leq, sup_chain, way_below};

    #[test]
    fn doubled_orders() {
        let t1 = Doubled::handle(Variant::T1);
        let t2 = Doubled::handle(Variant::T2);
        let one = |h: &MonoidHandle, p| h.elem(Value::Doubled { base: Dyadic::integer(1), primed: p });
        assert!(leq(t1.as_ref(), &one(&t1, true), &one(&t1, false), 1).unwrap().is_true());
        assert!(leq(t1.as_ref(), &one(&t1, false), &one(&t1, true), 1).unwrap().is_false());
        assert!(leq(t2.as_ref(), &one(&t2, true), &one(&t2, false), 1).unwrap().is_false());
        assert!(leq(t2.as_ref(), &one(&t2, false), &one(&t2, true), 1).unwrap().is_false());
        assert!(way_below(t1.as_ref(), &one(&t1, false), &one(&t1, false), 1).unwrap().is_true());
        assert!(way_below(t1.as_ref(), &one(&t1, true), &one(&t1, true), 1).unwrap().is_false());
        assert!(way_below(t2.as_ref(), &one(&t2, true), &one(&t2, true), 1).unwrap().is_true());
    }

    #[test]
    fn doubled_suprema() {
        let t1 = Doubled::handle(Variant::T1);
        let t2 = Doubled::handle(Variant::T2);
        let c1 = t1.probes()[0].chain.clone();
        let (v, _) = sup_chain(t1.as_ref(), &c1, 8).unwrap();
        assert_eq!(v.value().unwrap().to_string(), "1′");
        let c2 = t2.probes()[0].chain.clone();
        assert!(sup_chain(t2.as_ref(), &c2, 8).unwrap().0.is_no_sup());
        let third = t1.probes()[1].chain.clone();
        assert!(sup_chain(t1.as_ref(), &third, 8).unwrap().0.is_no_sup());
    }

    #[test]
    fn prime_forbidden_on_zero() {
        let t1 = Doubled::handle(Variant::T1);
        assert!(t1.parse_element("0'").is_err());
        assert_eq!(t1.parse_element("3/4'").unwrap().to_string(), "3/4′");
    }
}
