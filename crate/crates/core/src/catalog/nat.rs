//! ℕ, ℕ∪{∞} and ℕᵈ.

use std::sync::Arc;

use crate::element::{Element, FamilyId, Value};
use crate::error::{Error, Result};
use crate::number::{cantor_unpair, Real};
use crate::order::{
    cut_leq, cut_way_below, Budget, Chain, Class, Cut, Monoid, MonoidHandle, Probe, SupVerdict,
    Verdict, Witness,
};

fn nat_of(x: &Element) -> u64 {
    match x.value {
        Value::Nat(n) => n,
        _ => unreachable!("validated ℕ payload"),
    }
}

fn unbounded(c: &Chain, family: &str) -> SupVerdict {
    match c.ambient.as_deref() {
        Some([a]) if !a.is_infinite() => SupVerdict::Unknown(format!(
            "chain {} is declared non-stationary with a finite ambient, impossible in {family}",
            c.label
        )),
        _ => SupVerdict::no_sup(
            Witness::Chain {
                label: c.label.clone(),
                prefix: c.prefix(8),
            },
            format!("a non-stationary increasing chain in {family} is unbounded"),
        ),
    }
}

pub fn counting_chain(h: &MonoidHandle, label: &str) -> Chain {
    let m = h.clone();
    Chain::lazy(label, move |n| m.elem(Value::Nat(n as u64)), Some(vec![Real::Infinity]))
}

/// The natural numbers. Every bounded increasing chain is stationary, so
/// every element is compact and `≪` is `≤`.
#[derive(Debug)]
pub struct Nat {
    id: FamilyId,
}

impl Nat {
    pub fn handle() -> MonoidHandle {
        Arc::new(Nat { id: "nat".into() })
    }
}

impl Monoid for Nat {
    fn family(&self) -> &FamilyId {
        &self.id
    }
    fn claimed_class(&self) -> Class {
        Class::C
    }
    fn validate(&self, value: &Value) -> Result<()> {
        match value {
            Value::Nat(_) => Ok(()),
            v => Err(Error::invalid("nat", format!("{v} is not a natural number"))),
        }
    }
    fn zero(&self) -> Element {
        self.elem(Value::Nat(0))
    }
    fn add(&self, x: &Element, y: &Element) -> Element {
        self.elem(Value::Nat(nat_of(x) + nat_of(y)))
    }
    fn leq(&self, x: &Element, y: &Element, _: &mut Budget) -> Verdict {
        cut_leq(self, x, y)
    }
    fn way_below_rule(&self, x: &Element, y: &Element, _: &mut Budget) -> Option<Verdict> {
        cut_way_below(self, x, y)
    }
    fn sup_rule(&self, c: &Chain, _: &mut Budget) -> SupVerdict {
        unbounded(c, "ℕ")
    }
    fn approximants(&self, x: &Element) -> Option<Chain> {
        Some(Chain::constant(format!("const {x}"), x.clone()).rapid(true))
    }
    fn enumerate(&self, n: usize) -> Option<Element> {
        Some(self.elem(Value::Nat(n as u64)))
    }
    fn cut(&self, x: &Element) -> Option<Cut> {
        Some(Cut::closed(Real::from_u64(nat_of(x))))
    }
    fn shadow(&self, x: &Element) -> Option<Vec<Real>> {
        Some(vec![Real::from_u64(nat_of(x))])
    }
    fn all_compact(&self) -> bool {
        true
    }
    fn discrete_shadow(&self) -> bool {
        true
    }
    fn antisymmetry(&self) -> &'static str {
        "usual order of integers"
    }
    fn probes(&self) -> Vec<Probe> {
        let e = |n| self.elem(Value::Nat(n));
        let (a, b) = (self.id.clone(), self.id.clone());
        vec![
            Probe {
                chain: Chain::finite("0,1,2,3", (0..4).map(e).collect()),
                bound: Some(e(3)),
            },
            Probe {
                chain: Chain::stationary("min(n,5)", 5, move |n| Element::new(&a, Value::Nat(n as u64))),
                bound: Some(e(5)),
            },
            Probe {
                chain: Chain::lazy("n", move |n| Element::new(&b, Value::Nat(n as u64)), Some(vec![Real::Infinity])),
                bound: None,
            },
        ]
    }
    fn parse_element(&self, text: &str) -> Result<Element> {
        text.trim()
            .parse::<u64>()
            .map(|n| self.elem(Value::Nat(n)))
            .map_err(|_| Error::invalid("nat", format!("cannot parse `{text}`")))
    }
}

/// ℕ∪{∞}, the Cuntz semigroup of the compact operators.
#[derive(Debug)]
pub struct NatInf {
    id: FamilyId,
}

impl NatInf {
    pub fn handle() -> MonoidHandle {
        Arc::new(NatInf {
            id: "nat-inf".into(),
        })
    }
}

impl Monoid for NatInf {
    fn family(&self) -> &FamilyId {
        &self.id
    }
    fn claimed_class(&self) -> Class {
        Class::Cu
    }
    fn validate(&self, value: &Value) -> Result<()> {
        match value {
            Value::Nat(_) | Value::Infinity => Ok(()),
            v => Err(Error::invalid("nat-inf", format!("{v} is not in ℕ∪{{∞}}"))),
        }
    }
    fn zero(&self) -> Element {
        self.elem(Value::Nat(0))
    }
    fn add(&self, x: &Element, y: &Element) -> Element {
        match (&x.value, &y.value) {
            (Value::Nat(a), Value::Nat(b)) => self.elem(Value::Nat(a + b)),
            _ => self.elem(Value::Infinity),
        }
    }
    fn leq(&self, x: &Element, y: &Element, _: &mut Budget) -> Verdict {
        cut_leq(self, x, y)
    }
    fn way_below_rule(&self, x: &Element, y: &Element, _: &mut Budget) -> Option<Verdict> {
        cut_way_below(self, x, y)
    }
    fn sup_rule(&self, c: &Chain, _: &mut Budget) -> SupVerdict {
        SupVerdict::Sup {
            value: self.elem(Value::Infinity),
            witness: Witness::rule(format!(
                "{} is non-stationary, so its finite terms are unbounded and ∞ is the only upper bound",
                c.label
            )),
        }
    }
    fn approximants(&self, x: &Element) -> Option<Chain> {
        Some(match x.value {
            Value::Infinity => {
                let id = self.id.clone();
                Chain::lazy("n→∞", move |n| Element::new(&id, Value::Nat(n as u64)), Some(vec![Real::Infinity])).rapid(true)
            }
            _ => Chain::constant(format!("const {x}"), x.clone()).rapid(true),
        })
    }
    fn enumerate(&self, n: usize) -> Option<Element> {
        Some(match n {
            0 => self.elem(Value::Nat(0)),
            1 => self.elem(Value::Infinity),
            k => self.elem(Value::Nat(k as u64 - 1)),
        })
    }
    fn cut(&self, x: &Element) -> Option<Cut> {
        Some(match x.value {
            Value::Nat(n) => Cut::closed(Real::from_u64(n)),
            _ => Cut::open(Real::Infinity),
        })
    }
    fn shadow(&self, x: &Element) -> Option<Vec<Real>> {
        Some(vec![match x.value {
            Value::Nat(n) => Real::from_u64(n),
            _ => Real::Infinity,
        }])
    }
    fn antisymmetry(&self) -> &'static str {
        "total order of the extended integers"
    }
    fn probes(&self) -> Vec<Probe> {
        let id = self.id.clone();
        vec![
            Probe {
                chain: Chain::finite("0,1,2,3", (0..4).map(|n| self.elem(Value::Nat(n))).collect()),
                bound: Some(self.elem(Value::Nat(3))),
            },
            Probe {
                chain: Chain::lazy("n", move |n| Element::new(&id, Value::Nat(n as u64)), Some(vec![Real::Infinity])),
                bound: Some(self.elem(Value::Infinity)),
            },
        ]
    }
    fn parse_element(&self, text: &str) -> Result<Element> {
        match text.trim() {
            "inf" | "∞" => Ok(self.elem(Value::Infinity)),
            t => t
                .parse::<u64>()
                .map(|n| self.elem(Value::Nat(n)))
                .map_err(|_| Error::invalid("nat-inf", format!("cannot parse `{text}`"))),
        }
    }
}

/// ℕᵈ with the coordinatewise order. All elements are compact.
#[derive(Debug)]
pub struct NatPow {
    id: FamilyId,
    d: usize,
}

impl NatPow {
    pub fn handle(d: usize) -> MonoidHandle {
        Arc::new(NatPow {
            id: format!("nat^{d}").into(),
            d,
        })
    }

    fn coords<'a>(&self, x: &'a Element) -> &'a [u64] {
        match &x.value {
            Value::Tuple(t) => t,
            _ => unreachable!("validated tuple payload"),
        }
    }

    fn decode(&self, mut n: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.d);
        for _ in 1..self.d {
            let (a, rest) = cantor_unpair(n as u64);
            out.push(a);
            n = rest as usize;
        }
        out.push(n as u64);
        out
    }
}

impl Monoid for NatPow {
    fn family(&self) -> &FamilyId {
        &self.id
    }
    fn claimed_class(&self) -> Class {
        Class::C
    }
    fn validate(&self, value: &Value) -> Result<()> {
        match value {
            Value::Tuple(t) if t.len() == self.d => Ok(()),
            v => Err(Error::invalid(self.id.to_string(), format!("{v} is not a {}-tuple", self.d))),
        }
    }
    fn zero(&self) -> Element {
        self.elem(Value::Tuple(vec![0; self.d]))
    }
    fn add(&self, x: &Element, y: &Element) -> Element {
        let t = self.coords(x).iter().zip(self.coords(y)).map(|(a, b)| a + b).collect();
        self.elem(Value::Tuple(t))
    }
    fn leq(&self, x: &Element, y: &Element, _: &mut Budget) -> Verdict {
        let (a, b) = (self.coords(x), self.coords(y));
        match a.iter().zip(b).position(|(p, q)| p > q) {
            None => Verdict::rule(true, "coordinatewise ≤"),
            Some(i) => Verdict::rule(false, format!("coordinate {i}: {} > {}", a[i], b[i])),
        }
    }
    fn way_below_rule(&self, x: &Element, y: &Element, b: &mut Budget) -> Option<Verdict> {
        let v = self.leq(x, y, b);
        Some(Verdict::rule(v.is_true(), "all elements compact: ≪ is ≤"))
    }
    fn sup_rule(&self, c: &Chain, _: &mut Budget) -> SupVerdict {
        let bounded = c
            .ambient
            .as_ref()
            .map(|a| a.iter().all(|x| !x.is_infinite()))
            .unwrap_or(false);
        if bounded {
            return SupVerdict::Unknown(format!(
                "chain {} is declared non-stationary with a finite ambient, impossible in ℕᵈ",
                c.label
            ));
        }
        SupVerdict::no_sup(
            Witness::Chain {
                label: c.label.clone(),
                prefix: c.prefix(8),
            },
            "a non-stationary increasing chain in ℕᵈ is unbounded in some coordinate",
        )
    }
    fn approximants(&self, x: &Element) -> Option<Chain> {
        Some(Chain::constant(format!("const {x}"), x.clone()).rapid(true))
    }
    fn enumerate(&self, n: usize) -> Option<Element> {
        Some(self.elem(Value::Tuple(self.decode(n))))
    }
    fn shadow(&self, x: &Element) -> Option<Vec<Real>> {
        Some(self.coords(x).iter().map(|&n| Real::from_u64(n)).collect())
    }
    fn all_compact(&self) -> bool {
        true
    }
    fn discrete_shadow(&self) -> bool {
        true
    }
    fn antisymmetry(&self) -> &'static str {
        "product of total orders"
    }
    fn probes(&self) -> Vec<Probe> {
        let id = self.id.clone();
        let d = self.d;
        let unit = move |n: u64| {
            let mut t = vec![0; d];
            t[0] = n;
            t
        };
        let top = self.elem(Value::Tuple(unit(2)));
        vec![
            Probe {
                chain: Chain::finite(
                    "e0,2e0",
                    vec![self.zero(), self.elem(Value::Tuple(unit(1))), top.clone()],
                ),
                bound: Some(top),
            },
            Probe {
                chain: Chain::lazy(
                    "n·e0",
                    move |n| Element::new(&id, Value::Tuple(unit(n as u64))),
                    Some((0..d).map(|i| if i == 0 { Real::Infinity } else { Real::zero() }).collect()),
                ),
                bound: None,
            },
        ]
    }
    fn parse_element(&self, text: &str) -> Result<Element> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let t: std::result::Result<Vec<u64>, _> = inner.split(',').map(|p| p.trim().parse()).collect();
        let v = Value::Tuple(t.map_err(|_| Error::invalid(self.id.to_string(), format!("cannot parse `{text}`")))?);
        self.validate(&v)?;
        Ok(self.elem(v))
    }
}
