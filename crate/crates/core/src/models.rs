//! The `V ⊔ LAff⁺⁺` model of a Cuntz semigroup over a trace simplex with
//! `k` extreme points.
//!
//! An element is zero, a nonzero projection class `P(v)` with `v ∈ V`, or
//! a strictly positive affine function `F(f)` given by its values at the
//! extreme traces. The `W` variant keeps `f` finite; the `Cu` variant
//! admits `∞` coordinates. `ρ: V → ℚ₊ᵏ` evaluates projections at the
//! extreme traces.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::completion::Completion;
use crate::element::{Element, FamilyId, ModelValue, Value};
use crate::error::{Error, Result};
use crate::number::{cantor_unpair, fmt_rational, int, parse_rational, parse_real, pow2_inv, Real};
use crate::order::{
    classify, is_order_embedding, is_precu_morphism, sup_chain_in, validate_chain, way_below_in,
    Budget, Chain, Class, Entry, Monoid, MonoidHandle, MonoidMap, Probe, Report, Status,
    SupVerdict, Verdict, Witness,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// Bounded functions: the pre-completed semigroup.
    W,
    /// Functions with values in `(0, ∞]`: the stabilized semigroup.
    Cu,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::W => "W",
            Variant::Cu => "Cu",
        })
    }
}

fn rational_row(row: &[BigRational]) -> String {
    row.iter().map(fmt_rational).collect::<Vec<_>>().join(" ")
}

fn dot(v: &[u64], rows: &[Vec<BigRational>], k: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); k];
    for (c, row) in v.iter().zip(rows) {
        let c = int(*c);
        for (o, r) in out.iter_mut().zip(row) {
            *o += &c * r;
        }
    }
    out
}

fn strictly_below(a: &[BigRational], b: &[BigRational]) -> bool {
    a.iter().zip(b).all(|(x, y)| x < y)
}

/// `ℕᵈ` ordered by its states: `v ≤ w` iff `v = w` or `ρ(v) < ρ(w)` at
/// every extreme trace. This is the projection monoid of a simple algebra
/// with strict comparison, and the order the mixed model rules compose with.
pub struct StateOrdered {
    id: FamilyId,
    d: usize,
    rows: Vec<Vec<BigRational>>,
}

impl StateOrdered {
    pub fn handle(rows: Vec<Vec<BigRational>>) -> Result<MonoidHandle> {
        let d = rows.len();
        let k = rows.first().map_or(0, Vec::len);
        if d == 0 || k == 0 || rows.iter().any(|r| r.len() != k || r.iter().any(|q| !q.is_positive())) {
            return Err(Error::Validation {
                object: "nat-states".into(),
                reason: "ρ needs d ≥ 1 rows of k ≥ 1 strictly positive rationals".into(),
            });
        }
        let id = format!(
            "nat-states({})",
            rows.iter().map(|r| rational_row(r)).collect::<Vec<_>>().join("; ")
        );
        Ok(Arc::new(StateOrdered { id: id.into(), d, rows }))
    }

    fn tuple<'a>(&self, x: &'a Element) -> &'a [u64] {
        match &x.value {
            Value::Tuple(t) => t,
            _ => unreachable!("validated state-ordered payload"),
        }
    }

    fn rho(&self, x: &Element) -> Vec<BigRational> {
        dot(self.tuple(x), &self.rows, self.rows[0].len())
    }
}

impl Monoid for StateOrdered {
    fn family(&self) -> &FamilyId {
        &self.id
    }
    fn claimed_class(&self) -> Class {
        Class::C
    }
    fn validate(&self, value: &Value) -> Result<()> {
        match value {
            Value::Tuple(t) if t.len() == self.d => Ok(()),
            v => Err(Error::invalid(self.id.to_string(), format!("{v} is not in ℕ^{}", self.d))),
        }
    }
    fn zero(&self) -> Element {
        self.elem(Value::Tuple(vec![0; self.d]))
    }
    fn add(&self, x: &Element, y: &Element) -> Element {
        let t = self.tuple(x).iter().zip(self.tuple(y)).map(|(a, b)| a + b).collect();
        self.elem(Value::Tuple(t))
    }
    fn leq(&self, x: &Element, y: &Element, _: &mut Budget) -> Verdict {
        let v = x == y || strictly_below(&self.rho(x), &self.rho(y));
        Verdict::rule(v, format!("ρ({x}) {} ρ({y}) at every extreme trace", if v { "<" } else { "≮" }))
    }
    fn way_below_rule(&self, x: &Element, y: &Element, b: &mut Budget) -> Option<Verdict> {
        // bounded chains are stationary: only finitely many tuples lie below a state bound
        Some(self.leq(x, y, b))
    }
    fn sup_rule(&self, c: &Chain, _: &mut Budget) -> SupVerdict {
        match &c.ambient {
            Some(a) if a.iter().all(Real::is_infinite) => SupVerdict::no_sup(
                Witness::Chain {
                    label: c.label.clone(),
                    prefix: c.prefix(6),
                },
                "the chain is unbounded",
            ),
            _ => SupVerdict::Unknown("non-stationary chains are unbounded; no ambient declared".into()),
        }
    }
    fn approximants(&self, x: &Element) -> Option<Chain> {
        Some(Chain::constant(format!("const {x}"), x.clone()).rapid(true))
    }
    fn enumerate(&self, n: usize) -> Option<Element> {
        let mut t = vec![0; self.d];
        let mut rest = n as u64;
        for slot in t.iter_mut().take(self.d - 1) {
            let (a, b) = cantor_unpair(rest);
            *slot = a;
            rest = b;
        }
        t[self.d - 1] = rest;
        Some(self.elem(Value::Tuple(t)))
    }
    fn shadow(&self, x: &Element) -> Option<Vec<Real>> {
        Some(self.rho(x).into_iter().map(Real::rational).collect())
    }
    fn all_compact(&self) -> bool {
        true
    }
    fn antisymmetry(&self) -> &'static str {
        "v ≤ w ≤ v with v ≠ w would need ρ(v) < ρ(w) < ρ(v)"
    }
    fn probes(&self) -> Vec<Probe> {
        let h: MonoidHandle = Arc::new(StateOrdered {
            id: self.id.clone(),
            d: self.d,
            rows: self.rows.clone(),
        });
        let k = self.rows[0].len();
        let d = self.d;
        vec![Probe {
            chain: Chain::lazy(
                "n·e₁",
                move |n| {
                    let mut t = vec![0; d];
                    t[0] = n as u64;
                    h.elem(Value::Tuple(t))
                },
                Some(vec![Real::Infinity; k]),
            ),
            bound: None,
        }]
    }
    fn parse_element(&self, text: &str) -> Result<Element> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let t: std::result::Result<Vec<u64>, _> = inner.split(',').map(|s| s.trim().parse()).collect();
        let v = Value::Tuple(t.map_err(|_| Error::invalid(self.id.to_string(), format!("cannot parse `{text}`")))?);
        self.validate(&v)?;
        Ok(self.elem(v))
    }
}

/// The model over `k` extreme traces with projection monoid `V` and state
/// map `ρ`.
///
/// `rho` holds one row per generator of `V`: a single row for ℕ, `d` rows
/// for ℕᵈ, and one row per element (indexed as in the table) for finite
/// `V`.
pub struct SimplexModel {
    id: FamilyId,
    pub k: usize,
    pub v: MonoidHandle,
    pub rho: Vec<Vec<BigRational>>,
    pub variant: Variant,
}

impl fmt::Debug for SimplexModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplexModel({})", self.id)
    }
}

enum Shape {
    Nat,
    Tuple(usize),
    Table(usize),
}

fn shape_of(v: &dyn Monoid) -> Option<Shape> {
    match v.zero().value {
        Value::Nat(_) => Some(Shape::Nat),
        Value::Tuple(t) => Some(Shape::Tuple(t.len())),
        Value::Index(_) => Some(Shape::Table(v.carrier()?.len())),
        _ => None,
    }
}

fn mv(x: &Element) -> &ModelValue {
    match &x.value {
        Value::Model(m) => m,
        _ => unreachable!("validated model payload"),
    }
}

fn pointwise(a: &[Real], b: &[Real], strict: bool) -> bool {
    a.iter().zip(b).all(|(x, y)| match x.partial_cmp(y) {
        Some(Ordering::Less) => true,
        Some(Ordering::Equal) => !strict,
        _ => false,
    })
}

fn reals(q: Vec<BigRational>) -> Vec<Real> {
    q.into_iter().map(Real::rational).collect()
}

impl SimplexModel {
    pub fn new(k: usize, v: MonoidHandle, rho: Vec<Vec<BigRational>>, variant: Variant) -> Result<Arc<Self>> {
        let object = format!("model over {}", v.family());
        let fail = |reason: String| Error::Validation {
            object: object.clone(),
            reason,
        };
        if k == 0 {
            return Err(fail("k must be at least 1".into()));
        }
        if !v.all_compact() {
            return Err(Error::NotAllCompact(v.family().to_string()));
        }
        if rho.iter().any(|r| r.len() != k) {
            return Err(fail(format!("every row of ρ needs {k} entries")));
        }
        if rho.iter().flatten().any(Signed::is_negative) {
            return Err(fail("ρ has a negative entry".into()));
        }
        let shape = shape_of(v.as_ref()).ok_or_else(|| fail("V must be ℕ, ℕᵈ or a finite table".into()))?;
        let rows = match shape {
            Shape::Nat => 1,
            Shape::Tuple(d) => d,
            Shape::Table(n) => n,
        };
        if rho.len() != rows {
            return Err(fail(format!("ρ needs {rows} rows, found {}", rho.len())));
        }
        let id = format!(
            "{variant}-model(k={k}; V={}; ρ={})",
            v.family(),
            rho.iter().map(|r| rational_row(r)).collect::<Vec<_>>().join("; ")
        );
        let model = SimplexModel {
            id: id.into(),
            k,
            v,
            rho,
            variant,
        };
        model.check_state_map()?;
        Ok(Arc::new(model))
    }

    /// `ρ` additive, strictly positive off zero, strictly monotone, and
    /// `ρ(v) < ρ(w) ⇒ v ≤ w`. The last clause is what makes
    /// `P(v) ≤ F(f) ≤ P(w)` imply `P(v) ≤ P(w)`.
    fn check_state_map(&self) -> Result<()> {
        let fail = |reason: String| Error::Validation {
            object: self.id.to_string(),
            reason,
        };
        let mut b = Budget::new(u64::MAX);
        let v = self.v.as_ref();
        match shape_of(v) {
            Some(Shape::Table(_)) => {
                let carrier = v.carrier().expect("finite V");
                let zero = v.zero();
                for x in &carrier {
                    let rx = self.rho(x);
                    if (x == &zero) != rx.iter().all(Zero::is_zero) || (x != &zero && rx.iter().any(|q| !q.is_positive())) {
                        return Err(fail(format!("ρ({x}) must be zero exactly at 0 and strictly positive elsewhere")));
                    }
                    for y in &carrier {
                        let ry = self.rho(y);
                        let sum: Vec<BigRational> = rx.iter().zip(&ry).map(|(a, c)| a + c).collect();
                        if self.rho(&v.add(x, y)) != sum {
                            return Err(fail(format!("ρ is not additive at ({x}, {y})")));
                        }
                        let le = v.leq(x, y, &mut b).is_true();
                        if le && x != y && !strictly_below(&rx, &ry) {
                            return Err(fail(format!("{x} < {y} but ρ({x}) ≮ ρ({y})")));
                        }
                        if strictly_below(&rx, &ry) && !le {
                            return Err(fail(format!("ρ({x}) < ρ({y}) but {x} ≰ {y}")));
                        }
                    }
                }
            }
            _ => {
                if self.rho.iter().flatten().any(|q| !q.is_positive()) {
                    return Err(fail("every generator needs strictly positive values".into()));
                }
                if let Some(Shape::Tuple(d)) = shape_of(v) {
                    if d >= 2 {
                        // e₁ against m·e₂ with m·ρ(e₂) > ρ(e₁)
                        let m = self.rho[0]
                            .iter()
                            .zip(&self.rho[1])
                            .map(|(a, c)| (a / c).to_integer())
                            .max()
                            .expect("k ≥ 1")
                            + BigInt::one();
                        let m = m.to_u64().ok_or_else(|| fail("ρ entries too large".into()))?;
                        let mut e1 = vec![0; d];
                        e1[0] = 1;
                        let mut e2 = vec![0; d];
                        e2[1] = m;
                        let (x, y) = (v.elem(Value::Tuple(e1)), v.elem(Value::Tuple(e2)));
                        if strictly_below(&self.rho(&x), &self.rho(&y)) && !v.leq(&x, &y, &mut b).is_true() {
                            return Err(fail(format!(
                                "ρ({x}) < ρ({y}) but {x} ≰ {y} in V; order V by its states (nat-states)"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn handle(self: &Arc<Self>) -> MonoidHandle {
        self.clone()
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_variant(&self, variant: Variant) -> Arc<SimplexModel> {
        SimplexModel::new(self.k, self.v.clone(), self.rho.clone(), variant).expect("validated data")
    }

    /// `ρ(v)` at the extreme traces.
    pub fn rho(&self, v: &Element) -> Vec<BigRational> {
        match &v.value {
            Value::Nat(n) => dot(&[*n], &self.rho, self.k),
            Value::Tuple(t) => dot(t, &self.rho, self.k),
            Value::Index(i) => self.rho[*i].clone(),
            _ => unreachable!("validated V payload"),
        }
    }

    fn rho_of(&self, boxed: &Value) -> Vec<Real> {
        reals(self.rho(&self.v.elem(boxed.clone())))
    }

    pub fn zero_elem(&self) -> Element {
        self.elem(Value::Model(ModelValue::Zero))
    }

    pub fn p(&self, v: &Element) -> Result<Element> {
        let value = Value::Model(ModelValue::P(Box::new(v.value.clone())));
        self.validate(&value)?;
        Ok(self.elem(value))
    }

    pub fn f(&self, values: Vec<Real>) -> Result<Element> {
        let value = Value::Model(ModelValue::F(values));
        self.validate(&value)?;
        Ok(self.elem(value))
    }

    pub fn fq(&self, values: &[BigRational]) -> Result<Element> {
        self.f(values.iter().cloned().map(Real::rational).collect())
    }

    /// Values at the extreme traces: `0`, `ρ(v)` or `f`.
    pub fn state_values(&self, x: &Element) -> Vec<Real> {
        match mv(x) {
            ModelValue::Zero => vec![Real::zero(); self.k],
            ModelValue::P(v) => self.rho_of(v),
            ModelValue::F(f) => f.clone(),
        }
    }

    fn same_model(&self, x: &Element) -> Result<()> {
        if x.family != self.id {
            return Err(Error::ModelMismatch(format!("{x} belongs to {}, not {}", x.family, self.id)));
        }
        self.validate(&x.value)
    }

    pub fn w_leq(&self, x: &Element, y: &Element) -> Result<bool> {
        self.same_model(x)?;
        self.same_model(y)?;
        Ok(self.leq(x, y, &mut Budget::new(u64::MAX)).is_true())
    }

    pub fn w_add(&self, x: &Element, y: &Element) -> Result<Element> {
        self.same_model(x)?;
        self.same_model(y)?;
        Ok(self.add(x, y))
    }

    pub fn w_way_below(&self, x: &Element, y: &Element) -> Result<bool> {
        self.same_model(x)?;
        self.same_model(y)?;
        Ok(self.way_below_rule(x, y, &mut Budget::new(u64::MAX)).expect("total rule").is_true())
    }

    pub fn cu_sup(&self, c: &Chain) -> Result<Element> {
        match sup_chain_in(self, c, &mut Budget::new(1 << 12))? {
            SupVerdict::Sup { value, .. } => Ok(value),
            SupVerdict::NoSup { reason, .. } => Err(Error::SupFailed(format!("{}: {reason}", c.label))),
            SupVerdict::Unknown(note) => Err(Error::SupFailed(format!("{}: {note}", c.label))),
        }
    }

    pub fn multiple(&self, n: u64, x: &Element) -> Element {
        (0..n).fold(self.zero(), |acc, _| self.add(&acc, x))
    }

    /// Nonzero elements of `V` used for samples.
    fn v_samples(&self) -> Vec<Element> {
        let zero = self.v.zero();
        self.v.samples().into_iter().filter(|x| x != &zero).take(3).collect()
    }
}

impl Monoid for SimplexModel {
    fn family(&self) -> &FamilyId {
        &self.id
    }
    fn claimed_class(&self) -> Class {
        match self.variant {
            Variant::W => Class::C,
            Variant::Cu => Class::Cu,
        }
    }
    fn validate(&self, value: &Value) -> Result<()> {
        let bad = |reason: String| Err(Error::invalid(self.id.to_string(), reason));
        let Value::Model(m) = value else {
            return bad(format!("{value} is not a model element"));
        };
        match m {
            ModelValue::Zero => Ok(()),
            ModelValue::P(v) => {
                self.v.validate(v)?;
                if self.v.elem((**v).clone()) == self.v.zero() {
                    return bad("P(0) is written 0".into());
                }
                Ok(())
            }
            ModelValue::F(f) => {
                if f.len() != self.k {
                    return bad(format!("F needs {} values", self.k));
                }
                for x in f {
                    let ok = match x.as_rational() {
                        Some(q) => q.is_positive(),
                        None => x.is_infinite() && self.variant == Variant::Cu,
                    };
                    if !ok {
                        return bad(format!(
                            "F values must be strictly positive rationals{}; found {x}",
                            if self.variant == Variant::Cu { " or ∞" } else { "" }
                        ));
                    }
                }
                Ok(())
            }
        }
    }
    fn zero(&self) -> Element {
        self.zero_elem()
    }
    fn add(&self, x: &Element, y: &Element) -> Element {
        use ModelValue::*;
        let sum = |a: &[Real], b: &[Real]| -> Vec<Real> {
            a.iter().zip(b).map(|(p, q)| p.checked_add(q).expect("rational or ∞")).collect()
        };
        let value = match (mv(x), mv(y)) {
            (Zero, _) => return y.clone(),
            (_, Zero) => return x.clone(),
            (P(v), P(w)) => {
                let s = self.v.add(&self.v.elem((**v).clone()), &self.v.elem((**w).clone()));
                P(Box::new(s.value))
            }
            (F(f), F(g)) => F(sum(f, g)),
            (P(v), F(g)) | (F(g), P(v)) => F(sum(&self.rho_of(v), g)),
        };
        self.elem(Value::Model(value))
    }
    fn leq(&self, x: &Element, y: &Element, b: &mut Budget) -> Verdict {
        use ModelValue::*;
        let (v, why) = match (mv(x), mv(y)) {
            (Zero, _) => (true, "0 is the least element"),
            (_, Zero) => (false, "only 0 lies below 0"),
            (P(v), P(w)) => {
                let t = self.v.leq(&self.v.elem((**v).clone()), &self.v.elem((**w).clone()), b);
                (t.is_true(), "order of V")
            }
            (F(f), F(g)) => (pointwise(f, g, false), "pointwise order"),
            (F(f), P(w)) => (pointwise(f, &self.rho_of(w), false), "f ≤ ρ(v) at every trace"),
            (P(v), F(g)) => (pointwise(&self.rho_of(v), g, true), "ρ(v) < f at every trace"),
        };
        Verdict::rule(v, why)
    }
    fn way_below_rule(&self, x: &Element, y: &Element, b: &mut Budget) -> Option<Verdict> {
        use ModelValue::*;
        Some(match (mv(x), mv(y)) {
            (Zero, _) => Verdict::rule(true, "0 is compact"),
            (_, Zero) => Verdict::rule(false, "only 0 lies below 0"),
            (_, P(_)) => {
                let le = self.leq(x, y, b).is_true();
                Verdict::rule(le, "projection classes are compact, so ≪ into them is ≤")
            }
            (P(v), F(g)) => Verdict::rule(pointwise(&self.rho_of(v), g, true), "ρ(v) < g at every trace"),
            (F(f), F(g)) => Verdict::rule(pointwise(f, g, true), "f < g at every trace, f finite"),
        })
    }
    fn sup_rule(&self, c: &Chain, _: &mut Budget) -> SupVerdict {
        let witness = || Witness::Chain {
            label: c.label.clone(),
            prefix: c.prefix(6),
        };
        let Some(a) = c.ambient.clone().filter(|a| a.len() == self.k) else {
            return SupVerdict::Unknown(format!("chain {} declares no pointwise supremum", c.label));
        };
        if a.iter().any(|x| !x.is_rational() && !x.is_infinite()) {
            return SupVerdict::Unknown(format!("the pointwise supremum of {} is not rational", c.label));
        }
        if a.iter().any(Real::is_infinite) && self.variant == Variant::W {
            return SupVerdict::no_sup(witness(), "the values at the traces are unbounded");
        }
        let value = self.elem(Value::Model(ModelValue::F(a)));
        SupVerdict::Sup {
            value,
            witness: Witness::rule(format!(
                "{} is not eventually constant, so its supremum is the pointwise supremum of its values",
                c.label
            )),
        }
    }
    fn approximants(&self, x: &Element) -> Option<Chain> {
        let ModelValue::F(f) = mv(x) else {
            return Some(Chain::constant(format!("const {x}"), x.clone()).rapid(true));
        };
        let f = f.clone();
        let h: MonoidHandle = Arc::new(SimplexModel {
            id: self.id.clone(),
            k: self.k,
            v: self.v.clone(),
            rho: self.rho.clone(),
            variant: self.variant,
        });
        let ambient = f.clone();
        Some(
            Chain::lazy(
                format!("{x}·(1-2^-(n+2))"),
                move |n| {
                    let t = f
                        .iter()
                        .map(|c| match c.as_rational() {
                            Some(q) => Real::rational(q * (BigRational::one() - pow2_inv(n + 2))),
                            None => Real::from_u64(n as u64 + 1),
                        })
                        .collect();
                    h.elem(Value::Model(ModelValue::F(t)))
                },
                Some(ambient),
            )
            .rapid(true),
        )
    }
    fn shadow(&self, x: &Element) -> Option<Vec<Real>> {
        Some(self.state_values(x))
    }
    fn antisymmetry(&self) -> &'static str {
        "f ≤ ρ(v) and ρ(v) < f exclude each other; the remaining cases inherit antisymmetry"
    }
    fn samples(&self) -> Vec<Element> {
        let mut out = vec![self.zero()];
        for v in self.v_samples() {
            out.push(self.p(&v).expect("nonzero V sample"));
        }
        let k = self.k;
        let tuple = |f: &dyn Fn(usize) -> BigRational| self.fq(&(0..k).map(f).collect::<Vec<_>>()).expect("positive");
        out.push(tuple(&|_| int(1)));
        out.push(tuple(&|_| BigRational::new(1.into(), 2.into())));
        out.push(tuple(&|i| int(i as u64 + 1)));
        out.push(tuple(&|i| BigRational::new(3.into(), (i as i64 + 2).into())));
        if self.variant == Variant::Cu {
            out.push(self.f(vec![Real::Infinity; k]).expect("Cu admits ∞"));
            if k >= 2 {
                let mut t = vec![Real::from_u64(1); k];
                t[k - 1] = Real::Infinity;
                out.push(self.f(t).expect("Cu admits ∞"));
            }
        }
        out
    }
    fn probes(&self) -> Vec<Probe> {
        let h: MonoidHandle = Arc::new(SimplexModel {
            id: self.id.clone(),
            k: self.k,
            v: self.v.clone(),
            rho: self.rho.clone(),
            variant: self.variant,
        });
        let k = self.k;
        let mut out = Vec::new();
        let top: Vec<Real> = (0..k).map(|i| Real::from_u64(i as u64 + 1)).collect();
        let m = h.clone();
        out.push(Probe {
            chain: Chain::lazy(
                "F(1-2^-(n+1), 2, …)",
                move |n| {
                    let mut t: Vec<Real> = (0..k).map(|i| Real::from_u64(i as u64 + 1)).collect();
                    t[0] = Real::rational(BigRational::one() - pow2_inv(n + 1));
                    m.elem(Value::Model(ModelValue::F(t)))
                },
                Some(top.clone()),
            ),
            bound: Some(self.f(top).expect("positive")),
        });
        let m = h.clone();
        out.push(Probe {
            chain: Chain::lazy(
                "F(n+1, …)",
                move |n| m.elem(Value::Model(ModelValue::F(vec![Real::from_u64(n as u64 + 1); k]))),
                Some(vec![Real::Infinity; k]),
            ),
            bound: None,
        });
        if let Some(g) = self.v_samples().first().cloned() {
            let (m, v) = (h.clone(), self.v.clone());
            out.push(Probe {
                chain: Chain::lazy(
                    format!("P((n+1)·{g})"),
                    move |n| {
                        let mut s = g.clone();
                        for _ in 0..n {
                            s = v.add(&s, &g);
                        }
                        m.elem(Value::Model(ModelValue::P(Box::new(s.value))))
                    },
                    Some(vec![Real::Infinity; k]),
                ),
                bound: None,
            });
        }
        out
    }
    fn parse_element(&self, text: &str) -> Result<Element> {
        let text = text.trim();
        let bad = || Error::invalid(self.id.to_string(), format!("cannot parse `{text}`"));
        if text == "0" {
            return Ok(self.zero());
        }
        if let Some(inner) = text.strip_prefix("P[").and_then(|t| t.strip_suffix(']')) {
            let v = self.v.parse_element(inner)?;
            return self.p(&v);
        }
        if let Some(inner) = text.strip_prefix("F(").and_then(|t| t.strip_suffix(')')) {
            let values: Option<Vec<Real>> = inner.split(',').map(parse_real).collect();
            return self.f(values.ok_or_else(bad)?);
        }
        Err(bad())
    }
    fn describe(&self) -> String {
        self.id.to_string()
    }
}

/// The inclusion of the `W` model into the `Cu` model with the same data.
pub fn inclusion(model: &SimplexModel) -> (Arc<SimplexModel>, Arc<SimplexModel>, MonoidMap) {
    let w = model.with_variant(Variant::W);
    let cu = model.with_variant(Variant::Cu);
    let target = cu.clone();
    let map = MonoidMap::new("W ⊂ Cu", w.handle(), cu.handle(), move |x| Ok(target.elem(x.value.clone())))
        .with_ambient(|a| Some(a.to_vec()));
    (w, cu, map)
}

/// The completion clauses for the inclusion `W ⊂ Cu`: the Cu model is in
/// Cu, the inclusion is an order-embedding preserving `≪` and suprema, and
/// every sampled element of the Cu model is the supremum of a rapidly
/// increasing sequence of `W` elements.
pub fn verify_model_completion(model: &SimplexModel, budget: u64) -> Result<Report> {
    let (w, cu, iota) = inclusion(model);
    let mut report = Report::new(format!("completion check for the W model of {}", model.id));
    let cls = classify(&cu.handle(), budget)?;
    let cu_status = cls.entry("Cu").map_or(Status::Unknown, |e| e.status);
    let pre_status = cls.entry("PreCu").map_or(Status::Unknown, |e| e.status);
    report.push(
        Entry::new("the Cu model is in Cu", "completion.cu", cu_status.combine(pre_status))
            .detail(format!("PreCu: {}, Cu: {}", pre_status.label(), cu_status.label())),
    );
    let sample = w.samples();
    let chains: Vec<Chain> = w.probes().into_iter().filter(|p| p.bound.is_some()).map(|p| p.chain).collect();
    report.extend(is_order_embedding(&iota, &sample, budget)?);
    report.extend(is_precu_morphism(&iota, &sample, &chains, budget)?);

    let mut status = Status::Pass;
    let mut detail = String::new();
    let mut witness = None;
    for x in cu.samples() {
        let c = cu.approximants(&x).expect("model approximants");
        validate_chain(cu.as_ref(), &c)?;
        let mut ok = true;
        let mut b = Budget::new(budget);
        for n in 0..16 {
            let (s, t) = (c.term(n), c.term(n + 1));
            let in_w = w.validate(&s.value).is_ok() && w.validate(&t.value).is_ok();
            let (sw, tw) = (w.elem(s.value.clone()), w.elem(t.value.clone()));
            ok &= in_w && way_below_in(w.as_ref(), &sw, &tw, &mut b)?.is_true();
        }
        ok &= matches!(sup_chain_in(cu.as_ref(), &c, &mut b)?, SupVerdict::Sup { value, .. } if value == x);
        if !ok && status == Status::Pass {
            status = Status::Fail;
            detail = format!("{x} is not the supremum of {}", c.label);
            witness = Some(Witness::Element(x.clone()));
        }
    }
    if detail.is_empty() {
        detail = format!("{} sampled elements", cu.samples().len());
    }
    report.push(
        Entry::new("every element is a sup of a rapid W-sequence", "completion.density", status)
            .detail(detail)
            .witness(witness),
    );
    Ok(report)
}

/// Rational grid for existential searches: values `p/q` with
/// `q ≤ max_denominator` in `(0, max_value]`, at most `cap` candidates.
#[derive(Clone, Debug)]
pub struct Grid {
    pub max_denominator: u64,
    pub max_value: BigRational,
    pub cap: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            max_denominator: 6,
            max_value: int(4),
            cap: 100_000,
        }
    }
}

impl Grid {
    /// Sorted distinct grid values.
    pub fn values(&self) -> Vec<BigRational> {
        let mut out = Vec::new();
        for q in 1..=self.max_denominator {
            let top = (&self.max_value * int(q)).floor().to_integer().to_u64().unwrap_or(0);
            for p in 1..=top {
                out.push(BigRational::new(BigInt::from(p), BigInt::from(q)));
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// `x` violates almost unperforation when `(n+1)x ≤ ny` but `x ≰ y`.
pub fn almost_unperforated(model: &SimplexModel, sample: &[Element], n_cap: u64) -> Report {
    let mut report = Report::new(format!("almost unperforation of {}", model.id));
    let mut found = None;
    let mut checked = 0;
    'outer: for x in sample {
        for y in sample {
            for n in 1..=n_cap {
                checked += 1;
                let lhs = model.multiple(n + 1, x);
                let rhs = model.multiple(n, y);
                let mut b = Budget::new(u64::MAX);
                if model.leq(&lhs, &rhs, &mut b).is_true() && !model.leq(x, y, &mut b).is_true() {
                    found = Some((n, x.clone(), y.clone()));
                    break 'outer;
                }
            }
        }
    }
    report.push(match found {
        None => Entry::new("(n+1)x ≤ ny implies x ≤ y", "comparison.almost-unperforated", Status::Pass)
            .detail(format!("{checked} instances with n ≤ {n_cap}, no violation")),
        Some((n, x, y)) => Entry::new("(n+1)x ≤ ny implies x ≤ y", "comparison.almost-unperforated", Status::Fail)
            .detail(format!("n = {n}"))
            .witness(Some(Witness::Pair(x, y))),
    });
    report
}

pub fn is_divisibility_certificate(model: &SimplexModel, x: &Element, y: &Element, n: u64) -> bool {
    let mut b = Budget::new(u64::MAX);
    model.leq(&model.multiple(n, y), x, &mut b).is_true() && model.leq(x, &model.multiple(n + 1, y), &mut b).is_true()
}

/// Searches `y` with `ny ≤ x ≤ (n+1)y` among zero, sampled projection
/// classes, and grid tuples (plus `∞` coordinates in the Cu variant).
pub fn almost_divisible(model: &SimplexModel, x: &Element, n: u64, grid: &Grid) -> Result<Element> {
    let mut candidates = vec![model.zero()];
    candidates.extend(model.v_samples().iter().map(|v| model.p(v).expect("nonzero")));
    for y in &candidates {
        if is_divisibility_certificate(model, x, y, n) {
            return Ok(y.clone());
        }
    }
    let mut values: Vec<Real> = grid.values().into_iter().map(Real::rational).collect();
    if model.variant == Variant::Cu {
        values.push(Real::Infinity);
    }
    let k = model.k;
    let total = values.len().checked_pow(k as u32).unwrap_or(usize::MAX);
    for code in 0..total.min(grid.cap) {
        let t: Vec<Real> = (0..k).map(|i| values[code / values.len().pow(i as u32) % values.len()].clone()).collect();
        let y = model.f(t)?;
        if is_divisibility_certificate(model, x, &y, n) {
            return Ok(y);
        }
    }
    Err(Error::GridExhausted(format!("no y with {n}y ≤ {x} ≤ {}y on the grid", n + 1)))
}

pub fn divisibility_report(model: &SimplexModel, sample: &[Element], n_cap: u64, grid: &Grid) -> Result<Report> {
    let mut report = Report::new(format!("almost divisibility of {}", model.id));
    for x in sample {
        for n in 1..=n_cap {
            let check = format!("divisor of {x} for n = {n}");
            report.push(match almost_divisible(model, x, n, grid) {
                Ok(y) => Entry::new(check, "comparison.almost-divisible", Status::Pass)
                    .detail(format!("certificate y = {y}"))
                    .witness(Some(Witness::Element(y))),
                Err(Error::GridExhausted(note)) => {
                    Entry::new(check, "comparison.almost-divisible", Status::Unknown).detail(note)
                }
                Err(e) => return Err(e),
            });
        }
    }
    Ok(report)
}

/// Outcome of `s(a) + r < s(b)` at every extreme trace.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RComparison {
    pub premise: bool,
    pub ordered: bool,
}

impl RComparison {
    pub fn holds(&self) -> bool {
        !self.premise || self.ordered
    }
}

pub fn r_comparison(model: &SimplexModel, a: &Element, b: &Element, r: &BigRational) -> Result<RComparison> {
    model.same_model(a)?;
    model.same_model(b)?;
    let shift = Real::rational(r.clone());
    let sa: Vec<Real> = model.state_values(a).iter().map(|x| x.checked_add(&shift).expect("rational")).collect();
    let premise = pointwise(&sa, &model.state_values(b), true);
    Ok(RComparison {
        premise,
        ordered: model.w_leq(a, b)?,
    })
}

/// Least grid value `r` for which `r`-comparison implies order on every
/// test pair. It is an upper bound for the radius of comparison restricted
/// to the test set, never an exact value.
#[derive(Clone, Debug, Serialize)]
pub struct RadiusEstimate {
    pub upper_bound: Option<String>,
    pub grid_points: usize,
    pub tested_pairs: usize,
}

pub fn radius_estimate(model: &SimplexModel, tests: &[Element], grid: &[BigRational]) -> Result<RadiusEstimate> {
    let mut sorted = grid.to_vec();
    sorted.sort();
    sorted.dedup();
    for r in &sorted {
        let mut all = true;
        for a in tests {
            for b in tests {
                if !r_comparison(model, a, b, r)?.holds() {
                    all = false;
                }
            }
        }
        if all {
            return Ok(RadiusEstimate {
                upper_bound: Some(fmt_rational(r)),
                grid_points: sorted.len(),
                tested_pairs: tests.len() * tests.len(),
            });
        }
    }
    Ok(RadiusEstimate {
        upper_bound: None,
        grid_points: sorted.len(),
        tested_pairs: tests.len() * tests.len(),
    })
}

/// The interval monoid of an all-compact `V`, as the completion of `V`.
pub fn rr0_model(v: &MonoidHandle) -> Result<MonoidHandle> {
    if !v.all_compact() {
        return Err(Error::NotAllCompact(v.family().to_string()));
    }
    Ok(Completion::of(v).handle())
}

/// Parses a `;`-separated list of rows of rationals.
pub fn parse_matrix(text: &str) -> Option<Vec<Vec<BigRational>>> {
    text.split(';')
        .map(|row| row.split_whitespace().map(parse_rational).collect::<Option<Vec<_>>>())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Nat, NatPow};
    use crate::number::rat;

    fn nat_model(row: &[(i64, i64)], variant: Variant) -> Arc<SimplexModel> {
        let row: Vec<BigRational> = row.iter().map(|&(p, q)| rat(p, q)).collect();
        SimplexModel::new(row.len(), Nat::handle(), vec![row], variant).unwrap()
    }

    fn f(m: &SimplexModel, v: &[(i64, i64)]) -> Element {
        m.fq(&v.iter().map(|&(p, q)| rat(p, q)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn mixed_order_rules() {
        let m = nat_model(&[(1, 1), (1, 1)], Variant::W);
        let p = m.p(&Nat::handle().elem(Value::Nat(1))).unwrap();
        let one = f(&m, &[(1, 1), (1, 1)]);
        assert!(m.w_leq(&one, &p).unwrap());
        assert!(!m.w_leq(&p, &one).unwrap());
        assert!(m.w_leq(&p, &f(&m, &[(3, 2), (3, 2)])).unwrap());
        assert!(m.w_way_below(&one, &p).unwrap());
        assert!(!m.w_way_below(&one, &one).unwrap());
        assert!(m.w_way_below(&one, &f(&m, &[(2, 1), (2, 1)])).unwrap());
        assert!(m.w_way_below(&p, &p).unwrap());
    }

    #[test]
    fn mixed_addition() {
        let m = nat_model(&[(1, 1), (2, 1)], Variant::Cu);
        let p = m.p(&Nat::handle().elem(Value::Nat(1))).unwrap();
        assert_eq!(m.w_add(&p, &f(&m, &[(1, 1), (1, 1)])).unwrap(), f(&m, &[(2, 1), (3, 1)]));
        let a = m.f(vec![Real::from_u64(1), Real::Infinity]).unwrap();
        let s = m.w_add(&a, &f(&m, &[(2, 1), (3, 1)])).unwrap();
        assert_eq!(s, m.f(vec![Real::from_u64(3), Real::Infinity]).unwrap());
    }

    #[test]
    fn coordinatewise_nat2_is_rejected() {
        let rows = vec![vec![int(1), int(1)], vec![int(1), int(2)]];
        assert!(SimplexModel::new(2, NatPow::handle(2), rows.clone(), Variant::W).is_err());
        let v = StateOrdered::handle(rows.clone()).unwrap();
        assert!(SimplexModel::new(2, v, rows, Variant::W).is_ok());
    }

    #[test]
    fn unbounded_projection_chain_has_infinite_sup() {
        let m = nat_model(&[(1, 1), (1, 1)], Variant::Cu);
        let probe = m.probes().into_iter().find(|p| p.chain.label.starts_with("P(")).unwrap();
        assert_eq!(m.cu_sup(&probe.chain).unwrap(), m.f(vec![Real::Infinity; 2]).unwrap());
        let w = m.with_variant(Variant::W);
        let probe = w.probes().into_iter().find(|p| p.chain.label.starts_with("P(")).unwrap();
        assert!(w.cu_sup(&probe.chain).is_err());
    }

    #[test]
    fn completion_clauses_hold() {
        let m = nat_model(&[(1, 1), (2, 1)], Variant::W);
        let r = verify_model_completion(&m, 64).unwrap();
        assert!(r.passed(), "{r}");
    }
}
