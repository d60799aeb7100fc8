//! Countably generated intervals of a monoid, the completion `M̄` of
//! interval classes with the embedding `ι`, the universal extension `β` of
//! a morphism into a Cu-monoid, and the lift `σ̄` of a morphism.
//!
//! Intervals are never materialized: each is a cofinal generator (a top
//! element or an increasing chain) and every relation is decided from
//! generator data, by cuts or shadows when the owner has them, and by a
//! budgeted search otherwise.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::element::{Element, FamilyId, Value};
use crate::error::{Error, Result};
use crate::number::Real;
use crate::order::{
    check_family, classify, equal_in, is_hereditary, is_order_embedding, is_precu_morphism,
    sum_chain, sup_chain_in, validate_chain, way_below_in, Budget, Chain, Class, Cut, Entry,
    Monoid, MonoidHandle, MonoidMap, Preimage, Probe, Report, Status, SupVerdict, Tri, Verdict,
    Witness, PREFIX_CHECK,
};

/// Search length for diagonal terms computed lazily, past the prefix that
/// construction validates against the caller's budget.
pub const DIAGONAL_CAP: usize = 4096;

/// Generator data of an interval.
#[derive(Clone)]
pub enum Form {
    /// `[0, x]`.
    Principal(Element),
    /// Downward closure of a directed finite set.
    Finite(Vec<Element>),
    /// Downward closure of an increasing chain, with an optional upper bound.
    Chain { chain: Chain, bound: Option<Element> },
}

/// A nonempty, upward directed, order-hereditary subset with a countable
/// cofinal subset.
#[derive(Clone)]
pub struct Interval {
    owner: MonoidHandle,
    form: Form,
    top: Option<Element>,
}

impl Interval {
    pub fn principal(owner: &MonoidHandle, x: Element) -> Result<Self> {
        check_family(owner.as_ref(), &x)?;
        Ok(Interval {
            owner: owner.clone(),
            top: Some(x.clone()),
            form: Form::Principal(x),
        })
    }

    /// A finite generator list; directedness is checked, and a directed
    /// finite set has a greatest element, which becomes the top.
    pub fn finite(owner: &MonoidHandle, gens: Vec<Element>) -> Result<Self> {
        let h = owner.as_ref();
        if gens.is_empty() {
            return Err(Error::Validation {
                object: "interval".into(),
                reason: "empty generator list".into(),
            });
        }
        for g in &gens {
            check_family(h, g)?;
        }
        let mut b = Budget::new(u64::MAX);
        let top = gens
            .iter()
            .find(|t| gens.iter().all(|g| h.leq(g, t, &mut b).is_true()))
            .cloned();
        let Some(top) = top else {
            for (i, x) in gens.iter().enumerate() {
                for y in &gens[i + 1..] {
                    let bounded = gens
                        .iter()
                        .any(|t| h.leq(x, t, &mut b).is_true() && h.leq(y, t, &mut b).is_true());
                    if !bounded {
                        return Err(Error::Validation {
                            object: "interval".into(),
                            reason: format!("generators {x} and {y} have no upper bound in the list"),
                        });
                    }
                }
            }
            return Err(Error::Validation {
                object: "interval".into(),
                reason: "generator list has no greatest element".into(),
            });
        };
        Ok(Interval {
            owner: owner.clone(),
            top: Some(top),
            form: Form::Finite(gens),
        })
    }

    /// The downward closure of an increasing chain; monotonicity, the
    /// declared ambient and the bound are checked on the leading terms.
    pub fn chain(owner: &MonoidHandle, chain: Chain, bound: Option<Element>) -> Result<Self> {
        let h = owner.as_ref();
        validate_chain(h, &chain)?;
        if let Some(u) = &bound {
            check_family(h, u)?;
            let mut b = Budget::new(u64::MAX);
            for n in 0..chain.span(PREFIX_CHECK) {
                if h.leq(&chain.term(n), u, &mut b).is_false() {
                    return Err(Error::Validation {
                        object: chain.label.clone(),
                        reason: format!("term {n} exceeds the declared bound {u}"),
                    });
                }
            }
        }
        Ok(Interval {
            owner: owner.clone(),
            top: chain.eventual(),
            form: Form::Chain { chain, bound },
        })
    }

    pub fn owner(&self) -> &MonoidHandle {
        &self.owner
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    /// Greatest element, when the interval is principal.
    pub fn top(&self) -> Option<&Element> {
        self.top.as_ref()
    }

    /// An upper bound in the owner, when known.
    pub fn bound(&self) -> Option<&Element> {
        match &self.form {
            Form::Chain { bound, .. } if self.top.is_none() => bound.as_ref(),
            _ => self.top.as_ref(),
        }
    }

    /// Increasing cofinal generators.
    pub fn generators(&self) -> Chain {
        match (&self.form, &self.top) {
            (Form::Chain { chain, .. }, _) => chain.clone(),
            (_, Some(t)) => Chain::constant(format!("const {t}"), t.clone()),
            _ => unreachable!("principal and finite forms have a top"),
        }
    }

    /// The cut of `{z | z ≪ x for some x in the interval}`.
    pub fn class_cut(&self) -> Option<Cut> {
        match &self.top {
            Some(t) => self.owner.cut(t),
            None => {
                let c = self.generators();
                self.owner.cut(&c.term(0))?;
                match c.ambient.as_deref() {
                    Some([l]) => Some(Cut::open(l.clone())),
                    _ => None,
                }
            }
        }
    }

    /// Coordinatewise supremum of the generators' shadows.
    pub fn class_shadow(&self) -> Option<Vec<Real>> {
        match &self.top {
            Some(t) => self.owner.shadow(t),
            None => self.generators().ambient.clone(),
        }
    }

    fn same_owner(&self, other: &Interval) -> Result<()> {
        if self.owner.family() != other.owner.family() {
            return Err(Error::MixedFamily {
                left: self.owner.family().to_string(),
                right: other.owner.family().to_string(),
            });
        }
        Ok(())
    }
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.owner.family() == other.owner.family()
            && matches!((&self.top, &other.top), (Some(a), Some(b)) if a == b)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.top {
            Some(t) => write!(f, "ι({t})"),
            None => write!(f, "sup({})", self.generators().label),
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Interval[{}]({self})", self.owner.family())
    }
}

fn exceeds(s: &[Real], ambient: &[Real]) -> bool {
    s.len() == ambient.len()
        && s.iter().zip(ambient).any(|(x, a)| x.partial_cmp(a) == Some(Ordering::Greater))
}

fn shadow_le(a: &[Real], b: &[Real]) -> Option<bool> {
    if a.len() != b.len() {
        return None;
    }
    for (x, y) in a.iter().zip(b) {
        if x.partial_cmp(y)? == Ordering::Greater {
            return Some(false);
        }
    }
    Some(true)
}

/// `I ≼ J`: every `z ≪ x` with `x ∈ I` satisfies `z ≪ y` for some `y ∈ J`.
pub fn interval_precsim(i: &Interval, j: &Interval, budget: u64) -> Result<Verdict> {
    if budget == 0 {
        return Err(Error::InvalidBudget);
    }
    precsim_in(i, j, &mut Budget::new(budget))
}

pub fn precsim_in(i: &Interval, j: &Interval, b: &mut Budget) -> Result<Verdict> {
    i.same_owner(j)?;
    let h = i.owner.as_ref();
    if let (Some(a), Some(c)) = (i.class_cut(), j.class_cut()) {
        if let Some(v) = a.within(&c) {
            return Ok(Verdict::rule(v, format!("way-below sets: {a} {} {c}", if v { "⊆" } else { "⊄" })));
        }
    }
    if h.discrete_shadow() {
        if let (Some(a), Some(c)) = (i.class_shadow(), j.class_shadow()) {
            if let Some(v) = shadow_le(&a, &c) {
                return Ok(Verdict::rule(v, "all-compact discrete owner: ≼ is inclusion, read off the coordinate suprema"));
            }
        }
    }
    if let Some(carrier) = h.carrier() {
        return precsim_finite(i, j, &carrier, b);
    }
    precsim_search(i, j, b)
}

fn members(i: &Interval, carrier: &[Element], b: &mut Budget) -> Vec<Element> {
    let h = i.owner.as_ref();
    let gens = i.generators();
    let span = gens.span(PREFIX_CHECK.max(carrier.len() + 1));
    let terms = gens.prefix(span);
    carrier
        .iter()
        .filter(|z| terms.iter().any(|x| h.leq(z, x, b).is_true()))
        .cloned()
        .collect()
}

fn precsim_finite(i: &Interval, j: &Interval, carrier: &[Element], b: &mut Budget) -> Result<Verdict> {
    let h = i.owner.as_ref();
    let (mi, mj) = (members(i, carrier, b), members(j, carrier, b));
    for x in &mi {
        for z in carrier {
            if !way_below_in(h, z, x, b)?.is_true() {
                continue;
            }
            let mut hit = false;
            for y in &mj {
                if way_below_in(h, z, y, b)?.is_true() {
                    hit = true;
                    break;
                }
            }
            if !hit {
                return Ok(Verdict::decided(false, Witness::Pair(z.clone(), x.clone())));
            }
        }
    }
    Ok(Verdict::rule(true, "exhaustive over the finite carrier"))
}

fn precsim_search(i: &Interval, j: &Interval, b: &mut Budget) -> Result<Verdict> {
    let h = i.owner.as_ref();
    let amb_j = j.class_shadow();
    let too_big = |z: &Element| match (&amb_j, h.shadow(z)) {
        (Some(a), Some(s)) => exceeds(&s, a),
        _ => false,
    };
    match (i.top(), j.top()) {
        (Some(x), Some(y)) => {
            let v = h.leq(x, y, b);
            Ok(Verdict::new(
                v.tri,
                Some(Witness::rule("principal intervals: [0,x] ≼ [0,y] iff x ≤ y")),
            ))
        }
        (Some(x), None) => {
            let d = j.generators();
            for n in 0..b.horizon().min(DIAGONAL_CAP) {
                if !b.spend(1) {
                    break;
                }
                if h.leq(x, &d.term(n), b).is_true() {
                    return Ok(Verdict::decided(
                        true,
                        Witness::Chain {
                            label: d.label.clone(),
                            prefix: d.prefix(n + 1),
                        },
                    ));
                }
            }
            if let Some(a) = h.approximants(x) {
                for m in 0..a.span(b.horizon().min(DIAGONAL_CAP)) {
                    if !b.spend(1) {
                        break;
                    }
                    let z = a.term(m);
                    if too_big(&z) {
                        return Ok(Verdict::decided(false, Witness::Element(z)));
                    }
                }
            }
            Ok(Verdict::unknown("no generator of J within budget dominates the top of I"))
        }
        (None, _) => {
            let c = i.generators();
            for n in 0..b.horizon().min(DIAGONAL_CAP) {
                if !b.spend(1) {
                    break;
                }
                let cands: Vec<Element> = if c.rapid {
                    vec![c.term(n)]
                } else {
                    match h.approximants(&c.term(n)) {
                        Some(a) => a.prefix(a.span(4)),
                        None => Vec::new(),
                    }
                };
                if let Some(z) = cands.into_iter().find(|z| too_big(z)) {
                    return Ok(Verdict::decided(false, Witness::Element(z)));
                }
            }
            Ok(Verdict::unknown("infinitely generated interval: inclusion of way-below sets not settled within budget"))
        }
    }
}

/// `I + J`, generated by termwise sums of cofinal generators.
pub fn interval_add(i: &Interval, j: &Interval) -> Result<Interval> {
    i.same_owner(j)?;
    let h = &i.owner;
    if let (Some(x), Some(y)) = (i.top(), j.top()) {
        return Interval::principal(h, h.add(x, y));
    }
    let chain = sum_chain(h, &i.generators(), &j.generators());
    let bound = match (i.bound(), j.bound()) {
        (Some(x), Some(y)) => Some(h.add(x, y)),
        _ => None,
    };
    Interval::chain(h, chain, bound)
}

type Source = Arc<dyn Fn(usize) -> Result<Chain> + Send + Sync>;

/// Diagonal merge of a sequence of rapid chains `r_k` whose generated
/// intervals increase under `≼`: term `k` is the first `r_k(j)`, `j ≥ k`,
/// dominating `r_i(k)` for `i ≤ k` and the successor of the previous pick
/// in its own chain. Consecutive picks are then way-below related and the
/// picks are cofinal in the union.
struct Diagonal {
    owner: MonoidHandle,
    label: String,
    source: Source,
    state: Mutex<(Vec<Chain>, Vec<(Element, usize)>)>,
}

impl Diagonal {
    fn term(&self, k: usize, cap: usize, b: &mut Budget) -> Result<Element> {
        let mut st = self.state.lock().expect("diagonal state");
        while st.1.len() <= k {
            let step = st.1.len();
            while st.0.len() <= step {
                let next = (self.source)(st.0.len())?;
                st.0.push(next);
            }
            let (chains, picks) = &mut *st;
            let mut targets: Vec<Element> = (0..=step).map(|i| chains[i].term(step)).collect();
            if step > 0 {
                targets.push(chains[step - 1].term(picks[step - 1].1 + 1));
            }
            let rk = &chains[step];
            let mut found = None;
            for j in step..step + cap {
                let cand = rk.term(j);
                if targets.iter().all(|t| self.owner.leq(t, &cand, b).is_true()) {
                    found = Some((cand, j));
                    break;
                }
                if rk.stable_from().is_some_and(|s| j >= s.max(step)) || !b.spend(1) {
                    break;
                }
            }
            match found {
                Some(p) => picks.push(p),
                None => return Err(Error::NotIncreasing(format!("{} at step {step}", self.label))),
            }
        }
        Ok(st.1[k].0.clone())
    }
}

/// Builds the diagonal chain; the validated prefix is computed against `b`.
fn diagonal_chain(
    owner: &MonoidHandle,
    label: String,
    source: Source,
    ambient: Option<Vec<Real>>,
    rapid: bool,
    b: &mut Budget,
) -> Result<Chain> {
    let d = Arc::new(Diagonal {
        owner: owner.clone(),
        label: label.clone(),
        source,
        state: Mutex::new((Vec::new(), Vec::new())),
    });
    let cap = b.horizon().min(DIAGONAL_CAP);
    for k in 0..=PREFIX_CHECK + 1 {
        d.term(k, cap, b)?;
    }
    let lazy = d.clone();
    let chain = Chain::lazy(
        label,
        move |n| {
            lazy.term(n, DIAGONAL_CAP, &mut Budget::new(u64::MAX))
                .expect("diagonal term past the validated prefix")
        },
        ambient,
    )
    .rapid(rapid);
    validate_chain(owner.as_ref(), &chain)?;
    Ok(chain)
}

/// A rapidly increasing cofinal chain for the class of `i`.
pub fn rapid_chain(i: &Interval, b: &mut Budget) -> Result<Chain> {
    let h = &i.owner;
    if let Some(x) = i.top() {
        let c = h
            .approximants(x)
            .ok_or_else(|| Error::NoApproximant(h.family().to_string()))?;
        validate_chain(h.as_ref(), &c)?;
        return Ok(c);
    }
    let c = i.generators();
    if h.all_compact() || c.rapid {
        return Ok(c.rapid(true));
    }
    let (terms, owner) = (c.terms(), h.clone());
    let source: Source = Arc::new(move |k| {
        owner
            .approximants(&terms(k))
            .ok_or_else(|| Error::NoApproximant(owner.family().to_string()))
    });
    diagonal_chain(h, format!("rapid({})", c.label), source, c.ambient.clone(), true, b)
}

/// An equivalent interval generated by a rapidly increasing chain.
pub fn rapidify(i: &Interval, budget: u64) -> Result<Interval> {
    if budget == 0 {
        return Err(Error::InvalidBudget);
    }
    let c = rapid_chain(i, &mut Budget::new(budget))?;
    Interval::chain(&i.owner, c, i.bound().cloned())
}

/// Supremum of an increasing finite list of intervals.
pub fn interval_sup_list(seq: &[Interval], budget: u64) -> Result<Interval> {
    let first = seq.first().ok_or_else(|| Error::NotIncreasing("empty sequence".into()))?;
    let mut b = Budget::new(budget.max(1));
    for w in seq.windows(2) {
        if precsim_in(&w[0], &w[1], &mut b)?.is_false() {
            return Err(Error::NotIncreasing(format!("{} ⋠ {}", w[0], w[1])));
        }
    }
    Ok(seq.last().unwrap_or(first).clone())
}

/// Supremum in `M̄` of an increasing chain of classes: the interval
/// generated by the diagonal merge of rapid cofinal chains of the terms.
pub fn interval_sup(seq: &Chain, b: &mut Budget) -> Result<Interval> {
    let first = seq.term(0);
    let i0 = interval_of(&first)?;
    let owner = i0.owner.clone();
    if let Some(k) = seq.stable_from() {
        return Ok(interval_of(&seq.term(k))?.clone());
    }
    for n in 0..PREFIX_CHECK {
        let (x, y) = (seq.term(n), seq.term(n + 1));
        if precsim_in(interval_of(&x)?, interval_of(&y)?, b)?.is_false() {
            return Err(Error::NotIncreasing(format!("{} at index {n}", seq.label)));
        }
    }
    let terms = seq.terms();
    let source: Source = Arc::new(move |k| {
        let x = terms(k);
        rapid_chain(interval_of(&x)?, &mut Budget::new(1 << 20))
    });
    let chain = diagonal_chain(&owner, format!("⋃({})", seq.label), source, seq.ambient.clone(), true, b)?;
    Interval::chain(&owner, chain, None)
}

/// The interval payload of a completion element.
pub fn interval_of(x: &Element) -> Result<&Interval> {
    match &x.value {
        Value::Interval(i) => Ok(i),
        v => Err(Error::invalid(x.family.to_string(), format!("{v} is not an interval class"))),
    }
}

/// `M̄ = Λ_σ(M)/∼` with class order `≼`, interval sum and unions of cofinal
/// sets as suprema.
pub struct Completion {
    id: FamilyId,
    owner: MonoidHandle,
}

impl fmt::Debug for Completion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Completion({})", self.owner.family())
    }
}

impl Completion {
    pub fn of(owner: &MonoidHandle) -> Arc<Completion> {
        Arc::new(Completion {
            id: format!("completion({})", owner.family()).into(),
            owner: owner.clone(),
        })
    }

    pub fn handle(self: &Arc<Self>) -> MonoidHandle {
        self.clone()
    }

    pub fn owner(&self) -> &MonoidHandle {
        &self.owner
    }

    /// The class of an interval of the owner.
    pub fn class(&self, i: Interval) -> Result<Element> {
        if i.owner.family() != self.owner.family() {
            return Err(Error::MixedFamily {
                left: i.owner.family().to_string(),
                right: self.owner.family().to_string(),
            });
        }
        Ok(self.elem(Value::Interval(Arc::new(i))))
    }

    /// `ι(x) = [0, x]`.
    pub fn iota(&self, x: &Element) -> Result<Element> {
        self.class(Interval::principal(&self.owner, x.clone())?)
    }

    fn iota_unchecked(id: &FamilyId, owner: &MonoidHandle, x: &Element) -> Element {
        Element::new(
            id,
            Value::Interval(Arc::new(Interval {
                owner: owner.clone(),
                top: Some(x.clone()),
                form: Form::Principal(x.clone()),
            })),
        )
    }

    /// The class generated by a chain of the owner.
    pub fn chain_class(&self, c: Chain, bound: Option<Element>) -> Result<Element> {
        self.class(Interval::chain(&self.owner, c, bound)?)
    }

    /// Termwise `ι` of an owner chain.
    pub fn iota_chain(&self, c: &Chain) -> Chain {
        let (id, owner) = (self.id.clone(), self.owner.clone());
        c.map(
            format!("ι({})", c.label),
            Arc::new(move |x| Completion::iota_unchecked(&id, &owner, x)),
            c.ambient.clone(),
        )
        .rapid(c.rapid)
    }

    fn lazy_probe_classes(&self) -> Vec<Element> {
        self.owner
            .probes()
            .into_iter()
            .filter(|p| !p.chain.is_stationary())
            .filter_map(|p| self.chain_class(p.chain, p.bound).ok())
            .collect()
    }
}

impl Monoid for Completion {
    fn family(&self) -> &FamilyId {
        &self.id
    }
    fn claimed_class(&self) -> Class {
        Class::Cu
    }
    fn validate(&self, value: &Value) -> Result<()> {
        match value {
            Value::Interval(i) if i.owner.family() == self.owner.family() => Ok(()),
            v => Err(Error::invalid(self.id.to_string(), format!("{v} is not an interval of {}", self.owner.family()))),
        }
    }
    fn zero(&self) -> Element {
        Completion::iota_unchecked(&self.id, &self.owner, &self.owner.zero())
    }
    fn add(&self, x: &Element, y: &Element) -> Element {
        let s = interval_of(x)
            .and_then(|i| interval_add(i, interval_of(y)?))
            .expect("validated intervals of one owner");
        self.elem(Value::Interval(Arc::new(s)))
    }
    fn leq(&self, x: &Element, y: &Element, b: &mut Budget) -> Verdict {
        match (interval_of(x), interval_of(y)) {
            (Ok(i), Ok(j)) => precsim_in(i, j, b).unwrap_or_else(|e| Verdict::unknown(e.to_string())),
            _ => Verdict::unknown("not interval classes"),
        }
    }
    fn way_below_rule(&self, x: &Element, y: &Element, b: &mut Budget) -> Option<Verdict> {
        let (i, j) = (interval_of(x).ok()?, interval_of(y).ok()?);
        if let (Some(a), Some(c)) = (i.class_cut(), j.class_cut()) {
            if let Some(v) = a.way_below(&c) {
                return Some(Verdict::rule(v, format!("{a} {} {c}", if v { "≪" } else { "not ≪" })));
            }
        }
        if self.owner.discrete_shadow() {
            if let (Some(a), Some(c)) = (i.class_shadow(), j.class_shadow()) {
                let finite = a.iter().all(|r| !r.is_infinite());
                if let Some(le) = shadow_le(&a, &c) {
                    return Some(Verdict::rule(
                        finite && le,
                        "compact classes are the principal ones: [I] ≪ [J] iff [I] ≤ ι(m) ≤ [J] for some m",
                    ));
                }
            }
        }
        if self.owner.carrier().is_some() {
            return None;
        }
        let le = self.leq(x, y, b);
        if le.is_false() {
            return Some(Verdict::rule(false, "≪ implies ≤"));
        }
        let r = rapid_chain(j, b).ok()?;
        for n in 0..r.span(b.horizon().min(DIAGONAL_CAP)) {
            if !b.spend(1) {
                break;
            }
            let p = Interval::principal(&self.owner, r.term(n)).ok()?;
            if precsim_in(i, &p, b).ok()?.is_true() {
                return Some(Verdict::decided(
                    true,
                    Witness::Chain {
                        label: r.label.clone(),
                        prefix: r.prefix(n + 1),
                    },
                ));
            }
        }
        Some(Verdict::unknown("no ι-image of a rapid generator within budget dominates the class"))
    }
    fn sup_rule(&self, c: &Chain, b: &mut Budget) -> SupVerdict {
        match interval_sup(c, b) {
            Ok(i) => SupVerdict::Sup {
                value: self.elem(Value::Interval(Arc::new(i))),
                witness: Witness::rule("interval generated by the union of rapid cofinal sets of the terms"),
            },
            Err(e) => SupVerdict::Unknown(e.to_string()),
        }
    }
    fn approximants(&self, x: &Element) -> Option<Chain> {
        let i = interval_of(x).ok()?;
        let r = rapid_chain(i, &mut Budget::new(1 << 20)).ok()?;
        Some(self.iota_chain(&r))
    }
    fn enumerate(&self, n: usize) -> Option<Element> {
        self.owner
            .enumerate(n)
            .map(|x| Completion::iota_unchecked(&self.id, &self.owner, &x))
    }
    fn carrier(&self) -> Option<Vec<Element>> {
        let c = self.owner.carrier()?;
        Some(c.iter().map(|x| Completion::iota_unchecked(&self.id, &self.owner, x)).collect())
    }
    fn cut(&self, x: &Element) -> Option<Cut> {
        interval_of(x).ok()?.class_cut()
    }
    fn shadow(&self, x: &Element) -> Option<Vec<Real>> {
        interval_of(x).ok()?.class_shadow()
    }
    fn shadow_add(&self, a: &[Real], b: &[Real]) -> Option<Vec<Real>> {
        self.owner.shadow_add(a, b)
    }
    fn all_compact(&self) -> bool {
        self.owner.all_compact() && self.owner.carrier().is_some()
    }
    fn quotient(&self) -> bool {
        true
    }
    fn antisymmetry(&self) -> &'static str {
        "elements are ∼-classes, and ≤ on classes is two-way ≼"
    }
    fn samples(&self) -> Vec<Element> {
        if let Some(c) = self.carrier() {
            return c;
        }
        let mut out: Vec<Element> = self
            .owner
            .samples()
            .iter()
            .take(6)
            .map(|x| Completion::iota_unchecked(&self.id, &self.owner, x))
            .collect();
        out.extend(self.lazy_probe_classes());
        out
    }
    fn probes(&self) -> Vec<Probe> {
        self.owner
            .probes()
            .into_iter()
            .map(|p| {
                let bound = match &p.bound {
                    Some(u) => Some(Completion::iota_unchecked(&self.id, &self.owner, u)),
                    None => self.chain_class(p.chain.clone(), None).ok(),
                };
                Probe {
                    chain: self.iota_chain(&p.chain),
                    bound,
                }
            })
            .collect()
    }
    fn parse_element(&self, text: &str) -> Result<Element> {
        let t = text.trim();
        if let Some(label) = t.strip_prefix("sup ").map(str::trim) {
            let p = self
                .owner
                .probes()
                .into_iter()
                .find(|p| p.chain.label == label)
                .ok_or_else(|| Error::invalid(self.id.to_string(), format!("no chain named `{label}`")))?;
            return self.chain_class(p.chain, p.bound);
        }
        match self.owner.parse_element(t) {
            Ok(x) => self.iota(&x),
            Err(e) if matches!(t, "inf" | "∞") => self
                .owner
                .probes()
                .into_iter()
                .find(|p| p.bound.is_none())
                .map(|p| self.chain_class(p.chain, None))
                .unwrap_or(Err(e)),
            Err(e) => Err(e),
        }
    }
    fn describe(&self) -> String {
        format!("completion({})", self.owner.describe())
    }
}

/// `ι: M → M̄`, with the closed-form preimage used by hereditary checks: a
/// class has a preimage exactly when its generating chain has a supremum
/// in `M`.
pub fn iota_map(comp: &Arc<Completion>) -> MonoidMap {
    let c = comp.clone();
    let owner = comp.owner.clone();
    MonoidMap::new("ι", comp.owner.clone(), comp.handle(), move |x| c.iota(x))
        .with_ambient(|a| Some(a.to_vec()))
        .with_preimage(move |y, b| {
            let Ok(i) = interval_of(y) else {
                return Preimage::Unknown;
            };
            if let Some(t) = i.top() {
                return Preimage::Found(t.clone());
            }
            match sup_chain_in(owner.as_ref(), &i.generators(), b) {
                Ok(SupVerdict::Sup { value, .. }) => Preimage::Found(value),
                Ok(SupVerdict::NoSup { witness, .. }) => Preimage::Absent(witness),
                _ => Preimage::Unknown,
            }
        })
}

/// `β(x) = sup α(x_n)` for a rapid representative `(x_n)` of `x`.
pub fn extend_universal(alpha: &MonoidMap, x: &Element, budget: u64) -> Result<Element> {
    if budget == 0 {
        return Err(Error::InvalidBudget);
    }
    let i = interval_of(x)?;
    if i.owner.family() != alpha.dom.family() {
        return Err(Error::MixedFamily {
            left: i.owner.family().to_string(),
            right: alpha.dom.family().to_string(),
        });
    }
    if let Some(t) = i.top() {
        return alpha.apply(t);
    }
    let mut b = Budget::new(budget);
    let r = rapid_chain(i, &mut b)?;
    let image = alpha.image_chain(&r);
    match sup_chain_in(alpha.cod.as_ref(), &image, &mut b)? {
        SupVerdict::Sup { value, .. } => Ok(value),
        SupVerdict::NoSup { reason, .. } => Err(Error::SupFailed(format!("{} has no supremum: {reason}", image.label))),
        SupVerdict::Unknown(note) => Err(Error::SupFailed(format!("{}: {note}", image.label))),
    }
}

/// `β: M̄ → P` as a map descriptor.
pub fn extension_map(alpha: &MonoidMap, budget: u64) -> MonoidMap {
    let comp = Completion::of(&alpha.dom);
    let a = alpha.clone();
    let amb = alpha.clone();
    MonoidMap::new(format!("β[{}]", alpha.name), comp.handle(), alpha.cod.clone(), move |x| {
        extend_universal(&a, x, budget)
    })
    .with_ambient(move |s| amb.transport_ambient(s))
}

/// `σ̄: M̄ → N̄`, sending the class of a rapid chain to the class generated
/// by its image.
pub fn lift_morphism(sigma: &MonoidMap) -> MonoidMap {
    let dom = Completion::of(&sigma.dom);
    let cod = Completion::of(&sigma.cod);
    let s = sigma.clone();
    let amb = sigma.clone();
    MonoidMap::new(format!("lift[{}]", sigma.name), dom.handle(), cod.handle(), move |x| {
        let i = interval_of(x)?;
        if let Some(t) = i.top() {
            return cod.iota(&s.apply(t)?);
        }
        let r = rapid_chain(i, &mut Budget::new(1 << 20))?;
        let bound = i.bound().map(|u| s.apply(u)).transpose()?;
        cod.chain_class(s.image_chain(&r), bound)
    })
    .with_ambient(move |a| amb.transport_ambient(a))
}

/// Hereditary check of `ι: M → M̄` on the families' samples.
pub fn hereditary_iota(owner: &MonoidHandle, budget: u64) -> Result<Report> {
    let comp = Completion::of(owner);
    let f = iota_map(&comp);
    is_hereditary(&f, &owner.samples(), &comp.samples(), budget)
}

/// The completion properties of `(M̄, ι)`: `M̄` passes the Cu evidence,
/// `ι` is an order-embedding preserving `≪` and existing suprema, and every
/// sampled class is the supremum of `ι` of a rapidly increasing chain.
pub fn verify_completion(owner: &MonoidHandle, budget: u64) -> Result<Report> {
    let comp = Completion::of(owner);
    let ch = comp.handle();
    let mut report = Report::new(format!("completion check of {}", owner.describe()));
    let cls = classify(&ch, budget)?;
    report.exhaustive = cls.exhaustive;
    let cu = cls.entry("Cu").map(|e| e.status).unwrap_or(Status::Unknown);
    let pre = cls.entry("PreCu").map(|e| e.status).unwrap_or(Status::Unknown);
    report.push(
        Entry::new("completion is in Cu", "completion.cu", pre.combine(cu))
            .detail(format!("PreCu {}, Cu {}", pre.label(), cu.label())),
    );
    let iota = iota_map(&comp);
    let sample = owner.samples();
    let chains: Vec<Chain> = owner.probes().into_iter().map(|p| p.chain).collect();
    let emb = is_order_embedding(&iota, &sample, budget)?;
    let mor = is_precu_morphism(&iota, &sample, &chains, budget)?;
    report.push(
        Entry::new("ι is an order-embedding", "completion.iota-embedding", emb.status())
            .detail(format!("{} pairs", sample.len() * sample.len())),
    );
    report.push(Entry::new("ι preserves ≪ and suprema", "completion.iota-morphism", mor.status()));
    let mut sup_status = Status::Pass;
    let mut witness = None;
    let mut spent = 0;
    for x in comp.samples() {
        let mut b = Budget::new(budget);
        let t = match ch.approximants(&x) {
            Some(r) => match sup_chain_in(ch.as_ref(), &r, &mut b) {
                Ok(SupVerdict::Sup { value, .. }) => equal_in(ch.as_ref(), &value, &x, &mut b),
                Ok(SupVerdict::NoSup { .. }) => Tri::False,
                _ => Tri::Unknown,
            },
            None => Tri::Unknown,
        };
        spent += b.spent();
        let s = Status::from_tri(t);
        if s != Status::Pass && witness.is_none() {
            witness = Some(Witness::Element(x.clone()));
        }
        sup_status = sup_status.combine(s);
    }
    report.push(
        Entry::new("every class is a sup of ι of a rapid chain", "completion.density", sup_status)
            .witness(witness)
            .spent(spent),
    );
    for sub in [cls, emb, mor] {
        report.extend(sub);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{nat::counting_chain, rational, Nat, Rational};
    use crate::order::leq;

    #[test]
    fn principal_intervals_of_nat() {
        let n = Nat::handle();
        let p = |k| Interval::principal(&n, n.elem(Value::Nat(k))).unwrap();
        assert!(interval_precsim(&p(3), &p(5), 4).unwrap().is_true());
        assert!(interval_precsim(&p(5), &p(3), 4).unwrap().is_false());
        assert_eq!(interval_add(&p(2), &p(3)).unwrap().top(), p(5).top());
    }

    #[test]
    fn rational_principal_matches_chain() {
        let q = Rational::handle();
        let one = Interval::principal(&q, q.parse_element("1").unwrap()).unwrap();
        let c = Interval::chain(&q, rational::one_minus_pow2(&q), None).unwrap();
        assert!(interval_precsim(&one, &c, 8).unwrap().is_true());
        assert!(interval_precsim(&c, &one, 8).unwrap().is_true());
    }

    #[test]
    fn infinity_class_of_nat() {
        let n = Nat::handle();
        let comp = Completion::of(&n);
        let h = comp.handle();
        let inf = comp.chain_class(counting_chain(&n, "n"), None).unwrap();
        let five = comp.iota(&n.elem(Value::Nat(5))).unwrap();
        assert!(leq(h.as_ref(), &five, &inf, 4).unwrap().is_true());
        assert!(leq(h.as_ref(), &inf, &five, 4).unwrap().is_false());
        let mut b = Budget::new(64);
        assert!(way_below_in(h.as_ref(), &inf, &inf, &mut b).unwrap().is_false());
        let sup = interval_sup(&comp.iota_chain(&counting_chain(&n, "n")), &mut b).unwrap();
        assert!(sup.top().is_none());
        assert_eq!(sup.class_shadow(), Some(vec![Real::Infinity]));
    }
}
