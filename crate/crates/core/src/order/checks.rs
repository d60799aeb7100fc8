//! Public entry points: validated decisions and the evidence reports for
//! axioms, category membership and morphism properties.

use crate::element::Element;
use crate::error::{Error, Result};

use super::chain::Chain;
use super::maps::{MonoidMap, Preimage};
use super::monoid::{Monoid, MonoidHandle, Probe, SupVerdict};
use super::report::{Entry, Report, Status};
use super::verdict::{Budget, Tri, Verdict, Witness};

/// Number of leading terms on which chain invariants are verified.
pub const PREFIX_CHECK: usize = 16;

pub fn check_family(h: &dyn Monoid, x: &Element) -> Result<()> {
    if x.family != *h.family() {
        return Err(Error::MixedFamily {
            left: x.family.to_string(),
            right: h.family().to_string(),
        });
    }
    h.validate(&x.value)
}

fn check_budget(budget: u64) -> Result<Budget> {
    if budget == 0 {
        return Err(Error::InvalidBudget);
    }
    Ok(Budget::new(budget))
}

fn finish(mut v: Verdict, b: &Budget) -> Verdict {
    v.spent = b.spent();
    v
}

pub fn leq(h: &dyn Monoid, x: &Element, y: &Element, budget: u64) -> Result<Verdict> {
    check_family(h, x)?;
    check_family(h, y)?;
    let mut b = check_budget(budget)?;
    let v = h.leq(x, y, &mut b);
    Ok(finish(v, &b))
}

pub fn add(h: &dyn Monoid, x: &Element, y: &Element) -> Result<Element> {
    check_family(h, x)?;
    check_family(h, y)?;
    Ok(h.add(x, y))
}

pub fn way_below(h: &dyn Monoid, x: &Element, y: &Element, budget: u64) -> Result<Verdict> {
    check_family(h, x)?;
    check_family(h, y)?;
    let mut b = check_budget(budget)?;
    let v = way_below_in(h, x, y, &mut b)?;
    Ok(finish(v, &b))
}

pub fn is_compact(h: &dyn Monoid, x: &Element, budget: u64) -> Result<Verdict> {
    way_below(h, x, x, budget)
}

/// `≪` inside a larger computation: closed form first, then the generic
/// search through the approximants of `y`.
pub fn way_below_in(h: &dyn Monoid, x: &Element, y: &Element, b: &mut Budget) -> Result<Verdict> {
    if let Some(v) = h.way_below_rule(x, y, b) {
        return Ok(v);
    }
    if h.carrier().is_some() {
        let v = h.leq(x, y, b);
        return Ok(Verdict::new(
            v.tri,
            Some(Witness::rule(
                "finite carrier: increasing chains are stationary, so ≪ is ≤",
            )),
        ));
    }
    let Some(c) = h.approximants(y) else {
        if h.enumerate(0).is_some() {
            let le = h.leq(x, y, b);
            if le.is_false() {
                return Ok(Verdict::rule(false, format!("{x} ≰ {y}")));
            }
            return Ok(Verdict::unknown("enumerator alone cannot certify ≪"));
        }
        return Err(Error::NoRule(h.family().to_string()));
    };
    let le = h.leq(x, y, b);
    if le.is_false() {
        return Ok(Verdict::rule(false, format!("{x} ≰ {y}, and ≪ implies ≤")));
    }
    if let Some(k) = c.stable_from() {
        // the approximant chain is stationary at y, so y ≪ y
        let v = h.leq(x, &c.term(k), b);
        return Ok(Verdict::new(
            v.tri,
            Some(Witness::Chain {
                label: c.label.clone(),
                prefix: c.prefix(k + 1),
            }),
        ));
    }
    let horizon = b.horizon();
    for n in 0..horizon {
        if !b.spend(1) {
            break;
        }
        let t = c.term(n);
        if h.leq(x, &t, b).is_true() {
            return Ok(Verdict::decided(
                true,
                Witness::Chain {
                    label: c.label.clone(),
                    prefix: c.prefix(n + 2),
                },
            ));
        }
    }
    Ok(Verdict::unknown(format!(
        "no term of the approximants of {y} within budget dominates {x}"
    )))
}

/// Checks the chain invariants on its leading terms.
pub fn validate_chain(h: &dyn Monoid, c: &Chain) -> Result<()> {
    let span = c.span(PREFIX_CHECK);
    let mut b = Budget::new(u64::MAX);
    let mut prev = c.term(0);
    check_family(h, &prev)?;
    for n in 0..span {
        let next = c.term(n + 1);
        check_family(h, &next)?;
        if h.leq(&prev, &next, &mut b).is_false() {
            return Err(Error::NotMonotone {
                label: c.label.clone(),
                index: n,
            });
        }
        if let Some(a) = &c.ambient {
            if let Some(s) = h.shadow(&prev) {
                let ok = s.len() == a.len()
                    && s.iter().zip(a).all(|(x, y)| {
                        x.partial_cmp(y)
                            .map(|o| o != std::cmp::Ordering::Greater)
                            .unwrap_or(true)
                    });
                let below = c.is_stationary()
                    || s.iter().zip(a).any(|(x, y)| {
                        y.is_infinite()
                            || x.partial_cmp(y)
                            .map(|o| o == std::cmp::Ordering::Less)
                            .unwrap_or(true)
                    });
                if !ok || !below {
                    return Err(Error::AmbientViolated {
                        label: c.label.clone(),
                        index: n,
                    });
                }
            }
        }
        prev = next;
    }
    Ok(())
}

pub fn sup_chain(h: &dyn Monoid, c: &Chain, budget: u64) -> Result<(SupVerdict, u64)> {
    let mut b = check_budget(budget)?;
    let v = sup_chain_in(h, c, &mut b)?;
    Ok((v, b.spent()))
}

pub fn sup_chain_in(h: &dyn Monoid, c: &Chain, b: &mut Budget) -> Result<SupVerdict> {
    validate_chain(h, c)?;
    if let Some(k) = c.stable_from() {
        return Ok(SupVerdict::Sup {
            value: c.term(k),
            witness: Witness::rule(format!("stationary from index {k}")),
        });
    }
    Ok(h.sup_rule(c, b))
}

/// Equality of elements: identical payloads or mutual `≤`.
pub fn equal_in(h: &dyn Monoid, x: &Element, y: &Element, b: &mut Budget) -> Tri {
    if x == y {
        return Tri::True;
    }
    let a = h.leq(x, y, b).tri;
    if a.is_false() {
        return Tri::False;
    }
    a.and(h.leq(y, x, b).tri)
}

/// Running aggregate of one named clause.
struct Clause {
    check: &'static str,
    property: &'static str,
    status: Status,
    witness: Option<Witness>,
    detail: String,
    checked: usize,
    spent: u64,
    per_call: u64,
}

impl Clause {
    fn new(check: &'static str, property: &'static str, per_call: u64) -> Self {
        Clause {
            check,
            property,
            status: Status::Pass,
            witness: None,
            detail: String::new(),
            checked: 0,
            spent: 0,
            per_call,
        }
    }

    fn budget(&self) -> Budget {
        Budget::new(self.per_call)
    }

    fn record(&mut self, t: Tri, spent: u64, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        self.spent += spent;
        match t {
            Tri::False if self.status != Status::Fail => {
                self.status = Status::Fail;
                self.witness = Some(witness());
            }
            Tri::Unknown if self.status == Status::Pass => {
                self.status = Status::Unknown;
                self.witness = Some(witness());
            }
            _ => {}
        }
    }

    fn entry(self) -> Entry {
        let mut detail = format!("{} instances", self.checked);
        if !self.detail.is_empty() {
            detail = format!("{detail}; {}", self.detail);
        }
        Entry::new(self.check, self.property, self.status)
            .detail(detail)
            .witness(self.witness)
            .spent(self.spent)
    }
}

fn all_in_family(h: &dyn Monoid, sample: &[Element]) -> Result<()> {
    if sample.is_empty() {
        return Err(Error::Validation {
            object: h.family().to_string(),
            reason: "sample is empty".into(),
        });
    }
    for x in sample {
        check_family(h, x)?;
    }
    Ok(())
}

fn is_exhaustive(h: &dyn Monoid, sample: &[Element]) -> bool {
    h.carrier()
        .map(|c| c.iter().all(|x| sample.contains(x)))
        .unwrap_or(false)
}

/// Partial-order, positivity, additivity and algebraic-order axioms on a
/// sample. Exhaustive when the sample covers a finite carrier.
pub fn check_order_axioms(h: &dyn Monoid, sample: &[Element], budget: u64) -> Result<Report> {
    all_in_family(h, sample)?;
    check_budget(budget)?;
    let mut report = Report::new(format!("order axioms of {}", h.describe()));
    report.exhaustive = is_exhaustive(h, sample);
    let zero = h.zero();
    let le = |x: &Element, y: &Element, cl: &mut Clause| {
        let mut b = cl.budget();
        h.leq(x, y, &mut b).tri
    };
    let eq = |x: &Element, y: &Element, cl: &mut Clause| {
        let mut b = cl.budget();
        equal_in(h, x, y, &mut b)
    };

    let mut comm = Clause::new("commutative", "monoid.commutative", budget);
    let mut assoc = Clause::new("associative", "monoid.associative", budget);
    let mut neutral = Clause::new("neutral zero", "monoid.neutral", budget);
    let mut refl = Clause::new("reflexive", "order.reflexive", budget);
    let mut anti = Clause::new("antisymmetric", "order.antisymmetric", budget);
    let mut trans = Clause::new("transitive", "order.transitive", budget);
    let mut compat = Clause::new("add-compatible", "order.add-compatible", budget);
    let mut pos = Clause::new("positive", "order.positive", budget);
    let mut alg = Clause::new("extends algebraic order", "order.algebraic", budget);
    anti.detail = h.antisymmetry().to_string();

    for x in sample {
        let t = eq(&h.add(x, &zero), x, &mut neutral);
        neutral.record(t, 0, || Witness::Element(x.clone()));
        let t = le(x, x, &mut refl);
        refl.record(t, 0, || Witness::Element(x.clone()));
        let t = le(&zero, x, &mut pos);
        pos.record(t, 0, || Witness::Element(x.clone()));
        for y in sample {
            let t = eq(&h.add(x, y), &h.add(y, x), &mut comm);
            comm.record(t, 0, || Witness::Pair(x.clone(), y.clone()));
            let t = le(x, &h.add(x, y), &mut alg);
            alg.record(t, 0, || Witness::Pair(x.clone(), y.clone()));
            let xy = le(x, y, &mut anti);
            let yx = le(y, x, &mut anti);
            let t = match (xy, yx) {
                (Tri::True, Tri::True) => {
                    if x == y || h.quotient() {
                        Tri::True
                    } else {
                        Tri::False
                    }
                }
                (Tri::False, _) | (_, Tri::False) => Tri::True,
                _ if x == y => Tri::True,
                _ => Tri::Unknown,
            };
            anti.record(t, 0, || Witness::Pair(x.clone(), y.clone()));
            for z in sample {
                let t = eq(&h.add(&h.add(x, y), z), &h.add(x, &h.add(y, z)), &mut assoc);
                assoc.record(t, 0, || Witness::Elements(vec![x.clone(), y.clone(), z.clone()]));
                if xy.is_true() {
                    let t = le(&h.add(x, z), &h.add(y, z), &mut compat);
                    compat.record(t, 0, || {
                        Witness::Elements(vec![x.clone(), y.clone(), z.clone()])
                    });
                    let yz = le(y, z, &mut trans);
                    if yz.is_true() {
                        let t = le(x, z, &mut trans);
                        trans.record(t, 0, || {
                            Witness::Elements(vec![x.clone(), y.clone(), z.clone()])
                        });
                    }
                }
            }
        }
    }
    for cl in [comm, assoc, neutral, refl, anti, trans, compat, pos, alg] {
        report.push(cl.entry());
    }
    Ok(report)
}

/// Evidence that every sampled element is the supremum of its rapidly
/// increasing approximants, and that `≪` and suprema respect addition.
/// The two compatibility clauses are checked separately.
pub fn check_precu_membership(
    handle: &MonoidHandle,
    sample: &[Element],
    budget: u64,
) -> Result<Report> {
    let h = handle.as_ref();
    all_in_family(h, sample)?;
    check_budget(budget)?;
    let mut report = Report::new(format!("PreCu evidence for {}", h.describe()));
    report.exhaustive = is_exhaustive(h, sample);
    let mut rapid = Clause::new("approximants rapidly increasing", "precu.rapid-approximants", budget);
    let mut sups = Clause::new("approximants have supremum x", "precu.sup-of-approximants", budget);
    let mut wb_add = Clause::new("≪ compatible with addition", "precu.way-below-additive", budget);
    let mut sup_add = Clause::new("sup compatible with addition", "precu.sup-additive", budget);

    let mut chains = Vec::new();
    for x in sample {
        let c = h
            .approximants(x)
            .ok_or_else(|| Error::NoApproximant(h.family().to_string()))?;
        validate_chain(h, &c)?;
        for n in 0..c.span(PREFIX_CHECK) {
            let mut b = Budget::new(budget);
            let v = way_below_in(h, &c.term(n), &c.term(n + 1), &mut b)?;
            rapid.record(v.tri, b.spent(), || Witness::Chain {
                label: c.label.clone(),
                prefix: c.prefix(n + 2),
            });
        }
        let mut b = Budget::new(budget);
        let t = match sup_chain_in(h, &c, &mut b)? {
            SupVerdict::Sup { value, .. } => equal_in(h, &value, x, &mut b),
            SupVerdict::NoSup { .. } => Tri::False,
            SupVerdict::Unknown(_) => Tri::Unknown,
        };
        sups.record(t, b.spent(), || Witness::Chain {
            label: c.label.clone(),
            prefix: c.prefix(4),
        });
        chains.push(c);
    }

    // pairs x ≪ y found in the sample
    let mut pairs = Vec::new();
    for x in sample {
        for y in sample {
            let mut b = Budget::new(budget);
            if way_below_in(h, x, y, &mut b)?.is_true() {
                pairs.push((x.clone(), y.clone()));
            }
        }
    }
    for (x, y) in &pairs {
        for (u, v) in &pairs {
            let mut b = Budget::new(budget);
            let t = way_below_in(h, &h.add(x, u), &h.add(y, v), &mut b)?.tri;
            wb_add.record(t, b.spent(), || {
                Witness::Elements(vec![x.clone(), y.clone(), u.clone(), v.clone()])
            });
        }
    }

    for (i, x) in sample.iter().enumerate() {
        for (j, y) in sample.iter().enumerate().skip(i) {
            let (a, c) = (&chains[i], &chains[j]);
            let sum = sum_chain(handle, a, c);
            let mut b = Budget::new(budget);
            let t = match sup_chain_in(h, &sum, &mut b) {
                Ok(SupVerdict::Sup { value, .. }) => equal_in(h, &value, &h.add(x, y), &mut b),
                Ok(SupVerdict::NoSup { .. }) => Tri::False,
                Ok(SupVerdict::Unknown(_)) => Tri::Unknown,
                Err(_) => Tri::False,
            };
            sup_add.record(t, b.spent(), || Witness::Pair(x.clone(), y.clone()));
        }
    }
    for cl in [rapid, sups, wb_add, sup_add] {
        report.push(cl.entry());
    }
    Ok(report)
}

/// Termwise sum of two chains, with the summed ambient when both are known.
pub fn sum_chain(h: &MonoidHandle, a: &Chain, c: &Chain) -> Chain {
    let stable = match (a.stable_from(), c.stable_from()) {
        (Some(p), Some(q)) => Some(p.max(q)),
        _ => None,
    };
    let shadow_of = |ch: &Chain| match &ch.ambient {
        Some(amb) => Some(amb.clone()),
        None => ch.eventual().and_then(|e| h.shadow(&e)),
    };
    let ambient = if stable.is_some() {
        None
    } else {
        match (shadow_of(a), shadow_of(c)) {
            (Some(p), Some(q)) => h.shadow_add(&p, &q),
            _ => None,
        }
    };
    let (ta, tc, m) = (a.terms(), c.terms(), h.clone());
    Chain::from_fn(
        format!("{}+{}", a.label, c.label),
        std::sync::Arc::new(move |n| m.add(&ta(n), &tc(n))),
        stable,
        ambient,
    )
}

/// 𝒞-membership evidence: every probe must be bounded, and any bounded
/// probe without a supremum disproves membership.
pub fn check_c_membership(h: &dyn Monoid, probes: &[Probe], budget: u64) -> Result<Report> {
    check_budget(budget)?;
    let mut report = Report::new(format!("C evidence for {}", h.describe()));
    report.exhaustive = h.carrier().is_some();
    for p in probes {
        let bound = p
            .bound
            .as_ref()
            .ok_or_else(|| Error::UnboundedChain(p.chain.label.clone()))?;
        check_family(h, bound)?;
        let mut b = Budget::new(budget);
        let mut bounded = Tri::True;
        for n in 0..p.chain.span(PREFIX_CHECK) {
            bounded = bounded.and(h.leq(&p.chain.term(n), bound, &mut b).tri);
        }
        if bounded.is_false() {
            report.push(
                Entry::new(
                    format!("bound of {}", p.chain.label),
                    "c.bounded-probe",
                    Status::Fail,
                )
                .detail(format!("declared bound {bound} is not an upper bound")),
            );
            continue;
        }
        report.push(sup_entry(h, &p.chain, &mut b, "c.bounded-sup")?);
    }
    Ok(report)
}

/// Cu-membership evidence: every probe, bounded or not, needs a supremum.
pub fn check_cu_membership(h: &dyn Monoid, probes: &[Probe], budget: u64) -> Result<Report> {
    check_budget(budget)?;
    let mut report = Report::new(format!("Cu evidence for {}", h.describe()));
    report.exhaustive = h.carrier().is_some();
    for p in probes {
        let mut b = Budget::new(budget);
        report.push(sup_entry(h, &p.chain, &mut b, "cu.sup")?);
    }
    Ok(report)
}

fn sup_entry(h: &dyn Monoid, c: &Chain, b: &mut Budget, property: &str) -> Result<Entry> {
    let v = sup_chain_in(h, c, b)?;
    let check = format!("sup of {}", c.label);
    Ok(match v {
        SupVerdict::Sup { value, witness } => Entry::new(check, property, Status::Pass)
            .detail(format!("sup = {value} ({witness})"))
            .spent(b.spent()),
        SupVerdict::NoSup { witness, reason } => Entry::new(check, property, Status::Fail)
            .detail(format!("disproof: {reason}"))
            .witness(Some(witness))
            .spent(b.spent()),
        SupVerdict::Unknown(note) => Entry::new(check, property, Status::Unknown)
            .detail(note)
            .spent(b.spent()),
    })
}

/// Membership verdicts for PreCu, 𝒞 and Cu from the family's samples and
/// probes.
pub fn classify(handle: &MonoidHandle, budget: u64) -> Result<Report> {
    let h = handle.as_ref();
    let sample = h.samples();
    let probes = h.probes();
    let bounded: Vec<Probe> = probes.iter().filter(|p| p.bound.is_some()).cloned().collect();
    let precu = check_precu_membership(handle, &sample, budget)?;
    let c = check_c_membership(h, &bounded, budget)?;
    let cu = check_cu_membership(h, &probes, budget)?;
    let mut report = Report::new(format!("classification of {}", h.describe()));
    report.exhaustive = precu.exhaustive;
    let summary = |r: &Report, cls: &str, prop: &str| {
        let status = r.status();
        let word = match (status, r.exhaustive) {
            (Status::Pass, true) => "exhaustive pass",
            (Status::Pass, false) => "evidence-pass",
            (Status::Fail, _) => "disproof",
            (Status::Unknown, _) => "unknown",
        };
        let first_fail = r.failures().next();
        Entry::new(cls, prop, status)
            .detail(match first_fail {
                Some(e) => format!("{word} ({}: {})", e.check, e.detail),
                None => word.to_string(),
            })
            .witness(first_fail.and_then(|e| e.witness.clone()))
            .spent(r.spent())
    };
    report.push(summary(&precu, "PreCu", "class.precu"));
    report.push(summary(&c, "C", "class.c"));
    report.push(summary(&cu, "Cu", "class.cu"));
    for sub in [precu, c, cu] {
        report.extend(sub);
    }
    Ok(report)
}

/// Additivity, zero, order, `≪` and supremum preservation on samples.
pub fn is_precu_morphism(
    f: &MonoidMap,
    sample: &[Element],
    chains: &[Chain],
    budget: u64,
) -> Result<Report> {
    let (dom, cod) = (f.dom.as_ref(), f.cod.as_ref());
    all_in_family(dom, sample)?;
    check_budget(budget)?;
    let mut report = Report::new(format!("PreCu morphism check of {}", f.name));
    report.exhaustive = is_exhaustive(dom, sample);
    let mut zero = Clause::new("zero", "morphism.zero", budget);
    let mut additive = Clause::new("additive", "morphism.additive", budget);
    let mut order = Clause::new("order-preserving", "morphism.order", budget);
    let mut wb = Clause::new("≪-preserving", "morphism.way-below", budget);
    let mut sups = Clause::new("sup-preserving", "morphism.sup", budget);

    let images: Vec<Element> = sample.iter().map(|x| f.apply(x)).collect::<Result<_>>()?;
    let mut b = Budget::new(budget);
    let t = equal_in(cod, &f.apply(&dom.zero())?, &cod.zero(), &mut b);
    zero.record(t, b.spent(), || Witness::Element(dom.zero()));
    for (i, x) in sample.iter().enumerate() {
        for (j, y) in sample.iter().enumerate() {
            let mut b = Budget::new(budget);
            let fxy = f.apply(&dom.add(x, y))?;
            let t = equal_in(cod, &fxy, &cod.add(&images[i], &images[j]), &mut b);
            additive.record(t, b.spent(), || Witness::Pair(x.clone(), y.clone()));
            let mut b = Budget::new(budget);
            if dom.leq(x, y, &mut b).is_true() {
                let t = cod.leq(&images[i], &images[j], &mut b).tri;
                order.record(t, b.spent(), || Witness::Pair(x.clone(), y.clone()));
            }
            let mut b = Budget::new(budget);
            if way_below_in(dom, x, y, &mut b)?.is_true() {
                let t = way_below_in(cod, &images[i], &images[j], &mut b)?.tri;
                wb.record(t, b.spent(), || Witness::Pair(x.clone(), y.clone()));
            }
        }
    }
    for c in chains {
        let mut b = Budget::new(budget);
        if let SupVerdict::Sup { value, .. } = sup_chain_in(dom, c, &mut b)? {
            let image = f.image_chain(c);
            let t = match sup_chain_in(cod, &image, &mut b) {
                Ok(SupVerdict::Sup { value: w, .. }) => equal_in(cod, &w, &f.apply(&value)?, &mut b),
                Ok(SupVerdict::NoSup { .. }) => Tri::False,
                Ok(SupVerdict::Unknown(_)) => Tri::Unknown,
                Err(_) => Tri::False,
            };
            sups.record(t, b.spent(), || Witness::Chain {
                label: c.label.clone(),
                prefix: c.prefix(4),
            });
        }
    }
    for cl in [zero, additive, order, wb, sups] {
        report.push(cl.entry());
    }
    Ok(report)
}

/// Order reflection on sampled pairs, together with the `≪`-reflection
/// characterization; the report also states whether the two agree.
pub fn is_order_embedding(f: &MonoidMap, sample: &[Element], budget: u64) -> Result<Report> {
    let (dom, cod) = (f.dom.as_ref(), f.cod.as_ref());
    all_in_family(dom, sample)?;
    check_budget(budget)?;
    let mut report = Report::new(format!("order-embedding check of {}", f.name));
    report.exhaustive = is_exhaustive(dom, sample);
    let mut order = Clause::new("order reflection", "embedding.order", budget);
    let mut wb = Clause::new("≪ reflection", "embedding.way-below", budget);
    let images: Vec<Element> = sample.iter().map(|x| f.apply(x)).collect::<Result<_>>()?;
    for (i, x) in sample.iter().enumerate() {
        for (j, y) in sample.iter().enumerate() {
            let mut b = Budget::new(budget);
            let image_le = cod.leq(&images[i], &images[j], &mut b).tri;
            let t = match image_le {
                Tri::True => dom.leq(x, y, &mut b).tri,
                Tri::False => Tri::True,
                Tri::Unknown => Tri::Unknown,
            };
            order.record(t, b.spent(), || Witness::Pair(x.clone(), y.clone()));
            let mut b = Budget::new(budget);
            let image_wb = way_below_in(cod, &images[i], &images[j], &mut b)?.tri;
            let t = match image_wb {
                Tri::True => way_below_in(dom, x, y, &mut b)?.tri,
                Tri::False => Tri::True,
                Tri::Unknown => Tri::Unknown,
            };
            wb.record(t, b.spent(), || Witness::Pair(x.clone(), y.clone()));
        }
    }
    let (o, w) = (order.entry(), wb.entry());
    let agree = if o.status == w.status {
        Status::Pass
    } else if o.status == Status::Unknown || w.status == Status::Unknown {
        Status::Unknown
    } else {
        Status::Fail
    };
    let agreement = Entry::new(
        "characterizations agree",
        "embedding.way-below-equivalence",
        agree,
    )
    .detail(format!("order: {}, ≪: {}", o.status.label(), w.status.label()));
    report.push(o);
    report.push(w);
    report.push(agreement);
    Ok(report)
}

/// Downward closure of the image: every sampled codomain element below an
/// image needs a preimage. Preimages come from the map's closed-form hook or
/// from a search through the domain's enumeration.
pub fn is_hereditary(
    f: &MonoidMap,
    dom_sample: &[Element],
    cod_sample: &[Element],
    budget: u64,
) -> Result<Report> {
    let embedding = is_order_embedding(f, dom_sample, budget)?;
    if embedding.entry("order reflection").map(|e| e.status) == Some(Status::Fail) {
        return Err(Error::NotEmbedding(f.name.clone()));
    }
    let (dom, cod) = (f.dom.as_ref(), f.cod.as_ref());
    for x in cod_sample {
        check_family(cod, x)?;
    }
    let mut report = Report::new(format!("hereditary check of {}", f.name));
    report.exhaustive = embedding.exhaustive && cod.carrier().is_some();
    let images: Vec<Element> = dom_sample.iter().map(|x| f.apply(x)).collect::<Result<_>>()?;
    for x in cod_sample {
        let mut b = Budget::new(budget);
        let Some(above) = images.iter().find(|y| cod.leq(x, y, &mut b).is_true()) else {
            continue;
        };
        let check = format!("preimage of {x}");
        let entry = match f.preimage_hook(x, &mut b) {
            Some(Preimage::Found(m)) => {
                let t = equal_in(cod, &f.apply(&m)?, x, &mut b);
                Entry::new(check, "hereditary.preimage", Status::from_tri(t))
                    .detail(format!("below {above}; preimage {m}"))
                    .witness(Some(Witness::Element(m)))
            }
            Some(Preimage::Absent(w)) => Entry::new(check, "hereditary.preimage", Status::Fail)
                .detail(format!("below {above} but certified to have no preimage"))
                .witness(Some(w)),
            _ => {
                let found = search_preimage(f, dom, x, &mut b)?;
                match found {
                    Some(m) => Entry::new(check, "hereditary.preimage", Status::Pass)
                        .detail(format!("below {above}; preimage {m} found by search"))
                        .witness(Some(Witness::Element(m))),
                    None => Entry::new(check, "hereditary.preimage", Status::Unknown)
                        .detail(format!("below {above}; search exhausted")),
                }
            }
        };
        report.push(entry.spent(b.spent()));
    }
    Ok(report)
}

fn search_preimage(
    f: &MonoidMap,
    dom: &dyn Monoid,
    x: &Element,
    b: &mut Budget,
) -> Result<Option<Element>> {
    let cod = f.cod.as_ref();
    let candidates: Box<dyn Iterator<Item = Element>> = match dom.carrier() {
        Some(c) => Box::new(c.into_iter()),
        None => Box::new((0..b.horizon()).filter_map(|n| dom.enumerate(n))),
    };
    for m in candidates {
        if !b.spend(1) {
            break;
        }
        let fm = f.apply(&m)?;
        if equal_in(cod, &fm, x, b).is_true() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}
