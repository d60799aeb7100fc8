//! Inductive limits of sequences `S₀ → S₁ → ⋯` in 𝒞 and in Cu.
//!
//! An element of a limit is the class of an ascending sequence `(sₙ)` with
//! `sₙ ∈ Sₙ` and `f(sₙ) ≤ sₙ₊₁`. The catalog systems (dyadic lattices,
//! finite chains, constant ℕ) and their completions carry cuts: an embedded
//! class `φᵢ(x)` is closed at the level of `x`, and a sequence that never
//! stabilizes is open at the supremum of its levels. Order, `≪` and suprema
//! of the limits are decided on those cuts, while the termwise definition
//! of `≼` stays available as a budgeted witness search.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::catalog::dyadic::{dyadic_below as scaled_below, dyadic_enum};
use crate::catalog::{Doubled, DyadicLattice, Nat, Variant};
use crate::completion::{extension_map, interval_of, lift_morphism, Completion};
use crate::element::{Element, FamilyId, Value};
use crate::error::{Error, Result};
use crate::finite::FiniteMonoid;
use crate::number::{pow2_inv, Dyadic, Real};
use crate::order::{
    check_family, equal_in, is_precu_morphism, sup_chain_in, way_below_in, Entry, cut_leq, cut_way_below, element, Budget, Chain, Class, Cut, Monoid, MonoidHandle, MonoidMap, Probe,
    Report, Status, SupVerdict, Tri, Verdict, Witness,
};

/// Terms inspected when validating a sequence or a representative.
pub const PREFIX: usize = 16;
/// Largest fragment compared by the commutation check.
pub const FRAGMENT_CAP: usize = 256;
const CERTIFY_BUDGET: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemKind {
    /// `S_i = 2^{-i}ℕ` with the inclusions.
    Dyadic,
    /// `Tₙ = {a₀, …, aₙ}` with the index inclusions.
    Chain,
    /// ℕ with identity maps.
    NatId,
}

impl SystemKind {
    pub fn parse(text: &str) -> Option<Self> {
        match text.trim() {
            "dyadic" => Some(SystemKind::Dyadic),
            "chain" => Some(SystemKind::Chain),
            "nat-id" | "nat" => Some(SystemKind::NatId),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SystemKind::Dyadic => "dyadic",
            SystemKind::Chain => "chain",
            SystemKind::NatId => "nat-id",
        }
    }
}

#[derive(Clone)]
struct Stage {
    base: MonoidHandle,
    comp: Option<Arc<Completion>>,
    handle: MonoidHandle,
}

/// A catalog inductive system, optionally with every stage completed.
/// Stages and connecting maps are built on demand and memoized.
pub struct InductiveSystem {
    name: String,
    kind: SystemKind,
    seeds: usize,
    completed: bool,
    stages: Mutex<Vec<Stage>>,
    maps: Mutex<Vec<MonoidMap>>,
}

impl fmt::Debug for InductiveSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InductiveSystem({}, {}, seeds {})", self.name, self.kind.name(), self.seeds)
    }
}

impl InductiveSystem {
    /// Builds the system and certifies its first `seeds` connecting maps
    /// as PreCu morphisms on the stage samples.
    pub fn new(name: impl Into<String>, kind: SystemKind, seeds: usize) -> Result<Arc<Self>> {
        Self::build(name.into(), kind, seeds, false)
    }

    fn build(name: String, kind: SystemKind, seeds: usize, completed: bool) -> Result<Arc<Self>> {
        if seeds == 0 {
            return Err(Error::Validation {
                object: name,
                reason: "a system needs at least one seeded stage".into(),
            });
        }
        let sys = Arc::new(InductiveSystem {
            name,
            kind,
            seeds,
            completed,
            stages: Mutex::new(Vec::new()),
            maps: Mutex::new(Vec::new()),
        });
        sys.certify()?;
        Ok(sys)
    }

    /// The system `S̄₀ → S̄₁ → ⋯` of completions with the lifted maps.
    pub fn completed(&self) -> Result<Arc<Self>> {
        if self.completed {
            return Err(Error::Validation {
                object: self.name.clone(),
                reason: "the system is already completed".into(),
            });
        }
        Self::build(format!("completed {}", self.name), self.kind, self.seeds, true)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn seeds(&self) -> usize {
        self.seeds
    }

    pub fn is_completed(&self) -> bool {
        self.completed
    }

    fn certify(&self) -> Result<()> {
        for i in 0..self.seeds {
            let f = self.map(i);
            let sample: Vec<Element> = f.dom.samples().into_iter().take(6).collect();
            let chains: Vec<Chain> = f.dom.probes().into_iter().map(|p| p.chain).collect();
            let report = is_precu_morphism(&f, &sample, &chains, CERTIFY_BUDGET)?;
            if report.status() == Status::Fail {
                return Err(Error::UncertifiedMaps(format!("{} ({})", self.name, f.name)));
            }
        }
        Ok(())
    }

    fn stage_entry(&self, i: usize) -> Stage {
        let mut st = self.stages.lock().expect("stage memo");
        while st.len() <= i {
            let j = st.len();
            st.push(self.build_stage(j));
        }
        st[i].clone()
    }

    fn build_stage(&self, j: usize) -> Stage {
        let base = match self.kind {
            SystemKind::Dyadic => DyadicLattice::handle(j as u32),
            SystemKind::Chain => FiniteMonoid::chain(j).handle(),
            SystemKind::NatId => Nat::handle(),
        };
        if self.completed {
            let comp = Completion::of(&base);
            Stage {
                handle: comp.handle(),
                base,
                comp: Some(comp),
            }
        } else {
            Stage {
                handle: base.clone(),
                base,
                comp: None,
            }
        }
    }

    pub fn stage(&self, i: usize) -> MonoidHandle {
        self.stage_entry(i).handle
    }

    /// The connecting map `fᵢ: Sᵢ → Sᵢ₊₁`.
    pub fn map(&self, i: usize) -> MonoidMap {
        let start = {
            let m = self.maps.lock().expect("map memo");
            if i < m.len() {
                return m[i].clone();
            }
            m.len()
        };
        let built: Vec<MonoidMap> = (start..=i).map(|j| self.build_map(j)).collect();
        let mut m = self.maps.lock().expect("map memo");
        for (k, f) in (start..).zip(built) {
            if k == m.len() {
                m.push(f);
            }
        }
        m[i].clone()
    }

    fn build_map(&self, j: usize) -> MonoidMap {
        let (d, c) = (self.stage_entry(j).base, self.stage_entry(j + 1).base);
        let base_map = match self.kind {
            SystemKind::NatId => MonoidMap::identity(d),
            _ => {
                let cod = c.clone();
                MonoidMap::new(format!("incl[{j}→{}]", j + 1), d, c, move |x| element(cod.as_ref(), x.value.clone()))
                    .with_ambient(|a| Some(a.to_vec()))
            }
        };
        if self.completed {
            lift_morphism(&base_map)
        } else {
            base_map
        }
    }

    /// `f_{to-1} ∘ ⋯ ∘ f_from`.
    pub fn transport(&self, x: &Element, from: usize, to: usize) -> Result<Element> {
        if to < from {
            return Err(Error::Validation {
                object: self.name.clone(),
                reason: format!("cannot transport from stage {from} back to stage {to}"),
            });
        }
        let mut y = x.clone();
        for k in from..to {
            y = self.map(k).apply(&y)?;
        }
        Ok(y)
    }

    /// A stage element from its base payload, wrapped in `ι` for completed
    /// systems.
    pub fn point(&self, i: usize, value: Value) -> Result<Element> {
        let st = self.stage_entry(i);
        let x = element(st.base.as_ref(), value)?;
        match &st.comp {
            Some(c) => c.iota(&x),
            None => Ok(x),
        }
    }

    /// Level of a stage element, read off its cut.
    pub fn level(&self, i: usize, x: &Element) -> Result<Real> {
        self.stage(i)
            .cut(x)
            .map(|c| c.level)
            .ok_or_else(|| Error::NoRule(x.family.to_string()))
    }

    /// The canonical stage-`n` element below `level`: the largest stage
    /// element of smaller level, with `n` standing in for an infinite level.
    pub fn below(&self, level: &Real, n: usize) -> Element {
        let v = match self.kind {
            SystemKind::Dyadic => Value::Dyadic(match level {
                Real::Infinity => Dyadic::integer(n as u64),
                _ => level.dyadic_below(n).unwrap_or_else(Dyadic::zero),
            }),
            SystemKind::Chain => Value::Index(integer_below(level).map_or(n, |k| k.min(n))),
            SystemKind::NatId => Value::Nat(integer_below(level).unwrap_or(n) as u64),
        };
        self.point(n, v).expect("canonical stage element")
    }

    /// The stage element of exactly this level, if the stage has one.
    fn at_level(&self, level: &Real) -> Option<(usize, Element)> {
        let q = level.as_rational()?;
        match self.kind {
            SystemKind::Dyadic => {
                let d = Dyadic::from_rational(q)?;
                let i = d.level() as usize;
                Some((i, self.point(i, Value::Dyadic(d)).ok()?))
            }
            SystemKind::Chain => {
                let k = q.to_integer().to_usize().filter(|_| q.is_integer())?;
                Some((k, self.point(k, Value::Index(k)).ok()?))
            }
            SystemKind::NatId => {
                let k = q.to_integer().to_u64().filter(|_| q.is_integer())?;
                Some((0, self.point(0, Value::Nat(k)).ok()?))
            }
        }
    }

    /// Levels of a sum: additive stages add levels, chains take the max.
    pub fn level_add(&self, a: &Real, b: &Real) -> Option<Real> {
        match self.kind {
            SystemKind::Chain => Some(match a.partial_cmp(b)? {
                Ordering::Less => b.clone(),
                _ => a.clone(),
            }),
            _ => a.checked_add(b),
        }
    }

    fn same(&self, other: &InductiveSystem) -> bool {
        self.name == other.name && self.kind == other.kind && self.completed == other.completed
    }
}

fn integer_below(level: &Real) -> Option<usize> {
    let f = level.floor()?;
    let hit = Real::rational(num_rational::BigRational::from_integer(f.clone().into())) == *level;
    let k = if hit { f.clone().max(BigUint::one()) - 1u32 } else { f };
    Some(k.to_usize().unwrap_or(usize::MAX))
}

/// A stage element standing for the class `φ_stage(value)`.
#[derive(Clone, Debug)]
pub struct AlgColimitElement {
    pub stage: usize,
    pub value: Element,
}

impl AlgColimitElement {
    /// Equality in the algebraic colimit: equal after transport to a common
    /// stage.
    pub fn alg_eq(&self, other: &AlgColimitElement, system: &InductiveSystem) -> Result<bool> {
        let m = self.stage.max(other.stage);
        let a = system.transport(&self.value, self.stage, m)?;
        let b = system.transport(&other.value, other.stage, m)?;
        Ok(equal_in(system.stage(m).as_ref(), &a, &b, &mut Budget::new(1 << 12)).is_true())
    }
}

#[derive(Clone, Debug)]
pub enum SeqShape {
    /// `(0, …, 0, x, f(x), f²(x), …)` starting at `stage`.
    Embedded { stage: usize, value: Element },
    /// A sequence that never stabilizes, with levels tending to `ambient`.
    Lazy { ambient: Real },
}

type SeqFn = Arc<dyn Fn(usize) -> Element + Send + Sync>;

/// An ascending sequence `(sₙ)` in an inductive system.
pub struct AscSeq {
    system: Arc<InductiveSystem>,
    pub label: String,
    pub shape: SeqShape,
    pub bound: Option<AlgColimitElement>,
    lazy: Option<SeqFn>,
    cache: Mutex<Vec<Element>>,
}

impl fmt::Display for AscSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl fmt::Debug for AscSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AscSeq({} in {})", self.label, self.system.name)
    }
}

impl AscSeq {
    /// `φᵢ(x)`, bounded by itself.
    pub fn embedded(system: &Arc<InductiveSystem>, stage: usize, value: Element) -> Result<Arc<AscSeq>> {
        check_family(system.stage(stage).as_ref(), &value)?;
        Ok(Self::embedded_unchecked(system, stage, value))
    }

    fn embedded_unchecked(system: &Arc<InductiveSystem>, stage: usize, value: Element) -> Arc<AscSeq> {
        Arc::new(AscSeq {
            system: system.clone(),
            label: format!("φ_{stage}({value})"),
            shape: SeqShape::Embedded {
                stage,
                value: value.clone(),
            },
            bound: Some(AlgColimitElement { stage, value }),
            lazy: None,
            cache: Mutex::new(Vec::new()),
        })
    }

    /// A non-stabilizing sequence given termwise; validated on a prefix for
    /// stage membership, ascent, levels below `ambient` and the bound.
    pub fn lazy(
        system: &Arc<InductiveSystem>,
        label: impl Into<String>,
        terms: impl Fn(usize) -> Element + Send + Sync + 'static,
        ambient: Real,
        bound: Option<AlgColimitElement>,
    ) -> Result<Arc<AscSeq>> {
        let label = label.into();
        if system.kind != SystemKind::Dyadic && !ambient.is_infinite() {
            return Err(Error::Validation {
                object: label,
                reason: format!("levels in a discrete system cannot approach {ambient} without reaching it"),
            });
        }
        let s = Self::raw(system, label, Arc::new(terms), ambient, bound);
        s.validate()?;
        Ok(s)
    }

    fn raw(
        system: &Arc<InductiveSystem>,
        label: String,
        terms: SeqFn,
        ambient: Real,
        bound: Option<AlgColimitElement>,
    ) -> Arc<AscSeq> {
        Arc::new(AscSeq {
            system: system.clone(),
            label,
            shape: SeqShape::Lazy { ambient },
            bound,
            lazy: Some(terms),
            cache: Mutex::new(Vec::new()),
        })
    }

    /// `n ↦ below(ambient, n)`, the canonical sequence with supremum level
    /// `ambient`.
    pub fn canonical(system: &Arc<InductiveSystem>, ambient: Real, bound: Option<AlgColimitElement>) -> Arc<AscSeq> {
        let sys = system.clone();
        let a = ambient.clone();
        Self::raw(
            system,
            format!("sup({ambient})"),
            Arc::new(move |n| sys.below(&a, n)),
            ambient,
            bound,
        )
    }

    fn validate(&self) -> Result<()> {
        let sys = &self.system;
        let mut b = Budget::new(u64::MAX);
        for n in 0..PREFIX {
            let t = self.term(n);
            check_family(sys.stage(n).as_ref(), &t)?;
            let next = self.term(n + 1);
            let moved = sys.transport(&t, n, n + 1)?;
            if sys.stage(n + 1).leq(&moved, &next, &mut b).is_false() {
                return Err(Error::NotMonotone {
                    label: self.label.clone(),
                    index: n,
                });
            }
            if let SeqShape::Lazy { ambient } = &self.shape {
                let below = sys.level(n, &t)?.partial_cmp(ambient) == Some(Ordering::Less);
                if !below {
                    return Err(Error::AmbientViolated {
                        label: self.label.clone(),
                        index: n,
                    });
                }
            }
            if let Some(m) = &self.bound {
                let k = n.max(m.stage);
                let (x, u) = (sys.transport(&t, n, k)?, sys.transport(&m.value, m.stage, k)?);
                if sys.stage(k).leq(&x, &u, &mut b).is_false() {
                    return Err(Error::Validation {
                        object: self.label.clone(),
                        reason: format!("term {n} exceeds the declared bound φ_{}({})", m.stage, m.value),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn system(&self) -> &Arc<InductiveSystem> {
        &self.system
    }

    pub fn term(&self, n: usize) -> Element {
        match &self.shape {
            SeqShape::Lazy { .. } => (self.lazy.as_ref().expect("lazy terms"))(n),
            SeqShape::Embedded { stage, value } => {
                if n < *stage {
                    return self.system.stage(n).zero();
                }
                let k = n - stage;
                let mut cache = self.cache.lock().expect("term cache");
                if cache.is_empty() {
                    cache.push(value.clone());
                }
                while cache.len() <= k {
                    let j = stage + cache.len() - 1;
                    let next = self.system.map(j).apply(cache.last().expect("nonempty")).expect("certified map");
                    cache.push(next);
                }
                cache[k].clone()
            }
        }
    }

    /// The class's cut: closed at the level of an embedded value, open at
    /// the ambient level otherwise.
    pub fn cut(&self) -> Result<Cut> {
        match &self.shape {
            SeqShape::Embedded { stage, value } => self
                .system
                .stage(*stage)
                .cut(value)
                .ok_or_else(|| Error::NoRule(value.family.to_string())),
            SeqShape::Lazy { ambient } => Ok(Cut::open(ambient.clone())),
        }
    }

    pub fn level(&self) -> Result<Real> {
        Ok(self.cut()?.level)
    }
}

fn same_system(s: &AscSeq, t: &AscSeq) -> Result<()> {
    if s.system.same(&t.system) {
        Ok(())
    } else {
        Err(Error::SystemMismatch(format!("{} and {}", s.system.name, t.system.name)))
    }
}

/// `s ≼ t`: decided on the cuts, with the termwise exploration reported as
/// the witness.
pub fn seq_precsim(s: &AscSeq, t: &AscSeq, budget: u64) -> Result<Verdict> {
    same_system(s, t)?;
    if budget == 0 {
        return Err(Error::InvalidBudget);
    }
    let (cs, ct) = (s.cut()?, t.cut()?);
    let explored = explore(s, t, &mut Budget::new(budget))?;
    let note = match &explored {
        Exploration::Covered(h) => format!("every s_i with i < {h} lies below some t_m"),
        Exploration::Stuck(i, h) => format!("s_{i} lies below no t_m with m < {h}"),
    };
    Ok(match cs.within(&ct) {
        Some(b) => Verdict::decided(b, Witness::rule(format!("cuts {cs} vs {ct}; {note}"))),
        None => Verdict::unknown(format!("levels {} and {} are incomparable; {note}", cs.level, ct.level)),
    })
}

enum Exploration {
    Covered(usize),
    Stuck(usize, usize),
}

fn explore(s: &AscSeq, t: &AscSeq, b: &mut Budget) -> Result<Exploration> {
    let sys = &s.system;
    let horizon = b.horizon().min(4 * PREFIX);
    for i in 0..horizon {
        let x = s.term(i);
        let mut found = false;
        for m in i..horizon {
            if !b.spend(1) {
                return Ok(Exploration::Covered(i));
            }
            let y = sys.transport(&x, i, m)?;
            if sys.stage(m).leq(&y, &t.term(m), b).is_true() {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(Exploration::Stuck(i, horizon));
        }
    }
    Ok(Exploration::Covered(horizon))
}

/// The termwise definition alone: `True` once every term of a stationary
/// `s` has been matched, otherwise `Unknown`.
pub fn seq_precsim_search(s: &AscSeq, t: &AscSeq, budget: u64) -> Result<Tri> {
    same_system(s, t)?;
    let mut b = Budget::new(budget);
    let SeqShape::Embedded { stage, .. } = &s.shape else {
        return Ok(Tri::Unknown);
    };
    Ok(match explore(s, t, &mut b)? {
        Exploration::Covered(h) if h > stage + 1 => Tri::True,
        _ => Tri::Unknown,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LimitKind {
    C,
    Cu,
}

/// `lim_𝒞 S` (classes of bounded sequences) or `lim_Cu S` (all
/// sequences).
pub struct Limit {
    id: FamilyId,
    system: Arc<InductiveSystem>,
    kind: LimitKind,
}

impl fmt::Debug for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Limit({})", self.id)
    }
}

pub fn limit_in_c(system: &Arc<InductiveSystem>) -> Arc<Limit> {
    Limit::new(system, LimitKind::C)
}

pub fn limit_in_cu(system: &Arc<InductiveSystem>) -> Arc<Limit> {
    Limit::new(system, LimitKind::Cu)
}

/// The sequence behind a limit element.
pub fn seq_of(x: &Element) -> Result<&Arc<AscSeq>> {
    match &x.value {
        Value::Sequence(s) => Ok(s),
        v => Err(Error::invalid(x.family.to_string(), format!("{v} is not a sequence class"))),
    }
}

impl Limit {
    fn new(system: &Arc<InductiveSystem>, kind: LimitKind) -> Arc<Limit> {
        let k = match kind {
            LimitKind::C => "C",
            LimitKind::Cu => "Cu",
        };
        Arc::new(Limit {
            id: format!("lim_{k}({})", system.name).into(),
            system: system.clone(),
            kind,
        })
    }

    pub fn handle(self: &Arc<Self>) -> MonoidHandle {
        self.clone()
    }

    pub fn system(&self) -> &Arc<InductiveSystem> {
        &self.system
    }

    pub fn kind(&self) -> LimitKind {
        self.kind
    }

    /// `φᵢ(x)`.
    pub fn phi(&self, i: usize, x: &Element) -> Result<Element> {
        Ok(self.elem(Value::Sequence(AscSeq::embedded(&self.system, i, x.clone())?)))
    }

    /// The class of a sequence of this system.
    pub fn class(&self, s: Arc<AscSeq>) -> Result<Element> {
        let v = Value::Sequence(s);
        self.validate(&v)?;
        Ok(self.elem(v))
    }

    /// The open class at `level`; in 𝒞 it is bounded by the next integer.
    pub fn canonical(&self, level: Real) -> Result<Element> {
        if self.system.kind != SystemKind::Dyadic && !level.is_infinite() {
            return Err(Error::Validation {
                object: self.id.to_string(),
                reason: format!("a discrete system has no open class at finite level {level}"),
            });
        }
        let bound = match (&level, self.kind) {
            (Real::Infinity, LimitKind::C) => {
                return Err(Error::Validation {
                    object: self.id.to_string(),
                    reason: "an unbounded sequence has no class in the 𝒞 limit".into(),
                })
            }
            (Real::Infinity, LimitKind::Cu) => None,
            (r, _) => {
                let top = r.floor().ok_or_else(|| Error::SupFailed(format!("cannot bound level {r}")))? + 1u32;
                let top = top.to_u64().unwrap_or(u64::MAX);
                Some(AlgColimitElement {
                    stage: 0,
                    value: self.system.point(0, Value::Dyadic(Dyadic::integer(top)))?,
                })
            }
        };
        Ok(self.elem(Value::Sequence(AscSeq::canonical(&self.system, level, bound))))
    }

    /// The closed class at `level`, when a stage holds that level.
    pub fn closed_at(&self, level: &Real) -> Option<Element> {
        let (i, x) = self.system.at_level(level)?;
        self.phi(i, &x).ok()
    }

    fn cut_of(&self, x: &Element) -> Cut {
        seq_of(x).and_then(|s| s.cut()).expect("validated limit element")
    }

    fn sum(&self, s: &Arc<AscSeq>, t: &Arc<AscSeq>) -> Result<Arc<AscSeq>> {
        let sys = &self.system;
        if let (SeqShape::Embedded { stage: i, value: x }, SeqShape::Embedded { stage: j, value: y }) =
            (&s.shape, &t.shape)
        {
            let m = (*i).max(*j);
            let v = sys.stage(m).add(&sys.transport(x, *i, m)?, &sys.transport(y, *j, m)?);
            return Ok(AscSeq::embedded_unchecked(sys, m, v));
        }
        let ambient = sys
            .level_add(&s.level()?, &t.level()?)
            .ok_or_else(|| Error::SupFailed(format!("levels of {s} and {t} cannot be added")))?;
        let bound = match (&s.bound, &t.bound) {
            (Some(a), Some(b)) => {
                let m = a.stage.max(b.stage);
                let v = sys
                    .stage(m)
                    .add(&sys.transport(&a.value, a.stage, m)?, &sys.transport(&b.value, b.stage, m)?);
                Some(AlgColimitElement { stage: m, value: v })
            }
            _ => None,
        };
        let (s2, t2, sys2) = (s.clone(), t.clone(), sys.clone());
        Ok(AscSeq::raw(
            sys,
            format!("{s} + {t}"),
            Arc::new(move |n| sys2.stage(n).add(&s2.term(n), &t2.term(n))),
            ambient,
            bound,
        ))
    }
}

impl Monoid for Limit {
    fn family(&self) -> &FamilyId {
        &self.id
    }
    fn claimed_class(&self) -> Class {
        match self.kind {
            LimitKind::C => Class::C,
            LimitKind::Cu => Class::Cu,
        }
    }
    fn validate(&self, value: &Value) -> Result<()> {
        let Value::Sequence(s) = value else {
            return Err(Error::invalid(self.id.to_string(), format!("{value} is not a sequence class")));
        };
        if !s.system.same(&self.system) {
            return Err(Error::SystemMismatch(format!("{} in {}", s.system.name, self.id)));
        }
        if self.kind == LimitKind::C && s.bound.is_none() {
            return Err(Error::UnboundedChain(s.label.clone()));
        }
        Ok(())
    }
    fn zero(&self) -> Element {
        let z = self.system.stage(0).zero();
        self.elem(Value::Sequence(AscSeq::embedded_unchecked(&self.system, 0, z)))
    }
    fn add(&self, x: &Element, y: &Element) -> Element {
        let (s, t) = (seq_of(x).expect("validated"), seq_of(y).expect("validated"));
        self.elem(Value::Sequence(self.sum(s, t).expect("sum of certified sequences")))
    }
    fn leq(&self, x: &Element, y: &Element, budget: &mut Budget) -> Verdict {
        budget.spend(1);
        cut_leq(self, x, y)
    }
    fn way_below_rule(&self, x: &Element, y: &Element, budget: &mut Budget) -> Option<Verdict> {
        budget.spend(1);
        cut_way_below(self, x, y)
    }
    fn sup_rule(&self, c: &Chain, _: &mut Budget) -> SupVerdict {
        let Some([r]) = c.ambient.as_deref() else {
            return SupVerdict::Unknown(format!("chain {} declares no ambient level", c.label));
        };
        if r.is_infinite() && self.kind == LimitKind::C {
            return SupVerdict::no_sup(
                Witness::Chain {
                    label: c.label.clone(),
                    prefix: c.prefix(6),
                },
                "levels are unbounded, and every bounded sequence has a finite level",
            );
        }
        if self.system.kind != SystemKind::Dyadic && !r.is_infinite() {
            return match self.closed_at(r) {
                Some(v) => SupVerdict::Sup {
                    value: v,
                    witness: Witness::rule(format!("discrete levels reach {r}")),
                },
                None => SupVerdict::Unknown(format!("no stage holds level {r}")),
            };
        }
        match self.canonical(r.clone()) {
            Ok(v) => SupVerdict::Sup {
                value: v,
                witness: Witness::rule(format!("the class open at {r} is the least class above levels below {r}")),
            },
            Err(e) => SupVerdict::Unknown(e.to_string()),
        }
    }
    fn approximants(&self, x: &Element) -> Option<Chain> {
        let cut = self.cut_of(x);
        if cut.compact() {
            return Some(Chain::constant(format!("const {x}"), x.clone()).rapid(true));
        }
        let (sys, id, level) = (self.system.clone(), self.id.clone(), cut.level.clone());
        let lv = level.clone();
        Some(
            Chain::lazy(
                format!("φ_n(below({level}, n))"),
                move |n| Element::new(&id, Value::Sequence(AscSeq::embedded_unchecked(&sys, n, sys.below(&lv, n)))),
                Some(vec![level]),
            )
            .rapid(true),
        )
    }
    fn enumerate(&self, n: usize) -> Option<Element> {
        let (i, k) = crate::number::cantor_unpair(n as u64);
        let i = (i as usize).min(64);
        let x = match self.system.kind {
            SystemKind::Dyadic => self.system.point(i, Value::Dyadic(Dyadic::new(k, i as u32))).ok()?,
            SystemKind::Chain => self.system.point(i, Value::Index((k as usize).min(i))).ok()?,
            SystemKind::NatId => self.system.point(i, Value::Nat(k)).ok()?,
        };
        self.phi(i, &x).ok()
    }
    fn cut(&self, x: &Element) -> Option<Cut> {
        seq_of(x).ok()?.cut().ok()
    }
    fn shadow(&self, x: &Element) -> Option<Vec<Real>> {
        Some(vec![seq_of(x).ok()?.level().ok()?])
    }
    fn shadow_add(&self, a: &[Real], b: &[Real]) -> Option<Vec<Real>> {
        match (a, b) {
            ([x], [y]) => Some(vec![self.system.level_add(x, y)?]),
            _ => None,
        }
    }
    fn quotient(&self) -> bool {
        true
    }
    fn antisymmetry(&self) -> &'static str {
        "classes are identified by mutual ≼, which the cuts decide"
    }
    fn samples(&self) -> Vec<Element> {
        let sys = &self.system;
        let mut out = vec![self.zero()];
        for i in 0..sys.seeds.min(3) {
            for x in sys.stage(i).samples().into_iter().take(3) {
                if let Ok(e) = self.phi(i, &x) {
                    out.push(e);
                }
            }
        }
        if sys.kind == SystemKind::Dyadic {
            out.extend(self.canonical(Real::from_u64(1)));
        }
        if self.kind == LimitKind::Cu {
            out.extend(self.canonical(Real::Infinity));
        }
        out
    }
    fn probes(&self) -> Vec<Probe> {
        let mut out = Vec::new();
        let (sys, id) = (self.system.clone(), self.id.clone());
        out.push(Probe {
            chain: Chain::lazy(
                "φ_n(below(∞, n))",
                move |n| Element::new(&id, Value::Sequence(AscSeq::embedded_unchecked(&sys, n, sys.below(&Real::Infinity, n)))),
                Some(vec![Real::Infinity]),
            ),
            bound: None,
        });
        if self.system.kind == SystemKind::Dyadic {
            let (sys, id) = (self.system.clone(), self.id.clone());
            let one = Real::from_u64(1);
            let lv = one.clone();
            out.push(Probe {
                chain: Chain::lazy(
                    "φ_n(1-2^-n)",
                    move |n| Element::new(&id, Value::Sequence(AscSeq::embedded_unchecked(&sys, n, sys.below(&lv, n)))),
                    Some(vec![one]),
                ),
                bound: self.closed_at(&Real::from_u64(1)),
            });
        }
        out
    }
    fn parse_element(&self, text: &str) -> Result<Element> {
        let t = text.trim();
        let bad = || Error::invalid(self.id.to_string(), format!("cannot parse `{t}`"));
        if matches!(t, "inf" | "∞") {
            return self.canonical(Real::Infinity);
        }
        if let Some(inner) = t.strip_prefix("sup(").and_then(|r| r.strip_suffix(')')) {
            return self.canonical(crate::number::parse_real(inner).ok_or_else(bad)?);
        }
        let rest = t.strip_prefix("φ_").or_else(|| t.strip_prefix("phi_")).ok_or_else(bad)?;
        let (idx, arg) = rest.split_once('(').ok_or_else(bad)?;
        let i: usize = idx.trim().parse().map_err(|_| bad())?;
        let arg = arg.strip_suffix(')').ok_or_else(bad)?;
        let x = self.system.stage(i).parse_element(arg)?;
        self.phi(i, &x)
    }
    fn describe(&self) -> String {
        format!("{} over {} stages", self.id, self.system.kind.name())
    }
}

/// A rapidly increasing representative of the same class: the sequence
/// itself when its terms are compact, otherwise the diagonal `n ↦ n`-th
/// approximant of `sₙ`.
pub fn rapid_representative(s: &Arc<AscSeq>, budget: u64) -> Result<Arc<AscSeq>> {
    let sys = s.system.clone();
    let mut b = Budget::new(budget.max(1));
    let mut compact = true;
    for n in 0..PREFIX {
        let t = s.term(n);
        if !way_below_in(sys.stage(n).as_ref(), &t, &t, &mut b)?.is_true() {
            compact = false;
            break;
        }
    }
    if compact {
        return Ok(s.clone());
    }
    for n in 0..PREFIX {
        let t = s.term(n);
        if sys.stage(n).approximants(&t).is_none() {
            return Err(Error::NoApproximant(sys.stage(n).family().to_string()));
        }
    }
    let (src, sys2) = (s.clone(), sys.clone());
    let r = AscSeq::raw(
        &sys,
        format!("rapid({})", s.label),
        Arc::new(move |n| {
            let st = sys2.stage(n);
            st.approximants(&src.term(n)).expect("checked approximants").term(n)
        }),
        s.level()?,
        s.bound.clone(),
    );
    for n in 0..PREFIX {
        let st = sys.stage(n + 1);
        let moved = sys.transport(&r.term(n), n, n + 1)?;
        if !way_below_in(st.as_ref(), &moved, &r.term(n + 1), &mut Budget::new(budget.max(1)))?.is_true() {
            return Err(Error::NotRapid {
                label: r.label.clone(),
                index: n,
            });
        }
    }
    Ok(r)
}

/// `α: lim_𝒞 S → lim_Cu S̄`, sending a class to the class of `ι` of its
/// terms.
fn alpha_map(l: &Arc<Limit>, r: &Arc<Limit>) -> MonoidMap {
    let dst = r.system.clone();
    let rr = r.clone();
    MonoidMap::new("ι_lim", l.handle(), r.handle(), move |x| {
        let s = seq_of(x)?;
        match &s.shape {
            SeqShape::Embedded { stage, value } => rr.phi(*stage, &dst.point(*stage, value.value.clone())?),
            SeqShape::Lazy { ambient } => {
                let (s2, d2) = (s.clone(), dst.clone());
                let bound = match &s.bound {
                    Some(m) => Some(AlgColimitElement {
                        stage: m.stage,
                        value: dst.point(m.stage, m.value.value.clone())?,
                    }),
                    None => None,
                };
                let seq = AscSeq::raw(
                    &dst,
                    format!("ι({})", s.label),
                    Arc::new(move |n| d2.point(n, s2.term(n).value.clone()).expect("ι of a stage term")),
                    ambient.clone(),
                    bound,
                );
                rr.class(seq)
            }
        }
    })
    .with_ambient(|a| Some(a.to_vec()))
}

/// Compares `(lim_𝒞 S)‾` with `lim_Cu S̄` through the canonical map
/// `γ = β[α]` on explored fragments.
pub fn check_limit_completion_commutes(system: &Arc<InductiveSystem>, budget: u64) -> Result<Report> {
    if budget == 0 {
        return Err(Error::InvalidBudget);
    }
    let l = limit_in_c(system);
    let lh = l.handle();
    let comp = Completion::of(&lh);
    let completed = system.completed()?;
    let r = limit_in_cu(&completed);
    let alpha = alpha_map(&l, &r);
    let gamma = extension_map(&alpha, budget);

    let per_stage = match system.kind {
        SystemKind::Dyadic => 3,
        SystemKind::NatId => 4,
        SystemKind::Chain => usize::MAX,
    };
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 0..system.seeds {
        for x in system.stage(i).samples().into_iter().take(per_stage) {
            left.push(comp.iota(&l.phi(i, &x)?)?);
            right.push(r.phi(i, &completed.point(i, x.value.clone())?)?);
        }
        for y in completed.stage(i).samples() {
            if interval_of(&y)?.top().is_none() {
                right.push(r.phi(i, &y)?);
            }
        }
    }
    if system.kind == SystemKind::Dyadic {
        left.push(comp.iota(&l.canonical(Real::from_u64(1))?)?);
        right.push(r.canonical(Real::from_u64(1))?);
    }
    let unbounded = l.probes().into_iter().next().expect("unbounded probe").chain;
    left.push(comp.chain_class(unbounded, None)?);
    right.push(r.canonical(Real::Infinity)?);
    for size in [left.len(), right.len()] {
        if size > FRAGMENT_CAP {
            return Err(Error::FragmentTooLarge { size, cap: FRAGMENT_CAP });
        }
    }

    let mut report = Report::new(format!("limit and completion commute for {}", system.name));
    let images: Vec<Element> = left.iter().map(|x| gamma.apply(x)).collect::<Result<_>>()?;
    let ch = comp.handle();
    let rh = r.handle();

    let mut order = (Tri::True, None);
    let mut wb = (Tri::True, None);
    for (i, x) in left.iter().enumerate() {
        for (j, y) in left.iter().enumerate() {
            let mut b = Budget::new(budget);
            let lhs = ch.leq(x, y, &mut b).tri;
            let rhs = rh.leq(&images[i], &images[j], &mut b).tri;
            record(&mut order, agree(lhs, rhs), || Witness::Pair(x.clone(), y.clone()));
            let lhs = way_below_in(ch.as_ref(), x, y, &mut b)?.tri;
            let rhs = way_below_in(rh.as_ref(), &images[i], &images[j], &mut b)?.tri;
            record(&mut wb, agree(lhs, rhs), || Witness::Pair(x.clone(), y.clone()));
        }
    }
    report.push(
        Entry::new("γ is an order-embedding", "commute.order-embedding", Status::from_tri(order.0))
            .detail(format!("{} pairs of the completion fragment", left.len() * left.len()))
            .witness(order.1),
    );
    report.push(
        Entry::new("γ preserves and reflects ≪", "commute.way-below", Status::from_tri(wb.0)).witness(wb.1),
    );

    // every fragment element is the supremum of images of compact classes
    let mut dense = (Tri::True, None);
    for y in &right {
        let mut b = Budget::new(budget);
        let t = dense_at(&l, &comp, &gamma, &r, y, &mut b)?;
        record(&mut dense, t, || Witness::Element(y.clone()));
    }
    report.push(
        Entry::new("image of γ is sup-dense", "commute.sup-dense", Status::from_tri(dense.0))
            .detail(format!("{} elements of the limit fragment", right.len()))
            .witness(dense.1),
    );

    let mut covered = (Tri::True, None);
    for y in &right {
        let mut b = Budget::new(budget);
        let hit = images.iter().map(|g| equal_in(rh.as_ref(), g, y, &mut b)).fold(Tri::False, or);
        record(&mut covered, hit, || Witness::Element(y.clone()));
    }
    for g in &images {
        let mut b = Budget::new(budget);
        let hit = right.iter().map(|y| equal_in(rh.as_ref(), g, y, &mut b)).fold(Tri::False, or);
        record(&mut covered, hit, || Witness::Element(g.clone()));
    }
    report.push(
        Entry::new("fragments coincide under γ", "commute.fragment-equality", Status::from_tri(covered.0))
            .detail(format!("completion fragment {}, limit fragment {}", left.len(), right.len()))
            .witness(covered.1),
    );
    Ok(report)
}

fn or(a: Tri, b: Tri) -> Tri {
    match (a, b) {
        (Tri::True, _) | (_, Tri::True) => Tri::True,
        (Tri::False, Tri::False) => Tri::False,
        _ => Tri::Unknown,
    }
}

fn agree(a: Tri, b: Tri) -> Tri {
    match (a.definite(), b.definite()) {
        (Some(x), Some(y)) => Tri::from_bool(x == y),
        _ => Tri::Unknown,
    }
}

fn record(acc: &mut (Tri, Option<Witness>), t: Tri, w: impl FnOnce() -> Witness) {
    if acc.0 != Tri::False && t != Tri::True {
        if acc.1.is_none() || t == Tri::False {
            acc.1 = Some(w());
        }
        acc.0 = acc.0.and(t);
    }
}

/// `y` is the supremum of its approximants, and each approximant is
/// `γ(ι(φₖ(x)))` for a stage element `x`.
fn dense_at(
    l: &Arc<Limit>,
    comp: &Arc<Completion>,
    gamma: &MonoidMap,
    r: &Arc<Limit>,
    y: &Element,
    b: &mut Budget,
) -> Result<Tri> {
    let rh = r.handle();
    let c = rh.approximants(y).ok_or_else(|| Error::NoApproximant(r.id.to_string()))?;
    let mut t = Tri::True;
    for k in 0..c.span(8) {
        let a = c.term(k);
        let s = seq_of(&a)?;
        let SeqShape::Embedded { stage, value } = &s.shape else {
            return Ok(Tri::False);
        };
        let Some(top) = interval_of(value)?.top() else {
            return Ok(Tri::False);
        };
        let pre = comp.iota(&l.phi(*stage, top)?)?;
        t = t.and(equal_in(rh.as_ref(), &gamma.apply(&pre)?, &a, b));
    }
    let sup = match sup_chain_in(rh.as_ref(), &c, b)? {
        SupVerdict::Sup { value, .. } => equal_in(rh.as_ref(), &value, y, b),
        SupVerdict::NoSup { .. } => Tri::False,
        SupVerdict::Unknown(_) => Tri::Unknown,
    };
    Ok(t.and(sup))
}

/// Behavior of the unbounded family `aₖ = φₖ(below(∞, k))` in both limits,
/// on classes explored up to stage `n`.
pub fn limit_fixtures(system: &Arc<InductiveSystem>, n: usize) -> Result<Report> {
    let c = limit_in_c(system);
    let cu = limit_in_cu(system);
    let ch = c.handle();
    let cuh = cu.handle();
    let mut report = Report::new(format!("unbounded family in the limits of {}", system.name));
    let family = ch.probes().into_iter().next().expect("unbounded probe").chain;
    let mut b = Budget::new(1 << 16);

    let verdict = sup_chain_in(ch.as_ref(), &family, &mut b)?;
    report.push(
        Entry::new("lim_𝒞: the unbounded family has no supremum", "limit.c-no-sup", Status::from_tri(Tri::from_bool(verdict.is_no_sup())))
            .witness(verdict.witness().cloned()),
    );

    let explored: Vec<Element> = (0..=n)
        .flat_map(|i| {
            let pts: Vec<Element> = match system.kind {
                SystemKind::Chain => (0..=i).map(|k| system.point(i, Value::Index(k))).collect::<Result<_>>().unwrap_or_default(),
                SystemKind::NatId => vec![system.point(i, Value::Nat(i as u64)).expect("ℕ point")],
                SystemKind::Dyadic => vec![system.below(&Real::Infinity, i)],
            };
            pts.into_iter().map(move |x| (i, x))
        })
        .map(|(i, x)| c.phi(i, &x))
        .collect::<Result<_>>()?;
    let undominated = explored.iter().all(|e| {
        (0..=n + 1).any(|k| ch.leq(&family.term(k), e, &mut Budget::new(64)).is_false())
    });
    report.push(
        Entry::new("lim_𝒞: no explored class dominates the family", "limit.c-no-top", Status::from_tri(Tri::from_bool(undominated)))
            .detail(format!("{} classes up to stage {n}", explored.len())),
    );

    let fam_cu = cuh.probes().into_iter().next().expect("unbounded probe").chain;
    let top = match sup_chain_in(cuh.as_ref(), &fam_cu, &mut b)? {
        SupVerdict::Sup { value, .. } => Some(value),
        _ => None,
    };
    let dominates = top.as_ref().is_some_and(|t| {
        (0..=n).all(|k| cuh.leq(&fam_cu.term(k), t, &mut Budget::new(64)).is_true())
            && !cu.cut_of(t).compact()
    });
    report.push(
        Entry::new("lim_Cu: a_∞ is the supremum of the family", "limit.cu-top", Status::from_tri(Tri::from_bool(dominates)))
            .detail(top.as_ref().map(|t| t.to_string()).unwrap_or_else(|| "no supremum".into())),
    );

    if system.kind != SystemKind::Dyadic {
        report.push(iso_entry("lim_𝒞 fragment ≅ ℕ", "limit.c-iso", ch.as_ref(), &explored));
        let mut with_top = explored.iter().map(|e| retag_class(&cu, e)).collect::<Vec<_>>();
        with_top.extend(top);
        report.push(iso_entry("lim_Cu fragment ≅ ℕ∪{∞}", "limit.cu-iso", cuh.as_ref(), &with_top));
    }
    Ok(report)
}

fn retag_class(target: &Limit, e: &Element) -> Element {
    target.elem(e.value.clone())
}

/// The level map into ℕ∪{∞} reflects and preserves order on the fragment
/// and identifies exactly the equal classes.
fn iso_entry(check: &str, property: &str, m: &dyn Monoid, fragment: &[Element]) -> Entry {
    let level = |x: &Element| m.cut(x).map(|c| c.level);
    let mut ok = true;
    let mut witness = None;
    for x in fragment {
        for y in fragment {
            let mut b = Budget::new(64);
            let (lx, ly) = (level(x), level(y));
            let by_level = match (&lx, &ly) {
                (Some(a), Some(c)) => a.partial_cmp(c).map(|o| o != Ordering::Greater),
                _ => None,
            };
            let in_m = m.leq(x, y, &mut b).tri.definite();
            if by_level.is_none() || by_level != in_m {
                ok = false;
                witness.get_or_insert_with(|| Witness::Pair(x.clone(), y.clone()));
            }
        }
    }
    Entry::new(check, property, Status::from_tri(Tri::from_bool(ok)))
        .detail(format!("{} classes compared by level", fragment.len()))
        .witness(witness)
}

/// The PreCu limit counterexample: chain suprema in T₁ and T₂, the map
/// `T₂ → lim_𝒞(S)` and the class `t′` it misses, checked to depth `n`.
pub fn counterexample_suite(n: usize) -> Result<Report> {
    let mut report = Report::new(format!("doubled dyadics against the dyadic limit, depth {n}"));
    let (t1, t2) = (Doubled::handle(Variant::T1), Doubled::handle(Variant::T2));
    let doubled = |h: &MonoidHandle, base: Dyadic, primed: bool| h.elem(Value::Doubled { base, primed });

    // (a) chains approaching dyadic targets
    let targets: Vec<Dyadic> = (1..).map(dyadic_enum).filter(|d| !d.is_zero()).take(32).collect();
    let mut t1_ok = (Tri::True, None);
    let mut t2_ok = (Tri::True, None);
    let mut chains = 0usize;
    for r in &targets {
        for offset in [1usize, 3] {
            chains += 1;
            let mk = |h: &MonoidHandle| {
                let (id, r2) = (h.family().clone(), r.clone());
                Chain::lazy(
                    format!("{r}·(1-2^-(n+{offset}))"),
                    move |k| Element::new(&id, Value::Doubled { base: scaled_below(&r2, k + offset), primed: false }),
                    Some(vec![Real::rational(r.to_rational())]),
                )
            };
            let (c1, c2) = (mk(&t1), mk(&t2));
            let mut b = Budget::new(1 << 16);
            let rp = doubled(&t1, r.clone(), true);
            let sup1 = sup_chain_in(t1.as_ref(), &c1, &mut b)?;
            let is_rp = sup1.value().is_some_and(|v| equal_in(t1.as_ref(), v, &rp, &mut b).is_true());
            let below = (0..n).all(|k| t1.leq(&c1.term(k), &rp, &mut b).is_true());
            // least among the natural candidate upper bounds
            let candidates = [
                doubled(&t1, r.clone(), false),
                doubled(&t1, r.add(&Dyadic::new(1u32, 6)), true),
                doubled(&t1, r.add(&Dyadic::new(1u32, 6)), false),
            ];
            let least = candidates.iter().all(|u| t1.leq(&rp, u, &mut b).is_true());
            let unreached = !(0..n).any(|k| t1.leq(&rp, &c1.term(k), &mut b).is_true());
            record(&mut t1_ok, Tri::from_bool(is_rp && below && least && unreached), || Witness::Chain {
                label: c1.label.clone(),
                prefix: c1.prefix(4),
            });

            let (r2, rp2) = (doubled(&t2, r.clone(), false), doubled(&t2, r.clone(), true));
            let sup2 = sup_chain_in(t2.as_ref(), &c2, &mut b)?;
            let bounds = (0..n).all(|k| {
                t2.leq(&c2.term(k), &r2, &mut b).is_true() && t2.leq(&c2.term(k), &rp2, &mut b).is_true()
            });
            let incomparable = t2.leq(&r2, &rp2, &mut b).is_false() && t2.leq(&rp2, &r2, &mut b).is_false();
            record(&mut t2_ok, Tri::from_bool(sup2.is_no_sup() && bounds && incomparable), || Witness::Chain {
                label: c2.label.clone(),
                prefix: c2.prefix(4),
            });
        }
    }
    report.push(
        Entry::new("T₁: sup of a chain approaching r is r′", "counterexample.t1-sup", Status::from_tri(t1_ok.0))
            .detail(format!("{chains} chains, {n} terms each"))
            .witness(t1_ok.1),
    );
    report.push(
        Entry::new("T₂: chains approaching r have no supremum", "counterexample.t2-no-sup", Status::from_tri(t2_ok.0))
            .detail(format!("{chains} chains; r and r′ are incomparable minimal upper bounds"))
            .witness(t2_ok.1),
    );

    // (b) γ: T₂ → lim_𝒞(S), a, a′ ↦ φ(a)
    let system = InductiveSystem::new("S", SystemKind::Dyadic, 3)?;
    let l = limit_in_c(&system);
    let lh = l.handle();
    let lc = l.clone();
    let sys = system.clone();
    let gamma = MonoidMap::new("γ", t2.clone(), lh.clone(), move |x| match &x.value {
        Value::Doubled { base, .. } => {
            let i = base.level() as usize;
            lc.phi(i, &sys.point(i, Value::Dyadic(base.clone()))?)
        }
        v => Err(Error::invalid("T2", format!("{v} is not a doubled dyadic"))),
    })
    .with_ambient(|a| Some(a.to_vec()));
    let chains: Vec<Chain> = t2.probes().into_iter().map(|p| p.chain).collect();
    let morphism = is_precu_morphism(&gamma, &t2.samples(), &chains, 256)?;
    report.push(
        Entry::new("γ: T₂ → lim_𝒞 is a PreCu morphism", "counterexample.gamma-morphism", morphism.status())
            .detail(format!("{} sampled elements", t2.samples().len())),
    );
    let t_prime = t_prime(&l, &system)?;
    let images_compact = t2
        .samples()
        .iter()
        .map(|x| gamma.apply(x))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|y| l.cut_of(y).compact());
    let t_open = !l.cut_of(&t_prime).compact();
    report.push(
        Entry::new("t′ is not in the image of γ", "counterexample.t-prime-missed", Status::from_tri(Tri::from_bool(images_compact && t_open)))
            .detail("every image φ_i(a) is a closed class; t′ is open at 1"),
    );

    // (c) t′ lies strictly between the φ(1 - 2⁻ᵏ) and φ(1)
    let mut b = Budget::new(1 << 20);
    let approach = (0..=n).all(|k| {
        let x = system.point(k, Value::Dyadic(Dyadic::from_rational(&(num_rational::BigRational::one() - pow2_inv(k))).expect("dyadic"))).expect("stage point");
        lh.leq(&l.phi(k, &x).expect("φ"), &t_prime, &mut b).is_true()
    });
    let one = l.phi(0, &system.point(0, Value::Dyadic(Dyadic::integer(1)))?)?;
    report.push(
        Entry::new("φ(1-2⁻ᵏ) ≤ t′ for every k", "counterexample.t-prime-above", Status::from_tri(Tri::from_bool(approach)))
            .detail(format!("k ≤ {n}")),
    );
    let not_above = lh.leq(&one, &t_prime, &mut b).is_false();
    let below = lh.leq(&t_prime, &one, &mut b).is_true();
    let termwise = seq_precsim(seq_of(&t_prime)?, seq_of(&one)?, 256)?.is_true()
        && seq_precsim(seq_of(&one)?, seq_of(&t_prime)?, 256)?.is_false();
    report.push(
        Entry::new("t′ < φ(1) strictly", "counterexample.t-prime-strict", Status::from_tri(Tri::from_bool(not_above && below && termwise)))
            .detail("φ(1) ≰ t′ and t′ ≤ φ(1)"),
    );

    // (d) compactness
    let one_compact = way_below_in(lh.as_ref(), &one, &one, &mut b)?.is_true();
    let phis: Vec<Element> = lh.samples().into_iter().filter(|x| !matches!(seq_of(x).map(|s| &s.shape), Ok(SeqShape::Lazy { .. }))).collect();
    let mut all = true;
    for x in &phis {
        all &= way_below_in(lh.as_ref(), x, x, &mut b)?.is_true();
    }
    report.push(
        Entry::new("φ(1) ≪ φ(1) and every φ_i(x) is compact", "counterexample.compact", Status::from_tri(Tri::from_bool(one_compact && all)))
            .detail(format!("{} sampled classes", phis.len())),
    );
    Ok(report)
}

/// `t′ = [(1 - 2⁻ⁿ)ₙ]`, bounded by `φ₀(1)`.
pub fn t_prime(l: &Arc<Limit>, system: &Arc<InductiveSystem>) -> Result<Element> {
    let sys = system.clone();
    let seq = AscSeq::lazy(
        system,
        "t′",
        move |n| {
            let d = Dyadic::from_rational(&(num_rational::BigRational::one() - pow2_inv(n))).expect("dyadic");
            sys.point(n, Value::Dyadic(d)).expect("stage point")
        },
        Real::from_u64(1),
        Some(AlgColimitElement {
            stage: 0,
            value: system.point(0, Value::Dyadic(Dyadic::integer(1)))?,
        }),
    )?;
    l.class(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dyadic() -> Arc<InductiveSystem> {
        InductiveSystem::new("S", SystemKind::Dyadic, 3).unwrap()
    }

    #[test]
    fn embedded_terms_transport() {
        let s = dyadic();
        let x = s.point(1, Value::Dyadic(Dyadic::new(1u32, 1))).unwrap();
        let seq = AscSeq::embedded(&s, 1, x).unwrap();
        assert_eq!(seq.term(0), s.stage(0).zero());
        assert_eq!(seq.term(4).family.as_ref(), "dyadic(4)");
        assert_eq!(seq.cut().unwrap(), Cut::closed(Real::rational(crate::number::rat(1, 2))));
    }

    #[test]
    fn t_prime_sits_below_one() {
        let s = dyadic();
        let l = limit_in_c(&s);
        let t = t_prime(&l, &s).unwrap();
        let one = l.parse_element("φ_0(1)").unwrap();
        let mut b = Budget::new(64);
        assert!(l.leq(&t, &one, &mut b).is_true());
        assert!(l.leq(&one, &t, &mut b).is_false());
        assert_eq!(seq_precsim_search(seq_of(&t).unwrap(), seq_of(&one).unwrap(), 64).unwrap(), Tri::Unknown);
        assert_eq!(seq_precsim_search(seq_of(&one).unwrap(), seq_of(&t).unwrap(), 64).unwrap(), Tri::Unknown);
    }

    #[test]
    fn bad_lazy_sequences_are_rejected() {
        let s = dyadic();
        let sys = s.clone();
        let err = AscSeq::lazy(&s, "down", move |n| sys.point(n, Value::Dyadic(Dyadic::integer(8u64.saturating_sub(n as u64)))).unwrap(), Real::Infinity, None);
        assert!(matches!(err, Err(Error::NotMonotone { .. })));
        let c = InductiveSystem::new("T", SystemKind::Chain, 3).unwrap();
        let sys = c.clone();
        let err = AscSeq::lazy(&c, "flat", move |n| sys.point(n, Value::Index(0)).unwrap(), Real::from_u64(1), None);
        assert!(matches!(err, Err(Error::Validation { .. })));
    }

    #[test]
    fn unbounded_family_behaviour() {
        for kind in [SystemKind::Chain, SystemKind::NatId, SystemKind::Dyadic] {
            let s = InductiveSystem::new("X", kind, 3).unwrap();
            let r = limit_fixtures(&s, 6).unwrap();
            assert!(r.passed(), "{kind:?}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn rapid_representative_of_compact_class_is_itself() {
        let s = dyadic();
        let l = limit_in_c(&s);
        let one = l.parse_element("φ_0(1)").unwrap();
        let seq = seq_of(&one).unwrap();
        assert!(Arc::ptr_eq(&rapid_representative(seq, 64).unwrap(), seq));
    }

    #[test]
    fn mismatched_systems_are_refused() {
        let a = dyadic();
        let b = InductiveSystem::new("T", SystemKind::Chain, 2).unwrap();
        let x = AscSeq::embedded(&a, 0, a.stage(0).zero()).unwrap();
        let y = AscSeq::embedded(&b, 0, b.stage(0).zero()).unwrap();
        assert!(matches!(seq_precsim(&x, &y, 8), Err(Error::SystemMismatch(_))));
    }
}
