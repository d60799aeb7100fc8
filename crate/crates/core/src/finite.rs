//! Finite positively ordered monoids given by an addition table and an
//! order matrix.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::{Element, FamilyId, Value};
use crate::error::{Error, Result};
use crate::number::Real;
use crate::order::{Budget, Chain, Class, Cut, Monoid, MonoidHandle, Probe, SupVerdict, Verdict};

#[derive(Clone)]
pub struct FiniteMonoid {
    id: FamilyId,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    order: Vec<Vec<bool>>,
    zero: usize,
    ranks: Option<Vec<usize>>,
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteMonoid({}, {:?})", self.id, self.names)
    }
}

impl FiniteMonoid {
    /// Builds and validates every axiom of a positively ordered abelian
    /// monoid; violations name the offending elements.
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        table: Vec<Vec<usize>>,
        order: Vec<Vec<bool>>,
    ) -> Result<Self> {
        let m = Self::unchecked(name, names, table, order)?;
        m.validate_axioms()?;
        Ok(m)
    }

    /// Builds with shape checks only, so a broken table can still be
    /// handed to the axiom checkers.
    pub fn unchecked(
        name: impl Into<String>,
        names: Vec<String>,
        table: Vec<Vec<usize>>,
        order: Vec<Vec<bool>>,
    ) -> Result<Self> {
        let name = name.into();
        let n = names.len();
        let bad = |reason: String| Error::InvalidTable {
            name: name.clone(),
            reason,
        };
        if n == 0 {
            return Err(bad("empty carrier".into()));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(bad("duplicate element names".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(bad(format!("addition table must be {n}×{n}")));
        }
        if let Some(v) = table.iter().flatten().find(|&&v| v >= n) {
            return Err(bad(format!("table entry {v} out of range")));
        }
        if order.len() != n || order.iter().any(|r| r.len() != n) {
            return Err(bad(format!("order matrix must be {n}×{n}")));
        }
        let zero = (0..n)
            .find(|&z| (0..n).all(|a| table[z][a] == a && table[a][z] == a))
            .ok_or_else(|| bad("no neutral element".into()))?;
        let mut m = FiniteMonoid {
            id: name.as_str().into(),
            names,
            table,
            order,
            zero,
            ranks: None,
        };
        m.ranks = m.total_ranks();
        Ok(m)
    }

    /// Order given as generating pairs `a < b`, closed reflexively and
    /// transitively.
    pub fn from_pairs(
        name: impl Into<String>,
        names: Vec<String>,
        table: Vec<Vec<usize>>,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let name = name.into();
        let n = names.len();
        let mut order = vec![vec![false; n]; n];
        for (i, row) in order.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidTable {
                    name,
                    reason: format!("order pair ({a},{b}) out of range"),
                });
            }
            order[a][b] = true;
        }
        transitive_closure(&mut order);
        Self::new(name, names, table, order)
    }

    /// Ordered by the algebraic order `a ≤ b ⟺ ∃c. a + c = b`.
    pub fn algebraic(name: impl Into<String>, names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        let order = (0..n)
            .map(|a| (0..n).map(|b| (0..n).any(|c| table.get(a).and_then(|r| r.get(c)) == Some(&b))).collect())
            .collect();
        Self::new(name, names, table, order)
    }

    /// `Tₙ = {a₀, …, aₙ}` with `aᵢ + aⱼ = a_max(i,j)`.
    pub fn chain(n: usize) -> Self {
        let names = (0..=n).map(|i| format!("a{i}")).collect();
        let table = (0..=n).map(|i| (0..=n).map(|j| i.max(j)).collect()).collect();
        let order = (0..=n).map(|i| (0..=n).map(|j| i <= j).collect()).collect();
        Self::unchecked(format!("chain({n})"), names, table, order).expect("Tₙ is valid")
    }

    /// `{0, …, n}` with `a + b = min(a + b, n)`.
    pub fn saturating(n: usize) -> Self {
        let names = (0..=n).map(|i| i.to_string()).collect();
        let table = (0..=n).map(|i| (0..=n).map(|j| (i + j).min(n)).collect()).collect();
        Self::algebraic(format!("saturating({n})"), names, table).expect("saturating chain is valid")
    }

    /// `{0..a-1} × {0..b-1}` with saturating coordinatewise addition.
    pub fn grid(a: usize, b: usize) -> Self {
        assert!(a >= 1 && b >= 1, "grid sides are positive");
        let idx = |i: usize, j: usize| i * b + j;
        let mut names = Vec::new();
        let mut table = vec![vec![0; a * b]; a * b];
        for i in 0..a {
            for j in 0..b {
                names.push(format!("({i},{j})"));
                for k in 0..a {
                    for l in 0..b {
                        table[idx(i, j)][idx(k, l)] = idx((i + k).min(a - 1), (j + l).min(b - 1));
                    }
                }
            }
        }
        Self::algebraic(format!("grid({a},{b})"), names, table).expect("saturating grid is valid")
    }

    /// `{0, a}` with `a + a = a`.
    pub fn two_point() -> Self {
        Self::algebraic("two-point", vec!["0".into(), "a".into()], vec![vec![0, 1], vec![1, 1]])
            .expect("two-point monoid is valid")
    }

    /// A deterministic pseudo-random finite monoid: a submonoid (at most six
    /// elements) of a product of saturating and max chains, with either the
    /// induced coordinatewise order or the algebraic order.
    pub fn random(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let dims = rng.gen_range(1..=2);
            let kinds: Vec<(bool, u64)> = (0..dims).map(|_| (rng.gen_bool(0.5), rng.gen_range(1..=3))).collect();
            let add = |x: &[u64], y: &[u64]| -> Vec<u64> {
                kinds
                    .iter()
                    .enumerate()
                    .map(|(i, &(sat, cap))| if sat { (x[i] + y[i]).min(cap) } else { x[i].max(y[i]) })
                    .collect()
            };
            let gens: Vec<Vec<u64>> = (0..rng.gen_range(1..=2))
                .map(|_| kinds.iter().map(|&(_, cap)| rng.gen_range(0..=cap)).collect())
                .collect();
            let mut elems: Vec<Vec<u64>> = vec![vec![0; dims]];
            let mut frontier = elems.clone();
            while let Some(x) = frontier.pop() {
                for g in &gens {
                    let s = add(&x, g);
                    if !elems.contains(&s) {
                        elems.push(s.clone());
                        frontier.push(s);
                    }
                }
            }
            if elems.len() > 6 {
                continue;
            }
            elems.sort();
            let n = elems.len();
            let pos = |v: &Vec<u64>| elems.iter().position(|e| e == v).expect("closed under addition");
            let table: Vec<Vec<usize>> =
                (0..n).map(|i| (0..n).map(|j| pos(&add(&elems[i], &elems[j]))).collect()).collect();
            let names: Vec<String> = elems
                .iter()
                .map(|e| format!("({})", e.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            let name = format!("random({seed})");
            let built = if rng.gen_bool(0.5) {
                let order = (0..n)
                    .map(|i| (0..n).map(|j| elems[i].iter().zip(&elems[j]).all(|(a, b)| a <= b)).collect())
                    .collect();
                Self::new(name, names, table, order)
            } else {
                Self::algebraic(name, names, table)
            };
            if let Ok(m) = built {
                return m;
            }
        }
    }

    fn total_ranks(&self) -> Option<Vec<usize>> {
        let n = self.size();
        let total = (0..n).all(|a| (0..n).all(|b| self.order[a][b] || self.order[b][a]));
        if !total {
            return None;
        }
        Some((0..n).map(|a| (0..n).filter(|&b| b != a && self.order[b][a]).count()).collect())
    }

    /// Axiom violations, each naming the offending elements.
    pub fn axiom_violations(&self) -> Vec<String> {
        let n = self.size();
        let nm = |i: usize| self.names[i].as_str();
        let (t, o) = (&self.table, &self.order);
        let mut out = Vec::new();
        for a in 0..n {
            if !o[a][a] {
                out.push(format!("order not reflexive at {}", nm(a)));
            }
            if !o[self.zero][a] {
                out.push(format!("zero is not below {}", nm(a)));
            }
            for b in 0..n {
                if t[a][b] != t[b][a] {
                    out.push(format!("addition not commutative at ({}, {})", nm(a), nm(b)));
                }
                if a != b && o[a][b] && o[b][a] {
                    out.push(format!("order not antisymmetric at ({}, {})", nm(a), nm(b)));
                }
                if !o[a][t[a][b]] {
                    out.push(format!("algebraic order not contained: {} ≰ {} + {}", nm(a), nm(a), nm(b)));
                }
                for c in 0..n {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        out.push(format!("addition not associative at ({}, {}, {})", nm(a), nm(b), nm(c)));
                    }
                    if o[a][b] && o[b][c] && !o[a][c] {
                        out.push(format!("order not transitive at ({}, {}, {})", nm(a), nm(b), nm(c)));
                    }
                    if o[a][b] && !o[t[a][c]][t[b][c]] {
                        out.push(format!(
                            "order not compatible with addition at ({}, {}, {}): {} ≤ {} but {}+{} ≰ {}+{}",
                            nm(a),
                            nm(b),
                            nm(c),
                            nm(a),
                            nm(b),
                            nm(a),
                            nm(c),
                            nm(b),
                            nm(c)
                        ));
                    }
                }
            }
        }
        out
    }

    fn validate_axioms(&self) -> Result<()> {
        // algebraic laws are reported before order laws
        let violations = self.axiom_violations();
        let first = violations
            .iter()
            .find(|v| v.starts_with("addition"))
            .or(violations.first())
            .cloned();
        match first {
            None => Ok(()),
            Some(reason) => Err(Error::Validation {
                object: self.id.to_string(),
                reason,
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.id
    }
    pub fn size(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn zero_index(&self) -> usize {
        self.zero
    }
    pub fn sum(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.order[a][b]
    }
    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
    pub fn order(&self) -> &[Vec<bool>] {
        &self.order
    }
    pub fn at(&self, i: usize) -> Element {
        self.elem(Value::Index(i))
    }
    pub fn handle(&self) -> MonoidHandle {
        Arc::new(self.clone())
    }
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.id = name.into().as_str().into();
        self
    }
}

pub fn transitive_closure(order: &mut [Vec<bool>]) {
    let n = order.len();
    for k in 0..n {
        for i in 0..n {
            if order[i][k] {
                for j in 0..n {
                    if order[k][j] {
                        order[i][j] = true;
                    }
                }
            }
        }
    }
}

/// Index payload of an element of a finite family.
pub fn index_of(x: &Element) -> usize {
    match x.value {
        Value::Index(i) => i,
        _ => unreachable!("validated finite payload"),
    }
}

impl Monoid for FiniteMonoid {
    fn family(&self) -> &FamilyId {
        &self.id
    }
    fn claimed_class(&self) -> Class {
        Class::Cu
    }
    fn validate(&self, value: &Value) -> Result<()> {
        match value {
            Value::Index(i) if *i < self.size() => Ok(()),
            v => Err(Error::invalid(self.id.to_string(), format!("{v} is not an element index below {}", self.size()))),
        }
    }
    fn zero(&self) -> Element {
        self.at(self.zero)
    }
    fn add(&self, x: &Element, y: &Element) -> Element {
        self.at(self.sum(index_of(x), index_of(y)))
    }
    fn leq(&self, x: &Element, y: &Element, budget: &mut Budget) -> Verdict {
        budget.spend(1);
        let (a, b) = (index_of(x), index_of(y));
        Verdict::rule(self.order[a][b], format!("order table entry ({}, {})", self.names[a], self.names[b]))
    }
    fn way_below_rule(&self, x: &Element, y: &Element, budget: &mut Budget) -> Option<Verdict> {
        let v = self.leq(x, y, budget);
        Some(Verdict::rule(v.is_true(), "finite carrier: every increasing chain is stationary, so ≪ is ≤"))
    }
    fn sup_rule(&self, c: &Chain, _: &mut Budget) -> SupVerdict {
        SupVerdict::Unknown(format!(
            "chain {} is declared non-stationary over a finite carrier",
            c.label
        ))
    }
    fn approximants(&self, x: &Element) -> Option<Chain> {
        Some(Chain::constant(format!("const {x}"), x.clone()).rapid(true))
    }
    fn enumerate(&self, n: usize) -> Option<Element> {
        (n < self.size()).then(|| self.at(n))
    }
    fn carrier(&self) -> Option<Vec<Element>> {
        Some((0..self.size()).map(|i| self.at(i)).collect())
    }
    fn cut(&self, x: &Element) -> Option<Cut> {
        let r = self.ranks.as_ref()?;
        Some(Cut::closed(Real::from_u64(r[index_of(x)] as u64)))
    }
    fn shadow(&self, x: &Element) -> Option<Vec<Real>> {
        let r = self.ranks.as_ref()?;
        Some(vec![Real::from_u64(r[index_of(x)] as u64)])
    }
    fn all_compact(&self) -> bool {
        true
    }
    fn discrete_shadow(&self) -> bool {
        self.ranks.is_some()
    }
    fn antisymmetry(&self) -> &'static str {
        "order matrix validated antisymmetric on the whole carrier"
    }
    fn probes(&self) -> Vec<Probe> {
        // A maximal chain from zero, climbing to the first strict upper bound.
        let n = self.size();
        let mut path = vec![self.zero];
        loop {
            let cur = *path.last().expect("nonempty");
            let next = (0..n)
                .filter(|&b| b != cur && self.order[cur][b])
                .find(|&b| (0..n).all(|c| c == cur || c == b || !(self.order[cur][c] && self.order[c][b])));
            match next {
                Some(b) => path.push(b),
                None => break,
            }
        }
        let top = *path.last().expect("nonempty");
        vec![Probe {
            chain: Chain::finite("maximal chain", path.into_iter().map(|i| self.at(i)).collect()),
            bound: Some(self.at(top)),
        }]
    }
    fn parse_element(&self, text: &str) -> Result<Element> {
        let t = text.trim();
        if let Some(i) = self.names.iter().position(|n| n == t) {
            return Ok(self.at(i));
        }
        if let Some(i) = t.strip_prefix('#').and_then(|s| s.parse::<usize>().ok()) {
            if i < self.size() {
                return Ok(self.at(i));
            }
        }
        Err(Error::invalid(self.id.to_string(), format!("no element named `{t}`")))
    }
    fn describe(&self) -> String {
        let elems: Vec<String> =
            self.names.iter().enumerate().map(|(i, n)| format!("#{i}={n}")).collect();
        format!("{} [{}]", self.id, elems.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_tables_are_valid() {
        for m in [FiniteMonoid::chain(3), FiniteMonoid::saturating(3), FiniteMonoid::grid(2, 3), FiniteMonoid::two_point()] {
            assert!(m.axiom_violations().is_empty(), "{}", m.name());
        }
        assert_eq!(FiniteMonoid::chain(2).size(), 3);
        assert!(FiniteMonoid::chain(2).le(1, 2));
    }

    #[test]
    fn random_tables_are_valid_and_deterministic() {
        for seed in 0..20 {
            let m = FiniteMonoid::random(seed);
            assert!(m.size() <= 6);
            assert_eq!(m.table(), FiniteMonoid::random(seed).table());
        }
    }

    #[test]
    fn incompatible_order_names_the_triple() {
        // 0 < a < b with a + a = b and b + a = a: a ≤ b but a + a ≰ b + a.
        let names = vec!["0".into(), "a".into(), "b".into()];
        let table = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 2]];
        let err = FiniteMonoid::from_pairs("bad", names, table, &[(0, 1), (1, 2)]).unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
    }
}
