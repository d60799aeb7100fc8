//! Exhaustive laboratory over finite monoids: ideal enumeration, brute-force
//! Cu verification, the ideal-monoid completion, and a universal-property
//! oracle that enumerates every candidate map.

use std::collections::BTreeSet;

use crate::completion::{extend_universal, interval_add, interval_precsim, Completion, Interval};
use crate::error::{Error, Result};
use crate::finite::FiniteMonoid;
use crate::order::{Entry, Monoid, MonoidHandle, MonoidMap, Report, Status, Witness};

pub const IDEAL_CAP: usize = 12;
pub const MAP_SEARCH_CAP: u128 = 1_000_000;

fn down_closed(m: &FiniteMonoid, set: &[bool]) -> bool {
    let n = m.size();
    (0..n).all(|y| !set[y] || (0..n).all(|x| !m.le(x, y) || set[x]))
}

fn directed(m: &FiniteMonoid, set: &[bool]) -> bool {
    let n = m.size();
    (0..n).all(|a| {
        !set[a] || (0..n).all(|b| !set[b] || (0..n).any(|c| set[c] && m.le(a, c) && m.le(b, c)))
    })
}

/// Every nonempty, order-hereditary, upward directed subset, as sorted
/// index lists in subset-mask order.
pub fn enumerate_ideals(m: &FiniteMonoid) -> Result<Vec<Vec<usize>>> {
    enumerate_ideals_capped(m, IDEAL_CAP)
}

pub fn enumerate_ideals_capped(m: &FiniteMonoid, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = m.size();
    if n > cap {
        return Err(Error::CarrierTooLarge { size: n, cap });
    }
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let set: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        if down_closed(m, &set) && directed(m, &set) {
            out.push((0..n).filter(|&i| set[i]).collect());
        }
    }
    Ok(out)
}

/// Strictly increasing chains of every length, each a list of indices.
pub fn strict_chains(m: &FiniteMonoid) -> Vec<Vec<usize>> {
    fn extend(m: &FiniteMonoid, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(path.clone());
        let last = *path.last().expect("nonempty path");
        for next in 0..m.size() {
            if next != last && m.le(last, next) {
                path.push(next);
                extend(m, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for start in 0..m.size() {
        extend(m, &mut vec![start], &mut out);
    }
    out
}

struct Tally {
    check: &'static str,
    property: &'static str,
    count: usize,
    failure: Option<(String, Option<Witness>)>,
}

impl Tally {
    fn new(check: &'static str, property: &'static str) -> Self {
        Tally {
            check,
            property,
            count: 0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, why: impl FnOnce() -> (String, Option<Witness>)) {
        self.count += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(why());
        }
    }

    fn entry(self) -> Entry {
        match self.failure {
            None => Entry::new(self.check, self.property, Status::Pass).detail(format!("{} instances, exhaustive", self.count)),
            Some((d, w)) => Entry::new(self.check, self.property, Status::Fail).detail(d).witness(w),
        }
    }
}

/// All Cu and PreCu axioms by exhaustion. A strictly increasing chain in an
/// `n`-element poset has at most `n` terms, and every increasing sequence
/// is such a chain continued by its last term, so quantifying over these
/// chains covers all sequences.
pub fn verify_cu_object(m: &FiniteMonoid) -> Report {
    let n = m.size();
    let x = |i: usize| m.at(i);
    let mut report = Report::new(format!("exhaustive Cu check of {}", m.name()));
    report.exhaustive = true;
    let violations = m.axiom_violations();
    report.push(
        Entry::new("ordered monoid axioms", "order.axioms", if violations.is_empty() { Status::Pass } else { Status::Fail })
            .detail(violations.first().cloned().unwrap_or_else(|| "all triples".into())),
    );
    let chains = strict_chains(m);
    let upper = |c: &[usize]| (0..n).filter(|&u| c.iter().all(|&t| m.le(t, u))).collect::<Vec<_>>();

    let mut sups = Tally::new("every increasing sequence has a supremum", "cu.sup");
    for c in &chains {
        let last = *c.last().expect("nonempty");
        let ups = upper(c);
        let least = ups.contains(&last) && ups.iter().all(|&u| m.le(last, u));
        sups.record(least, || (format!("chain {c:?}"), None));
    }

    // x ≪ y by definition: every sequence whose supremum dominates y has a
    // term dominating x.
    let way_below_def = |a: usize, b: usize| {
        chains
            .iter()
            .filter(|c| m.le(b, *c.last().expect("nonempty")))
            .all(|c| c.iter().any(|&t| m.le(a, t)))
    };
    let mut budget = crate::order::Budget::new(u64::MAX);
    let mut wb = Tally::new("≪ from its definition agrees with the family rule", "cu.way-below");
    let mut wb_le = Tally::new("≪ coincides with ≤", "finite.way-below-is-order");
    let mut wb_add = Tally::new("≪ is compatible with addition", "precu.way-below-additive");
    let mut def = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            def[a][b] = way_below_def(a, b);
            let rule = m.way_below_rule(&x(a), &x(b), &mut budget).map(|v| v.is_true());
            wb.record(rule == Some(def[a][b]), || (format!("({}, {})", m.names()[a], m.names()[b]), None));
            wb_le.record(def[a][b] == m.le(a, b), || (format!("({}, {})", m.names()[a], m.names()[b]), None));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !def[a][b] {
                continue;
            }
            for c in 0..n {
                for d in 0..n {
                    if def[c][d] {
                        let ok = def[m.sum(a, c)][m.sum(b, d)];
                        wb_add.record(ok, || (format!("{a}≪{b}, {c}≪{d}"), None));
                    }
                }
            }
        }
    }

    let mut rapid = Tally::new("every element is a sup of a rapidly increasing sequence", "precu.rapid-approximants");
    for a in 0..n {
        rapid.record(def[a][a], || (format!("{} is not compact", m.names()[a]), None));
    }

    let mut sup_add = Tally::new("suprema are compatible with addition", "precu.sup-additive");
    for c in &chains {
        for d in &chains {
            let len = c.len().max(d.len());
            let at = |s: &Vec<usize>, i: usize| s[i.min(s.len() - 1)];
            let summed: Vec<usize> = (0..len).map(|i| m.sum(at(c, i), at(d, i))).collect();
            let sup = *summed.last().expect("nonempty");
            let expected = m.sum(*c.last().expect("nonempty"), *d.last().expect("nonempty"));
            sup_add.record(sup == expected, || (format!("{c:?} + {d:?}"), None));
        }
    }

    let joinless = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| {
            let ups: Vec<usize> = (0..n).filter(|&u| m.le(a, u) && m.le(b, u)).collect();
            !ups.is_empty() && !ups.iter().any(|&u| ups.iter().all(|&v| m.le(u, v)))
        });
    for t in [sups, wb, wb_le, wb_add, rapid, sup_add] {
        report.push(t.entry());
    }
    report.push(
        Entry::new("pairwise joins", "note.sequence-suprema-only", Status::Pass).detail(match joinless {
            Some((a, b)) => format!(
                "{} and {} are bounded without a least upper bound; only suprema of increasing sequences are required",
                m.names()[a],
                m.names()[b]
            ),
            None => "every bounded pair has a join".into(),
        }),
    );
    report
}

/// The ideal monoid of a finite monoid with inclusion order and ideal sum,
/// together with `ι` and a cross-check against the completion module.
#[derive(Clone, Debug)]
pub struct BruteCompletion {
    pub monoid: FiniteMonoid,
    pub ideals: Vec<Vec<usize>>,
    /// Index of `[0, x]` for each element `x`.
    pub iota: Vec<usize>,
    pub cross_check: Report,
}

fn minkowski_closure(m: &FiniteMonoid, a: &[usize], b: &[usize]) -> Vec<usize> {
    let sums: BTreeSet<usize> = a.iter().flat_map(|&x| b.iter().map(move |&y| m.sum(x, y))).collect();
    (0..m.size()).filter(|&z| sums.iter().any(|&s| m.le(z, s))).collect()
}

pub fn build_completion_bruteforce(m: &FiniteMonoid) -> Result<BruteCompletion> {
    let ideals = enumerate_ideals(m)?;
    let k = ideals.len();
    let pos = |set: &Vec<usize>| ideals.iter().position(|i| i == set);
    let mut table = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            let s = minkowski_closure(m, &ideals[i], &ideals[j]);
            table[i][j] = pos(&s).ok_or_else(|| Error::Validation {
                object: m.name().into(),
                reason: format!("ideal sum {s:?} is not an ideal"),
            })?;
        }
    }
    let order: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| ideals[i].iter().all(|x| ideals[j].contains(x))).collect())
        .collect();
    let names: Vec<String> = ideals
        .iter()
        .map(|s| format!("{{{}}}", s.iter().map(|&i| m.names()[i].as_str()).collect::<Vec<_>>().join(",")))
        .collect();
    let iota: Vec<usize> = (0..m.size())
        .map(|x| {
            let down: Vec<usize> = (0..m.size()).filter(|&z| m.le(z, x)).collect();
            pos(&down).expect("principal down-sets are ideals")
        })
        .collect();
    let monoid = FiniteMonoid::new(format!("ideals({})", m.name()), names, table, order)?;
    let cross_check = cross_check_completion(m, &ideals, &monoid)?;
    Ok(BruteCompletion {
        monoid,
        ideals,
        iota,
        cross_check,
    })
}

fn ideal_interval(h: &MonoidHandle, m: &FiniteMonoid, ideal: &[usize]) -> Result<Interval> {
    Interval::finite(h, ideal.iter().map(|&i| m.at(i)).collect())
}

/// Compares the ideal monoid with `M̄` from the completion module on every
/// class: `≼` against inclusion, and interval sums against ideal sums;
/// ideal sums are also checked associative, commutative and monotone.
fn cross_check_completion(m: &FiniteMonoid, ideals: &[Vec<usize>], bc: &FiniteMonoid) -> Result<Report> {
    let h = m.handle();
    let intervals: Vec<Interval> = ideals.iter().map(|s| ideal_interval(&h, m, s)).collect::<Result<_>>()?;
    let k = ideals.len();
    let mut report = Report::new(format!("ideal monoid of {} against the completion module", m.name()));
    report.exhaustive = true;
    let mut order = Tally::new("≼ equals inclusion", "completion.all-compact-inclusion");
    let mut add = Tally::new("interval sum equals ideal sum", "completion.add");
    let mut laws = Tally::new("ideal sum is associative, commutative and monotone", "completion.ideal-arithmetic");
    for i in 0..k {
        for j in 0..k {
            let v = interval_precsim(&intervals[i], &intervals[j], 1 << 16)?;
            order.record(v.tri.definite() == Some(bc.le(i, j)), || {
                (format!("{:?} vs {:?}", ideals[i], ideals[j]), None)
            });
            let s = interval_add(&intervals[i], &intervals[j])?;
            let target = &intervals[bc.sum(i, j)];
            let same = interval_precsim(&s, target, 1 << 16)?.is_true() && interval_precsim(target, &s, 1 << 16)?.is_true();
            add.record(same, || (format!("{:?} + {:?}", ideals[i], ideals[j]), None));
            laws.record(bc.sum(i, j) == bc.sum(j, i), || ("commutativity".into(), None));
            for l in 0..k {
                laws.record(bc.sum(bc.sum(i, j), l) == bc.sum(i, bc.sum(j, l)), || ("associativity".into(), None));
                if bc.le(i, j) {
                    laws.record(bc.le(bc.sum(i, l), bc.sum(j, l)), || ("monotonicity".into(), None));
                }
            }
        }
    }
    for t in [order, add, laws] {
        report.push(t.entry());
    }
    Ok(report)
}

/// The completion clauses for `(ideal monoid, ι)`, exhaustively: the ideal
/// monoid is in Cu, `ι` is an order-embedding preserving `≪` and suprema,
/// and every ideal is a supremum of `ι` of a rapidly increasing sequence.
pub fn verify_completion_def(m: &FiniteMonoid, bc: &BruteCompletion) -> Report {
    let n = m.size();
    let big = &bc.monoid;
    let mut report = Report::new(format!("completion clauses for {}", m.name()));
    report.exhaustive = true;
    let cu = verify_cu_object(big);
    report.push(Entry::new("(i) the ideal monoid is in Cu", "completion.cu", cu.status()));
    let mut emb = Tally::new("(ii) ι is an additive order-embedding", "completion.iota-embedding");
    emb.record(bc.iota[m.zero_index()] == big.zero_index(), || ("ι(0) is not zero".into(), None));
    for a in 0..n {
        for b in 0..n {
            let (ia, ib) = (bc.iota[a], bc.iota[b]);
            emb.record(big.le(ia, ib) == m.le(a, b), || (format!("order at ({a},{b})"), None));
            emb.record(bc.iota[m.sum(a, b)] == big.sum(ia, ib), || (format!("additivity at ({a},{b})"), None));
        }
    }
    let mut pres = Tally::new("(ii) ι preserves ≪ and suprema of increasing sequences", "completion.iota-morphism");
    for a in 0..n {
        for b in 0..n {
            if m.le(a, b) {
                pres.record(big.le(bc.iota[a], bc.iota[b]), || (format!("≪ at ({a},{b})"), None));
            }
        }
    }
    for c in strict_chains(m) {
        let last = *c.last().expect("nonempty");
        let images: Vec<usize> = c.iter().map(|&t| bc.iota[t]).collect();
        let sup = *images.last().expect("nonempty");
        let least = (0..big.size())
            .filter(|&u| images.iter().all(|&t| big.le(t, u)))
            .all(|u| big.le(sup, u));
        pres.record(least && sup == bc.iota[last], || (format!("chain {c:?}"), None));
    }
    let mut dense = Tally::new("(iii) every ideal is a sup of ι of a rapid sequence", "completion.density");
    for (idx, ideal) in bc.ideals.iter().enumerate() {
        let top = ideal.iter().copied().find(|&t| ideal.iter().all(|&z| m.le(z, t)));
        dense.record(top.is_some_and(|t| bc.iota[t] == idx), || (format!("ideal {ideal:?}"), None));
    }
    let mut here = Tally::new("ι has hereditary image", "completion.iota-hereditary");
    for j in 0..big.size() {
        for a in 0..n {
            if big.le(j, bc.iota[a]) {
                here.record(bc.iota.contains(&j), || (format!("ideal {:?}", bc.ideals[j]), None));
            }
        }
    }
    for t in [emb, pres, dense, here] {
        report.push(t.entry());
    }
    report.extend(cu);
    report
}

/// Whether `alpha` (as an index table) is additive, zero-preserving and
/// order-preserving.
pub fn is_finite_morphism(m: &FiniteMonoid, p: &FiniteMonoid, alpha: &[usize]) -> bool {
    let n = m.size();
    alpha.len() == n
        && alpha.iter().all(|&v| v < p.size())
        && alpha[m.zero_index()] == p.zero_index()
        && (0..n).all(|a| {
            (0..n).all(|b| alpha[m.sum(a, b)] == p.sum(alpha[a], alpha[b]) && (!m.le(a, b) || p.le(alpha[a], alpha[b])))
        })
}

pub fn is_finite_embedding(m: &FiniteMonoid, p: &FiniteMonoid, alpha: &[usize]) -> bool {
    (0..m.size()).all(|a| (0..m.size()).all(|b| p.le(alpha[a], alpha[b]) == m.le(a, b)))
}

/// `alpha` as a map descriptor between the two families.
pub fn finite_map(name: &str, m: &FiniteMonoid, p: &FiniteMonoid, alpha: &[usize]) -> MonoidMap {
    let table = alpha.to_vec();
    let cod = p.clone();
    MonoidMap::new(name, m.handle(), p.handle(), move |x| Ok(cod.at(table[crate::finite::index_of(x)])))
}

/// Enumerates every map `M̄ → P`, keeps the Cu morphisms with `β∘ι = α`,
/// and compares the survivors with `extend_universal`.
pub fn brute_force_universal(m: &FiniteMonoid, p: &FiniteMonoid, alpha: &[usize]) -> Result<Report> {
    let name = format!("α: {} → {}", m.name(), p.name());
    if !is_finite_morphism(m, p, alpha) {
        return Err(Error::NotAMap(name));
    }
    let bc = build_completion_bruteforce(m)?;
    let big = &bc.monoid;
    let k = big.size();
    let q = p.size();
    let space = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if space > MAP_SEARCH_CAP {
        return Err(Error::SearchSpaceTooLarge {
            size: space,
            cap: MAP_SEARCH_CAP,
        });
    }
    let mut forced = vec![None; k];
    for (x, &i) in bc.iota.iter().enumerate() {
        forced[i] = Some(alpha[x]);
    }
    let mut survivors = Vec::new();
    let mut beta = vec![0usize; k];
    // Backtracking with pruning on every constraint among assigned indices.
    fn consistent(big: &FiniteMonoid, p: &FiniteMonoid, beta: &[usize], upto: usize) -> bool {
        let j = upto;
        (0..=j).all(|i| {
            let s = big.sum(i, j);
            (s > j || beta[s] == p.sum(beta[i], beta[j]))
                && (!big.le(i, j) || p.le(beta[i], beta[j]))
                && (!big.le(j, i) || p.le(beta[j], beta[i]))
        }) && (0..j).all(|i| {
            let s = big.sum(j, i);
            s > j || beta[s] == p.sum(beta[j], beta[i])
        })
    }
    fn search(
        big: &FiniteMonoid,
        p: &FiniteMonoid,
        forced: &[Option<usize>],
        beta: &mut Vec<usize>,
        at: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if at == beta.len() {
            let full = (0..beta.len()).all(|j| consistent(big, p, beta, j))
                && (0..beta.len()).all(|i| (0..beta.len()).all(|j| beta[big.sum(i, j)] == p.sum(beta[i], beta[j])));
            if full {
                out.push(beta.clone());
            }
            return;
        }
        let choices: Vec<usize> = match forced[at] {
            Some(v) => vec![v],
            None => (0..p.size()).collect(),
        };
        for v in choices {
            beta[at] = v;
            if consistent(big, p, beta, at) {
                search(big, p, forced, beta, at + 1, out);
            }
        }
    }
    search(big, p, &forced, &mut beta, 0, &mut survivors);

    let mut report = Report::new(format!("universal property for {name}"));
    report.exhaustive = true;
    report.push(
        Entry::new(
            "exactly one Cu morphism β with β∘ι = α",
            "universal.unique-extension",
            if survivors.len() == 1 { Status::Pass } else { Status::Fail },
        )
        .detail(format!("{} survivors among {space} maps", survivors.len())),
    );
    let alpha_map = finite_map("α", m, p, alpha);
    let comp = Completion::of(&m.handle());
    let mut agree = Status::from_tri(crate::order::Tri::from_bool(survivors.len() == 1));
    let mut detail = String::from("β equals extend_universal on every class");
    if let Some(beta) = survivors.first() {
        for (idx, ideal) in bc.ideals.iter().enumerate() {
            let class = comp.class(ideal_interval(&m.handle(), m, ideal)?)?;
            let value = extend_universal(&alpha_map, &class, 1 << 12)?;
            if crate::finite::index_of(&value) != beta[idx] {
                agree = Status::Fail;
                detail = format!("differs at {}", big.names()[idx]);
                break;
            }
        }
    }
    report.push(Entry::new("β agrees with extend_universal", "universal.extension-formula", agree).detail(detail));
    let embedding = is_finite_embedding(m, p, alpha);
    let inherited = match (embedding, survivors.first()) {
        (false, _) => Entry::new("β inherits order-embedding", "universal.embedding", Status::Pass)
            .detail("α is not an order-embedding; nothing to inherit"),
        (true, Some(beta)) => {
            let ok = is_finite_embedding(big, p, beta);
            Entry::new(
                "β inherits order-embedding",
                "universal.embedding",
                if ok { Status::Pass } else { Status::Fail },
            )
            .detail("α is an order-embedding")
        }
        (true, None) => Entry::new("β inherits order-embedding", "universal.embedding", Status::Fail)
            .detail("no extension"),
    };
    report.push(inherited);
    Ok(report)
}

/// Chain monoids `T₀…T₅`, saturating truncations of ℕ of sizes 1 to 8,
/// truncated ℕ² grids up to 3×3, and 20 seeded random tables.
pub fn corpus() -> Vec<FiniteMonoid> {
    let mut out: Vec<FiniteMonoid> = (0..=5).map(FiniteMonoid::chain).collect();
    out.extend((0..=7).map(FiniteMonoid::saturating));
    for (a, b) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 3)] {
        out.push(FiniteMonoid::grid(a, b));
    }
    out.push(FiniteMonoid::two_point());
    out.extend((0..20).map(FiniteMonoid::random));
    out
}

/// Every additive, zero- and order-preserving map between small corpus
/// monoids, in a fixed order.
pub fn universal_triples() -> Vec<(FiniteMonoid, FiniteMonoid, Vec<usize>)> {
    let small: Vec<FiniteMonoid> = vec![
        FiniteMonoid::two_point(),
        FiniteMonoid::chain(1),
        FiniteMonoid::chain(2),
        FiniteMonoid::chain(3),
        FiniteMonoid::saturating(2),
        FiniteMonoid::saturating(3),
        FiniteMonoid::grid(2, 2),
    ];
    let mut out = Vec::new();
    for m in &small {
        for p in &small {
            let (n, q) = (m.size(), p.size());
            let total = q.pow(n as u32);
            for code in 0..total {
                let alpha: Vec<usize> = (0..n).map(|i| code / q.pow(i as u32) % q).collect();
                if is_finite_morphism(m, p, &alpha) {
                    out.push((m.clone(), p.clone(), alpha));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_counts() {
        assert_eq!(enumerate_ideals(&FiniteMonoid::chain(2)).unwrap().len(), 3);
        assert_eq!(enumerate_ideals(&FiniteMonoid::two_point()).unwrap().len(), 2);
        assert_eq!(enumerate_ideals(&FiniteMonoid::saturating(3)).unwrap().len(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let m = FiniteMonoid::saturating(12);
        assert!(matches!(enumerate_ideals(&m), Err(Error::CarrierTooLarge { size: 13, cap: 12 })));
    }

    #[test]
    fn chain_completion_is_itself() {
        let m = FiniteMonoid::chain(3);
        let bc = build_completion_bruteforce(&m).unwrap();
        assert_eq!(bc.monoid.size(), 4);
        assert!(bc.cross_check.passed(), "{}", bc.cross_check);
        assert!(verify_completion_def(&m, &bc).passed());
    }

    #[test]
    fn two_point_identity_extends_uniquely() {
        let m = FiniteMonoid::two_point();
        let r = brute_force_universal(&m, &m, &[0, 1]).unwrap();
        assert!(r.passed(), "{r}");
    }
}
