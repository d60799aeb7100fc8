//! Exhaustive laboratory over finite monoids, checked against a bitmask
//! ideal oracle.

use precu_core::completion::{iota_map, Completion};
use precu_core::finite::FiniteMonoid;
use precu_core::lab::{
    brute_force_universal, build_completion_bruteforce, corpus, enumerate_ideals, universal_triples,
    verify_completion_def, verify_cu_object,
};
use precu_core::order::{is_hereditary, leq, way_below, Status};
use precu_core::Error;
use proptest::prelude::*;

/// Nonempty, downward closed, upward directed subsets, as sorted index lists.
fn ideals_oracle(m: &FiniteMonoid) -> Vec<Vec<usize>> {
    let n = m.size();
    let mut out: Vec<Vec<usize>> = (1u32..1 << n)
        .filter(|&s| {
            let has = |z: usize| s >> z & 1 == 1;
            let down = (0..n).all(|x| !has(x) || (0..n).all(|z| !m.le(z, x) || has(z)));
            let directed = (0..n).all(|x| {
                (0..n).all(|y| !(has(x) && has(y)) || (0..n).any(|w| has(w) && m.le(x, w) && m.le(y, w)))
            });
            down && directed
        })
        .map(|s| (0..n).filter(|&z| s >> z & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

fn sorted(mut v: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    v.sort();
    v
}

#[test]
fn ideal_counts() {
    let t2 = FiniteMonoid::chain(2);
    assert_eq!(sorted(enumerate_ideals(&t2).unwrap()), vec![vec![0], vec![0, 1], vec![0, 1, 2]]);
    assert_eq!(enumerate_ideals(&FiniteMonoid::two_point()).unwrap().len(), 2);
    assert_eq!(enumerate_ideals(&FiniteMonoid::saturating(3)).unwrap().len(), 4);
    for (a, b) in [(2, 2), (2, 3), (3, 3)] {
        let g = FiniteMonoid::grid(a, b);
        let oracle = ideals_oracle(&g);
        assert_eq!(sorted(enumerate_ideals(&g).unwrap()), oracle, "grid {a}×{b}");
        // a finite directed down-set has a greatest element, so the count is the carrier size
        assert_eq!(oracle.len(), a * b);
    }
}

#[test]
fn carrier_cap_is_enforced() {
    let big = FiniteMonoid::saturating(12);
    assert!(matches!(enumerate_ideals(&big), Err(Error::CarrierTooLarge { .. })));
    assert!(build_completion_bruteforce(&big).is_err());
}

#[test]
fn cu_objects() {
    for m in [FiniteMonoid::chain(3), FiniteMonoid::saturating(3), FiniteMonoid::grid(2, 3)] {
        let r = verify_cu_object(&m);
        assert!(r.passed() && r.exhaustive, "{r}");
    }
}

#[test]
fn brute_force_completions() {
    let two = FiniteMonoid::two_point();
    let bc = build_completion_bruteforce(&two).unwrap();
    assert_eq!(bc.monoid.size(), 2);
    for n in 0..=5 {
        let t = FiniteMonoid::chain(n);
        let bc = build_completion_bruteforce(&t).unwrap();
        assert_eq!(bc.monoid.size(), t.size());
        // ι is an order isomorphism onto the ideal monoid
        for x in 0..t.size() {
            for y in 0..t.size() {
                assert_eq!(t.le(x, y), bc.monoid.le(bc.iota[x], bc.iota[y]));
                assert_eq!(bc.iota[t.sum(x, y)], bc.monoid.sum(bc.iota[x], bc.iota[y]));
            }
        }
        assert!(bc.cross_check.passed(), "{}", bc.cross_check);
    }
    let g = FiniteMonoid::grid(3, 3);
    let bc = build_completion_bruteforce(&g).unwrap();
    assert_eq!(bc.ideals.len(), ideals_oracle(&g).len());
}

#[test]
fn universal_examples() {
    let two = FiniteMonoid::two_point();
    let r = brute_force_universal(&two, &two, &[0, 1]).unwrap();
    assert!(r.passed(), "{r}");

    let (t2, t3) = (FiniteMonoid::chain(2), FiniteMonoid::chain(3));
    let r = brute_force_universal(&t2, &t3, &[0, 1, 2]).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.entry("β inherits order-embedding").unwrap().detail, "α is an order-embedding");

    let g = FiniteMonoid::grid(3, 3);
    let id: Vec<usize> = (0..9).collect();
    assert!(matches!(brute_force_universal(&g, &g, &id), Err(Error::SearchSpaceTooLarge { .. })));
}

#[test]
fn universal_property_holds_for_every_small_morphism() {
    let triples = universal_triples();
    assert!(!triples.is_empty());
    for (m, p, alpha) in triples {
        let r = brute_force_universal(&m, &p, &alpha).unwrap();
        assert!(r.passed(), "{} → {} by {alpha:?}: {r}", m.name(), p.name());
    }
}

fn lab_invariants(m: &FiniteMonoid) -> Result<(), TestCaseError> {
    let h = m.handle();
    let carrier = h.carrier().unwrap();
    for x in &carrier {
        prop_assert!(way_below(h.as_ref(), x, x, 8).unwrap().is_true());
        for y in &carrier {
            prop_assert_eq!(
                way_below(h.as_ref(), x, y, 8).unwrap().tri,
                leq(h.as_ref(), x, y, 8).unwrap().tri
            );
        }
    }
    let bc = build_completion_bruteforce(m).unwrap();
    prop_assert_eq!(sorted(bc.ideals.clone()), ideals_oracle(m));
    prop_assert!(verify_cu_object(&bc.monoid).passed());
    prop_assert!(bc.cross_check.passed(), "{}", bc.cross_check);
    prop_assert!(verify_completion_def(m, &bc).passed());
    let comp = Completion::of(&h);
    let r = is_hereditary(&iota_map(&comp), &carrier, &comp.handle().carrier().unwrap(), 64).unwrap();
    prop_assert_eq!(r.status(), Status::Pass);
    prop_assert!(r.exhaustive);
    Ok(())
}

#[test]
fn corpus_invariants() {
    for m in corpus() {
        lab_invariants(&m).unwrap_or_else(|e| panic!("{}: {e}", m.name()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_monoid_invariants(seed in any::<u64>()) {
        lab_invariants(&FiniteMonoid::random(seed))?;
    }
}
