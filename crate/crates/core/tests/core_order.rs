//! Order, way-below and supremum decisions on the catalog families, and
//! the generic membership and morphism checks.

use precu_core::catalog::rational::{one_minus_pow2, sqrt2_truncations};
use precu_core::catalog::{self, forget_prime};
use precu_core::finite::FiniteMonoid;
use precu_core::lab::corpus;
use precu_core::number::Real;
use precu_core::order::{
    check_c_membership, check_order_axioms, check_precu_membership, is_compact, is_order_embedding,
    is_precu_morphism, leq, sup_chain, way_below, Chain, MonoidHandle, MonoidMap, Probe, Status,
    SupVerdict, Tri, Witness,
};
use precu_core::{Element, Value};
use proptest::prelude::*;

fn el(h: &MonoidHandle, text: &str) -> Element {
    h.parse_element(text).unwrap()
}

#[test]
fn nat_sample_passes_order_axioms() {
    let n = catalog::family("nat").unwrap();
    let sample: Vec<Element> = ["0", "1", "2", "3"].iter().map(|t| el(&n, t)).collect();
    assert!(check_order_axioms(n.as_ref(), &sample, 64).unwrap().passed());
}

#[test]
fn t2_one_and_one_prime_are_incomparable() {
    let t2 = catalog::family("T2").unwrap();
    let (a, ap) = (el(&t2, "1"), el(&t2, "1'"));
    assert!(check_order_axioms(t2.as_ref(), &[a.clone(), ap.clone()], 64).unwrap().passed());
    assert!(leq(t2.as_ref(), &a, &ap, 8).unwrap().is_false());
    assert!(leq(t2.as_ref(), &ap, &a, 8).unwrap().is_false());
}

#[test]
fn incompatible_order_table_is_flagged_with_a_witness() {
    // 0 < a < b with a + a = 0: adding a to 0 ≤ a gives a ≤ 0
    let names = ["0", "a", "b"].map(String::from).to_vec();
    let table = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]];
    let order = vec![vec![true, true, true], vec![false, true, true], vec![false, false, true]];
    let m = FiniteMonoid::unchecked("bad", names, table, order).unwrap();
    assert!(m.le(0, 1) && !m.le(m.sum(0, 1), m.sum(1, 1)));
    let h = m.handle();
    let r = check_order_axioms(h.as_ref(), &h.carrier().unwrap(), 64).unwrap();
    let compat = r.entry("add-compatible").unwrap();
    assert_eq!(compat.status, Status::Fail);
    assert!(compat.witness.is_some());
    assert!(r.exhaustive);
}

#[test]
fn way_below_examples() {
    let t1 = catalog::family("T1").unwrap();
    assert!(way_below(t1.as_ref(), &el(&t1, "1/2"), &el(&t1, "1"), 64).unwrap().is_true());
    assert!(way_below(t1.as_ref(), &el(&t1, "1"), &el(&t1, "1"), 64).unwrap().is_true());

    let q = catalog::family("rational").unwrap();
    let v = way_below(q.as_ref(), &el(&q, "1"), &el(&q, "1"), 64).unwrap();
    assert!(v.is_false());
    // the chain 1 - 2⁻ⁿ has supremum 1 and no term reaches 1
    let c = one_minus_pow2(&q);
    assert!(matches!(sup_chain(q.as_ref(), &c, 64).unwrap().0, SupVerdict::Sup { value, .. } if value == el(&q, "1")));
    assert!((0..64).all(|n| leq(q.as_ref(), &el(&q, "1"), &c.term(n), 4).unwrap().is_false()));

    let n = catalog::family("nat").unwrap();
    assert!(way_below(n.as_ref(), &el(&n, "3"), &el(&n, "3"), 64).unwrap().is_true());
}

/// Every nondecreasing sequence in {0..cap} of a fixed length is eventually
/// constant, and one whose last value is ≥ 3 has a term ≥ 3.
#[test]
fn nat_compactness_by_exhausting_bounded_chains() {
    let cap = 6u64;
    let len = 5;
    let mut seqs = vec![vec![]];
    for _ in 0..len {
        seqs = seqs
            .into_iter()
            .flat_map(|s: Vec<u64>| {
                let lo = s.last().copied().unwrap_or(0);
                (lo..=cap).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    let n = catalog::family("nat").unwrap();
    for s in seqs {
        let sup = *s.last().unwrap();
        if sup >= 3 {
            assert!(s.iter().any(|&t| t >= 3));
        }
    }
    assert!(is_compact(n.as_ref(), &el(&n, "3"), 64).unwrap().is_true());
}

#[test]
fn compactness_examples() {
    let d = catalog::family("dyadic 3").unwrap();
    for x in d.samples() {
        assert!(is_compact(d.as_ref(), &x, 64).unwrap().is_true(), "{x}");
    }
    let q = catalog::family("rational").unwrap();
    assert!(is_compact(q.as_ref(), &el(&q, "1"), 64).unwrap().is_false());
    for spec in ["nat", "nat-inf", "rational", "T1", "T2", "dyadic 2", "chain 3", "nat-pow 2"] {
        let h = catalog::family(spec).unwrap();
        for x in h.samples() {
            assert!(way_below(h.as_ref(), &h.zero(), &x, 64).unwrap().is_true(), "{spec}: 0 ≪ {x}");
        }
    }
}

#[test]
fn doubled_sup_examples() {
    let t1 = catalog::family("T1").unwrap();
    let t2 = catalog::family("T2").unwrap();
    let probe = |h: &MonoidHandle| h.probes().into_iter().find(|p| p.chain.label == "1-2^-n").unwrap().chain;
    let (v1, _) = sup_chain(t1.as_ref(), &probe(&t1), 64).unwrap();
    assert_eq!(v1.value().unwrap(), &el(&t1, "1'"));
    let (v2, _) = sup_chain(t2.as_ref(), &probe(&t2), 64).unwrap();
    assert!(v2.is_no_sup());
    let stat = Chain::finite("to 3/4", vec![el(&t1, "1/2"), el(&t1, "3/4")]);
    assert_eq!(sup_chain(t1.as_ref(), &stat, 64).unwrap().0.value().unwrap(), &el(&t1, "3/4"));
}

#[test]
fn membership_examples() {
    let t3 = FiniteMonoid::chain(3).handle();
    let r = check_precu_membership(&t3, &t3.samples(), 64).unwrap();
    assert!(r.passed() && r.exhaustive);

    let q = catalog::family("rational").unwrap();
    assert!(check_precu_membership(&q, &q.samples(), 64).unwrap().passed());

    let two = FiniteMonoid::two_point().handle();
    assert!(check_precu_membership(&two, &two.samples(), 64).unwrap().passed());

    // ℚ⁺: the bounded chain converging to √2 has no rational supremum
    let bounded = vec![Probe {
        chain: sqrt2_truncations(&q),
        bound: Some(el(&q, "2")),
    }];
    let c = check_c_membership(q.as_ref(), &bounded, 64).unwrap();
    assert_eq!(c.status(), Status::Fail);

    let t2 = catalog::family("T2").unwrap();
    let bounded: Vec<Probe> = t2.probes().into_iter().filter(|p| p.bound.is_some()).collect();
    assert_eq!(check_c_membership(t2.as_ref(), &bounded, 64).unwrap().status(), Status::Fail);

    let all: Vec<Probe> = t3.probes();
    assert!(check_c_membership(t3.as_ref(), &all, 64).unwrap().passed());
}

#[test]
fn morphism_examples() {
    let f = catalog::dyadic_inclusion(1);
    let chains: Vec<Chain> = f.dom.probes().into_iter().map(|p| p.chain).collect();
    assert!(is_precu_morphism(&f, &f.dom.samples(), &chains, 64).unwrap().passed());

    let id = MonoidMap::identity(catalog::family("rational").unwrap());
    assert!(is_precu_morphism(&id, &id.dom.samples(), &[], 64).unwrap().passed());

    // forgetting primes: 1 ≪ 1 in T₁, but not in ℚ⁺
    let g = forget_prime();
    let one = el(&g.dom, "1");
    assert!(way_below(g.dom.as_ref(), &one, &one, 64).unwrap().is_true());
    assert!(way_below(g.cod.as_ref(), &g.apply(&one).unwrap(), &g.apply(&one).unwrap(), 64).unwrap().is_false());
    let r = is_precu_morphism(&g, &g.dom.samples(), &[], 64).unwrap();
    assert_eq!(r.entry("≪-preserving").unwrap().status, Status::Fail);
}

#[test]
fn embedding_examples() {
    let n = catalog::family("nat").unwrap();
    let zero = n.zero();
    let z = MonoidMap::new("zero", n.clone(), n.clone(), move |_| Ok(zero.clone()));
    let r = is_order_embedding(&z, &[el(&n, "1"), el(&n, "2")], 64).unwrap();
    assert_eq!(r.entry("order reflection").unwrap().status, Status::Fail);

    for f in [catalog::dyadic_inclusion(0), catalog::nat_inclusion(), catalog::chain_inclusion(1, 3)] {
        let r = is_order_embedding(&f, &f.dom.samples(), 64).unwrap();
        assert_eq!(r.entry("characterizations agree").unwrap().status, Status::Pass, "{}", f.name);
    }
}

#[test]
fn finite_way_below_is_order_exhaustively() {
    for m in corpus() {
        let h = m.handle();
        let carrier = h.carrier().unwrap();
        for x in &carrier {
            for y in &carrier {
                assert_eq!(
                    way_below(h.as_ref(), x, y, 8).unwrap().tri,
                    leq(h.as_ref(), x, y, 8).unwrap().tri,
                    "{}: {x}, {y}",
                    m.name()
                );
            }
        }
    }
}

fn families() -> Vec<MonoidHandle> {
    ["nat", "nat-inf", "rational", "dyadic 3", "T1", "T2", "nat-pow 2", "chain 4"]
        .iter()
        .map(|s| catalog::family(s).unwrap())
        .collect()
}

fn pick(h: &MonoidHandle, i: usize) -> Element {
    h.enumerate(i).unwrap_or_else(|| {
        let s = h.samples();
        s[i % s.len()].clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn way_below_absorbs_order(f in 0usize..8, i in 0usize..40, j in 0usize..40, k in 0usize..40) {
        let h = &families()[f];
        let (x, y, z) = (pick(h, i), pick(h, j), pick(h, k));
        let le = |a: &Element, b: &Element| leq(h.as_ref(), a, b, 64).unwrap().tri;
        let wb = |a: &Element, b: &Element| way_below(h.as_ref(), a, b, 64).unwrap().tri;
        if le(&x, &y) == Tri::True && wb(&y, &z) == Tri::True {
            prop_assert_ne!(wb(&x, &z), Tri::False);
        }
        if wb(&x, &y) == Tri::True && le(&y, &z) == Tri::True {
            prop_assert_ne!(wb(&x, &z), Tri::False);
        }
        if wb(&x, &y) == Tri::True {
            prop_assert_eq!(le(&x, &y), Tri::True);
        }
    }

    #[test]
    fn zero_is_way_below_everything(f in 0usize..8, i in 0usize..60) {
        let h = &families()[f];
        let x = pick(h, i);
        prop_assert!(way_below(h.as_ref(), &h.zero(), &x, 64).unwrap().is_true());
    }

    #[test]
    fn sup_chain_is_deterministic(f in 0usize..8, budget in 1u64..200) {
        let h = &families()[f];
        for p in h.probes() {
            let a = sup_chain(h.as_ref(), &p.chain, budget);
            let b = sup_chain(h.as_ref(), &p.chain, budget);
            prop_assert_eq!(format!("{a:?}"), format!("{b:?}"));
        }
    }

    #[test]
    fn embedding_verdicts_agree_for_inclusions(level in 0u32..4) {
        let f = catalog::dyadic_inclusion(level);
        let r = is_order_embedding(&f, &f.dom.samples(), 64).unwrap();
        prop_assert_eq!(r.entry("characterizations agree").unwrap().status, Status::Pass);
    }
}

#[test]
fn witnesses_are_replayable_text() {
    let q = catalog::family("rational").unwrap();
    let c = sqrt2_truncations(&q);
    let (v, _) = sup_chain(q.as_ref(), &c, 64).unwrap();
    match v.witness().unwrap() {
        Witness::Chain { label, prefix } => {
            assert_eq!(label, "sqrt2-truncations");
            assert_eq!(prefix[0].value, Value::Rational(precu_core::number::rat(1, 1)));
        }
        w => panic!("unexpected witness {w}"),
    }
    assert_eq!(c.ambient.as_ref().unwrap()[0], Real::sqrt(&precu_core::number::rat(2, 1)));
}
