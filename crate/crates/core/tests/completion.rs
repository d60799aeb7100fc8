//! Intervals, the completion `M̄`, the universal extension and the lift of
//! morphisms.

use precu_core::catalog::nat::counting_chain;
use precu_core::catalog::rational::one_minus_pow2;
use precu_core::catalog::{self, dyadic_inclusion, dyadic_inclusion_between};
use precu_core::completion::{
    extend_universal, hereditary_iota, interval_add, interval_of, interval_precsim, interval_sup,
    interval_sup_list, iota_map, lift_morphism, rapidify, verify_completion, Completion, Interval,
};
use precu_core::finite::FiniteMonoid;
use precu_core::lab::corpus;
use precu_core::number::rat;
use precu_core::order::{
    check_c_membership, is_order_embedding, leq, sup_chain, way_below, Budget, Chain, MonoidHandle, MonoidMap,
    Probe, Status, Tri,
};
use precu_core::{Element, Value};
use proptest::prelude::*;

fn nat() -> MonoidHandle {
    catalog::family("nat").unwrap()
}

fn principal(h: &MonoidHandle, text: &str) -> Interval {
    Interval::principal(h, h.parse_element(text).unwrap()).unwrap()
}

fn both_ways(i: &Interval, j: &Interval) -> (Tri, Tri) {
    (
        interval_precsim(i, j, 256).unwrap().tri,
        interval_precsim(j, i, 256).unwrap().tri,
    )
}

/// Down-sets of a finite monoid as bitmasks.
fn down_set(m: &FiniteMonoid, x: usize) -> u64 {
    (0..m.size()).filter(|&z| m.le(z, x)).fold(0, |acc, z| acc | 1 << z)
}

/// Every nonempty, downward closed, upward directed subset.
fn ideals_oracle(m: &FiniteMonoid) -> Vec<u64> {
    let n = m.size();
    (1u64..1 << n)
        .filter(|&s| {
            let has = |z: usize| s >> z & 1 == 1;
            let down = (0..n).all(|x| !has(x) || (0..n).all(|z| !m.le(z, x) || has(z)));
            let directed = (0..n).all(|x| {
                (0..n).all(|y| !(has(x) && has(y)) || (0..n).any(|w| has(w) && m.le(x, w) && m.le(y, w)))
            });
            down && directed
        })
        .collect()
}

#[test]
fn principal_comparisons_in_nat() {
    let n = nat();
    assert_eq!(both_ways(&principal(&n, "3"), &principal(&n, "5")), (Tri::True, Tri::False));
}

#[test]
fn finite_precsim_is_inclusion_of_down_sets() {
    for m in corpus().into_iter().filter(|m| m.size() <= 6) {
        let h = m.handle();
        for x in 0..m.size() {
            for y in 0..m.size() {
                let (i, j) = (Interval::principal(&h, m.at(x)).unwrap(), Interval::principal(&h, m.at(y)).unwrap());
                let (dx, dy) = (down_set(&m, x), down_set(&m, y));
                let expected = Tri::from_bool(dx & !dy == 0);
                assert_eq!(interval_precsim(&i, &j, 64).unwrap().tri, expected, "{}: {x} {y}", m.name());
            }
        }
    }
}

#[test]
fn rational_principal_matches_its_lazy_chain() {
    let q = catalog::family("rational").unwrap();
    let lazy = Interval::chain(&q, one_minus_pow2(&q), Some(q.parse_element("1").unwrap())).unwrap();
    assert_eq!(both_ways(&principal(&q, "1"), &lazy), (Tri::True, Tri::True));
}

#[test]
fn interval_sums() {
    let n = nat();
    let s = interval_add(&principal(&n, "2"), &principal(&n, "3")).unwrap();
    assert_eq!(s.top(), Some(&n.parse_element("5").unwrap()));

    let q = catalog::family("rational").unwrap();
    let lazy = Interval::chain(&q, one_minus_pow2(&q), None).unwrap();
    let plus_zero = interval_add(&lazy, &principal(&q, "0")).unwrap();
    assert_eq!(both_ways(&lazy, &plus_zero), (Tri::True, Tri::True));
}

#[test]
fn finite_ideal_sums_match_minkowski_closure() {
    for m in corpus().into_iter().filter(|m| m.size() <= 6) {
        let h = m.handle();
        for x in 0..m.size() {
            for y in 0..m.size() {
                // downward closure of {a + b : a ≤ x, b ≤ y}
                let mut sums = 0u64;
                for a in (0..m.size()).filter(|&a| m.le(a, x)) {
                    for b in (0..m.size()).filter(|&b| m.le(b, y)) {
                        sums |= down_set(&m, m.sum(a, b));
                    }
                }
                let i = Interval::finite(&h, vec![m.at(x)]).unwrap();
                let j = Interval::finite(&h, vec![m.at(y)]).unwrap();
                let s = interval_add(&i, &j).unwrap();
                let top = precu_core::finite::index_of(s.top().unwrap());
                assert_eq!(down_set(&m, top), sums, "{}: {x} + {y}", m.name());
            }
        }
    }
}

#[test]
fn rapidify_examples() {
    let q = catalog::family("rational").unwrap();
    let one = principal(&q, "1");
    let r = rapidify(&one, 64).unwrap();
    let c = r.generators();
    assert!(c.rapid);
    for k in 0..12 {
        let (a, b) = (c.term(k), c.term(k + 1));
        assert!(way_below(q.as_ref(), &a, &b, 64).unwrap().is_true(), "{a} ≪ {b}");
        assert!(leq(q.as_ref(), &q.parse_element("1").unwrap(), &a, 8).unwrap().is_false());
    }
    assert_eq!(both_ways(&one, &r), (Tri::True, Tri::True));

    let t3 = FiniteMonoid::chain(3).handle();
    let top = t3.parse_element("a2").unwrap();
    let r = rapidify(&Interval::principal(&t3, top.clone()).unwrap(), 64).unwrap();
    assert!((0..8).all(|k| r.generators().term(k) == top));

    let n = nat();
    let gens = ["2", "5"].iter().map(|t| n.parse_element(t).unwrap()).collect();
    let r = rapidify(&Interval::finite(&n, gens).unwrap(), 64).unwrap();
    assert_eq!(r.generators().eventual(), Some(n.parse_element("5").unwrap()));
}

#[test]
fn supremum_of_principal_nat_intervals_is_infinity() {
    let n = nat();
    let comp = Completion::of(&n);
    let h = comp.handle();
    let seq = comp.iota_chain(&counting_chain(&n, "n"));
    let top = interval_sup(&seq, &mut Budget::new(256)).unwrap();
    let inf = comp.class(top).unwrap();
    for k in 0..40u64 {
        let x = comp.iota(&n.elem(Value::Nat(k))).unwrap();
        assert!(leq(h.as_ref(), &x, &inf, 64).unwrap().is_true());
        assert!(leq(h.as_ref(), &inf, &x, 64).unwrap().is_false());
        assert!(way_below(h.as_ref(), &x, &x, 64).unwrap().is_true());
    }
    let v = way_below(h.as_ref(), &inf, &inf, 64).unwrap();
    assert!(v.is_false(), "∞ is not compact");
    // ∞ + ι(n) = ∞
    let five = comp.iota(&n.elem(Value::Nat(5))).unwrap();
    let s = h.add(&inf, &five);
    assert!(leq(h.as_ref(), &s, &inf, 64).unwrap().is_true());
    assert!(leq(h.as_ref(), &inf, &s, 64).unwrap().is_true());

    let constant = Chain::constant("const", five.clone());
    let (v, _) = sup_chain(h.as_ref(), &constant, 64).unwrap();
    assert_eq!(v.value().unwrap(), &five);
}

#[test]
fn finite_interval_sups_are_least_upper_bounds() {
    for m in corpus().into_iter().filter(|m| m.size() <= 6) {
        let h = m.handle();
        // an increasing list along the order: lub in the ideal lattice is the largest
        let mut xs: Vec<usize> = (0..m.size()).collect();
        xs.sort_by_key(|&x| down_set(&m, x).count_ones());
        let chain: Vec<usize> = xs
            .iter()
            .copied()
            .fold(vec![], |mut acc: Vec<usize>, x| {
                if acc.last().map_or(true, |&p| m.le(p, x)) {
                    acc.push(x);
                }
                acc
            });
        let ivs: Vec<Interval> = chain.iter().map(|&x| Interval::principal(&h, m.at(x)).unwrap()).collect();
        let s = interval_sup_list(&ivs, 64).unwrap();
        let lub = chain.iter().fold(0u64, |acc, &x| acc | down_set(&m, x));
        let ideals = ideals_oracle(&m);
        let least = ideals.iter().filter(|&&i| i & lub == lub).min_by_key(|i| i.count_ones()).copied();
        assert_eq!(Some(down_set(&m, precu_core::finite::index_of(s.top().unwrap()))), least);
    }
}

#[test]
fn iota_examples() {
    for spec in ["nat", "rational", "T1", "T2", "dyadic 2", "nat-inf"] {
        let h = catalog::family(spec).unwrap();
        let comp = Completion::of(&h);
        let ch = comp.handle();
        assert_eq!(comp.iota(&h.zero()).unwrap(), ch.zero());
        let f = iota_map(&comp);
        let r = is_order_embedding(&f, &h.samples(), 64).unwrap();
        assert_eq!(r.entry("order reflection").unwrap().status, Status::Pass, "{spec}");
        for x in h.samples() {
            for y in h.samples() {
                if way_below(h.as_ref(), &x, &y, 64).unwrap().is_true() {
                    let (ix, iy) = (comp.iota(&x).unwrap(), comp.iota(&y).unwrap());
                    assert!(way_below(ch.as_ref(), &ix, &iy, 256).unwrap().is_true(), "{spec}: {x} ≪ {y}");
                }
                let s = ch.add(&comp.iota(&x).unwrap(), &comp.iota(&y).unwrap());
                let t = comp.iota(&h.add(&x, &y)).unwrap();
                assert!(leq(ch.as_ref(), &s, &t, 64).unwrap().is_true() && leq(ch.as_ref(), &t, &s, 64).unwrap().is_true());
            }
        }
    }
}

#[test]
fn finite_cu_monoids_are_their_own_completion() {
    for m in corpus().into_iter().filter(|m| m.size() <= 6) {
        // every ideal is principal
        let principal: Vec<u64> = (0..m.size()).map(|x| down_set(&m, x)).collect();
        for i in ideals_oracle(&m) {
            assert!(principal.contains(&i), "{}", m.name());
        }
        let h = m.handle();
        let comp = Completion::of(&h);
        assert_eq!(comp.handle().carrier().unwrap().len(), m.size());
    }
}

#[test]
fn universal_extension_examples() {
    let n = nat();
    let comp = Completion::of(&n);
    // α = ι: β is the identity
    let iota = iota_map(&comp);
    for x in comp.handle().samples() {
        let b = extend_universal(&iota, &x, 256).unwrap();
        let ch = comp.handle();
        assert!(leq(ch.as_ref(), &b, &x, 64).unwrap().is_true() && leq(ch.as_ref(), &x, &b, 64).unwrap().is_true());
    }
    // ℕ → ℕ∪{∞}: β sends the ∞-class to ∞
    let alpha = catalog::nat_inclusion();
    let inf = comp.chain_class(counting_chain(&n, "n"), None).unwrap();
    assert_eq!(extend_universal(&alpha, &inf, 256).unwrap().value, Value::Infinity);
    for k in 0..10 {
        let x = n.elem(Value::Nat(k));
        assert_eq!(extend_universal(&alpha, &comp.iota(&x).unwrap(), 64).unwrap(), alpha.apply(&x).unwrap());
    }
    let beta = precu_core::completion::extension_map(&alpha, 256);
    let r = is_order_embedding(&beta, &comp.handle().samples(), 256).unwrap();
    assert_eq!(r.entry("order reflection").unwrap().status, Status::Pass);
}

#[test]
fn lift_examples() {
    let q = catalog::family("rational").unwrap();
    let id = lift_morphism(&MonoidMap::identity(q.clone()));
    let comp = Completion::of(&q);
    let ch = comp.handle();
    for x in ch.samples() {
        let y = id.apply(&x).unwrap();
        assert!(leq(ch.as_ref(), &x, &y, 256).unwrap().is_true() && leq(ch.as_ref(), &y, &x, 256).unwrap().is_true());
    }

    for i in 0..3 {
        let f = dyadic_inclusion(i);
        let lifted = lift_morphism(&f);
        let (dom, cod) = (Completion::of(&f.dom), Completion::of(&f.cod));
        for x in f.dom.samples() {
            let a = lifted.apply(&dom.iota(&x).unwrap()).unwrap();
            let b = cod.iota(&f.apply(&x).unwrap()).unwrap();
            assert_eq!(interval_of(&a).unwrap().top(), interval_of(&b).unwrap().top());
        }
    }

    let (f, g) = (dyadic_inclusion(0), dyadic_inclusion(1));
    let composite = lift_morphism(&f.then(&g).unwrap());
    let chained = lift_morphism(&f).then(&lift_morphism(&g)).unwrap();
    let dom = Completion::of(&f.dom);
    let cod = Completion::of(&dyadic_inclusion_between(2, 2).dom).handle();
    for x in dom.handle().samples() {
        let (a, b) = (composite.apply(&x).unwrap(), chained.apply(&x).unwrap());
        assert!(leq(cod.as_ref(), &a, &b, 256).unwrap().is_true() && leq(cod.as_ref(), &b, &a, 256).unwrap().is_true());
    }
}

#[test]
fn catalog_monoids_have_verified_completions() {
    for spec in ["nat", "rational", "T1", "T2", "dyadic 1", "chain 3", "nat-inf"] {
        let h = catalog::family(spec).unwrap();
        let r = verify_completion(&h, 64).unwrap();
        assert_ne!(r.status(), Status::Fail, "{spec}: {r}");
    }
}

#[test]
fn hereditary_iota_agrees_with_c_membership() {
    for spec in ["nat", "rational", "T1", "T2", "dyadic 1", "chain 3", "nat-inf", "nat-pow 2"] {
        let h = catalog::family(spec).unwrap();
        let her = hereditary_iota(&h, 64).unwrap().status();
        let bounded: Vec<Probe> = h.probes().into_iter().filter(|p| p.bound.is_some()).collect();
        let c = check_c_membership(h.as_ref(), &bounded, 64).unwrap().status();
        assert_eq!(her == Status::Fail, c == Status::Fail, "{spec}: hereditary {her:?}, 𝒞 {c:?}");
        let expected_fail = matches!(spec, "rational" | "T1" | "T2");
        assert_eq!(her == Status::Fail, expected_fail, "{spec}");
    }
}

#[test]
fn completion_of_a_finite_completion_is_isomorphic() {
    for m in corpus() {
        let h = m.handle();
        let once = Completion::of(&h);
        let oh = once.handle();
        let twice = Completion::of(&oh);
        let th = twice.handle();
        let (a, b) = (oh.carrier().unwrap(), th.carrier().unwrap());
        assert_eq!(a.len(), b.len());
        for (x, xx) in a.iter().zip(&b) {
            assert_eq!(twice.iota(x).unwrap(), *xx);
            for (y, yy) in a.iter().zip(&b) {
                assert_eq!(
                    leq(oh.as_ref(), x, y, 64).unwrap().tri,
                    leq(th.as_ref(), xx, yy, 64).unwrap().tri,
                    "{}",
                    m.name()
                );
            }
        }
    }
}

fn class_of(comp: &Completion, i: Interval) -> Element {
    comp.class(i).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn representatives_do_not_change_verdicts(p in 1i64..40, q in 1i64..8, r in 0i64..40, s in 1i64..8) {
        let h = catalog::family("rational").unwrap();
        let comp = Completion::of(&h);
        let ch = comp.handle();
        let x = h.elem(Value::Rational(rat(p, q)));
        let y = h.elem(Value::Rational(rat(r, s)));
        let px = Interval::principal(&h, x).unwrap();
        let rx = rapidify(&px, 64).unwrap();
        let iy = comp.iota(&y).unwrap();
        let (a, b) = (class_of(&comp, px), class_of(&comp, rx));
        prop_assert_eq!(leq(ch.as_ref(), &a, &iy, 256).unwrap().tri, leq(ch.as_ref(), &b, &iy, 256).unwrap().tri);
        prop_assert_eq!(leq(ch.as_ref(), &iy, &a, 256).unwrap().tri, leq(ch.as_ref(), &iy, &b, 256).unwrap().tri);
        let sa = ch.add(&a, &iy);
        let sb = ch.add(&b, &iy);
        prop_assert!(leq(ch.as_ref(), &sa, &sb, 256).unwrap().is_true());
        prop_assert!(leq(ch.as_ref(), &sb, &sa, 256).unwrap().is_true());
        let wa = way_below(ch.as_ref(), &a, &iy, 256).unwrap().tri;
        let wb = way_below(ch.as_ref(), &b, &iy, 256).unwrap().tri;
        prop_assert_eq!(wa, wb);
    }

    #[test]
    fn way_below_in_the_completion_implies_order(f in 0usize..4, i in 0usize..12, j in 0usize..12) {
        let spec = ["nat", "rational", "T1", "T2"][f];
        let h = catalog::family(spec).unwrap();
        let comp = Completion::of(&h);
        let ch = comp.handle();
        let s = ch.samples();
        let (x, y) = (&s[i % s.len()], &s[j % s.len()]);
        if way_below(ch.as_ref(), x, y, 256).unwrap().is_true() {
            prop_assert!(leq(ch.as_ref(), x, y, 256).unwrap().is_true());
        }
        // [I] ≤ ι(y) and y ≪ z give [I] ≪ ι(z)
        let hs = h.samples();
        let (a, b) = (&hs[i % hs.len()], &hs[j % hs.len()]);
        let (ia, ib) = (comp.iota(a).unwrap(), comp.iota(b).unwrap());
        if leq(ch.as_ref(), x, &ia, 256).unwrap().is_true() && way_below(h.as_ref(), a, b, 64).unwrap().is_true() {
            prop_assert!(way_below(ch.as_ref(), x, &ib, 256).unwrap().is_true());
        }
    }
}
