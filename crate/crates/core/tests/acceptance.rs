//! Acceptance run: criteria 1 to 10, one PASS/FAIL line each. Runs without
//! the libtest harness so the lines always reach the output.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{grid_least_upper_bounds, limit_chain, model_corpus, plain, small_grid, Plain};
use precu_core::catalog::{self, dyadic::dyadic_enum, Doubled, Variant};
use precu_core::commands::{json_string, render_json, run_commands, RunOptions};
use precu_core::completion::{hereditary_iota, interval_precsim, Interval};
use precu_core::finite::FiniteMonoid;
use precu_core::lab::{
    brute_force_universal, build_completion_bruteforce, corpus, enumerate_ideals, universal_triples,
    verify_completion_def, verify_cu_object,
};
use precu_core::limits::{
    check_limit_completion_commutes, counterexample_suite, limit_fixtures, InductiveSystem, SystemKind,
};
use precu_core::models::{verify_model_completion, Variant as ModelVariant};
use precu_core::number::{pow2_inv, rat, Dyadic, Real};
use precu_core::order::{check_c_membership, classify, sup_chain, Chain, Monoid, Probe, Report, Status, Witness};
use precu_core::spec_file::parse_spec;
use precu_core::{Element, Value};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn clean(r: &Report, what: &str) -> Result<(), String> {
    ensure(r.passed(), || {
        let f: Vec<String> = r.failures().map(|e| format!("{} ({})", e.check, e.detail)).collect();
        format!("{what}: {}", f.join("; "))
    })
}

fn chain_labels(r: &Report) -> Vec<String> {
    r.failures()
        .filter_map(|e| match &e.witness {
            Some(Witness::Chain { label, .. }) => Some(label.clone()),
            _ => None,
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let monoids = corpus();
    let random = monoids.iter().filter(|m| m.name().starts_with("random")).count();
    ensure(random >= 20, || format!("only {random} random tables"))?;
    for m in &monoids {
        let cap = if m.name().starts_with("random") { 6 } else { 9 };
        ensure(m.size() <= cap, || format!("{} has {} elements", m.name(), m.size()))?;
        let bc = build_completion_bruteforce(m).map_err(|e| format!("{}: {e}", m.name()))?;
        let cu = verify_cu_object(&bc.monoid);
        clean(&cu, m.name())?;
        ensure(cu.exhaustive, || format!("{}: Cu check not exhaustive", m.name()))?;
        clean(&verify_completion_def(m, &bc), m.name())?;
    }
    Ok(format!("{} finite monoids, {random} of them random tables", monoids.len()))
}

fn criterion_2() -> Outcome {
    let triples = universal_triples();
    ensure(triples.len() >= 25, || format!("only {} triples", triples.len()))?;
    let mut embeddings = 0;
    for (m, p, alpha) in &triples {
        let r = brute_force_universal(m, p, alpha).map_err(|e| e.to_string())?;
        clean(&r, &format!("{} → {} by {alpha:?}", m.name(), p.name()))?;
        for check in ["exactly one Cu morphism β with β∘ι = α", "β agrees with extend_universal"] {
            ensure(r.entry(check).is_some_and(|e| e.status == Status::Pass), || format!("{check} missing"))?;
        }
        if r.entry("β inherits order-embedding").is_some_and(|e| e.detail == "α is an order-embedding") {
            embeddings += 1;
        }
    }
    Ok(format!("{} triples, {embeddings} with α an order-embedding", triples.len()))
}

fn criterion_3() -> Outcome {
    let mut pairs = 0usize;
    for m in corpus() {
        let h = m.handle();
        let ideals = enumerate_ideals(&m).map_err(|e| e.to_string())?;
        let intervals: Vec<Interval> = ideals
            .iter()
            .map(|i| Interval::finite(&h, i.iter().map(|&k| m.at(k)).collect()))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for (a, ia) in ideals.iter().zip(&intervals) {
            for (b, ib) in ideals.iter().zip(&intervals) {
                let subset = a.iter().all(|x| b.contains(x));
                let v = interval_precsim(ia, ib, 256).map_err(|e| e.to_string())?;
                ensure(v.tri.definite() == Some(subset), || format!("{}: {a:?} vs {b:?}", m.name()))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ideal pairs, ≼ equals inclusion on all"))
}

fn doubled(h: &precu_core::order::MonoidHandle, base: Dyadic, primed: bool) -> Element {
    h.elem(Value::Doubled { base, primed })
}

fn criterion_4() -> Outcome {
    let q = catalog::family("rational").unwrap();
    let r = classify(&q, 64).map_err(|e| e.to_string())?;
    let status = |r: &Report, c: &str| r.entry(c).map(|e| e.status);
    ensure(status(&r, "PreCu") == Some(Status::Pass), || "ℚ⁺ PreCu".into())?;
    ensure(status(&r, "C") == Some(Status::Fail), || "ℚ⁺ 𝒞".into())?;
    let witness = match r.entry("C").and_then(|e| e.witness.clone()) {
        Some(Witness::Chain { label, .. }) => label,
        other => return Err(format!("ℚ⁺ 𝒞 disproof without a chain witness: {other:?}")),
    };

    let mut cu_pass = Vec::new();
    for spec in ["nat-inf", "chain 0", "chain 1", "chain 2", "chain 3", "chain 4", "chain 5"] {
        let h = catalog::family(spec).unwrap();
        let r = classify(&h, 64).map_err(|e| e.to_string())?;
        ensure(status(&r, "Cu") == Some(Status::Pass), || format!("{spec} not Cu-pass: {r}"))?;
        ensure(h.carrier().is_none() || r.exhaustive, || format!("{spec} not exhaustive"))?;
        cu_pass.push(spec);
    }
    // ℕ itself: its bounded chains have suprema, the unbounded one does not
    let n = classify(&catalog::family("nat").unwrap(), 64).map_err(|e| e.to_string())?;
    ensure(status(&n, "C") == Some(Status::Pass), || "ℕ 𝒞".into())?;
    ensure(status(&n, "Cu") == Some(Status::Fail), || "ℕ classified Cu".into())?;

    let (t1, t2) = (Doubled::handle(Variant::T1), Doubled::handle(Variant::T2));
    let targets: Vec<Dyadic> = (1..).map(dyadic_enum).filter(|d| !d.is_zero()).take(30).collect();
    let mut chains = 0;
    for r in &targets {
        for primed in [false, true] {
            let target = r.to_rational();
            for (h, expect_prime) in [(&t1, true), (&t2, false)] {
                let (hc, tq) = (h.clone(), target.clone());
                let c = Chain::lazy(
                    format!("{r}(1-2^-(n+1))"),
                    move |k| {
                        let b = Dyadic::from_rational(&(&tq * (BigRational::from_integer(1.into()) - pow2_inv(k + 1))))
                            .expect("dyadic");
                        doubled(&hc, b, primed)
                    },
                    Some(vec![Real::rational(target.clone())]),
                );
                let (v, _) = sup_chain(h.as_ref(), &c, 64).map_err(|e| e.to_string())?;
                if expect_prime {
                    let want = doubled(h, r.clone(), true);
                    ensure(v.value() == Some(&want), || format!("T₁ sup toward {r}: {v:?}"))?;
                } else {
                    ensure(v.is_no_sup(), || format!("T₂ chain toward {r} has a supremum"))?;
                }
            }
            chains += 1;
        }
    }
    Ok(format!(
        "ℚ⁺ PreCu pass, 𝒞 disproof by {witness}; Cu pass for ℕ∪{{∞}} and T₀..T₅; ℕ is 𝒞-pass and Cu-disproof; {chains} chains for the T₁/T₂ rules"
    ))
}

fn criterion_5() -> Outcome {
    let mut seen = Vec::new();
    for spec in ["nat", "nat-inf", "nat-pow 2", "rational", "dyadic 1", "T1", "T2", "chain 3", "saturating 4", "grid 2 3"] {
        let h = catalog::family(spec).unwrap();
        let her = hereditary_iota(&h, 64).map_err(|e| e.to_string())?;
        let bounded: Vec<Probe> = h.probes().into_iter().filter(|p| p.bound.is_some()).collect();
        let c = check_c_membership(h.as_ref(), &bounded, 64).map_err(|e| e.to_string())?;
        let (hf, cf) = (her.status() == Status::Fail, c.status() == Status::Fail);
        ensure(hf == cf, || format!("{spec}: hereditary {:?}, 𝒞 {:?}", her.status(), c.status()))?;
        if spec == "rational" {
            ensure(hf, || "ℚ⁺ passes".into())?;
            let (a, b) = (chain_labels(&her), chain_labels(&c));
            ensure(a.iter().any(|l| b.contains(l)), || format!("witnesses differ: {a:?} vs {b:?}"))?;
        }
        if h.carrier().is_some() {
            ensure(!hf, || format!("finite {spec} fails"))?;
        }
        seen.push(format!("{spec}:{}", if hf { "fail" } else { "pass" }));
    }
    Ok(seen.join(" "))
}

fn criterion_6() -> Outcome {
    let r = counterexample_suite(64).map_err(|e| e.to_string())?;
    clean(&r, "counterexample suite")?;
    Ok(format!("{} clauses at N = 64", r.entries.len()))
}

fn system(kind: SystemKind) -> std::sync::Arc<InductiveSystem> {
    InductiveSystem::new(kind.name(), kind, 3).unwrap()
}

fn criterion_7() -> Outcome {
    for kind in [SystemKind::Chain, SystemKind::NatId] {
        let r = limit_fixtures(&system(kind), 16).map_err(|e| e.to_string())?;
        clean(&r, kind.name())?;
        ensure(r.entries.len() == 5, || format!("{}: {} entries", kind.name(), r.entries.len()))?;
    }
    Ok("Tₙ: no top in lim_𝒞, a_∞ in lim_Cu; ℕ-id: fragments ≅ ℕ and ℕ∪{∞}".into())
}

fn criterion_8() -> Outcome {
    let mut out = Vec::new();
    for kind in [SystemKind::Chain, SystemKind::NatId, SystemKind::Dyadic] {
        let r = check_limit_completion_commutes(&system(kind), 64).map_err(|e| e.to_string())?;
        clean(&r, kind.name())?;
        out.push(kind.name());
    }
    Ok(format!("γ verified for {}", out.join(", ")))
}

fn criterion_9() -> Outcome {
    let models = model_corpus();
    ensure(models.len() >= 10, || "fewer than 10 models".into())?;
    let grid10: Vec<BigRational> = [(1, 4), (1, 2), (3, 4), (1, 1), (5, 4), (3, 2), (2, 1), (5, 2), (3, 1), (4, 1)]
        .iter()
        .map(|&(p, q)| rat(p, q))
        .collect();
    let mut checked = 0usize;
    for m in &models {
        let mut sample = m.samples();
        sample.push(m.fq(&vec![rat(1, 1); m.k]).unwrap());
        for x in &sample {
            let compact = m.w_way_below(x, x).map_err(|e| e.to_string())?;
            ensure(compact == !matches!(plain(m, x), Plain::F(_)), || format!("{}: compactness of {x}", m.id()))?;
        }
        for j in 0..m.k {
            for a in &grid10 {
                for b in &grid10 {
                    let f: Vec<BigRational> = (0..m.k).map(|i| if i == j { a.clone() } else { rat(1, 1) }).collect();
                    let strict: Vec<BigRational> = (0..m.k).map(|i| if i == j { b.clone() } else { rat(2, 1) }).collect();
                    let flat: Vec<BigRational> = (0..m.k).map(|i| if i == j { b.clone() } else { rat(1, 1) }).collect();
                    let (ff, gs, gf) = (m.fq(&f).unwrap(), m.fq(&strict).unwrap(), m.fq(&flat).unwrap());
                    let wb = m.w_way_below(&ff, &gs).map_err(|e| e.to_string())?;
                    ensure(wb == (a < b), || format!("{}: F({f:?}) ≪ F({strict:?}) is {wb}", m.id()))?;
                    let wb_flat = m.w_way_below(&ff, &gf).map_err(|e| e.to_string())?;
                    // with k > 1 the other coordinates tie, so the pair is never strictly ordered
                    let strict_flat = a < b && m.k == 1;
                    ensure(wb_flat == strict_flat, || format!("{}: F({f:?}) ≪ F({flat:?}) is {wb_flat}", m.id()))?;
                    checked += 2;
                }
            }
        }
        clean(&verify_model_completion(m, 64).map_err(|e| e.to_string())?, m.id())?;
    }
    let grid = small_grid();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let w = &models[rng.gen_range(0..models.len())];
        let m = w.with_variant(ModelVariant::Cu);
        let limit: Vec<BigRational> = (0..m.k).map(|_| grid[rng.gen_range(0..grid.len())].clone()).collect();
        let sup = m.cu_sup(&limit_chain(&m, &limit)).map_err(|e| e.to_string())?;
        let least = grid_least_upper_bounds(&m, &limit, &grid);
        ensure(least.len() == 1 && least[0] == sup, || format!("{}: sup toward {limit:?} is {sup}, search {least:?}", m.id()))?;
    }
    Ok(format!("{} models, {checked} grid pairs, 100 random chains", models.len()))
}

fn suite_reports() -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let push = |out: &mut Vec<String>, r: Report| out.push(serde_json::to_string(&r.to_json()).unwrap());
    for seed in 0..5 {
        let m = FiniteMonoid::random(seed);
        let bc = build_completion_bruteforce(&m).unwrap();
        push(&mut out, verify_completion_def(&m, &bc));
    }
    for (m, p, alpha) in universal_triples().iter().take(10) {
        push(&mut out, brute_force_universal(m, p, alpha).unwrap());
    }
    push(&mut out, classify(&catalog::family("rational").unwrap(), 64).unwrap());
    push(&mut out, counterexample_suite(16).unwrap());
    for kind in [SystemKind::Chain, SystemKind::NatId, SystemKind::Dyadic] {
        push(&mut out, check_limit_completion_commutes(&system(kind), 64).unwrap());
        push(&mut out, limit_fixtures(&system(kind), 8).unwrap());
    }
    for m in model_corpus().iter().take(3) {
        push(&mut out, verify_model_completion(m, 64).unwrap());
    }
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/dyadic_system.precu")).unwrap();
    let doc = parse_spec(&text).unwrap();
    for parallel in [false, true] {
        let opts = RunOptions { budget: None, parallel };
        out.push(json_string(&render_json(&doc, &run_commands(&doc, &doc.commands, opts), RunOptions { budget: None, parallel: false })));
    }
    out
}

fn criterion_10() -> Outcome {
    let (a, b) = (suite_reports(), suite_reports());
    ensure(a == b, || {
        let i = a.iter().zip(&b).position(|(x, y)| x != y).unwrap_or(a.len().min(b.len()));
        format!("report {i} differs between runs")
    })?;
    let n = a.len();
    ensure(a[n - 1] == a[n - 2], || "parallel run differs from sequential".into())?;
    Ok(format!("{} reports, {} bytes, identical across runs", n, a.iter().map(String::len).sum::<usize>()))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {n}: PASS ({secs:.1}s) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL ({secs:.1}s) {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
