//! Shared fixtures for the integration suites: the model corpus and an
//! independent oracle for the model order.
#![allow(dead_code)]

use std::sync::Arc;

use num_rational::BigRational;
use precu_core::catalog::Nat;
use precu_core::finite::FiniteMonoid;
use precu_core::models::{parse_matrix, SimplexModel, StateOrdered, Variant};
use precu_core::number::{int, pow2_inv, rat, Real};
use precu_core::order::{Chain, Monoid};
use precu_core::{Element, ModelValue, Value};

/// Eleven models over one, two and three extreme traces, with `V` one of
/// ℕ, ℕ² ordered by its states, or the zero table.
pub fn model_corpus() -> Vec<Arc<SimplexModel>> {
    let nat = |rows: &str, k| SimplexModel::new(k, Nat::handle(), parse_matrix(rows).unwrap(), Variant::W).unwrap();
    let states = |rows: &str, k| {
        let m = parse_matrix(rows).unwrap();
        SimplexModel::new(k, StateOrdered::handle(m.clone()).unwrap(), m, Variant::W).unwrap()
    };
    let zero = |k: usize| {
        let row = vec![vec![int(0); k]];
        SimplexModel::new(k, FiniteMonoid::chain(0).handle(), row, Variant::W).unwrap()
    };
    vec![
        nat("1", 1),
        nat("2/3", 1),
        nat("1 1", 2),
        nat("1 2", 2),
        nat("1 2 3", 3),
        nat("1/2 1 2", 3),
        states("1 1; 1 2", 2),
        states("1 1 1; 1/2 2 1", 3),
        zero(1),
        zero(2),
        zero(3),
    ]
}

/// A model element as the oracle sees it: zero, a projection class given
/// by its state values and a key identifying it in `V`, or a tuple with
/// `None` for ∞.
#[derive(Clone, Debug)]
pub enum Plain {
    Zero,
    P(Vec<BigRational>, String),
    F(Vec<Option<BigRational>>),
}

pub fn plain(model: &SimplexModel, x: &Element) -> Plain {
    let Value::Model(m) = &x.value else { panic!("not a model element") };
    match m {
        ModelValue::Zero => Plain::Zero,
        ModelValue::P(v) => Plain::P(model.rho(&model.v.elem((**v).clone())), format!("{v}")),
        ModelValue::F(f) => Plain::F(f.iter().map(|r| r.as_rational().cloned()).collect()),
    }
}

fn le_ext(a: &Option<BigRational>, b: &Option<BigRational>, strict: bool) -> bool {
    match (a, b) {
        (_, None) => !strict || a.is_some(),
        (None, Some(_)) => false,
        (Some(x), Some(y)) => if strict { x < y } else { x <= y },
    }
}

fn all(a: &[Option<BigRational>], b: &[Option<BigRational>], strict: bool) -> bool {
    a.iter().zip(b).all(|(x, y)| le_ext(x, y, strict))
}

fn lift(v: &[BigRational]) -> Vec<Option<BigRational>> {
    v.iter().cloned().map(Some).collect()
}

/// The order rules written out directly: projection classes compare by
/// their states (strictly) or equality, tuples pointwise, `F ≤ P` non-strictly
/// and `P ≤ F` strictly.
pub fn oracle_leq(x: &Plain, y: &Plain) -> bool {
    match (x, y) {
        (Plain::Zero, _) => true,
        (_, Plain::Zero) => false,
        (Plain::P(a, ka), Plain::P(b, kb)) => ka == kb || all(&lift(a), &lift(b), true),
        (Plain::F(f), Plain::F(g)) => all(f, g, false),
        (Plain::F(f), Plain::P(b, _)) => all(f, &lift(b), false),
        (Plain::P(a, _), Plain::F(g)) => all(&lift(a), g, true),
    }
}

pub fn reals(v: &[BigRational]) -> Vec<Real> {
    v.iter().cloned().map(Real::rational).collect()
}

/// `p/q` for a small grid: denominators up to 4, values in `(0, 3]`.
pub fn small_grid() -> Vec<BigRational> {
    let mut out: Vec<BigRational> = (1..=4i64)
        .flat_map(|q| (1..=3 * q).map(move |p| BigRational::new(p.into(), q.into())))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `n ↦ L·(1 - 2^-(n+1))` as a chain of tuples approaching `L` from below.
pub fn limit_chain(m: &SimplexModel, limit: &[BigRational]) -> Chain {
    let id = m.family().clone();
    let lim = limit.to_vec();
    Chain::lazy(
        "L(1-2^-(n+1))",
        move |n| {
            let t = lim.iter().map(|q| Real::rational(q * (rat(1, 1) - pow2_inv(n + 1)))).collect();
            Element::new(&id, Value::Model(ModelValue::F(t)))
        },
        Some(reals(limit)),
    )
}

/// Least upper bounds of `limit_chain(m, limit)` among zero, the first
/// projection classes and grid tuples, found by pairwise comparison with
/// the oracle order.
pub fn grid_least_upper_bounds(m: &SimplexModel, limit: &[BigRational], grid: &[BigRational]) -> Vec<Element> {
    let mut cands: Vec<Element> = vec![m.zero()];
    for n in 1..6 {
        if let Some(v) = m.v.enumerate(n).filter(|v| *v != m.v.zero()) {
            cands.push(m.p(&v).unwrap());
        }
    }
    let values: Vec<&BigRational> = grid.iter().step_by(3).chain(limit.iter()).collect();
    let mut tuples: Vec<Vec<BigRational>> = vec![vec![]];
    for _ in 0..m.k {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                values.iter().map(move |v| {
                    let mut u = t.clone();
                    u.push((*v).clone());
                    u
                })
            })
            .collect();
    }
    for t in &tuples {
        let e = m.fq(t).unwrap();
        if !cands.contains(&e) {
            cands.push(e);
        }
    }
    // the terms lie strictly below L and approach it, so e bounds them iff L ≤ e's states
    let bounds = |e: &Element| match plain(m, e) {
        Plain::Zero => false,
        Plain::P(r, _) => limit.iter().zip(&r).all(|(a, b)| a <= b),
        Plain::F(g) => limit.iter().zip(&g).all(|(a, b)| b.as_ref().map_or(true, |b| a <= b)),
    };
    let ubs: Vec<&Element> = cands.iter().filter(|e| bounds(e)).collect();
    ubs.iter()
        .filter(|u| ubs.iter().all(|v| oracle_leq(&plain(m, u), &plain(m, v))))
        .map(|u| (*u).clone())
        .collect()
}
