//! Registry of concrete families with closed-form rules, and the maps
//! between them.

pub mod dyadic;
pub mod nat;
pub mod rational;

use crate::element::Value;
use crate::error::{Error, Result};
use crate::finite::FiniteMonoid;
use crate::order::{MonoidHandle, MonoidMap, Preimage, Witness};

pub use dyadic::{Doubled, DyadicLattice, Variant};
pub use nat::{Nat, NatInf, NatPow};
pub use rational::Rational;

fn parse_param<T: std::str::FromStr>(spec: &str, word: Option<&str>) -> Result<T> {
    word.and_then(|w| w.parse().ok())
        .ok_or_else(|| Error::UnknownFamily(spec.to_string()))
}

/// Resolves a family specification such as `nat`, `nat-pow 2`,
/// `dyadic 3`, `doubled T1`, `chain 4`, `saturating 3` or `grid 2 3`.
pub fn family(spec: &str) -> Result<MonoidHandle> {
    let words: Vec<&str> = spec.split_whitespace().collect();
    let arg = |i: usize| words.get(i).copied();
    let h: MonoidHandle = match words.as_slice() {
        ["nat"] => Nat::handle(),
        ["nat-inf"] => NatInf::handle(),
        ["nat-pow", _] => NatPow::handle(parse_param(spec, arg(1))?),
        ["rational"] => Rational::handle(),
        ["dyadic", _] => DyadicLattice::handle(parse_param(spec, arg(1))?),
        ["doubled", "T1"] | ["T1"] => Doubled::handle(Variant::T1),
        ["doubled", "T2"] | ["T2"] => Doubled::handle(Variant::T2),
        ["chain", _] => FiniteMonoid::chain(parse_param(spec, arg(1))?).handle(),
        ["saturating", _] => FiniteMonoid::saturating(parse_param(spec, arg(1))?).handle(),
        ["grid", _, _] => {
            let (a, b): (usize, usize) = (parse_param(spec, arg(1))?, parse_param(spec, arg(2))?);
            if a == 0 || b == 0 {
                return Err(Error::UnknownFamily(spec.to_string()));
            }
            FiniteMonoid::grid(a, b).handle()
        }
        ["two-point"] => FiniteMonoid::two_point().handle(),
        ["random", _] => FiniteMonoid::random(parse_param(spec, arg(1))?).handle(),
        _ => return Err(Error::UnknownFamily(spec.to_string())),
    };
    Ok(h)
}

/// The closed-form rules wired into a family's handle.
#[derive(Clone, Debug)]
pub struct FamilyRules {
    pub handle: MonoidHandle,
    pub order: &'static str,
    pub add: &'static str,
    pub way_below: &'static str,
    pub sup: &'static str,
}

pub fn family_rules(spec: &str) -> Result<FamilyRules> {
    let handle = family(spec)?;
    let id = handle.family().to_string();
    let (order, add, way_below, sup) = match id.as_str() {
        "nat" => ("usual order", "a + b", "x ≪ y iff x ≤ y", "non-stationary chains are unbounded"),
        "nat-inf" => (
            "usual order, ∞ on top",
            "a + b, ∞ absorbing",
            "x ≪ y iff x is finite and x ≤ y",
            "non-stationary chains have supremum ∞",
        ),
        "nat^d" => (
            "coordinatewise",
            "coordinatewise a + b",
            "x ≪ y iff x ≤ y",
            "non-stationary chains are unbounded",
        ),
        "rational" => (
            "usual order",
            "a + b",
            "x ≪ y iff x < y or x = 0",
            "the declared limit when rational; none when irrational or unbounded",
        ),
        "T1" => (
            "a′ ≤ b iff a ≤ b; a ≤ b′ iff a < b; a ≤ b and a′ ≤ b′ iff a ≤ b",
            "bases add; the sum is primed when either summand is",
            "x ≪ y iff x < y or x = y ∈ S",
            "r′ when the base values approach a dyadic r; none otherwise",
        ),
        "T2" => (
            "a′ ≤ b iff a < b; a ≤ b′ iff a < b; a ≤ b and a′ ≤ b′ iff a ≤ b",
            "bases add; the sum is primed when either summand is",
            "x ≪ y iff x ≤ y",
            "none: r and r′ are incomparable minimal upper bounds",
        ),
        s if s.starts_with("dyadic(") => (
            "usual order",
            "a + b",
            "x ≪ y iff x ≤ y",
            "non-stationary chains are unbounded",
        ),
        _ => (
            "order table",
            "addition table",
            "x ≪ y iff x ≤ y",
            "every increasing chain is stationary",
        ),
    };
    Ok(FamilyRules {
        handle,
        order,
        add,
        way_below,
        sup,
    })
}

/// Re-tags an element's payload into another family.
fn retag(cod: &MonoidHandle, value: &Value) -> Result<crate::element::Element> {
    crate::order::element(cod.as_ref(), value.clone())
}

/// The inclusion `2^{-i}ℕ ⊂ 2^{-(i+1)}ℕ`.
pub fn dyadic_inclusion(i: u32) -> MonoidMap {
    dyadic_inclusion_between(i, i + 1)
}

/// The inclusion `2^{-i}ℕ ⊂ 2^{-j}ℕ` for `i ≤ j`.
pub fn dyadic_inclusion_between(i: u32, j: u32) -> MonoidMap {
    assert!(i <= j, "inclusion needs i ≤ j");
    let cod = DyadicLattice::handle(j);
    let c = cod.clone();
    MonoidMap::new(format!("incl[{i}→{j}]"), DyadicLattice::handle(i), cod, move |x| retag(&c, &x.value))
        .with_ambient(|a| Some(a.to_vec()))
}

/// `ℕ ↪ ℕ∪{∞}`, with the closed-form preimage of a finite value.
pub fn nat_inclusion() -> MonoidMap {
    let cod = NatInf::handle();
    let c = cod.clone();
    let dom = Nat::handle();
    let d = dom.clone();
    MonoidMap::new("incl[ℕ→ℕ∪∞]", dom, cod, move |x| retag(&c, &x.value))
        .with_ambient(|a| Some(a.to_vec()))
        .with_preimage(move |y, _| match y.value {
            Value::Nat(n) => Preimage::Found(d.elem(Value::Nat(n))),
            _ => Preimage::Absent(Witness::rule("∞ is not the image of a natural number")),
        })
}

/// `Tᵢ ↪ Tⱼ` for `i ≤ j`, the index inclusion of chain monoids.
pub fn chain_inclusion(i: usize, j: usize) -> MonoidMap {
    assert!(i <= j, "inclusion needs i ≤ j");
    let cod = FiniteMonoid::chain(j).handle();
    let c = cod.clone();
    MonoidMap::new(format!("incl[T{i}→T{j}]"), FiniteMonoid::chain(i).handle(), cod, move |x| {
        retag(&c, &x.value)
    })
}

/// `T₁ → ℚ⁺` forgetting primes.
pub fn forget_prime() -> MonoidMap {
    let cod = Rational::handle();
    let c = cod.clone();
    MonoidMap::new("forget-prime", Doubled::handle(Variant::T1), cod, move |x| match &x.value {
        Value::Doubled { base, .. } => retag(&c, &Value::Rational(base.to_rational())),
        v => Err(Error::invalid("T1", format!("{v} is not a doubled dyadic"))),
    })
    .with_ambient(|a| Some(a.to_vec()))
}

/// Resolves a map specification: `dyadic-inclusion i`, `nat-inclusion`,
/// `chain-inclusion i j`, `forget-prime` or `identity <family>`.
pub fn map(spec: &str) -> Result<MonoidMap> {
    let words: Vec<&str> = spec.split_whitespace().collect();
    let bad = || Error::Validation {
        object: spec.to_string(),
        reason: "unknown map".into(),
    };
    let num = |w: &str| w.parse::<usize>().map_err(|_| bad());
    match words.as_slice() {
        ["dyadic-inclusion", i] => Ok(dyadic_inclusion(num(i)? as u32)),
        ["nat-inclusion"] => Ok(nat_inclusion()),
        ["chain-inclusion", i, j] if num(i)? <= num(j)? => Ok(chain_inclusion(num(i)?, num(j)?)),
        ["forget-prime"] => Ok(forget_prime()),
        ["identity", rest @ ..] if !rest.is_empty() => Ok(MonoidMap::identity(family(&rest.join(" "))?)),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_resolves_every_family() {
        for spec in ["nat", "nat-inf", "nat-pow 2", "rational", "dyadic 3", "doubled T1", "T2", "chain 3", "saturating 2", "grid 2 2"] {
            assert!(family(spec).is_ok(), "{spec}");
            assert!(family_rules(spec).is_ok(), "{spec}");
        }
        assert!(matches!(family("reals"), Err(Error::UnknownFamily(_))));
        assert!(matches!(family("dyadic x"), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn dyadic_inclusion_keeps_values() {
        let f = dyadic_inclusion(1);
        let x = f.dom.parse_element("1/2").unwrap();
        assert_eq!(f.apply(&x).unwrap().to_string(), "1/2");
        assert_eq!(f.apply(&x).unwrap().family.as_ref(), "dyadic(2)");
    }
}
