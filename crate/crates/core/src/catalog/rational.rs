//! ℚ⁺: in PreCu but not in 𝒞.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::element::{Element, FamilyId, Value};
use crate::error::{Error, Result};
use crate::number::{calkin_wilf, fmt_rational, int, parse_rational, pow2_inv, sqrt_truncation, Real};
use crate::order::{
    cut_leq, cut_way_below, Budget, Chain, Class, Cut, Monoid, MonoidHandle, Probe, SupVerdict,
    Verdict, Witness,
};

#[derive(Debug)]
pub struct Rational {
    id: FamilyId,
}

impl Rational {
    pub fn handle() -> MonoidHandle {
        Arc::new(Rational {
            id: "rational".into(),
        })
    }
}

fn q_of(x: &Element) -> &BigRational {
    match &x.value {
        Value::Rational(q) => q,
        _ => unreachable!("validated ℚ⁺ payload"),
    }
}

/// `x·(1 − 2^{-(n+1)})`, strictly increasing to `x`.
pub fn scaled_approximants(h: &MonoidHandle, x: BigRational, label: &str) -> Chain {
    let m = h.clone();
    let ambient = vec![Real::rational(x.clone())];
    Chain::lazy(
        label,
        move |n| m.elem(Value::Rational(&x * (BigRational::one() - pow2_inv(n + 1)))),
        Some(ambient),
    )
    .rapid(true)
}

/// Binary truncations `⌊√2·2ⁿ⌋/2ⁿ`, bounded by 2, with no supremum in ℚ⁺.
pub fn sqrt2_truncations(h: &MonoidHandle) -> Chain {
    let m = h.clone();
    let two = int(2);
    Chain::lazy(
        "sqrt2-truncations",
        move |n| m.elem(Value::Rational(sqrt_truncation(&two, n))),
        Some(vec![Real::sqrt(&int(2))]),
    )
}

/// `1 − 2⁻ⁿ` for n ≥ 0.
pub fn one_minus_pow2(h: &MonoidHandle) -> Chain {
    let m = h.clone();
    Chain::lazy(
        "1-2^-n",
        move |n| m.elem(Value::Rational(BigRational::one() - pow2_inv(n))),
        Some(vec![Real::from_u64(1)]),
    )
}

impl Monoid for Rational {
    fn family(&self) -> &FamilyId {
        &self.id
    }
    fn claimed_class(&self) -> Class {
        Class::PreCu
    }
    fn validate(&self, value: &Value) -> Result<()> {
        match value {
            Value::Rational(q) if !q.is_negative() => Ok(()),
            v => Err(Error::invalid("rational", format!("{v} is not a nonnegative rational"))),
        }
    }
    fn zero(&self) -> Element {
        self.elem(Value::Rational(BigRational::zero()))
    }
    fn add(&self, x: &Element, y: &Element) -> Element {
        self.elem(Value::Rational(q_of(x) + q_of(y)))
    }
    fn leq(&self, x: &Element, y: &Element, _: &mut Budget) -> Verdict {
        cut_leq(self, x, y)
    }
    fn way_below_rule(&self, x: &Element, y: &Element, _: &mut Budget) -> Option<Verdict> {
        cut_way_below(self, x, y)
    }
    fn sup_rule(&self, c: &Chain, _: &mut Budget) -> SupVerdict {
        let witness = || Witness::Chain {
            label: c.label.clone(),
            prefix: c.prefix(8),
        };
        match c.ambient.as_deref() {
            Some([l]) => match l.as_rational() {
                Some(q) => SupVerdict::Sup {
                    value: self.elem(Value::Rational(q.clone())),
                    witness: Witness::rule(format!(
                        "{} bounds {} and the terms approach it, so no smaller rational bounds the chain",
                        fmt_rational(q),
                        c.label
                    )),
                },
                None if l.is_infinite() => SupVerdict::no_sup(witness(), "the chain is unbounded"),
                None => SupVerdict::no_sup(
                    witness(),
                    format!(
                        "the terms approach {l} ∉ ℚ⁺: every rational upper bound exceeds {l} and admits a smaller one"
                    ),
                ),
            },
            _ => SupVerdict::Unknown(format!("chain {} declares no ambient supremum", c.label)),
        }
    }
    fn approximants(&self, x: &Element) -> Option<Chain> {
        let q = q_of(x).clone();
        if q.is_zero() {
            return Some(Chain::constant("const 0", x.clone()).rapid(true));
        }
        let h: MonoidHandle = Arc::new(Rational { id: self.id.clone() });
        Some(scaled_approximants(&h, q.clone(), &format!("{}·(1-2^-(n+1))", fmt_rational(&q))))
    }
    fn enumerate(&self, n: usize) -> Option<Element> {
        Some(if n == 0 {
            self.zero()
        } else {
            self.elem(Value::Rational(calkin_wilf(n as u64)))
        })
    }
    fn cut(&self, x: &Element) -> Option<Cut> {
        let q = q_of(x);
        Some(if q.is_zero() {
            Cut::closed(Real::zero())
        } else {
            Cut::open(Real::rational(q.clone()))
        })
    }
    fn shadow(&self, x: &Element) -> Option<Vec<Real>> {
        Some(vec![Real::rational(q_of(x).clone())])
    }
    fn antisymmetry(&self) -> &'static str {
        "total order of the rationals"
    }
    fn probes(&self) -> Vec<Probe> {
        let h: MonoidHandle = Arc::new(Rational { id: self.id.clone() });
        let r = |q: BigRational| self.elem(Value::Rational(q));
        vec![
            Probe {
                chain: one_minus_pow2(&h),
                bound: Some(r(int(1))),
            },
            Probe {
                chain: sqrt2_truncations(&h),
                bound: Some(r(int(2))),
            },
            Probe {
                chain: {
                    let m = h.clone();
                    Chain::lazy("n", move |n| m.elem(Value::Rational(int(n as u64))), Some(vec![Real::Infinity]))
                },
                bound: None,
            },
        ]
    }
    fn parse_element(&self, text: &str) -> Result<Element> {
        let q = parse_rational(text)
            .ok_or_else(|| Error::invalid("rational", format!("cannot parse `{text}`")))?;
        let v = Value::Rational(q);
        self.validate(&v)?;
        Ok(self.elem(v))
    }
}
