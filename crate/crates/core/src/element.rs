//! Tagged symbolic elements shared by every monoid family.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::completion::Interval;
use crate::limits::AscSeq;
use crate::number::{fmt_rational, Dyadic, Real};

pub type FamilyId = Arc<str>;

#[derive(Clone, Debug)]
pub struct Element {
    pub family: FamilyId,
    pub value: Value,
}

impl Element {
    pub fn new(family: &FamilyId, value: Value) -> Self {
        Element {
            family: family.clone(),
            value,
        }
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.value == other.value
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Payloads of every family. Intervals compare by identity or equal tops,
/// sequences by identity; semantic equality of either is the budgeted
/// two-way order check.
#[derive(Clone, Debug)]
pub enum Value {
    Nat(u64),
    Infinity,
    Dyadic(Dyadic),
    Rational(BigRational),
    Doubled { base: Dyadic, primed: bool },
    Index(usize),
    Tuple(Vec<u64>),
    Interval(Arc<Interval>),
    Sequence(Arc<AscSeq>),
    Model(ModelValue),
}

/// Element of the `V ⊔ LAff⁺⁺` model: zero, a nonzero projection class, or
/// a strictly positive function given by its values at the extreme traces.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelValue {
    Zero,
    P(Box<Value>),
    F(Vec<Real>),
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        use Value::*;
        match (self, other) {
            (Nat(a), Nat(b)) => a == b,
            (Infinity, Infinity) => true,
            (Dyadic(a), Dyadic(b)) => a == b,
            (Rational(a), Rational(b)) => a == b,
            (
                Doubled {
                    base: a,
                    primed: p,
                },
                Doubled {
                    base: b,
                    primed: q,
                },
            ) => a == b && p == q,
            (Index(a), Index(b)) => a == b,
            (Tuple(a), Tuple(b)) => a == b,
            (Interval(a), Interval(b)) => Arc::ptr_eq(a, b) || **a == **b,
            (Sequence(a), Sequence(b)) => Arc::ptr_eq(a, b),
            (Model(a), Model(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Nat(n) => write!(f, "{n}"),
            Value::Infinity => write!(f, "∞"),
            Value::Dyadic(d) => write!(f, "{d}"),
            Value::Rational(q) => write!(f, "{}", fmt_rational(q)),
            Value::Doubled { base, primed } => {
                write!(f, "{base}{}", if *primed { "′" } else { "" })
            }
            Value::Index(i) => write!(f, "#{i}"),
            Value::Tuple(t) => {
                let parts: Vec<String> = t.iter().map(u64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            Value::Interval(i) => write!(f, "{i}"),
            Value::Sequence(s) => write!(f, "{s}"),
            Value::Model(m) => write!(f, "{m}"),
        }
    }
}

impl fmt::Display for ModelValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelValue::Zero => write!(f, "0"),
            ModelValue::P(v) => write!(f, "P[{v}]"),
            ModelValue::F(t) => {
                let parts: Vec<String> = t.iter().map(Real::to_string).collect();
                write!(f, "F({})", parts.join(","))
            }
        }
    }
}
