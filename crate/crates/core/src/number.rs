//! Exact numbers: nonnegative rationals, canonical dyadics, and the extended
//! reals `a + b·√d` / `∞` used as declared suprema of numeric chains.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Parses `p/q`, `p` or a decimal-free integer into a rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `2^-k` as a rational.
pub fn pow2_inv(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Returns `true` when the denominator of `q` is a power of two.
pub fn is_dyadic(q: &BigRational) -> bool {
    let d = q.denom().magnitude();
    d.count_ones() == 1
}

/// A nonnegative dyadic rational `numerator / 2^level` in canonical form:
/// the numerator is odd, or the value is zero with level zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigUint,
    level: u32,
}

impl Dyadic {
    pub fn new(numerator: impl Into<BigUint>, level: u32) -> Self {
        let mut numerator = numerator.into();
        let mut level = level;
        if numerator.is_zero() {
            return Dyadic { numerator, level: 0 };
        }
        while level > 0 && numerator.is_even() {
            numerator >>= 1u32;
            level -= 1;
        }
        Dyadic { numerator, level }
    }

    pub fn zero() -> Self {
        Dyadic::new(0u32, 0)
    }

    pub fn integer(n: u64) -> Self {
        Dyadic::new(n, 0)
    }

    pub fn from_rational(q: &BigRational) -> Option<Self> {
        if q.is_negative() || !is_dyadic(q) {
            return None;
        }
        let level = q.denom().magnitude().bits() as u32 - 1;
        Some(Dyadic::new(q.numer().magnitude().clone(), level))
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    /// The least `i` with this value in `2^-i ℕ`.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Numerator of the value written over `2^level`, when representable.
    pub fn numerator_at(&self, level: u32) -> Option<BigUint> {
        (level >= self.level).then(|| &self.numerator << (level - self.level))
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.numerator.clone()),
            BigInt::one() << self.level as usize,
        )
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let level = self.level.max(other.level);
        let a = self.numerator_at(level).unwrap();
        let b = other.numerator_at(level).unwrap();
        Dyadic::new(a + b, level)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let level = self.level.max(other.level);
        self.numerator_at(level)
            .unwrap()
            .cmp(&other.numerator_at(level).unwrap())
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, BigUint::one() << self.level as usize)
        }
    }
}

/// Extended nonnegative real of the form `a + b·√d` (d squarefree) or `∞`.
///
/// Only the operations needed for declared chain suprema are exact:
/// comparison and addition are total when both sides share a radicand
/// (or one of them is rational) and `None` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Real {
    Finite {
        rational: BigRational,
        coeff: BigRational,
        radicand: BigUint,
    },
    Infinity,
}

impl Real {
    pub fn rational(q: BigRational) -> Self {
        Real::Finite {
            rational: q,
            coeff: BigRational::zero(),
            radicand: BigUint::one(),
        }
    }

    pub fn from_u64(n: u64) -> Self {
        Real::rational(int(n))
    }

    pub fn zero() -> Self {
        Real::from_u64(0)
    }

    /// `√q` for a nonnegative rational; rational results are returned exactly.
    pub fn sqrt(q: &BigRational) -> Self {
        // √(p/r) = √(p·r) / r
        let p = q.numer().magnitude().clone();
        let r = q.denom().magnitude().clone();
        let n = &p * &r;
        let (square, free) = split_square(&n);
        let coeff = BigRational::new(BigInt::from(square), BigInt::from(r));
        Real::surd(BigRational::zero(), coeff, free)
    }

    fn surd(rational: BigRational, coeff: BigRational, radicand: BigUint) -> Self {
        if coeff.is_zero() || radicand.is_one() {
            Real::rational(rational + coeff)
        } else {
            Real::Finite {
                rational,
                coeff,
                radicand,
            }
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Real::Infinity)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Real::Finite {
                rational, coeff, ..
            } if coeff.is_zero() => Some(rational),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn checked_add(&self, other: &Real) -> Option<Real> {
        match (self, other) {
            (Real::Infinity, _) | (_, Real::Infinity) => Some(Real::Infinity),
            (
                Real::Finite {
                    rational: a1,
                    coeff: b1,
                    radicand: d1,
                },
                Real::Finite {
                    rational: a2,
                    coeff: b2,
                    radicand: d2,
                },
            ) => {
                let d = common_radicand(b1, d1, b2, d2)?;
                Some(Real::surd(a1 + a2, b1 + b2, d))
            }
        }
    }

    pub fn scale(&self, q: &BigRational) -> Real {
        match self {
            Real::Infinity if q.is_zero() => Real::zero(),
            Real::Infinity => Real::Infinity,
            Real::Finite {
                rational,
                coeff,
                radicand,
            } => Real::surd(rational * q, coeff * q, radicand.clone()),
        }
    }

    /// Largest dyadic `k/2^n` strictly below a finite positive value.
    pub fn dyadic_below(&self, n: usize) -> Option<Dyadic> {
        let scale = BigRational::from_integer(BigInt::one() << n);
        let scaled = self.scale(&scale);
        let floor = scaled.floor()?;
        // strictly below: step down when the value is hit exactly
        let k = if Real::rational(BigRational::from_integer(BigInt::from(floor.clone())))
            == scaled
        {
            if floor.is_zero() {
                return None;
            }
            floor - 1u32
        } else {
            floor
        };
        Some(Dyadic::new(k, n as u32))
    }

    /// Integer part of a finite nonnegative value.
    pub fn floor(&self) -> Option<BigUint> {
        if self.is_infinite() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return q.floor().to_integer().to_biguint().or_else(|| Some(BigUint::zero()));
        }
        let int_real = |n: &BigUint| Real::rational(BigRational::from_integer(BigInt::from(n.clone())));
        let above = |n: &BigUint| int_real(n).partial_cmp(self).map(|o| o == Ordering::Greater);
        // exponential search for an integer above, then bisect with exact comparisons
        let mut hi = BigUint::one();
        while !above(&hi)? {
            hi <<= 1u32;
        }
        let mut lo = BigUint::zero();
        while &hi - &lo > BigUint::one() {
            let mid = (&lo + &hi) >> 1u32;
            if above(&mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(lo)
    }

    pub fn to_f64(&self) -> Option<f64> {
        match self {
            Real::Infinity => Some(f64::INFINITY),
            Real::Finite {
                rational,
                coeff,
                radicand,
            } => Some(
                rational.to_f64()? + coeff.to_f64()? * radicand.to_f64()?.sqrt(),
            ),
        }
    }
}

fn common_radicand(
    b1: &BigRational,
    d1: &BigUint,
    b2: &BigRational,
    d2: &BigUint,
) -> Option<BigUint> {
    if b1.is_zero() {
        Some(d2.clone())
    } else if b2.is_zero() || d1 == d2 {
        Some(d1.clone())
    } else {
        None
    }
}

/// Writes `n = s²·f` with `f` squarefree.
fn split_square(n: &BigUint) -> (BigUint, BigUint) {
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut rest = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        let mut count = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        for _ in 0..count / 2 {
            square *= &p;
        }
        if count % 2 == 1 {
            free *= &p;
        }
        p += 1u32;
    }
    free *= rest;
    (square, free)
}

/// Sign of `a + b√d`.
fn surd_sign(a: &BigRational, b: &BigRational, d: &BigUint) -> Ordering {
    let sa = a.cmp(&BigRational::zero());
    let sb = b.cmp(&BigRational::zero());
    if sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    // opposite signs: compare a² with b²d
    let a2 = a * a;
    let b2d = b * b * BigRational::from_integer(BigInt::from(d.clone()));
    match a2.cmp(&b2d) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Real::Infinity, Real::Infinity) => Some(Ordering::Equal),
            (Real::Infinity, _) => Some(Ordering::Greater),
            (_, Real::Infinity) => Some(Ordering::Less),
            (
                Real::Finite {
                    rational: a1,
                    coeff: b1,
                    radicand: d1,
                },
                Real::Finite {
                    rational: a2,
                    coeff: b2,
                    radicand: d2,
                },
            ) => {
                let neg_b2 = -b2.clone();
                let d = common_radicand(b1, d1, &neg_b2, d2)?;
                Some(surd_sign(&(a1 - a2), &(b1 - b2), &d))
            }
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Infinity => write!(f, "∞"),
            Real::Finite {
                rational,
                coeff,
                radicand,
            } => {
                if coeff.is_zero() {
                    return write!(f, "{}", fmt_rational(rational));
                }
                if !rational.is_zero() {
                    write!(f, "{}+", fmt_rational(rational))?;
                }
                if coeff.is_one() {
                    write!(f, "√{}", radicand)
                } else {
                    write!(f, "{}·√{}", fmt_rational(coeff), radicand)
                }
            }
        }
    }
}

/// `⌊√q·2ⁿ⌋/2ⁿ`, the n-th binary truncation of `√q` from below.
pub fn sqrt_truncation(q: &BigRational, n: usize) -> BigRational {
    let scaled = q * BigRational::from_integer(BigInt::one() << (2 * n));
    let floor = scaled.floor().to_integer();
    let root = floor.magnitude().sqrt();
    BigRational::new(BigInt::from(root), BigInt::one() << n)
}

/// Parses a level: a rational, `inf`, or `sqrt(q)`.
pub fn parse_real(text: &str) -> Option<Real> {
    let text = text.trim();
    if text == "inf" || text == "∞" {
        return Some(Real::Infinity);
    }
    if let Some(inner) = text.strip_prefix("sqrt(").and_then(|t| t.strip_suffix(')')) {
        let q = parse_rational(inner)?;
        return (!q.is_negative()).then(|| Real::sqrt(&q));
    }
    parse_rational(text).filter(|q| !q.is_negative()).map(Real::rational)
}

/// n-th term of the Calkin–Wilf enumeration of the positive rationals
/// (`n ≥ 1`), computed from Stern's diatomic sequence.
pub fn calkin_wilf(n: u64) -> BigRational {
    fn fusc(mut n: u64) -> u64 {
        let (mut a, mut b) = (1u64, 0u64);
        while n > 0 {
            if n & 1 == 0 {
                a += b;
            } else {
                b += a;
            }
            n >>= 1;
        }
        b
    }
    rat(fusc(n) as i64, fusc(n + 1) as i64)
}

/// Inverse of the Cantor pairing function.
pub fn cantor_unpair(n: u64) -> (u64, u64) {
    let w = (((8 * n + 1) as f64).sqrt() as u64 - 1) / 2;
    let mut w = w;
    while w * (w + 1) / 2 > n {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= n {
        w += 1;
    }
    let t = w * (w + 1) / 2;
    let y = n - t;
    (w - y, y)
}
