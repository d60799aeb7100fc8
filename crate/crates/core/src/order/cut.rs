//! Closed-form way-below sets for families ordered along a single level.
//!
//! The set `W(y) = {z : z ≪ y}` of such a family is a cut: every element of
//! strictly smaller level, plus possibly one distinguished element at the
//! level itself (a closed tip carrying that element's tag). Order is
//! inclusion of cuts, and `x ≪ y` is membership of `x` in `W(y)`.

use std::cmp::Ordering;
use std::fmt;

use crate::number::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tip {
    Open,
    Closed(u8),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub level: Real,
    pub tip: Tip,
}

impl Cut {
    pub fn closed(level: Real) -> Self {
        Cut {
            level,
            tip: Tip::Closed(0),
        }
    }

    pub fn tagged(level: Real, tag: u8) -> Self {
        Cut {
            level,
            tip: Tip::Closed(tag),
        }
    }

    pub fn open(level: Real) -> Self {
        Cut {
            level,
            tip: Tip::Open,
        }
    }

    /// The element is compact exactly when it belongs to its own cut.
    pub fn compact(&self) -> bool {
        matches!(self.tip, Tip::Closed(_))
    }

    /// `W(self) ⊆ W(other)`; `None` when the levels are incomparable.
    pub fn within(&self, other: &Cut) -> Option<bool> {
        Some(match self.level.partial_cmp(&other.level)? {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => match (self.tip, other.tip) {
                (Tip::Open, _) => true,
                (Tip::Closed(a), Tip::Closed(b)) => a == b,
                (Tip::Closed(_), Tip::Open) => false,
            },
        })
    }

    /// `self ∈ W(other)`, i.e. the element with this cut is way below the
    /// element with cut `other`.
    pub fn way_below(&self, other: &Cut) -> Option<bool> {
        Some(match self.level.partial_cmp(&other.level)? {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => other.compact() && self.within(other)?,
        })
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tip {
            Tip::Open => write!(f, "<{}", self.level),
            Tip::Closed(0) => write!(f, "≤{}", self.level),
            Tip::Closed(t) => write!(f, "≤{}#{}", self.level, t),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusion_and_membership() {
        let one = Cut::closed(Real::from_u64(1));
        let one_open = Cut::open(Real::from_u64(1));
        let one_alt = Cut::tagged(Real::from_u64(1), 1);
        let two = Cut::closed(Real::from_u64(2));
        assert_eq!(one_open.within(&one), Some(true));
        assert_eq!(one.within(&one_open), Some(false));
        assert_eq!(one.within(&one_alt), Some(false));
        assert_eq!(one_open.way_below(&one), Some(true));
        assert_eq!(one_open.way_below(&one_open), Some(false));
        assert_eq!(one.way_below(&one), Some(true));
        assert_eq!(one_alt.way_below(&two), Some(true));
        assert!(!one_open.compact());
    }
}
