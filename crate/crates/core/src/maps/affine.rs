//! One-dimensional affine actions `u ↦ c + d·u`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{HalfOpenInterval, Rational};

/// The per-coordinate piece of a linear diagonal map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffinePair {
    offset: Rational,
    slope: Rational,
}

/// What a halving/doubling affine action does to a binary expansion:
/// `u/2` and `(u+1)/2` push a leading digit, `2u` and `2u−1` pop one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BitOp {
    Push(bool),
    Pop(bool),
}

impl AffinePair {
    pub fn new(offset: Rational, slope: Rational) -> Result<Self> {
        if slope.is_zero() {
            return Err(Error::BadParameter("affine slope must be nonzero".into()));
        }
        Ok(AffinePair { offset, slope })
    }

    pub fn identity() -> Self {
        AffinePair { offset: Rational::zero(), slope: Rational::one() }
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn slope(&self) -> &Rational {
        &self.slope
    }

    pub fn apply(&self, u: &Rational) -> Rational {
        &self.offset + &self.slope * u
    }

    pub fn invert(&self) -> Self {
        let slope = self.slope.recip().expect("slope is nonzero");
        AffinePair { offset: -(&self.offset * &slope), slope }
    }

    /// `after ∘ self`: first apply `self`, then `after`.
    pub fn then(&self, after: &AffinePair) -> Self {
        AffinePair {
            offset: &after.offset + &after.slope * &self.offset,
            slope: &after.slope * &self.slope,
        }
    }

    /// Image of a half-open interval. Requires a positive slope; the result
    /// follows the half-open convention (closed top only at 1), so it is the
    /// exact image for half-open inputs and the canonical tiling box when the
    /// input was closed at 1.
    pub fn interval_image(&self, iv: &HalfOpenInterval) -> HalfOpenInterval {
        assert!(
            !self.slope.is_negative(),
            "interval images require positive slopes"
        );
        let lo = self.apply(iv.lo());
        let hi = self.apply(iv.hi());
        let closed = iv.closed_hi() && hi.is_one();
        HalfOpenInterval::with_closure(lo, hi, closed).expect("positive slope keeps lo < hi")
    }

    /// Preimage of a half-open interval under this (positive-slope) action.
    pub fn interval_preimage(&self, iv: &HalfOpenInterval) -> HalfOpenInterval {
        self.invert().interval_image(iv)
    }

    /// Classifies the action as a binary-digit operation, when it is one of
    /// the four halving/doubling forms.
    pub fn bit_op(&self) -> Option<BitOp> {
        let half = Rational::new(1, 2);
        if self.slope == half {
            if self.offset.is_zero() {
                return Some(BitOp::Push(false));
            }
            if self.offset == half {
                return Some(BitOp::Push(true));
            }
        } else if self.slope == Rational::int(2) {
            if self.offset.is_zero() {
                return Some(BitOp::Pop(false));
            }
            if self.offset == Rational::int(-1) {
                return Some(BitOp::Pop(true));
            }
        }
        None
    }
}

impl fmt::Display for AffinePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.offset, self.slope)
    }
}

impl fmt::Debug for AffinePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for AffinePair {
    type Err = Error;

    /// Parses `"(offset,slope)"` with rational components.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (c, d) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("malformed affine pair `{s}`")))?;
        AffinePair::new(c.trim().parse()?, d.trim().parse()?)
    }
}
