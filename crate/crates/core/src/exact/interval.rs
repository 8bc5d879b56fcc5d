//! Half-open intervals and the dyadic/trinary grid intervals.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::rational::Rational;

/// An interval `[lo, hi)`, closed at the top only when `hi = 1` so that the
/// unit interval is tiled exactly by the pieces of a full-branch map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HalfOpenInterval {
    lo: Rational,
    hi: Rational,
    closed_hi: bool,
}

impl HalfOpenInterval {
    /// `[lo, hi)`, closing the top end exactly when `hi = 1`.
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidInterval(format!("[{lo},{hi}) is empty")));
        }
        let closed_hi = hi.is_one();
        Ok(HalfOpenInterval { lo, hi, closed_hi })
    }

    /// `[lo, hi)` that stays open at the top even when `hi = 1`; images of
    /// half-open sets under increasing affine maps use this.
    pub fn new_open(lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidInterval(format!("[{lo},{hi}) is empty")));
        }
        Ok(HalfOpenInterval { lo, hi, closed_hi: false })
    }

    pub(crate) fn with_closure(lo: Rational, hi: Rational, closed_hi: bool) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidInterval(format!("[{lo},{hi}) is empty")));
        }
        if closed_hi && !hi.is_one() {
            return Err(Error::InvalidInterval(format!(
                "[{lo},{hi}] may only be closed when hi = 1"
            )));
        }
        Ok(HalfOpenInterval { lo, hi, closed_hi })
    }

    /// The full `[0, 1]`.
    pub fn unit() -> Self {
        HalfOpenInterval { lo: Rational::zero(), hi: Rational::one(), closed_hi: true }
    }

    /// `[0, 1)`.
    pub fn unit_open() -> Self {
        HalfOpenInterval { lo: Rational::zero(), hi: Rational::one(), closed_hi: false }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn closed_hi(&self) -> bool {
        self.closed_hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) * Rational::new(1, 2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if x < &self.lo {
            return false;
        }
        x < &self.hi || (self.closed_hi && x == &self.hi)
    }

    /// Membership in the open interior `(lo, hi)`.
    pub fn contains_interior(&self, x: &Rational) -> bool {
        x > &self.lo && x < &self.hi
    }

    /// Set containment `other ⊆ self`.
    pub fn contains_interval(&self, other: &Self) -> bool {
        if other.lo < self.lo || other.hi > self.hi {
            return false;
        }
        if other.hi == self.hi && other.closed_hi && !self.closed_hi {
            return false;
        }
        true
    }

    /// Containment of the closure of `self` in the open interval `(0, 1)`.
    pub fn closure_inside_open_unit(&self) -> bool {
        self.lo > Rational::zero() && self.hi < Rational::one()
    }

    /// Exact intersection; `None` when the interiors do not meet (single
    /// shared endpoints do not count).
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = if self.lo >= other.lo { self.lo.clone() } else { other.lo.clone() };
        let (hi, closed) = match self.hi.cmp(&other.hi) {
            std::cmp::Ordering::Less => (self.hi.clone(), self.closed_hi),
            std::cmp::Ordering::Greater => (other.hi.clone(), other.closed_hi),
            std::cmp::Ordering::Equal => (self.hi.clone(), self.closed_hi && other.closed_hi),
        };
        if lo >= hi {
            return None;
        }
        Some(HalfOpenInterval { lo, hi, closed_hi: closed })
    }
}

impl fmt::Display for HalfOpenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.closed_hi {
            write!(f, "[{},{}]", self.lo, self.hi)
        } else {
            write!(f, "[{},{})", self.lo, self.hi)
        }
    }
}

impl fmt::Debug for HalfOpenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::str::FromStr for HalfOpenInterval {
    type Err = Error;

    /// Parses `"[lo,hi)"` or `"[lo,1]"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed interval `{s}`"));
        let closed = match (s.starts_with('['), s.ends_with(')'), s.ends_with(']')) {
            (true, true, false) => false,
            (true, false, true) => true,
            _ => return Err(bad()),
        };
        let inner = &s[1..s.len() - 1];
        let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
        HalfOpenInterval::with_closure(lo.trim().parse()?, hi.trim().parse()?, closed)
    }
}

/// `[c/2^N, (c+1)/2^N)` with binary-fraction endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicInterval {
    pub c: BigUint,
    pub level: u32,
}

impl DyadicInterval {
    pub fn new(c: BigUint, level: u32) -> Result<Self> {
        if c.bits() > level as u64 {
            return Err(Error::InvalidInterval(format!(
                "dyadic coefficient {c} out of range for level {level}"
            )));
        }
        Ok(DyadicInterval { c, level })
    }

    /// The level-`level` dyadic interval containing `x ∈ [0, 1)`.
    pub fn containing(x: &Rational, level: u32) -> Result<Self> {
        if x < &Rational::zero() || x >= &Rational::one() {
            return Err(Error::InvalidInterval(format!("{x} outside [0,1)")));
        }
        let scaled = x * &Rational::from(BigInt::from(1u8) << level);
        let c = scaled.floor_int().to_biguint().expect("non-negative");
        Ok(DyadicInterval { c, level })
    }

    pub fn length(&self) -> Rational {
        Rational::from_big(BigInt::one(), BigInt::one() << self.level)
    }

    pub fn to_interval(&self) -> HalfOpenInterval {
        let den = BigInt::one() << self.level;
        let lo = Rational::from_big(BigInt::from(self.c.clone()), den.clone());
        let hi = Rational::from_big(BigInt::from(self.c.clone()) + 1, den);
        HalfOpenInterval::new(lo, hi).expect("dyadic intervals are nonempty")
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.to_interval().contains(x)
    }
}

/// `[c/3^N, (c+1)/3^N)` with trinary-fraction endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrinaryInterval {
    pub c: BigUint,
    pub level: u32,
}

impl TrinaryInterval {
    pub fn new(c: BigUint, level: u32) -> Result<Self> {
        if c >= BigUint::from(3u8).pow(level) {
            return Err(Error::InvalidInterval(format!(
                "trinary coefficient {c} out of range for level {level}"
            )));
        }
        Ok(TrinaryInterval { c, level })
    }

    pub fn containing(x: &Rational, level: u32) -> Result<Self> {
        if x < &Rational::zero() || x >= &Rational::one() {
            return Err(Error::InvalidInterval(format!("{x} outside [0,1)")));
        }
        let den = BigInt::from(3u8).pow(level);
        let scaled = x * &Rational::from(den);
        let c = scaled.floor_int().to_biguint().expect("non-negative");
        Ok(TrinaryInterval { c, level })
    }

    pub fn to_interval(&self) -> HalfOpenInterval {
        let den = BigInt::from(3u8).pow(self.level);
        let lo = Rational::from_big(BigInt::from(self.c.clone()), den.clone());
        let hi = Rational::from_big(BigInt::from(self.c.clone()) + 1, den);
        HalfOpenInterval::new(lo, hi).expect("trinary intervals are nonempty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: (i64, i64), hi: (i64, i64)) -> HalfOpenInterval {
        HalfOpenInterval::new(Rational::new(lo.0, lo.1), Rational::new(hi.0, hi.1)).unwrap()
    }

    #[test]
    fn disjoint_halves_have_empty_intersection() {
        let a = iv((0, 1), (1, 2));
        let b = iv((1, 2), (1, 1));
        assert!(a.intersect(&b).is_none());
    }

    #[test]
    fn subset_intersection_returns_the_subset() {
        let a = HalfOpenInterval::new(Rational::zero(), Rational::one()).unwrap();
        let b = iv((1, 3), (2, 3));
        assert_eq!(a.intersect(&b).unwrap(), b);
    }

    #[test]
    fn overlapping_intersection_from_endpoint_comparison() {
        // [1/4,3/4) ∩ [1/2,1] = [1/2,3/4)
        let a = iv((1, 4), (3, 4));
        let b = iv((1, 2), (1, 1));
        let got = a.intersect(&b).unwrap();
        assert_eq!(got, iv((1, 2), (3, 4)));
        assert!(!got.closed_hi());
    }

    #[test]
    fn closed_top_membership() {
        let r = iv((2, 3), (1, 1));
        assert!(r.closed_hi());
        assert!(r.contains(&Rational::one()));
        assert!(!r.contains_interior(&Rational::one()));
        let m = iv((1, 3), (2, 3));
        assert!(!m.contains(&Rational::new(2, 3)));
    }

    #[test]
    fn empty_interval_is_rejected() {
        assert!(HalfOpenInterval::new(Rational::one(), Rational::zero()).is_err());
        assert!(HalfOpenInterval::new(Rational::zero(), Rational::zero()).is_err());
    }

    #[test]
    fn dyadic_and_trinary_denote_grid_cells() {
        let d = DyadicInterval::containing(&Rational::new(5, 8), 3).unwrap();
        assert_eq!(d.c, BigUint::from(5u8));
        assert_eq!(d.to_interval(), iv((5, 8), (6, 8)));
        let t = TrinaryInterval::containing(&Rational::new(5, 8), 2).unwrap();
        assert_eq!(t.c, BigUint::from(5u8));
        assert_eq!(t.to_interval(), iv((5, 9), (6, 9)));
    }

    #[test]
    fn grid_coefficients_are_range_checked() {
        assert!(DyadicInterval::new(BigUint::from(4u8), 2).is_err());
        assert!(TrinaryInterval::new(BigUint::from(9u8), 2).is_err());
    }
}
