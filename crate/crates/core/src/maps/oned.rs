//! Full-branch piecewise-affine maps of the unit interval (τ and σ).

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exact::{HalfOpenInterval, Rational};
use crate::maps::affine::AffinePair;

/// A piecewise-affine interval map whose branches tile `[0, 1]` and each map
/// their piece onto the full interval. The endpoint and cylinder machinery
/// relies on the full-branch property, so the constructor enforces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneDMap {
    name: String,
    branches: Vec<(HalfOpenInterval, AffinePair)>,
}

impl OneDMap {
    pub fn new(name: impl Into<String>, branches: Vec<(HalfOpenInterval, AffinePair)>) -> Result<Self> {
        let name = name.into();
        if branches.is_empty() {
            return Err(Error::InvalidMap(format!("{name}: no branches")));
        }
        let mut cursor = Rational::zero();
        for (iv, pair) in &branches {
            if iv.lo() != &cursor {
                return Err(Error::InvalidMap(format!(
                    "{name}: branch domains must tile [0,1] in order; gap at {cursor}"
                )));
            }
            if pair.slope() <= &Rational::one() {
                return Err(Error::InvalidMap(format!(
                    "{name}: branches must expand (slope > 1)"
                )));
            }
            if !pair.apply(iv.lo()).is_zero() || !pair.apply(iv.hi()).is_one() {
                return Err(Error::InvalidMap(format!(
                    "{name}: branch on {iv} is not onto [0,1]"
                )));
            }
            cursor = iv.hi().clone();
        }
        if !cursor.is_one() {
            return Err(Error::InvalidMap(format!("{name}: branches stop at {cursor}")));
        }
        Ok(OneDMap { name, branches })
    }

    /// The map τ: x ↦ 3x, 3x−1, 3x−2 on thirds of the unit interval.
    pub fn tau() -> Self {
        let r = Rational::new;
        OneDMap::new(
            "tau",
            vec![
                (iv(r(0, 1), r(1, 3)), pair(r(0, 1), r(3, 1))),
                (iv(r(1, 3), r(2, 3)), pair(r(-1, 1), r(3, 1))),
                (iv(r(2, 3), r(1, 1)), pair(r(-2, 1), r(3, 1))),
            ],
        )
        .expect("tau is a valid full-branch map")
    }

    /// The map σ driving the inverse dynamics in the Y coordinate: slope 3/2
    /// on `[0,2/3)`, slope 6 on the two remaining pieces.
    pub fn sigma() -> Self {
        let r = Rational::new;
        OneDMap::new(
            "sigma",
            vec![
                (iv(r(0, 1), r(2, 3)), pair(r(0, 1), r(3, 2))),
                (iv(r(2, 3), r(5, 6)), pair(r(-4, 1), r(6, 1))),
                (iv(r(5, 6), r(1, 1)), pair(r(-5, 1), r(6, 1))),
            ],
        )
        .expect("sigma is a valid full-branch map")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn branches(&self) -> &[(HalfOpenInterval, AffinePair)] {
        &self.branches
    }

    pub fn branch(&self, idx: usize) -> (&HalfOpenInterval, &AffinePair) {
        let (iv, pair) = &self.branches[idx];
        (iv, pair)
    }

    /// Index of the branch owning `x` under the half-open convention, plus a
    /// flag for `x` sitting on a branch endpoint (including 0 and 1).
    pub fn branch_of(&self, x: &Rational) -> Result<(usize, bool)> {
        for (idx, (iv, _)) in self.branches.iter().enumerate() {
            if iv.contains(x) {
                let on_endpoint = !iv.contains_interior(x);
                return Ok((idx, on_endpoint));
            }
        }
        Err(Error::OutOfDomain(format!("{x} outside [0,1]")))
    }

    pub fn eval(&self, x: &Rational) -> Result<(Rational, usize, bool)> {
        let (idx, boundary) = self.branch_of(x)?;
        Ok((self.branches[idx].1.apply(x), idx, boundary))
    }

    /// Ordered endpoint set of the linearity intervals of the n-fold
    /// composition; `{0, 1}` for n = 0 and `3^n + 1` points for these maps.
    pub fn ends(&self, n: u32) -> Vec<Rational> {
        let mut ends: BTreeSet<Rational> = BTreeSet::new();
        ends.insert(Rational::zero());
        ends.insert(Rational::one());
        for _ in 0..n {
            let prev: Vec<Rational> = ends.iter().cloned().collect();
            for (iv, pair) in &self.branches {
                ends.insert(iv.lo().clone());
                let inv = pair.invert();
                for e in &prev {
                    let y = inv.apply(e);
                    if &y >= iv.lo() && &y <= iv.hi() {
                        ends.insert(y);
                    }
                }
            }
        }
        ends.into_iter().collect()
    }

    /// The depth-`n` linearity interval (cylinder) containing `x`, i.e. the
    /// pair of consecutive endpoints of the n-fold composition around `x`,
    /// together with the branch itinerary on it. The flag reports whether the
    /// orbit of `x` touched a branch endpoint, in which case `x` is not
    /// interior to the cylinder.
    pub fn cylinder(&self, x: &Rational, depth: u32) -> Result<(HalfOpenInterval, Vec<usize>, bool)> {
        let mut itinerary = Vec::with_capacity(depth as usize);
        let mut cur = x.clone();
        let mut touched = false;
        for _ in 0..depth {
            let (next, idx, boundary) = self.eval(&cur)?;
            touched |= boundary;
            itinerary.push(idx);
            cur = next;
        }
        let mut interval = HalfOpenInterval::unit_open();
        for &b in itinerary.iter().rev() {
            let (domain, pair) = &self.branches[b];
            interval = pair.invert().interval_image(&interval);
            debug_assert!(domain.contains_interval(&interval) || depth == 0);
        }
        Ok((interval, itinerary, touched))
    }

    /// The unique point whose branch itinerary is `prefix` followed by the
    /// repeating `cycle`. The cycle must have an interior periodic point,
    /// otherwise the point would not be regular.
    pub fn point_with_itinerary(&self, prefix: &[usize], cycle: &[usize]) -> Result<Rational> {
        if cycle.is_empty() {
            return Err(Error::BadParameter("itinerary cycle must be nonempty".into()));
        }
        // Fixed point of the composition along the cycle.
        let mut comp = AffinePair::identity();
        for &b in cycle {
            comp = comp.then(&self.branches[b].1);
        }
        let denom = Rational::one() - comp.slope().clone();
        if denom.is_zero() {
            return Err(Error::BadParameter("cycle composition has slope 1".into()));
        }
        let tail = comp.offset().checked_div(&denom)?;
        // Pull the tail point back through the prefix.
        let mut point = tail;
        for &b in prefix.iter().rev() {
            point = self.branches[b].1.invert().apply(&point);
        }
        // Confirm the itinerary is realized away from endpoints.
        let mut cur = point.clone();
        let verify_len = prefix.len() + 2 * cycle.len();
        for step in 0..verify_len {
            let expected = if step < prefix.len() {
                prefix[step]
            } else {
                cycle[(step - prefix.len()) % cycle.len()]
            };
            let (next, idx, boundary) = self.eval(&cur)?;
            if idx != expected || boundary {
                return Err(Error::NotRegular(format!(
                    "itinerary not realized at step {step} (branch {idx}, boundary {boundary})"
                )));
            }
            cur = next;
        }
        Ok(point)
    }

    /// Inverse-branch image `h_b(J)`: the set of points in branch `b` mapping
    /// into `J`.
    pub fn pullback(&self, branch: usize, iv: &HalfOpenInterval) -> HalfOpenInterval {
        self.branches[branch].1.interval_preimage(iv)
    }
}

fn iv(lo: Rational, hi: Rational) -> HalfOpenInterval {
    HalfOpenInterval::new(lo, hi).expect("preset interval")
}

fn pair(offset: Rational, slope: Rational) -> AffinePair {
    AffinePair::new(offset, slope).expect("preset affine pair")
}
