//! Axis-aligned products of half-open intervals.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::interval::HalfOpenInterval;
use crate::exact::point::Point;
use crate::exact::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X => write!(f, "X"),
            Axis::Y => write!(f, "Y"),
            Axis::Z => write!(f, "Z"),
        }
    }
}

/// Baker's taxonomy of boxes by how many edges span the full unit length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoxClass {
    /// Exactly one axis has length 1 (the named one).
    Breadbox(Axis),
    /// Exactly two axes have length 1.
    Pizzabox(Axis, Axis),
    Other,
}

/// A box `B = B_X × B_Y × B_Z` (or two axes for square maps).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProductBox {
    axes: Vec<Axis>,
    intervals: Vec<HalfOpenInterval>,
}

impl ProductBox {
    pub fn new(axes: Vec<Axis>, intervals: Vec<HalfOpenInterval>) -> Result<Self> {
        if axes.len() != intervals.len() {
            return Err(Error::InvalidBox(format!(
                "{} axes but {} intervals",
                axes.len(),
                intervals.len()
            )));
        }
        if axes.is_empty() {
            return Err(Error::InvalidBox("a box needs at least one axis".into()));
        }
        Ok(ProductBox { axes, intervals })
    }

    pub fn unit(axes: Vec<Axis>) -> Self {
        let intervals = axes.iter().map(|_| HalfOpenInterval::unit()).collect();
        ProductBox { axes, intervals }
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn interval(&self, axis: usize) -> &HalfOpenInterval {
        &self.intervals[axis]
    }

    pub fn intervals(&self) -> &[HalfOpenInterval] {
        &self.intervals
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim()
            && self.intervals.iter().zip(p.coords()).all(|(iv, c)| iv.contains(c))
    }

    /// Membership in the open interior.
    pub fn contains_interior(&self, p: &Point) -> bool {
        p.dim() == self.dim()
            && self.intervals.iter().zip(p.coords()).all(|(iv, c)| iv.contains_interior(c))
    }

    pub fn contains_box(&self, other: &ProductBox) -> bool {
        other.dim() == self.dim()
            && self
                .intervals
                .iter()
                .zip(&other.intervals)
                .all(|(a, b)| a.contains_interval(b))
    }

    /// Exact intersection; `None` when some axis meets with empty interior.
    pub fn intersect(&self, other: &ProductBox) -> Option<ProductBox> {
        if self.dim() != other.dim() {
            return None;
        }
        let mut intervals = Vec::with_capacity(self.dim());
        for (a, b) in self.intervals.iter().zip(&other.intervals) {
            intervals.push(a.intersect(b)?);
        }
        Some(ProductBox { axes: self.axes.clone(), intervals })
    }

    pub fn lengths(&self) -> Vec<Rational> {
        self.intervals.iter().map(|iv| iv.length()).collect()
    }

    pub fn volume(&self) -> Rational {
        self.intervals
            .iter()
            .fold(Rational::one(), |acc, iv| acc * iv.length())
    }

    /// Sum of axis lengths: an upper bound on the diameter in any product
    /// metric, by the triangle inequality for products.
    pub fn diameter_bound(&self) -> Rational {
        self.intervals
            .iter()
            .fold(Rational::zero(), |acc, iv| acc + iv.length())
    }

    pub fn classify(&self) -> BoxClass {
        let one = Rational::one();
        let full: Vec<Axis> = self
            .intervals
            .iter()
            .zip(&self.axes)
            .filter(|(iv, _)| iv.length() == one)
            .map(|(_, ax)| *ax)
            .collect();
        match full.as_slice() {
            [a] => BoxClass::Breadbox(*a),
            [a, b] => BoxClass::Pizzabox(*a, *b),
            _ => BoxClass::Other,
        }
    }
}

impl fmt::Display for ProductBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .axes
            .iter()
            .zip(&self.intervals)
            .map(|(ax, iv)| format!("{ax}:{iv}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for ProductBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn iv(lo: Rational, hi: Rational) -> HalfOpenInterval {
        HalfOpenInterval::new(lo, hi).unwrap()
    }

    #[test]
    fn unit_cube_diameter_bound_is_three() {
        let cube = ProductBox::unit(vec![Axis::X, Axis::Y, Axis::Z]);
        assert_eq!(cube.diameter_bound(), r(3, 1));
    }

    #[test]
    fn diameter_bound_sums_axis_lengths() {
        let b = ProductBox::new(
            vec![Axis::X, Axis::Y, Axis::Z],
            vec![
                iv(r(0, 1), r(1, 2)),
                iv(r(0, 1), r(1, 1)),
                iv(r(0, 1), r(1, 4)),
            ],
        )
        .unwrap();
        assert_eq!(b.diameter_bound(), r(7, 4));
    }

    #[test]
    fn degenerate_axis_is_an_error() {
        // An empty axis interval cannot even be built.
        assert!(HalfOpenInterval::new(r(1, 2), r(1, 2)).is_err());
        // And a box with mismatched axes is rejected too.
        assert!(ProductBox::new(vec![Axis::X], vec![]).is_err());
    }

    #[test]
    fn classification_counts_full_axes() {
        let breadbox = ProductBox::new(
            vec![Axis::X, Axis::Y, Axis::Z],
            vec![
                iv(r(2, 3), r(1, 1)),
                iv(r(0, 1), r(1, 1)),
                iv(r(0, 1), r(1, 2)),
            ],
        )
        .unwrap();
        assert_eq!(breadbox.classify(), BoxClass::Breadbox(Axis::Y));

        let pizzabox = ProductBox::new(
            vec![Axis::X, Axis::Y, Axis::Z],
            vec![
                iv(r(0, 1), r(1, 3)),
                iv(r(0, 1), r(1, 1)),
                iv(r(0, 1), r(1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(pizzabox.classify(), BoxClass::Pizzabox(Axis::Y, Axis::Z));

        let cube = ProductBox::unit(vec![Axis::X, Axis::Y, Axis::Z]);
        assert_eq!(cube.classify(), BoxClass::Other);
    }

    #[test]
    fn box_intersection_is_per_axis() {
        let a = ProductBox::new(
            vec![Axis::X, Axis::Z],
            vec![iv(r(0, 1), r(1, 2)), iv(r(0, 1), r(1, 1))],
        )
        .unwrap();
        let b = ProductBox::new(
            vec![Axis::X, Axis::Z],
            vec![iv(r(1, 4), r(1, 1)), iv(r(1, 2), r(1, 1))],
        )
        .unwrap();
        let got = a.intersect(&b).unwrap();
        assert_eq!(got.interval(0), &iv(r(1, 4), r(1, 2)));
        assert_eq!(got.interval(1), &iv(r(1, 2), r(1, 1)));
        let disjoint = ProductBox::new(
            vec![Axis::X, Axis::Z],
            vec![iv(r(1, 2), r(1, 1)), iv(r(0, 1), r(1, 2))],
        )
        .unwrap();
        assert!(a.intersect(&disjoint).is_none());
    }
}
