//! Exact points of the unit square or cube.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point { coords }
    }

    pub fn xy(x: Rational, y: Rational) -> Self {
        Point { coords: vec![x, y] }
    }

    pub fn xyz(x: Rational, y: Rational, z: Rational) -> Self {
        Point { coords: vec![x, y, z] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, axis: usize) -> &Rational {
        &self.coords[axis]
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coords_mut(&mut self) -> &mut [Rational] {
        &mut self.coords
    }

    /// Sup-metric distance (max per-coordinate difference).
    pub fn sup_distance(&self, other: &Point) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).abs())
            .max()
            .expect("points are nonempty")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Point {
    type Err = Error;

    /// Parses `"x,y,z"` (2 or 3 comma-separated rationals, parens optional).
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let coords: Result<Vec<Rational>> = inner.split(',').map(|p| p.trim().parse()).collect();
        let coords = coords?;
        if coords.len() < 2 || coords.len() > 3 {
            return Err(Error::Parse(format!("expected 2 or 3 coordinates in `{s}`")));
        }
        Ok(Point { coords })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_distance() {
        let p: Point = "1/4,3/4,1/3".parse().unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.coord(2), &Rational::new(1, 3));
        let q: Point = "(0,3/4,1/3)".parse().unwrap();
        assert_eq!(p.sup_distance(&q), Rational::new(1, 4));
        assert!("1".parse::<Point>().is_err());
    }
}
