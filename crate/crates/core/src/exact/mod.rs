//! Exact arbitrary-precision rationals, half-open intervals and boxes.
//!
//! This is the substrate every other module computes on. Boundary membership
//! along orbits must be decided exactly, so none of the set or map machinery
//! ever touches floating point.

pub mod boxes;
pub mod interval;
pub mod point;
pub mod rational;

pub use boxes::{Axis, BoxClass, ProductBox};
pub use interval::{DyadicInterval, HalfOpenInterval, TrinaryInterval};
pub use point::Point;
pub use rational::{BitBudget, Rational};
