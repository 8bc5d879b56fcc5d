//! Map systems: lists of symbol branches with exact evaluation, orbits and
//! programmatic inversion.

use crate::error::{Error, Result};
use crate::exact::{Axis, BitBudget, HalfOpenInterval, Point, ProductBox, Rational};
use crate::maps::affine::AffinePair;

/// One branch of a piecewise linear-diagonal map: the symbol set it acts on
/// and the per-axis affine actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolBranch {
    pub label: String,
    pub domain: ProductBox,
    pub action: Vec<AffinePair>,
}

impl SymbolBranch {
    /// Product of |slope| over the axes; 1 exactly for volume-preserving maps.
    pub fn slope_product(&self) -> Rational {
        self.action
            .iter()
            .fold(Rational::one(), |acc, p| acc * p.slope().abs())
    }

    /// Number of expanding axes (|slope| > 1): the branch's local unstable
    /// dimension.
    pub fn unstable_dimension(&self) -> usize {
        self.action.iter().filter(|p| p.slope().abs() > Rational::one()).count()
    }
}

/// A piecewise linear-diagonal map of the unit square or cube. Branch domains
/// are pairwise disjoint under the half-open convention and tile the domain,
/// so evaluation is a total function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSystem {
    name: String,
    axes: Vec<Axis>,
    branches: Vec<SymbolBranch>,
    param_k: Option<u32>,
}

/// One application of the map to a point.
#[derive(Clone, Debug)]
pub struct EvalStep {
    pub image: Point,
    pub branch: usize,
    /// True when the input sits on a symbol-set boundary (the half-open
    /// convention still assigns it a unique owner).
    pub boundary: bool,
}

impl MapSystem {
    pub fn new(
        name: impl Into<String>,
        axes: Vec<Axis>,
        branches: Vec<SymbolBranch>,
        param_k: Option<u32>,
    ) -> Result<Self> {
        let name = name.into();
        let dim = axes.len();
        if !(2..=3).contains(&dim) {
            return Err(Error::InvalidMap(format!("{name}: dimension must be 2 or 3")));
        }
        if branches.is_empty() {
            return Err(Error::InvalidMap(format!("{name}: no branches")));
        }
        let unit = ProductBox::unit(axes.clone());
        let mut volume = Rational::zero();
        for (i, b) in branches.iter().enumerate() {
            if b.domain.dim() != dim || b.action.len() != dim {
                return Err(Error::InvalidMap(format!(
                    "{name}: branch {} has wrong dimension",
                    b.label
                )));
            }
            if !unit.contains_box(&b.domain) {
                return Err(Error::InvalidMap(format!(
                    "{name}: branch {} domain leaves the unit box",
                    b.label
                )));
            }
            for (axis, pair) in b.action.iter().enumerate() {
                if pair.slope() <= &Rational::zero() {
                    return Err(Error::InvalidMap(format!(
                        "{name}: branch {} has a non-positive slope",
                        b.label
                    )));
                }
                let image = pair.interval_image(b.domain.interval(axis));
                if !HalfOpenInterval::unit().contains_interval(&image) {
                    return Err(Error::InvalidMap(format!(
                        "{name}: branch {} maps outside the unit box on axis {axis}",
                        b.label
                    )));
                }
            }
            for other in &branches[..i] {
                if b.domain.intersect(&other.domain).is_some() {
                    return Err(Error::InvalidMap(format!(
                        "{name}: branches {} and {} overlap",
                        other.label, b.label
                    )));
                }
            }
            volume = volume + b.domain.volume();
        }
        if !volume.is_one() {
            return Err(Error::InvalidMap(format!(
                "{name}: branch domains cover volume {volume}, expected 1"
            )));
        }
        Ok(MapSystem { name, axes, branches, param_k })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn param_k(&self) -> Option<u32> {
        self.param_k
    }

    pub fn branches(&self) -> &[SymbolBranch] {
        &self.branches
    }

    pub fn branch(&self, idx: usize) -> &SymbolBranch {
        &self.branches[idx]
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.branches[idx].label
    }

    pub fn branch_by_label(&self, label: &str) -> Option<usize> {
        self.branches.iter().position(|b| b.label == label)
    }

    pub fn unit_box(&self) -> ProductBox {
        ProductBox::unit(self.axes.clone())
    }

    /// Renders a word of branch indices using the branch labels.
    pub fn word_label(&self, word: &[usize]) -> String {
        let single = self.branches.iter().all(|b| b.label.chars().count() == 1);
        let labels: Vec<&str> = word.iter().map(|&i| self.label(i)).collect();
        if single {
            labels.concat()
        } else {
            labels.join(".")
        }
    }

    /// The branch owning `p`, with a flag for `p` on the symbol-set boundary.
    pub fn branch_of(&self, p: &Point) -> Result<(usize, bool)> {
        if p.dim() != self.dim() {
            return Err(Error::OutOfDomain(format!(
                "point dimension {} does not match map dimension {}",
                p.dim(),
                self.dim()
            )));
        }
        for (idx, b) in self.branches.iter().enumerate() {
            if b.domain.contains(p) {
                return Ok((idx, !b.domain.contains_interior(p)));
            }
        }
        Err(Error::OutOfDomain(format!("{p} is outside the unit domain")))
    }

    /// One exact application of the map.
    pub fn evaluate(&self, p: &Point) -> Result<EvalStep> {
        let (branch, boundary) = self.branch_of(p)?;
        let image = self.apply_branch(branch, p);
        Ok(EvalStep { image, branch, boundary })
    }

    pub fn apply_branch(&self, branch: usize, p: &Point) -> Point {
        let coords = self.branches[branch]
            .action
            .iter()
            .zip(p.coords())
            .map(|(pair, c)| pair.apply(c))
            .collect();
        Point::new(coords)
    }

    /// Exact image of a box that lies inside a single branch domain.
    pub fn evaluate_box(&self, b: &ProductBox) -> Result<(ProductBox, usize)> {
        for (idx, branch) in self.branches.iter().enumerate() {
            if branch.domain.contains_box(b) {
                let intervals = branch
                    .action
                    .iter()
                    .zip(b.intervals())
                    .map(|(pair, iv)| pair.interval_image(iv))
                    .collect();
                let image = ProductBox::new(self.axes.clone(), intervals)?;
                return Ok((image, idx));
            }
        }
        Err(Error::OutOfDomain(format!("box {b} is not inside a single symbol set")))
    }

    /// The inverse system, derived programmatically: each branch's image box
    /// becomes a domain and the per-axis actions are inverted. Image
    /// endpoints are recanonicalized to the half-open convention (closed top
    /// exactly at 1) so the inverse branches tile the whole cube. Errors
    /// when the map is not injective almost everywhere.
    pub fn invert(&self) -> Result<MapSystem> {
        let mut branches = Vec::with_capacity(self.branches.len());
        for b in &self.branches {
            let mut intervals = Vec::with_capacity(self.dim());
            for (pair, iv) in b.action.iter().zip(b.domain.intervals()) {
                intervals.push(HalfOpenInterval::new(pair.apply(iv.lo()), pair.apply(iv.hi()))?);
            }
            let domain = ProductBox::new(self.axes.clone(), intervals)?;
            let action = b.action.iter().map(|p| p.invert()).collect();
            branches.push(SymbolBranch { label: format!("{}'", b.label), domain, action });
        }
        MapSystem::new(format!("{}-inv", self.name), self.axes.clone(), branches, self.param_k)
            .map_err(|_| {
                Error::NotInvertible(format!(
                    "{}: branch images overlap, the map is not one-to-one",
                    self.name
                ))
            })
    }

    /// Exact orbit segment around `p`: `n_backward` preimages and `n_forward`
    /// images. Backward steps require an invertible system; every fresh
    /// coordinate is checked against the bit-size guard.
    pub fn orbit(
        &self,
        p: &Point,
        n_forward: usize,
        n_backward: usize,
        guard: &BitBudget,
    ) -> Result<OrbitSegment> {
        for c in p.coords() {
            guard.check(c)?;
        }
        let inverse = if n_backward > 0 { Some(self.invert()?) } else { None };
        let mut backward = Vec::with_capacity(n_backward);
        let mut cur = p.clone();
        if let Some(inv) = &inverse {
            for _ in 0..n_backward {
                let step = inv.evaluate(&cur)?;
                for c in step.image.coords() {
                    guard.check(c)?;
                }
                backward.push(step.image.clone());
                cur = step.image;
            }
        }
        let mut points: Vec<Point> = backward.into_iter().rev().collect();
        points.push(p.clone());
        let mut cur = p.clone();
        for _ in 0..n_forward {
            let step = self.evaluate(&cur)?;
            for c in step.image.coords() {
                guard.check(c)?;
            }
            points.push(step.image.clone());
            cur = step.image;
        }
        let mut symbols = Vec::with_capacity(points.len());
        let mut boundary_flag = None;
        for (i, q) in points.iter().enumerate() {
            let (branch, boundary) = self.branch_of(q)?;
            symbols.push(branch);
            if boundary && boundary_flag.is_none() {
                boundary_flag = Some(i);
            }
        }
        Ok(OrbitSegment { points, symbols, origin_index: n_backward, boundary_flag })
    }
}

/// A finite stretch of an exact orbit with its symbol itinerary.
#[derive(Clone, Debug)]
pub struct OrbitSegment {
    /// Points `F^m(p)` for `m = -n_backward .. n_forward`, in time order.
    pub points: Vec<Point>,
    /// `symbols[i]` is the branch containing `points[i]`.
    pub symbols: Vec<usize>,
    /// Index of `F^0(p)` in `points`.
    pub origin_index: usize,
    /// First index whose point sits on a symbol-set boundary, if any.
    pub boundary_flag: Option<usize>,
}

impl OrbitSegment {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The point `F^m(p)`; `m` is relative to the orbit origin.
    pub fn at(&self, m: i64) -> Option<&Point> {
        let idx = self.origin_index as i64 + m;
        if idx < 0 {
            None
        } else {
            self.points.get(idx as usize)
        }
    }
}
