//! Biased points, (j,k)-bricks and the nested-brick machinery.
//!
//! Everything here targets 3D systems with the hetero-chaos shape: one axis
//! expanding on every branch, one contracting on every branch, and one mixed
//! axis whose slopes are exactly 1/2 or 2 so that the cumulative log-slope
//! profile Φ is an integer walk.

pub mod bias;
pub mod brick;
pub mod chain;
pub mod profile;

pub use bias::{biased_pairs, construct_biased};
pub use brick::{build_brick, interior_brick_search, periodic_point_in_brick, Brick};
pub use chain::{two_brick_chain, BrickChain};
pub use profile::{BiasedCertificate, PhiProfile};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::maps::{MapSystem, OneDMap};

/// The hetero-chaos axis roles of a 3D system, its inverse, the two 1D factor
/// maps driving the forward/backward itineraries, and the ±1 weight of each
/// factor branch.
#[derive(Clone, Debug)]
pub struct HcStructure {
    system: MapSystem,
    inverse: MapSystem,
    expanding_axis: usize,
    contracting_axis: usize,
    mixed_axis: usize,
    /// Factor map of the expanding coordinate (τ for the forward map).
    forward_map: OneDMap,
    /// Factor map of the contracting coordinate's backward dynamics (σ).
    backward_map: OneDMap,
    /// L value of each forward factor branch: +1 where the mixed slope is 2.
    forward_l: Vec<i8>,
    /// L value of each backward factor branch.
    backward_l: Vec<i8>,
    /// Default net-positive itinerary cycles used by `construct_biased`.
    forward_cycle: Vec<usize>,
    backward_cycle: Vec<usize>,
}

impl HcStructure {
    /// Classifies the axes of `system` and derives the factor maps. Errors
    /// when the system does not have the hetero-chaos shape.
    pub fn detect(system: &MapSystem) -> Result<Self> {
        if system.dim() != 3 {
            return Err(Error::Unsupported(format!(
                "{}: brick machinery needs a 3D system",
                system.name()
            )));
        }
        let one = Rational::one();
        let mut expanding = Vec::new();
        let mut contracting = Vec::new();
        let mut mixed = Vec::new();
        for axis in 0..3 {
            let slopes: Vec<&Rational> = system
                .branches()
                .iter()
                .map(|b| b.action[axis].slope())
                .collect();
            if slopes.iter().all(|s| **s > one) {
                expanding.push(axis);
            } else if slopes.iter().all(|s| **s < one) {
                contracting.push(axis);
            } else {
                mixed.push(axis);
            }
        }
        let (&expanding_axis, &contracting_axis, &mixed_axis) =
            match (expanding.as_slice(), contracting.as_slice(), mixed.as_slice()) {
                ([e], [c], [m]) => (e, c, m),
                _ => {
                    return Err(Error::Unsupported(format!(
                        "{}: expected one expanding, one contracting and one mixed axis",
                        system.name()
                    )))
                }
            };
        let two = Rational::int(2);
        let half = Rational::new(1, 2);
        for b in system.branches() {
            let s = b.action[mixed_axis].slope();
            if s != &two && s != &half {
                return Err(Error::Unsupported(format!(
                    "{}: mixed-axis slopes must be 2 or 1/2, branch {} has {s}",
                    system.name(),
                    b.label
                )));
            }
        }

        let (forward_map, forward_groups) = factor_map(system, expanding_axis)?;
        let forward_l = branch_weights(system, mixed_axis, &forward_groups)?;

        let inverse = system.invert()?;
        let (backward_map, backward_groups) = factor_map(&inverse, contracting_axis)?;
        // The weight of a backward factor branch is the weight of the forward
        // branches whose images share that piece of the contracting axis.
        let backward_l = branch_weights(system, mixed_axis, &backward_groups)?;

        let forward_cycle = find_bias_cycle(&forward_map, &forward_l)?;
        let backward_cycle = find_bias_cycle(&backward_map, &backward_l)?;

        Ok(HcStructure {
            system: system.clone(),
            inverse,
            expanding_axis,
            contracting_axis,
            mixed_axis,
            forward_map,
            backward_map,
            forward_l,
            backward_l,
            forward_cycle,
            backward_cycle,
        })
    }

    pub fn system(&self) -> &MapSystem {
        &self.system
    }

    pub fn inverse(&self) -> &MapSystem {
        &self.inverse
    }

    pub fn expanding_axis(&self) -> usize {
        self.expanding_axis
    }

    pub fn contracting_axis(&self) -> usize {
        self.contracting_axis
    }

    pub fn mixed_axis(&self) -> usize {
        self.mixed_axis
    }

    pub fn forward_map(&self) -> &OneDMap {
        &self.forward_map
    }

    pub fn backward_map(&self) -> &OneDMap {
        &self.backward_map
    }

    pub fn forward_l(&self) -> &[i8] {
        &self.forward_l
    }

    pub fn backward_l(&self) -> &[i8] {
        &self.backward_l
    }

    pub fn forward_cycle(&self) -> &[usize] {
        &self.forward_cycle
    }

    pub fn backward_cycle(&self) -> &[usize] {
        &self.backward_cycle
    }
}

/// Extracts the 1D factor map a system induces on one axis, grouping branches
/// that share the same axis domain and action. Returns the factor map and,
/// per factor branch, the indices of the system branches in its group.
fn factor_map(system: &MapSystem, axis: usize) -> Result<(OneDMap, Vec<Vec<usize>>)> {
    let mut pieces: Vec<(crate::exact::HalfOpenInterval, crate::maps::AffinePair, Vec<usize>)> =
        Vec::new();
    for (idx, b) in system.branches().iter().enumerate() {
        let iv = b.domain.interval(axis).clone();
        let pair = b.action[axis].clone();
        match pieces.iter_mut().find(|(i, p, _)| *i == iv && *p == pair) {
            Some((_, _, group)) => group.push(idx),
            None => pieces.push((iv, pair, vec![idx])),
        }
    }
    pieces.sort_by(|a, b| a.0.lo().cmp(b.0.lo()));
    let branches: Vec<_> = pieces.iter().map(|(iv, p, _)| (iv.clone(), p.clone())).collect();
    let groups: Vec<Vec<usize>> = pieces.into_iter().map(|(_, _, g)| g).collect();
    let map = OneDMap::new(format!("{}-axis{}", system.name(), axis), branches)?;
    Ok((map, groups))
}

/// The ±1 weight of each factor branch group, read off the mixed-axis slope
/// of the underlying system branches (which must agree within a group).
fn branch_weights(
    system: &MapSystem,
    mixed_axis: usize,
    groups: &[Vec<usize>],
) -> Result<Vec<i8>> {
    let one = Rational::one();
    let mut weights = Vec::with_capacity(groups.len());
    for group in groups {
        let mut w: Option<i8> = None;
        for &idx in group {
            let l = if system.branch(idx).action[mixed_axis].slope() > &one { 1 } else { -1 };
            match w {
                None => w = Some(l),
                Some(prev) if prev != l => {
                    return Err(Error::Unsupported(format!(
                        "{}: factor branch mixes expanding and contracting mixed-axis slopes",
                        system.name()
                    )))
                }
                _ => {}
            }
        }
        weights.push(w.expect("groups are nonempty"));
    }
    Ok(weights)
}

/// Shortest branch cycle (length ≤ 3, deterministic order) with positive net
/// weight whose periodic point is interior, so certificate tails stay off
/// every endpoint grid.
fn find_bias_cycle(map: &OneDMap, weights: &[i8]) -> Result<Vec<usize>> {
    let n = map.branch_count();
    for len in 1..=3usize {
        let mut cycle = vec![0usize; len];
        loop {
            let net: i64 = cycle.iter().map(|&b| weights[b] as i64).sum();
            if net > 0 && map.point_with_itinerary(&[], &cycle).is_ok() {
                return Ok(cycle);
            }
            // Next tuple in lexicographic order.
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                cycle[pos] += 1;
                if cycle[pos] < n {
                    break;
                }
                cycle[pos] = 0;
            }
            if pos == 0 && cycle[0] == 0 {
                break;
            }
        }
    }
    Err(Error::Unsupported(format!(
        "{}: no interior net-positive bias cycle of length <= 3",
        map.name()
    )))
}
