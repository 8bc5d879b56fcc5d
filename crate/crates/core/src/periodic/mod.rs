//! Exact periodic-orbit enumeration: compose per-symbol affine actions along
//! admissible words, solve fixed points, classify per-axis stability.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{HalfOpenInterval, Point, ProductBox, Rational};
use crate::maps::affine::AffinePair;
use crate::maps::system::MapSystem;

/// Per-axis stability of a periodic orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisClass {
    Stable,
    Unstable,
    Neutral,
}

impl AxisClass {
    pub fn of(chi: &Rational) -> AxisClass {
        match chi.as_ratio().cmp(Rational::one().as_ratio()) {
            Ordering::Greater => AxisClass::Unstable,
            Ordering::Less => AxisClass::Stable,
            Ordering::Equal => AxisClass::Neutral,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            AxisClass::Stable => "stable",
            AxisClass::Unstable => "unstable",
            AxisClass::Neutral => "neutral",
        }
    }
}

/// An exact periodic orbit (or a neutral one-parameter family of them).
#[derive(Clone, Debug)]
pub struct PeriodicOrbit {
    /// A representative point; for neutral families the free coordinate is
    /// the midpoint of `neutral_interval`.
    pub point: Point,
    pub period: usize,
    /// Branch itinerary starting at `point`.
    pub word: Vec<usize>,
    /// χ per axis: the product of |slope| along the word.
    pub multipliers: Vec<Rational>,
    pub classes: Vec<AxisClass>,
    /// When one axis composes to the identity, the orbit is a segment of
    /// fixed points of F^N; this is the interval swept by that coordinate.
    pub neutral_interval: Option<(usize, HalfOpenInterval)>,
    /// True when some orbit point sits on a symbol-set boundary.
    pub boundary: bool,
}

impl PeriodicOrbit {
    pub fn unstable_dimension(&self) -> usize {
        self.classes.iter().filter(|c| **c == AxisClass::Unstable).count()
    }

    pub fn has_neutral_axis(&self) -> bool {
        self.classes.contains(&AxisClass::Neutral)
    }
}

/// Which stability class to keep during enumeration. Neutral families are
/// excluded from both unstable classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilityFilter {
    OneDUnstable,
    TwoDUnstable,
    Neutral,
    All,
}

impl StabilityFilter {
    pub fn matches(&self, orbit: &PeriodicOrbit) -> bool {
        match self {
            StabilityFilter::OneDUnstable => {
                !orbit.has_neutral_axis() && orbit.unstable_dimension() == 1
            }
            StabilityFilter::TwoDUnstable => {
                !orbit.has_neutral_axis() && orbit.unstable_dimension() == 2
            }
            StabilityFilter::Neutral => orbit.has_neutral_axis(),
            StabilityFilter::All => true,
        }
    }
}

/// Exact composed affine action of a word, one pair per axis. The slope per
/// axis is the product of the branch slopes along the word.
pub fn compose_word(system: &MapSystem, word: &[usize]) -> Result<Vec<AffinePair>> {
    if word.is_empty() {
        return Err(Error::BadParameter("cannot compose an empty word".into()));
    }
    let mut comp: Vec<AffinePair> = (0..system.dim()).map(|_| AffinePair::identity()).collect();
    for &b in word {
        let branch = system
            .branches()
            .get(b)
            .ok_or_else(|| Error::BadParameter(format!("branch index {b} out of range")))?;
        for (axis, pair) in branch.action.iter().enumerate() {
            comp[axis] = comp[axis].then(pair);
        }
    }
    Ok(comp)
}

/// The exact set of points whose itinerary starts with `word`: a box (the
/// per-axis intersection of pulled-back branch domains), or `None` when it
/// has empty interior, i.e. the word is inadmissible for the system.
pub fn word_entry_box(system: &MapSystem, word: &[usize]) -> Result<Option<ProductBox>> {
    let dim = system.dim();
    let mut entry: Vec<HalfOpenInterval> =
        (0..dim).map(|_| HalfOpenInterval::unit()).collect();
    let mut comp: Vec<AffinePair> = (0..dim).map(|_| AffinePair::identity()).collect();
    for &b in word {
        let branch = system
            .branches()
            .get(b)
            .ok_or_else(|| Error::BadParameter(format!("branch index {b} out of range")))?;
        for axis in 0..dim {
            let pullback = comp[axis].interval_preimage(branch.domain.interval(axis));
            match entry[axis].intersect(&pullback) {
                Some(iv) => entry[axis] = iv,
                None => return Ok(None),
            }
        }
        for (pair, action) in comp.iter_mut().zip(&branch.action) {
            *pair = pair.then(action);
        }
    }
    Ok(Some(ProductBox::new(system.axes().to_vec(), entry)?))
}

/// Walks the word from `start`, checking exact symbol-set membership at every
/// step and that the orbit closes up exactly. Returns the boundary flag.
fn verify_orbit(system: &MapSystem, word: &[usize], start: &Point) -> Option<bool> {
    let mut cur = start.clone();
    let mut boundary = false;
    for &b in word {
        let branch = system.branch(b);
        if !branch.domain.contains(&cur) {
            return None;
        }
        boundary |= !branch.domain.contains_interior(&cur);
        cur = system.apply_branch(b, &cur);
    }
    (cur == *start).then_some(boundary)
}

fn orbit_from_composition(
    system: &MapSystem,
    word: &[usize],
    comp: &[AffinePair],
) -> Result<Option<PeriodicOrbit>> {
    let dim = system.dim();
    let one = Rational::one();
    let mut neutral_axes = Vec::new();
    for (axis, pair) in comp.iter().enumerate() {
        if pair.slope() == &one {
            if !pair.offset().is_zero() {
                // A rigid translation on this axis: no fixed point at all.
                return Ok(None);
            }
            neutral_axes.push(axis);
        }
    }
    if neutral_axes.len() > 1 {
        // Not realized by the map families this crate ships; a fully neutral
        // multi-axis family would need its own representation.
        return Ok(None);
    }

    let neutral = neutral_axes.first().copied();
    let entry = if neutral.is_some() {
        match word_entry_box(system, word)? {
            Some(b) => Some(b),
            None => return Ok(None),
        }
    } else {
        None
    };

    let mut coords = Vec::with_capacity(dim);
    for (axis, pair) in comp.iter().enumerate() {
        if Some(axis) == neutral {
            let family = entry.as_ref().expect("entry box computed").interval(axis);
            coords.push(family.midpoint());
        } else {
            // Solve u = c + d·u exactly.
            let denom = &one - pair.slope();
            coords.push(pair.offset().checked_div(&denom)?);
        }
    }
    let point = Point::new(coords);
    if !system.unit_box().contains(&point) {
        return Ok(None);
    }
    let boundary = match verify_orbit(system, word, &point) {
        Some(b) => b,
        None => return Ok(None),
    };

    let multipliers: Vec<Rational> = comp.iter().map(|p| p.slope().abs()).collect();
    let classes: Vec<AxisClass> = multipliers.iter().map(AxisClass::of).collect();
    let neutral_interval =
        neutral.map(|axis| (axis, entry.expect("entry box computed").interval(axis).clone()));
    Ok(Some(PeriodicOrbit {
        point,
        period: word.len(),
        word: word.to_vec(),
        multipliers,
        classes,
        neutral_interval,
        boundary,
    }))
}

/// Solves the unique fixed point of the word's composed action and validates
/// that the orbit visits exactly the prescribed symbol sets. `None` when the
/// candidate escapes its word or no fixed point exists; a neutral axis with
/// identity action yields the whole family instead.
pub fn fixed_point_of_word(system: &MapSystem, word: &[usize]) -> Result<Option<PeriodicOrbit>> {
    let comp = compose_word(system, word)?;
    orbit_from_composition(system, word, &comp)
}

/// Caps the depth-first admissible-word search.
#[derive(Clone, Copy, Debug)]
pub struct EnumerationBudget {
    pub max_nodes: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_nodes: 1_000_000_000 }
    }
}

/// Per-axis pruning state of the reachable set along a word prefix.
///
/// An axis is `Free` when it can never kill a word (every branch either maps
/// its piece onto the full interval or is unconstrained on it), `Dyadic`
/// when the axis runs halving/doubling dynamics on the binary grid (the
/// reachable set is one dyadic interval, tracked in machine integers), and
/// `General` otherwise (exact interval chain).
#[derive(Clone)]
enum AxisState {
    Free,
    Dyadic { c: u128, level: u32 },
    General(HalfOpenInterval),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum DomainHalf {
    Full,
    Lower,
    Upper,
}

enum AxisMode {
    Free,
    /// Per-branch (domain half, bit operation).
    Dyadic(Vec<(DomainHalf, crate::maps::affine::BitOp)>),
    General,
}

/// Dyadic axes track levels in a u128 coefficient; beyond this word length
/// the enumeration falls back to exact intervals.
const DYADIC_LEVEL_CAP: usize = 100;

fn classify_axes(system: &MapSystem, max_period: usize, force_general: bool) -> Vec<AxisMode> {
    let zero = Rational::zero();
    let one = Rational::one();
    let half = Rational::new(1, 2);
    (0..system.dim())
        .map(|axis| {
            if force_general {
                return AxisMode::General;
            }
            let all_unconstrained = system.branches().iter().all(|b| {
                let iv = b.domain.interval(axis);
                iv.lo() == &zero && iv.hi() == &one
            });
            let all_onto = system.branches().iter().all(|b| {
                let iv = b.domain.interval(axis);
                let pair = &b.action[axis];
                pair.apply(iv.lo()).is_zero() && pair.apply(iv.hi()).is_one()
            });
            if all_unconstrained || all_onto {
                return AxisMode::Free;
            }
            if max_period <= DYADIC_LEVEL_CAP {
                let table: Option<Vec<(DomainHalf, crate::maps::affine::BitOp)>> = system
                    .branches()
                    .iter()
                    .map(|b| {
                        let iv = b.domain.interval(axis);
                        let kind = if iv.lo() == &zero && iv.hi() == &one {
                            DomainHalf::Full
                        } else if iv.lo() == &zero && iv.hi() == &half {
                            DomainHalf::Lower
                        } else if iv.lo() == &half && iv.hi() == &one {
                            DomainHalf::Upper
                        } else {
                            return None;
                        };
                        b.action[axis].bit_op().map(|op| (kind, op))
                    })
                    .collect();
                if let Some(table) = table {
                    return AxisMode::Dyadic(table);
                }
            }
            AxisMode::General
        })
        .collect()
}

struct Enumerator<'a> {
    system: &'a MapSystem,
    modes: Vec<AxisMode>,
    max_period: usize,
    budget: EnumerationBudget,
    nodes: u64,
    word: Vec<usize>,
    candidates: Vec<Vec<usize>>,
}

impl<'a> Enumerator<'a> {
    fn advance(&self, state: &AxisState, axis: usize, branch: usize) -> Option<AxisState> {
        match (&self.modes[axis], state) {
            (AxisMode::Free, _) => Some(AxisState::Free),
            (AxisMode::Dyadic(table), AxisState::Dyadic { c, level }) => {
                use crate::maps::affine::BitOp;
                let (kind, op) = table[branch];
                // Intersect the dyadic interval with the branch's half.
                let (c, level) = match kind {
                    DomainHalf::Full => (*c, *level),
                    DomainHalf::Lower => {
                        if *level == 0 {
                            (0, 1)
                        } else if c >> (level - 1) == 0 {
                            (*c, *level)
                        } else {
                            return None;
                        }
                    }
                    DomainHalf::Upper => {
                        if *level == 0 {
                            (1, 1)
                        } else if c >> (level - 1) == 1 {
                            (*c, *level)
                        } else {
                            return None;
                        }
                    }
                };
                // Apply the branch's bit operation.
                let next = match op {
                    BitOp::Push(bit) => AxisState::Dyadic {
                        c: ((bit as u128) << level) + c,
                        level: level + 1,
                    },
                    BitOp::Pop(bit) => {
                        debug_assert!(level >= 1 && c >> (level - 1) == bit as u128);
                        AxisState::Dyadic {
                            c: c - ((bit as u128) << (level - 1)),
                            level: level - 1,
                        }
                    }
                };
                Some(next)
            }
            (AxisMode::General, AxisState::General(iv)) => {
                let b = self.system.branch(branch);
                let meet = iv.intersect(b.domain.interval(axis))?;
                Some(AxisState::General(b.action[axis].interval_image(&meet)))
            }
            _ => unreachable!("state representation matches the axis mode"),
        }
    }

    fn run(&mut self, reachable: &[AxisState]) -> Result<()> {
        let depth = self.word.len();
        if depth > 0 && is_canonical_primitive(&self.word) {
            self.candidates.push(self.word.clone());
        }
        if depth == self.max_period {
            return Ok(());
        }
        let dim = self.system.dim();
        'branches: for b in 0..self.system.branches().len() {
            self.nodes += 1;
            if self.nodes > self.budget.max_nodes {
                return Err(Error::Budget(format!(
                    "periodic enumeration exceeded {} search nodes",
                    self.budget.max_nodes
                )));
            }
            let mut next = Vec::with_capacity(dim);
            for (axis, state) in reachable.iter().enumerate() {
                match self.advance(state, axis, b) {
                    Some(s) => next.push(s),
                    None => continue 'branches,
                }
            }
            self.word.push(b);
            self.run(&next)?;
            self.word.pop();
        }
        Ok(())
    }
}

/// All periodic orbits of primitive period ≤ `max_period`, one entry per
/// orbit (deduplicated by the lexicographically minimal rotation of the
/// word), in a stable (period, word) order.
pub fn enumerate_periodic(
    system: &MapSystem,
    max_period: usize,
    filter: StabilityFilter,
    budget: EnumerationBudget,
) -> Result<Vec<PeriodicOrbit>> {
    enumerate_impl(system, max_period, filter, budget, false)
}

fn enumerate_impl(
    system: &MapSystem,
    max_period: usize,
    filter: StabilityFilter,
    budget: EnumerationBudget,
    force_general: bool,
) -> Result<Vec<PeriodicOrbit>> {
    if max_period == 0 {
        return Err(Error::BadParameter("max_period must be at least 1".into()));
    }
    let modes = classify_axes(system, max_period, force_general);
    let start: Vec<AxisState> = modes
        .iter()
        .map(|mode| match mode {
            AxisMode::Free => AxisState::Free,
            AxisMode::Dyadic(_) => AxisState::Dyadic { c: 0, level: 0 },
            AxisMode::General => AxisState::General(HalfOpenInterval::unit()),
        })
        .collect();
    let mut enumerator = Enumerator {
        system,
        modes,
        max_period,
        budget,
        nodes: 0,
        word: Vec::new(),
        candidates: Vec::new(),
    };
    enumerator.run(&start)?;
    // Solve the canonical candidates in parallel; collecting by index keeps
    // the result order independent of the thread count.
    let solved: Result<Vec<Option<PeriodicOrbit>>> = enumerator
        .candidates
        .par_iter()
        .map(|word| fixed_point_of_word(system, word))
        .collect();
    let mut results: Vec<PeriodicOrbit> = solved?
        .into_iter()
        .flatten()
        .filter(|orbit| filter.matches(orbit))
        .collect();
    results.sort_by(|a, b| (a.period, &a.word).cmp(&(b.period, &b.word)));
    Ok(results)
}

/// True when the word is the lexicographically minimal rotation of its class
/// and is not a power of a shorter word.
fn is_canonical_primitive(w: &[usize]) -> bool {
    let n = w.len();
    'rotations: for r in 1..n {
        for i in 0..n {
            match w[(r + i) % n].cmp(&w[i]) {
                Ordering::Less => return false,
                Ordering::Greater => continue 'rotations,
                Ordering::Equal => {}
            }
        }
        // A rotation equal to the word itself means it is a proper power.
        return false;
    }
    true
}
