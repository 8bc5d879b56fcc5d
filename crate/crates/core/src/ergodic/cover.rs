//! Finite-depth covers of the index sets H1, H2 and the heteroclinic
//! star sets: unions of exact boxes of points whose itineraries stay in the
//! prescribed regions for the given number of steps in each time direction.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{HalfOpenInterval, ProductBox, Rational};
use crate::maps::MapSystem;
use crate::periodic::word_entry_box;

/// Depth cap: the box count grows like |R|^(2n+1).
pub const MAX_COVER_DEPTH: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverSet {
    /// Orbit stays in the 1D-unstable region both ways.
    H1,
    /// Orbit stays in the 2D-unstable region both ways.
    H2,
    /// Forward in R1, backward in R2.
    H21Star,
    /// Forward in R2, backward in R1.
    H12Star,
}

impl CoverSet {
    pub fn label(&self) -> &'static str {
        match self {
            CoverSet::H1 => "H1",
            CoverSet::H2 => "H2",
            CoverSet::H21Star => "H21",
            CoverSet::H12Star => "H12",
        }
    }
}

impl FromStr for CoverSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "H1" => Ok(CoverSet::H1),
            "H2" => Ok(CoverSet::H2),
            "H21" | "H2,1" | "H21*" => Ok(CoverSet::H21Star),
            "H12" | "H1,2" | "H12*" => Ok(CoverSet::H12Star),
            other => Err(Error::BadParameter(format!("unknown cover set `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CoverResult {
    pub set: CoverSet,
    pub depth: u32,
    pub boxes: Vec<ProductBox>,
}

impl CoverResult {
    /// Smallest interval containing the cover's projection onto an axis.
    pub fn axis_extent(&self, axis: usize) -> Option<(Rational, Rational)> {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for b in &self.boxes {
            let iv = b.interval(axis);
            if lo.as_ref().is_none_or(|v| iv.lo() < v) {
                lo = Some(iv.lo().clone());
            }
            if hi.as_ref().is_none_or(|v| iv.hi() > v) {
                hi = Some(iv.hi().clone());
            }
        }
        lo.zip(hi)
    }

    pub fn total_volume(&self) -> Rational {
        self.boxes
            .iter()
            .fold(Rational::zero(), |acc, b| acc + b.volume())
    }

    /// True when every box of `finer` lies inside some box of `self` — the
    /// nesting of successive depths.
    pub fn contains_cover(&self, finer: &CoverResult) -> bool {
        finer
            .boxes
            .iter()
            .all(|small| self.boxes.iter().any(|big| big.contains_box(small)))
    }
}

/// The depth-n cover of an invariant or heteroclinic set: forward itinerary
/// constrained for n+1 steps (the point's own symbol plus n images) and
/// backward for n steps.
pub fn invariant_cover(system: &MapSystem, set: CoverSet, depth: u32) -> Result<CoverResult> {
    if depth > MAX_COVER_DEPTH {
        return Err(Error::Budget(format!(
            "cover depth {depth} exceeds the limit of {MAX_COVER_DEPTH}"
        )));
    }
    let r1: Vec<usize> = (0..system.branches().len())
        .filter(|&i| system.branch(i).unstable_dimension() == 1)
        .collect();
    let r2: Vec<usize> = (0..system.branches().len())
        .filter(|&i| system.branch(i).unstable_dimension() >= 2)
        .collect();
    if r1.is_empty() || r2.is_empty() {
        return Err(Error::Unsupported(format!(
            "{} has no heterogeneity: R1 or R2 is empty",
            system.name()
        )));
    }
    let (fwd_alphabet, bwd_alphabet) = match set {
        CoverSet::H1 => (&r1, &r1),
        CoverSet::H2 => (&r2, &r2),
        CoverSet::H21Star => (&r1, &r2),
        CoverSet::H12Star => (&r2, &r1),
    };

    let forward = forward_boxes(system, fwd_alphabet, depth as usize + 1)?;
    let backward = backward_boxes(system, bwd_alphabet, depth as usize)?;
    let mut boxes = Vec::new();
    for f in &forward {
        for b in &backward {
            if let Some(both) = f.intersect(b) {
                boxes.push(both);
            }
        }
    }
    Ok(CoverResult { set, depth, boxes })
}

/// Entry boxes of every length-`len` word over the alphabet.
fn forward_boxes(system: &MapSystem, alphabet: &[usize], len: usize) -> Result<Vec<ProductBox>> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(len);
    forward_rec(system, alphabet, len, &mut word, &mut out)?;
    Ok(out)
}

fn forward_rec(
    system: &MapSystem,
    alphabet: &[usize],
    len: usize,
    word: &mut Vec<usize>,
    out: &mut Vec<ProductBox>,
) -> Result<()> {
    if word.len() == len {
        if let Some(b) = word_entry_box(system, word)? {
            out.push(b);
        }
        return Ok(());
    }
    for &s in alphabet {
        word.push(s);
        forward_rec(system, alphabet, len, word, out)?;
        word.pop();
    }
    Ok(())
}

/// Boxes of points whose `len` preimages run through the alphabet: built by
/// pushing branch domains forward.
fn backward_boxes(system: &MapSystem, alphabet: &[usize], len: usize) -> Result<Vec<ProductBox>> {
    let mut states = vec![system.unit_box()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(states.len() * alphabet.len());
        for state in &states {
            for &b in alphabet {
                let branch = system.branch(b);
                if let Some(meet) = state.intersect(&branch.domain) {
                    let intervals: Vec<HalfOpenInterval> = branch
                        .action
                        .iter()
                        .zip(meet.intervals())
                        .map(|(pair, iv)| pair.interval_image(iv))
                        .collect();
                    next.push(ProductBox::new(system.axes().to_vec(), intervals)?);
                }
            }
        }
        states = next;
    }
    Ok(states)
}
