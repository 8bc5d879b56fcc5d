//! The admissibility state machine.
//!
//! After any admissible prefix, the set of reachable Z coordinates is a
//! single binary interval (or all of `[0,1)`). A and D halve it into the
//! lower or upper half; B and C require the interval to sit in the lower or
//! upper half of `[0,1)` (nonempty interior, so boundary-only contact does
//! not count) and double it back.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::DyadicInterval;

/// The four symbols of the hetero-chaos maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HcSymbol {
    A,
    B,
    C,
    D,
}

impl HcSymbol {
    pub const ALL: [HcSymbol; 4] = [HcSymbol::A, HcSymbol::B, HcSymbol::C, HcSymbol::D];

    pub fn label(&self) -> &'static str {
        match self {
            HcSymbol::A => "A",
            HcSymbol::B => "B",
            HcSymbol::C => "C",
            HcSymbol::D => "D",
        }
    }
}

impl fmt::Display for HcSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// A finite symbol sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(Vec<HcSymbol>);

impl Word {
    pub fn new(symbols: Vec<HcSymbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::BadParameter("words must be nonempty".into()));
        }
        Ok(Word(symbols))
    }

    pub fn symbols(&self) -> &[HcSymbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.label())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols: Result<Vec<HcSymbol>> = s
            .trim()
            .chars()
            .map(|c| match c {
                'A' | 'a' => Ok(HcSymbol::A),
                'B' | 'b' => Ok(HcSymbol::B),
                'C' | 'c' => Ok(HcSymbol::C),
                'D' | 'd' => Ok(HcSymbol::D),
                other => Err(Error::Parse(format!("unknown symbol `{other}`"))),
            })
            .collect();
        Word::new(symbols?)
    }
}

/// The reachable Z set after an admissible prefix: the full interval or one
/// dyadic interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AdmissibilityState {
    Full,
    Dyadic(DyadicInterval),
}

impl AdmissibilityState {
    pub fn initial() -> Self {
        AdmissibilityState::Full
    }

    pub fn level(&self) -> u32 {
        match self {
            AdmissibilityState::Full => 0,
            AdmissibilityState::Dyadic(d) => d.level,
        }
    }

    fn dyadic(c: BigUint, level: u32) -> Self {
        if level == 0 {
            AdmissibilityState::Full
        } else {
            AdmissibilityState::Dyadic(DyadicInterval::new(c, level).expect("in range"))
        }
    }
}

impl fmt::Display for AdmissibilityState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdmissibilityState::Full => write!(f, "[0,1)"),
            AdmissibilityState::Dyadic(d) => write!(f, "{}", d.to_interval()),
        }
    }
}

/// One transfer step; `None` means the word died (inadmissible), which is a
/// value rather than an error.
pub fn step_state(state: &AdmissibilityState, sym: HcSymbol) -> Option<AdmissibilityState> {
    let (c, level) = match state {
        AdmissibilityState::Full => (BigUint::zero(), 0u32),
        AdmissibilityState::Dyadic(d) => (d.c.clone(), d.level),
    };
    match sym {
        // z ↦ z/2 prepends the binary digit 0.
        HcSymbol::A => Some(AdmissibilityState::dyadic(c, level + 1)),
        // z ↦ (z+1)/2 prepends the binary digit 1.
        HcSymbol::D => Some(AdmissibilityState::dyadic(c + (BigUint::from(1u8) << level), level + 1)),
        HcSymbol::B => {
            if level == 0 {
                // [0,1) ∩ [0,1/2) = [0,1/2), doubled back to [0,1).
                return Some(AdmissibilityState::Full);
            }
            let half = BigUint::from(1u8) << (level - 1);
            if c < half {
                Some(AdmissibilityState::dyadic(c, level - 1))
            } else {
                None
            }
        }
        HcSymbol::C => {
            if level == 0 {
                return Some(AdmissibilityState::Full);
            }
            let half = BigUint::from(1u8) << (level - 1);
            if c >= half {
                Some(AdmissibilityState::dyadic(c - half, level - 1))
            } else {
                None
            }
        }
    }
}

/// Runs the state chain; true iff it never dies.
pub fn is_admissible(word: &Word) -> bool {
    let mut state = AdmissibilityState::initial();
    for &s in word.symbols() {
        match step_state(&state, s) {
            Some(next) => state = next,
            None => return false,
        }
    }
    true
}
