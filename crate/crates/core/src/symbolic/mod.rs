//! Symbolic dynamics of the four-symbol hetero-chaos maps: admissibility of
//! symbol words via exact interval transfer, admissible-word counting and the
//! word-growth entropy estimate.

pub mod count;
pub mod state;

pub use count::{brute_force_admissible, count_admissible, entropy_estimate, AdmRow};
pub use state::{is_admissible, step_state, AdmissibilityState, HcSymbol, Word};

use crate::error::{Error, Result};
use crate::maps::MapSystem;

/// Translates a word over the A/B/C/D alphabet into branch indices of an
/// hc2d/hc3d map system.
pub fn word_to_branches(system: &MapSystem, word: &Word) -> Result<Vec<usize>> {
    word.symbols()
        .iter()
        .map(|s| {
            system
                .branch_by_label(s.label())
                .ok_or_else(|| Error::BadParameter(format!(
                    "map {} has no branch labelled {}",
                    system.name(),
                    s.label()
                )))
        })
        .collect()
}
