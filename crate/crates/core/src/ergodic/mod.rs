//! Floating-point statistics over exactly-computed orbits.
//!
//! Symbols (and with them every slope factor) are decided with exact rational
//! comparisons; floating point only enters when accumulating logarithms and
//! observable values.

pub mod birkhoff;
pub mod cover;
pub mod leaf;
pub mod lyapunov;
pub mod sampler;

pub use birkhoff::{birkhoff, BirkhoffResult, Observable};
pub use cover::{invariant_cover, CoverResult, CoverSet};
pub use leaf::{leaf_contraction, LeafRecord, LeafStep};
pub use lyapunov::{lyapunov, preset_prediction, LyapunovEstimate};
pub use sampler::{OrbitEngine, PointSampler, SAMPLE_DENOMINATOR};
