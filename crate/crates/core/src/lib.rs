//! Exact-arithmetic engine for piecewise-linear baker-type maps with
//! heterogeneous chaos.
//!
//! The crate is organized around a small exact substrate ([`exact`]) on which
//! everything else computes:
//!
//! - [`maps`]: piecewise linear-diagonal map systems, presets, orbits,
//!   inverses and the XZ projection,
//! - [`symbolic`]: symbol-sequence admissibility and admissible-word counting,
//! - [`periodic`]: exact periodic-orbit enumeration and stability
//!   classification,
//! - [`bricks`]: biased points, (j,k)-bricks and the nested-brick chain that
//!   certifies dense trajectories,
//! - [`ergodic`]: Lyapunov numbers, Birkhoff averages, leaf contraction and
//!   finite-depth invariant-set covers.
//!
//! All set and map computations are exact; floating point appears only in
//! statistics and convenience output columns.

pub mod bricks;
pub mod error;
pub mod exact;
pub mod ergodic;
pub mod maps;
pub mod periodic;
pub mod symbolic;

pub use error::{Error, Result};
pub use exact::rational::{BitBudget, Rational};
