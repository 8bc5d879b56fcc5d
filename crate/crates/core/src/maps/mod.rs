//! Piecewise linear-diagonal map systems: presets, evaluation, orbits,
//! inverses, the 1D factor maps and the XZ projection.

pub mod affine;
pub mod oned;
pub mod presets;
pub mod system;
pub mod text;

pub use affine::AffinePair;
pub use oned::OneDMap;
pub use presets::preset;
pub use system::{EvalStep, MapSystem, OrbitSegment, SymbolBranch};

use crate::error::{Error, Result};
use crate::exact::Point;

/// The projection `π : (x, y, z) → (x, z)` onto the XZ plane.
pub fn project(p: &Point) -> Result<Point> {
    if p.dim() != 3 {
        return Err(Error::BadParameter(format!(
            "projection needs a 3D point, got dimension {}",
            p.dim()
        )));
    }
    Ok(Point::xy(p.coord(0).clone(), p.coord(2).clone()))
}
