//! The built-in map families: 2D/3D baker maps, the 2D/3D hetero-chaos maps
//! and the generalized k-region variants.

use crate::error::{Error, Result};
use crate::exact::{Axis, HalfOpenInterval, ProductBox, Rational};
use crate::maps::affine::AffinePair;
use crate::maps::system::{MapSystem, SymbolBranch};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn iv(lo: Rational, hi: Rational) -> HalfOpenInterval {
    HalfOpenInterval::new(lo, hi).expect("preset interval")
}

fn pair(offset: Rational, slope: Rational) -> AffinePair {
    AffinePair::new(offset, slope).expect("preset affine pair")
}

fn branch3(
    label: &str,
    x: (Rational, Rational),
    y: (Rational, Rational),
    z: (Rational, Rational),
    ax: AffinePair,
    ay: AffinePair,
    az: AffinePair,
) -> Result<SymbolBranch> {
    Ok(SymbolBranch {
        label: label.to_string(),
        domain: ProductBox::new(
            vec![Axis::X, Axis::Y, Axis::Z],
            vec![iv(x.0, x.1), iv(y.0, y.1), iv(z.0, z.1)],
        )?,
        action: vec![ax, ay, az],
    })
}

fn branch2(
    label: &str,
    axes: [Axis; 2],
    a0: (Rational, Rational),
    a1: (Rational, Rational),
    p0: AffinePair,
    p1: AffinePair,
) -> Result<SymbolBranch> {
    Ok(SymbolBranch {
        label: label.to_string(),
        domain: ProductBox::new(axes.to_vec(), vec![iv(a0.0, a0.1), iv(a1.0, a1.1)])?,
        action: vec![p0, p1],
    })
}

/// Looks up a preset by name: `baker2d`, `baker3d`, `hc2d`, `hc3d`,
/// `hc2d-k(k)` or `hc3d-k(k)` with an integer `k > 1`.
pub fn preset(spec: &str) -> Result<MapSystem> {
    let spec = spec.trim();
    match spec {
        "baker2d" => return baker2d(),
        "baker3d" => return baker3d(),
        "hc2d" => return hc2d(),
        "hc3d" => return hc3d(),
        _ => {}
    }
    for (prefix, ctor) in [
        ("hc2d-k", hc2d_k as fn(u32) -> Result<MapSystem>),
        ("hc3d-k", hc3d_k as fn(u32) -> Result<MapSystem>),
    ] {
        if let Some(rest) = spec.strip_prefix(prefix) {
            let digits = rest.trim_start_matches('(').trim_end_matches(')');
            let k: i64 = digits
                .parse()
                .map_err(|_| Error::UnknownPreset(spec.to_string()))?;
            if k <= 1 {
                return Err(Error::BadParameter(format!("k must be an integer > 1, got {k}")));
            }
            return ctor(k as u32);
        }
    }
    Err(Error::UnknownPreset(spec.to_string()))
}

/// The 3D hetero-chaos map: x runs through τ on every branch, z halves on the
/// two YZ pizzaboxes and doubles on the two Y breadboxes.
pub fn hc3d() -> Result<MapSystem> {
    let branches = vec![
        branch3(
            "A",
            (r(0, 1), r(1, 3)),
            (r(0, 1), r(1, 1)),
            (r(0, 1), r(1, 1)),
            pair(r(0, 1), r(3, 1)),
            pair(r(0, 1), r(2, 3)),
            pair(r(0, 1), r(1, 2)),
        )?,
        branch3(
            "B",
            (r(2, 3), r(1, 1)),
            (r(0, 1), r(1, 1)),
            (r(0, 1), r(1, 2)),
            pair(r(-2, 1), r(3, 1)),
            pair(r(2, 3), r(1, 6)),
            pair(r(0, 1), r(2, 1)),
        )?,
        branch3(
            "C",
            (r(2, 3), r(1, 1)),
            (r(0, 1), r(1, 1)),
            (r(1, 2), r(1, 1)),
            pair(r(-2, 1), r(3, 1)),
            pair(r(5, 6), r(1, 6)),
            pair(r(-1, 1), r(2, 1)),
        )?,
        branch3(
            "D",
            (r(1, 3), r(2, 3)),
            (r(0, 1), r(1, 1)),
            (r(0, 1), r(1, 1)),
            pair(r(-1, 1), r(3, 1)),
            pair(r(0, 1), r(2, 3)),
            pair(r(1, 2), r(1, 2)),
        )?,
    ];
    MapSystem::new("hc3d", vec![Axis::X, Axis::Y, Axis::Z], branches, None)
}

/// The 2D hetero-chaos map on the XZ square (the projection of `hc3d`).
pub fn hc2d() -> Result<MapSystem> {
    let axes = [Axis::X, Axis::Z];
    let branches = vec![
        branch2(
            "A",
            axes,
            (r(0, 1), r(1, 3)),
            (r(0, 1), r(1, 1)),
            pair(r(0, 1), r(3, 1)),
            pair(r(0, 1), r(1, 2)),
        )?,
        branch2(
            "B",
            axes,
            (r(2, 3), r(1, 1)),
            (r(0, 1), r(1, 2)),
            pair(r(-2, 1), r(3, 1)),
            pair(r(0, 1), r(2, 1)),
        )?,
        branch2(
            "C",
            axes,
            (r(2, 3), r(1, 1)),
            (r(1, 2), r(1, 1)),
            pair(r(-2, 1), r(3, 1)),
            pair(r(-1, 1), r(2, 1)),
        )?,
        branch2(
            "D",
            axes,
            (r(1, 3), r(2, 3)),
            (r(0, 1), r(1, 1)),
            pair(r(-1, 1), r(3, 1)),
            pair(r(1, 2), r(1, 2)),
        )?,
    ];
    MapSystem::new("hc2d", axes.to_vec(), branches, None)
}

/// The volume-preserving 3D baker map: quadrants in (x, z) double both
/// horizontal coordinates and stack into quarter slabs of y.
///
/// The y offsets are one fixed choice of bijective stacking (the quadrant
/// `Q_ij` lands on `y ∈ [(2i+j)/4, (2i+j+1)/4)`).
pub fn baker3d() -> Result<MapSystem> {
    let mut branches = Vec::new();
    for i in 0..2i64 {
        for j in 0..2i64 {
            branches.push(branch3(
                &format!("Q{i}{j}"),
                (r(i, 2), r(i + 1, 2)),
                (r(0, 1), r(1, 1)),
                (r(j, 2), r(j + 1, 2)),
                pair(r(-i, 1), r(2, 1)),
                pair(r(2 * i + j, 4), r(1, 4)),
                pair(r(-j, 1), r(2, 1)),
            )?);
        }
    }
    MapSystem::new("baker3d", vec![Axis::X, Axis::Y, Axis::Z], branches, None)
}

/// The classical 2D baker map with q = 3 vertical strips.
pub fn baker2d() -> Result<MapSystem> {
    let axes = [Axis::X, Axis::Y];
    let labels = ["A", "B", "C"];
    let mut branches = Vec::new();
    for (i, label) in labels.iter().enumerate() {
        let i = i as i64;
        branches.push(branch2(
            label,
            axes,
            (r(i, 3), r(i + 1, 3)),
            (r(0, 1), r(1, 1)),
            pair(r(-i, 1), r(3, 1)),
            pair(r(i, 3), r(1, 3)),
        )?);
    }
    MapSystem::new("baker2d", axes.to_vec(), branches, None)
}

/// Generalized 3D family: the two doubling regions are replaced by `k`
/// stacked regions `B_1 … B_k` with `z ↦ kz mod 1`; A and D are unchanged
/// and the y actions contract by `1/(3k)` to preserve volume.
pub fn hc3d_k(k: u32) -> Result<MapSystem> {
    if k <= 1 {
        return Err(Error::BadParameter(format!("k must be an integer > 1, got {k}")));
    }
    let kk = k as i64;
    let mut branches = vec![
        branch3(
            "A",
            (r(0, 1), r(1, 3)),
            (r(0, 1), r(1, 1)),
            (r(0, 1), r(1, 1)),
            pair(r(0, 1), r(3, 1)),
            pair(r(0, 1), r(2, 3)),
            pair(r(0, 1), r(1, 2)),
        )?,
        branch3(
            "D",
            (r(1, 3), r(2, 3)),
            (r(0, 1), r(1, 1)),
            (r(0, 1), r(1, 1)),
            pair(r(-1, 1), r(3, 1)),
            pair(r(0, 1), r(2, 3)),
            pair(r(1, 2), r(1, 2)),
        )?,
    ];
    for j in 1..=kk {
        branches.push(branch3(
            &format!("B{j}"),
            (r(2, 3), r(1, 1)),
            (r(0, 1), r(1, 1)),
            (r(j - 1, kk), r(j, kk)),
            pair(r(-2, 1), r(3, 1)),
            pair(r(2, 3) + r(j - 1, 3 * kk), r(1, 3 * kk)),
            pair(r(-(j - 1), 1), r(kk, 1)),
        )?);
    }
    MapSystem::new(format!("hc3d-k({k})"), vec![Axis::X, Axis::Y, Axis::Z], branches, Some(k))
}

/// Generalized 2D family: `hc3d_k` with the Y axis dropped.
pub fn hc2d_k(k: u32) -> Result<MapSystem> {
    if k <= 1 {
        return Err(Error::BadParameter(format!("k must be an integer > 1, got {k}")));
    }
    let kk = k as i64;
    let axes = [Axis::X, Axis::Z];
    let mut branches = vec![
        branch2(
            "A",
            axes,
            (r(0, 1), r(1, 3)),
            (r(0, 1), r(1, 1)),
            pair(r(0, 1), r(3, 1)),
            pair(r(0, 1), r(1, 2)),
        )?,
        branch2(
            "D",
            axes,
            (r(1, 3), r(2, 3)),
            (r(0, 1), r(1, 1)),
            pair(r(-1, 1), r(3, 1)),
            pair(r(1, 2), r(1, 2)),
        )?,
    ];
    for j in 1..=kk {
        branches.push(branch2(
            &format!("B{j}"),
            axes,
            (r(2, 3), r(1, 1)),
            (r(j - 1, kk), r(j, kk)),
            pair(r(-2, 1), r(3, 1)),
            pair(r(-(j - 1), 1), r(kk, 1)),
        )?);
    }
    MapSystem::new(format!("hc2d-k({k})"), axes.to_vec(), branches, Some(k))
}
