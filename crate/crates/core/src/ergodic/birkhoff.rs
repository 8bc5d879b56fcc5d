//! Birkhoff (trajectory) averages of named observables.

use std::str::FromStr;

use rayon::prelude::*;

use crate::ergodic::sampler::{OrbitEngine, PointSampler};
use crate::error::{Error, Result};
use crate::exact::{Axis, Point};
use crate::maps::MapSystem;

/// The named observables the ergodicity checks use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Observable {
    CoordX,
    CoordY,
    CoordZ,
    /// Indicator of the 2D-unstable region (the branches expanding in two
    /// or more directions).
    IndicatorR2,
    ProductXZ,
}

impl Observable {
    pub fn name(&self) -> &'static str {
        match self {
            Observable::CoordX => "coord_x",
            Observable::CoordY => "coord_y",
            Observable::CoordZ => "coord_z",
            Observable::IndicatorR2 => "indicator_r2",
            Observable::ProductXZ => "product_xz",
        }
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "coord_x" => Ok(Observable::CoordX),
            "coord_y" => Ok(Observable::CoordY),
            "coord_z" => Ok(Observable::CoordZ),
            "indicator_r2" => Ok(Observable::IndicatorR2),
            "product_xz" => Ok(Observable::ProductXZ),
            other => Err(Error::BadParameter(format!("unknown observable `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BirkhoffResult {
    pub observable: Observable,
    pub steps: u64,
    pub seed: u64,
    /// Start point and trajectory average, one entry per sampled point.
    pub averages: Vec<(Point, f64)>,
    /// max − min of the averages: the ergodicity proxy.
    pub spread: f64,
}

fn axis_index(system: &MapSystem, axis: Axis) -> Result<usize> {
    system
        .axes()
        .iter()
        .position(|a| *a == axis)
        .ok_or_else(|| Error::BadParameter(format!("map {} has no {axis} axis", system.name())))
}

/// Trajectory averages of the observable over seeded points.
pub fn birkhoff(
    system: &MapSystem,
    observable: Observable,
    points: u64,
    steps: u64,
    seed: u64,
) -> Result<BirkhoffResult> {
    if points == 0 || steps == 0 {
        return Err(Error::BadParameter("birkhoff needs points >= 1 and steps >= 1".into()));
    }
    let x_idx = axis_index(system, Axis::X);
    let (ax_a, ax_b) = match observable {
        Observable::CoordX => (x_idx?, 0),
        Observable::CoordY => (axis_index(system, Axis::Y)?, 0),
        Observable::CoordZ => (axis_index(system, Axis::Z)?, 0),
        Observable::IndicatorR2 => (0, 0),
        Observable::ProductXZ => (x_idx?, axis_index(system, Axis::Z)?),
    };
    let r2: Vec<bool> = system
        .branches()
        .iter()
        .map(|b| b.unstable_dimension() >= 2)
        .collect();

    let results: Result<Vec<(Point, f64)>> = (0..points)
        .into_par_iter()
        .map(|index| {
            'attempts: for attempt in 0..64 {
                let mut sampler = PointSampler::for_orbit(seed, index, attempt);
                let start = sampler.point(system.dim());
                let mut engine = OrbitEngine::new(system, &start)?;
                let mut sum = 0.0f64;
                for _ in 0..steps {
                    let value_pre = match observable {
                        Observable::CoordX | Observable::CoordY | Observable::CoordZ => {
                            engine.float(ax_a)
                        }
                        Observable::ProductXZ => engine.float(ax_a) * engine.float(ax_b),
                        Observable::IndicatorR2 => 0.0,
                    };
                    let step = engine.step()?;
                    if step.boundary {
                        continue 'attempts;
                    }
                    sum += match observable {
                        Observable::IndicatorR2 => {
                            if r2[step.branch] {
                                1.0
                            } else {
                                0.0
                            }
                        }
                        _ => value_pre,
                    };
                }
                return Ok((start, sum / steps as f64));
            }
            Err(Error::NotRegular(format!(
                "point {index} kept hitting symbol boundaries"
            )))
        })
        .collect();
    let averages = results?;
    let spread = match averages.len() {
        0 => 0.0,
        _ => {
            let max = averages.iter().map(|(_, a)| *a).fold(f64::NEG_INFINITY, f64::max);
            let min = averages.iter().map(|(_, a)| *a).fold(f64::INFINITY, f64::min);
            max - min
        }
    };
    Ok(BirkhoffResult { observable, steps, seed, averages, spread })
}

/// The average of an observable along one explicit (possibly periodic) exact
/// orbit; used for the measure-zero exceptional cases.
pub fn birkhoff_at(
    system: &MapSystem,
    observable: Observable,
    start: &Point,
    steps: u64,
) -> Result<f64> {
    let x_idx = axis_index(system, Axis::X);
    let (ax_a, ax_b) = match observable {
        Observable::CoordX => (x_idx?, 0),
        Observable::CoordY => (axis_index(system, Axis::Y)?, 0),
        Observable::CoordZ => (axis_index(system, Axis::Z)?, 0),
        Observable::IndicatorR2 => (0, 0),
        Observable::ProductXZ => (x_idx?, axis_index(system, Axis::Z)?),
    };
    let r2: Vec<bool> = system
        .branches()
        .iter()
        .map(|b| b.unstable_dimension() >= 2)
        .collect();
    let mut cur = start.clone();
    let mut sum = 0.0;
    for _ in 0..steps {
        let step = system.evaluate(&cur)?;
        sum += match observable {
            Observable::CoordX | Observable::CoordY | Observable::CoordZ => {
                cur.coord(ax_a).to_f64()
            }
            Observable::ProductXZ => cur.coord(ax_a).to_f64() * cur.coord(ax_b).to_f64(),
            Observable::IndicatorR2 => {
                if r2[step.branch] {
                    1.0
                } else {
                    0.0
                }
            }
        };
        cur = step.image;
    }
    Ok(sum / steps as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use crate::maps::presets::preset;

    #[test]
    fn fixed_point_average_is_exactly_zero() {
        let m = preset("hc3d").unwrap();
        let origin = Point::xyz(Rational::zero(), Rational::zero(), Rational::zero());
        let avg = birkhoff_at(&m, Observable::CoordX, &origin, 100).unwrap();
        assert_eq!(avg, 0.0);
    }

    #[test]
    fn coord_x_averages_near_one_half() {
        let m = preset("hc3d").unwrap();
        let result = birkhoff(&m, Observable::CoordX, 6, 100_000, 11).unwrap();
        for (_, avg) in &result.averages {
            assert!((avg - 0.5).abs() < 0.02, "average {avg}");
        }
        assert!(result.spread < 0.04);
    }

    #[test]
    fn indicator_r2_averages_near_one_third() {
        let m = preset("hc3d").unwrap();
        let result = birkhoff(&m, Observable::IndicatorR2, 6, 100_000, 13).unwrap();
        for (_, avg) in &result.averages {
            assert!((avg - 1.0 / 3.0).abs() < 0.02, "average {avg}");
        }
    }

    #[test]
    fn determinism_and_unknown_observables() {
        let m = preset("hc2d").unwrap();
        let a = birkhoff(&m, Observable::CoordZ, 3, 5000, 3).unwrap();
        let b = birkhoff(&m, Observable::CoordZ, 3, 5000, 3).unwrap();
        for ((pa, va), (pb, vb)) in a.averages.iter().zip(&b.averages) {
            assert_eq!(pa, pb);
            assert_eq!(va, vb);
        }
        assert!(birkhoff(&m, Observable::CoordY, 2, 10, 1).is_err());
        assert!("nope".parse::<Observable>().is_err());
        assert_eq!("coord_x".parse::<Observable>().unwrap(), Observable::CoordX);
    }
}
