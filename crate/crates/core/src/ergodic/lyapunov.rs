//! Lyapunov numbers: geometric means of |slope| per axis along sampled
//! orbits, with the closed-form predictions for the presets.

use rayon::prelude::*;

use crate::ergodic::sampler::{OrbitEngine, PointSampler};
use crate::error::{Error, Result};
use crate::exact::Axis;
use crate::maps::MapSystem;

#[derive(Clone, Debug)]
pub struct LyapunovEstimate {
    pub axes: Vec<Axis>,
    /// Observed geometric means, `exp` of the mean log-slope per axis.
    pub lambda: Vec<f64>,
    pub orbits: u64,
    pub steps: u64,
    pub seed: u64,
    /// Closed-form values for the preset families, when known.
    pub predicted: Option<Vec<f64>>,
    /// Set for the generalized family at k = 4, where the mixed-axis
    /// Lyapunov number degenerates to exactly 1.
    pub degenerate_k: bool,
}

/// Closed-form Lyapunov numbers of the preset families, with the k = 4
/// degeneracy flag.
pub fn preset_prediction(system: &MapSystem) -> Option<(Vec<f64>, bool)> {
    let name = system.name();
    let third: f64 = 1.0 / 3.0;
    match (name, system.param_k()) {
        ("hc3d", _) => Some((vec![3.0, 2f64.powf(third) / 3.0, 2f64.powf(-third)], false)),
        ("hc2d", _) => Some((vec![3.0, 2f64.powf(-third)], false)),
        ("baker3d", _) => Some((vec![2.0, 0.25, 2.0], false)),
        ("baker2d", _) => Some((vec![3.0, third], false)),
        (_, Some(k)) => {
            let kf = k as f64;
            let lambda_z = 0.5f64.powf(2.0 * third) * kf.powf(third);
            let degenerate = k == 4;
            if system.dim() == 3 {
                let lambda_y = (2.0 * third).powf(2.0 * third) * (1.0 / (3.0 * kf)).powf(third);
                Some((vec![3.0, lambda_y, lambda_z], degenerate))
            } else {
                Some((vec![3.0, lambda_z], degenerate))
            }
        }
        _ => None,
    }
}

/// Samples `orbits` seeded boundary-avoiding points and follows each for
/// `steps` exact orbit steps. The per-branch visit counts are exact
/// integers, so the result does not depend on the thread count or the
/// floating-point summation order; branches sharing a slope are grouped
/// before exponentiating, which keeps constant factors (like the uniform
/// expansion of the X axis) bit-exact.
pub fn lyapunov(system: &MapSystem, orbits: u64, steps: u64, seed: u64) -> Result<LyapunovEstimate> {
    if orbits == 0 || steps == 0 {
        return Err(Error::BadParameter("lyapunov needs orbits >= 1 and steps >= 1".into()));
    }
    let dim = system.dim();
    let per_orbit: Result<Vec<Vec<u64>>> = (0..orbits)
        .into_par_iter()
        .map(|index| orbit_branch_counts(system, steps, seed, index))
        .collect();
    let per_orbit = per_orbit?;
    let mut counts = vec![0u64; system.branches().len()];
    for orbit_counts in &per_orbit {
        for (t, c) in counts.iter_mut().zip(orbit_counts) {
            *t += c;
        }
    }
    let total = orbits * steps;
    let mut lambda = Vec::with_capacity(dim);
    for axis in 0..dim {
        // Group branch visits by slope value.
        let mut groups: Vec<(f64, u64)> = Vec::new();
        for (b, &count) in counts.iter().enumerate() {
            let slope = system.branch(b).action[axis].slope().abs().to_f64();
            match groups.iter_mut().find(|(s, _)| *s == slope) {
                Some((_, c)) => *c += count,
                None => groups.push((slope, count)),
            }
        }
        let value = groups
            .iter()
            .map(|(s, c)| s.powf(*c as f64 / total as f64))
            .product();
        lambda.push(value);
    }
    let (predicted, degenerate_k) = match preset_prediction(system) {
        Some((p, d)) => (Some(p), d),
        None => (None, false),
    };
    Ok(LyapunovEstimate {
        axes: system.axes().to_vec(),
        lambda,
        orbits,
        steps,
        seed,
        predicted,
        degenerate_k,
    })
}

/// Exact per-branch visit counts along one sampled orbit, resampling the
/// start point on an exact boundary hit.
fn orbit_branch_counts(system: &MapSystem, steps: u64, seed: u64, index: u64) -> Result<Vec<u64>> {
    'attempts: for attempt in 0..64 {
        let mut sampler = PointSampler::for_orbit(seed, index, attempt);
        let start = sampler.point(system.dim());
        let mut engine = OrbitEngine::new(system, &start)?;
        let mut counts = vec![0u64; system.branches().len()];
        for _ in 0..steps {
            let step = engine.step()?;
            if step.boundary {
                continue 'attempts;
            }
            counts[step.branch] += 1;
        }
        return Ok(counts);
    }
    Err(Error::NotRegular(format!(
        "orbit {index} kept hitting symbol boundaries; sampling is broken"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Point, Rational};
    use crate::maps::presets::preset;

    #[test]
    fn deterministic_across_runs() {
        let m = preset("hc3d").unwrap();
        let a = lyapunov(&m, 4, 2000, 42).unwrap();
        let b = lyapunov(&m, 4, 2000, 42).unwrap();
        assert_eq!(a.lambda, b.lambda);
        let c = lyapunov(&m, 4, 2000, 43).unwrap();
        assert_ne!(a.lambda, c.lambda);
    }

    #[test]
    fn period_six_orbit_gives_the_exact_means() {
        // The x = 1/7 cycle halves z four times and doubles it twice per
        // six steps, so the mean log over full periods is -ln(2)/3 exactly.
        let m = preset("hc3d").unwrap();
        let p = Point::xyz(Rational::new(1, 7), Rational::new(1, 7), Rational::new(1, 7));
        let mut engine = OrbitEngine::new(&m, &p).unwrap();
        let mut sum_z = 0.0;
        let mut sum_y = 0.0;
        let steps = 6 * 400;
        for _ in 0..steps {
            let step = engine.step().unwrap();
            sum_y += engine.log_slopes(step.branch)[1];
            sum_z += engine.log_slopes(step.branch)[2];
        }
        let lambda_z = (sum_z / steps as f64).exp();
        assert!((lambda_z - 2f64.powf(-1.0 / 3.0)).abs() < 1e-12);
        // Four 2/3 contractions and two 1/6 contractions per period.
        let lambda_y = (sum_y / steps as f64).exp();
        let expect = (2f64 / 3.0).powf(4.0 / 6.0) * (1f64 / 6.0).powf(2.0 / 6.0);
        assert!((lambda_y - expect).abs() < 1e-12);
    }

    #[test]
    fn short_run_lands_near_the_prediction() {
        let m = preset("hc3d").unwrap();
        let est = lyapunov(&m, 8, 20_000, 5).unwrap();
        let predicted = est.predicted.clone().unwrap();
        // The X slope is the same on every branch, so its geometric mean is
        // bit-exact.
        assert_eq!(est.lambda[0], 3.0);
        assert!((est.lambda[1] - predicted[1]).abs() < 0.05);
        assert!((est.lambda[2] - predicted[2]).abs() < 0.05);
        assert!(!est.degenerate_k);
    }

    #[test]
    fn k4_prediction_is_flagged_as_degenerate() {
        let m = preset("hc3d-k(4)").unwrap();
        let (p, degenerate) = preset_prediction(&m).unwrap();
        assert!(degenerate);
        assert!((p[2] - 1.0).abs() < 1e-12);
    }
}
