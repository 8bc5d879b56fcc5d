//! Construction of biased points near arbitrary targets, and the search for
//! biased pairs (j, k).

use num_bigint::BigInt;

use crate::bricks::profile::{BiasedCertificate, PhiProfile};
use crate::bricks::HcStructure;
use crate::error::{Error, Result};
use crate::exact::{Point, Rational};
use crate::maps::OneDMap;

/// Hard cap on the biased-pair scan; certificates gain Φ at least 1 per
/// cycle, so anything near this bound means a broken certificate.
const SCAN_CAP: u64 = 1_000_000;

/// Builds a certified biased point within `eps` (sup metric) of `target`.
///
/// The expanding coordinate copies the target's itinerary to depth
/// ~log(1/eps) and continues with the structure's net-positive cycle; the
/// contracting coordinate does the same along its backward factor map; the
/// mixed coordinate is moved onto a non-dyadic rational nearby. The result
/// avoids every symbol-set boundary at all times, which is verified over the
/// certificate horizon.
pub fn construct_biased(
    structure: &HcStructure,
    target: &Point,
    eps: &Rational,
) -> Result<PhiProfile> {
    if eps <= &Rational::zero() {
        return Err(Error::BadParameter("eps must be positive".into()));
    }
    if target.dim() != 3 {
        return Err(Error::BadParameter("biased points live in the cube".into()));
    }
    let margin = eps * &Rational::new(1, 3);

    let (forward_prefix, x0) = approximate_with_tail(
        structure.forward_map(),
        target.coord(structure.expanding_axis()),
        &margin,
        structure.forward_cycle(),
    )?;
    let (backward_prefix, y0) = approximate_with_tail(
        structure.backward_map(),
        target.coord(structure.contracting_axis()),
        &margin,
        structure.backward_cycle(),
    )?;
    let z0 = non_dyadic_near(target.coord(structure.mixed_axis()), &margin)?;

    let mut coords = vec![Rational::zero(); 3];
    coords[structure.expanding_axis()] = x0;
    coords[structure.contracting_axis()] = y0;
    coords[structure.mixed_axis()] = z0;
    let point = Point::new(coords);
    debug_assert!(point.sup_distance(target) < *eps);

    let cert = BiasedCertificate {
        forward_prefix,
        forward_cycle: structure.forward_cycle().to_vec(),
        backward_prefix,
        backward_cycle: structure.backward_cycle().to_vec(),
    };
    let profile = PhiProfile::from_certificate(structure, point, cert)?;
    verify_certificate(structure, &profile)?;
    Ok(profile)
}

/// Itinerary prefix of `target` under `map`, deep enough that the cylinder is
/// shorter than `margin`, together with the point following that prefix and
/// then the given cycle forever.
fn approximate_with_tail(
    map: &OneDMap,
    target: &Rational,
    margin: &Rational,
    cycle: &[usize],
) -> Result<(Vec<usize>, Rational)> {
    let mut prefix = Vec::new();
    let mut cur = target.clone();
    let mut cylinder = Rational::one();
    while &cylinder >= margin {
        let (next, branch, _) = map.eval(&cur)?;
        let slope = map.branch(branch).1.slope().clone();
        cylinder = cylinder.checked_div(&slope)?;
        prefix.push(branch);
        cur = next;
    }
    let point = map.point_with_itinerary(&prefix, cycle)?;
    Ok((prefix, point))
}

/// A rational within `margin` of `target` whose reduced denominator is a
/// positive power of 3, hence never on any dyadic grid along the orbit.
fn non_dyadic_near(target: &Rational, margin: &Rational) -> Result<Rational> {
    let mut level: u32 = 1;
    let mut cell = Rational::new(1, 3);
    while &cell >= margin {
        level += 1;
        cell = cell * Rational::new(1, 3);
    }
    let den = BigInt::from(3).pow(level);
    let mut a = (target * &Rational::from(den.clone())).floor_int();
    let one = BigInt::from(1);
    let top = &den - &one;
    if a < one {
        a = one.clone();
    }
    if a > top {
        a = top.clone();
    }
    if (&a % 3) == BigInt::from(0) {
        a = if &a + &one <= top { a + &one } else { a - &one };
    }
    debug_assert!((&a % 3) != BigInt::from(0));
    Ok(Rational::from_big(a, den))
}

/// Walks the exact orbit forward and backward over the certificate horizon,
/// checking that every visited symbol set is interior and matches the
/// certified L values.
fn verify_certificate(structure: &HcStructure, profile: &PhiProfile) -> Result<()> {
    let one = Rational::one();
    let horizon_fwd = profile.forward_scan_horizon();
    let mut cur = profile.point().clone();
    for n in 0..horizon_fwd {
        let step = structure.system().evaluate(&cur)?;
        if step.boundary {
            return Err(Error::NotRegular(format!(
                "constructed point hits a symbol boundary at step {n}"
            )));
        }
        let slope = structure.system().branch(step.branch).action[structure.mixed_axis()].slope();
        let l = if slope > &one { 1 } else { -1 };
        if l != profile.l(n as i64) {
            return Err(Error::NotRegular(format!("L mismatch at forward step {n}")));
        }
        cur = step.image;
    }
    let horizon_bwd = profile.backward_scan_horizon();
    let mut cur = profile.point().clone();
    for m in 1..=horizon_bwd {
        let step = structure.inverse().evaluate(&cur)?;
        if step.boundary {
            return Err(Error::NotRegular(format!(
                "constructed point hits a symbol boundary at step -{m}"
            )));
        }
        // The inverse branch used here is the forward branch containing the
        // preimage, whose mixed slope certifies L at time -m.
        let slope = structure.system().branch(step.branch).action[structure.mixed_axis()].slope();
        let l = if slope > &one { 1 } else { -1 };
        if l != profile.l(-(m as i64)) {
            return Err(Error::NotRegular(format!("L mismatch at backward step {m}")));
        }
        cur = step.image;
    }
    Ok(())
}

/// The smallest biased pair (j, k) with both entries above `n_min`:
/// Φ(m, k) > 0 for all m < k and Φ(−j, m) > 0 for all m > −j.
pub fn biased_pairs(profile: &PhiProfile, n_min: u64) -> Result<(u64, u64)> {
    let j = next_left_biased(profile, n_min)?;
    let k = next_right_biased(profile, n_min)?;
    Ok((j, k))
}

pub(crate) fn next_right_biased(profile: &PhiProfile, n_min: u64) -> Result<u64> {
    for k in n_min + 1..SCAN_CAP {
        if profile.is_right_biased(k) {
            return Ok(k);
        }
    }
    Err(Error::Budget("no right-biased index found; certificate broken".into()))
}

pub(crate) fn next_left_biased(profile: &PhiProfile, n_min: u64) -> Result<u64> {
    for j in n_min + 1..SCAN_CAP {
        if profile.is_left_biased(j) {
            return Ok(j);
        }
    }
    Err(Error::Budget("no left-biased index found; certificate broken".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bricks::profile::BiasedCertificate;
    use crate::maps::presets::preset;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn structure() -> HcStructure {
        HcStructure::detect(&preset("hc3d").unwrap()).unwrap()
    }

    #[test]
    fn all_b_point_pairs_are_the_next_integers() {
        let s = structure();
        let profile = PhiProfile::from_certificate(
            &s,
            Point::xyz(r(1, 1), r(4, 5), r(0, 1)),
            BiasedCertificate {
                forward_prefix: vec![],
                forward_cycle: vec![2],
                backward_prefix: vec![],
                backward_cycle: vec![1],
            },
        )
        .unwrap();
        for n in [0u64, 3, 10] {
            assert_eq!(biased_pairs(&profile, n).unwrap(), (n + 1, n + 1));
        }
    }

    #[test]
    fn constructed_point_is_close_and_biased() {
        let s = structure();
        let target = Point::xyz(r(1, 2), r(1, 2), r(1, 2));
        let eps = r(1, 8);
        let profile = construct_biased(&s, &target, &eps).unwrap();
        assert!(profile.point().sup_distance(&target) < eps);
        let (j, k) = biased_pairs(&profile, 4).unwrap();
        assert!(j > 4 && k > 4);
        assert!(profile.phi(0, k as i64).unwrap() > 0);
        assert!(profile.phi(-(j as i64), 0).unwrap() > 0);
        // Right-biasedness against a direct scan oracle.
        for m in -((j + 12) as i64)..(k as i64) {
            assert!(profile.phi(m, k as i64).unwrap() > 0, "m = {m}");
        }
        for m in (-(j as i64) + 1)..=(k as i64 + 12) {
            assert!(profile.phi(-(j as i64), m).unwrap() > 0, "m = {m}");
        }
    }

    #[test]
    fn targets_on_the_cube_boundary_are_fine() {
        let s = structure();
        let target = Point::xyz(r(1, 1), r(0, 1), r(1, 1));
        let eps = r(1, 100);
        let profile = construct_biased(&s, &target, &eps).unwrap();
        assert!(profile.point().sup_distance(&target) < eps);
    }

    #[test]
    fn phi_increases_along_cycle_multiples() {
        let s = structure();
        let target = Point::xyz(r(2, 7), r(3, 7), r(4, 7));
        let profile = construct_biased(&s, &target, &r(1, 50)).unwrap();
        let p = profile.certificate().forward_prefix.len() as i64;
        let c = profile.certificate().forward_cycle.len() as i64;
        let mut prev = profile.phi(0, p).unwrap();
        for t in 1..=8 {
            let cur = profile.phi(0, p + t * c).unwrap();
            assert!(cur > prev);
            prev = cur;
        }
    }

    #[test]
    fn dual_pipeline_constructs_biased_points_too() {
        let inv = preset("hc3d").unwrap().invert().unwrap();
        let s = HcStructure::detect(&inv).unwrap();
        let target = Point::xyz(r(1, 2), r(1, 2), r(1, 2));
        let profile = construct_biased(&s, &target, &r(1, 16)).unwrap();
        assert!(profile.point().sup_distance(&target) < r(1, 16));
        let (j, k) = biased_pairs(&profile, 2).unwrap();
        assert!(j > 2 && k > 2);
    }
}
