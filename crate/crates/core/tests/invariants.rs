//! Cross-preset structural invariants: totality, inverse round trips and
//! projection equivariance beyond the base presets.

use heterochaos::ergodic::PointSampler;
use heterochaos::maps::{preset, project};

#[test]
fn every_sampled_point_has_exactly_one_owner() {
    for name in ["baker2d", "baker3d", "hc2d", "hc3d", "hc2d-k(4)", "hc3d-k(6)"] {
        let system = preset(name).unwrap();
        let mut sampler = PointSampler::new(99);
        for _ in 0..500 {
            let p = sampler.point(system.dim());
            // Unique ownership: membership in exactly one branch domain.
            let owners = system
                .branches()
                .iter()
                .filter(|b| b.domain.contains(&p))
                .count();
            assert_eq!(owners, 1, "{name} at {p}");
        }
    }
}

#[test]
fn invertible_presets_round_trip() {
    for name in ["baker3d", "hc3d", "hc3d-k(3)", "hc3d-k(5)"] {
        let system = preset(name).unwrap();
        let inverse = system.invert().unwrap();
        let mut sampler = PointSampler::new(123);
        for _ in 0..500 {
            let p = sampler.point(3);
            let image = system.evaluate(&p).unwrap().image;
            let back = inverse.evaluate(&image).unwrap().image;
            assert_eq!(back, p, "{name} at {p}");
            // And the other way around.
            let pre = inverse.evaluate(&p).unwrap().image;
            let fwd = system.evaluate(&pre).unwrap().image;
            assert_eq!(fwd, p, "{name} backward at {p}");
        }
    }
}

#[test]
fn core_values_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<heterochaos::Rational>();
    assert_send_sync::<heterochaos::exact::HalfOpenInterval>();
    assert_send_sync::<heterochaos::exact::ProductBox>();
    assert_send_sync::<heterochaos::exact::Point>();
    assert_send_sync::<heterochaos::maps::MapSystem>();
    assert_send_sync::<heterochaos::bricks::HcStructure>();
    assert_send_sync::<heterochaos::bricks::Brick>();
    assert_send_sync::<heterochaos::periodic::PeriodicOrbit>();
}

#[test]
fn projection_commutes_for_the_generalized_family() {
    for k in [2u32, 3, 5] {
        let m3 = preset(&format!("hc3d-k({k})")).unwrap();
        let m2 = preset(&format!("hc2d-k({k})")).unwrap();
        let mut sampler = PointSampler::new(7);
        for _ in 0..500 {
            let p = sampler.point(3);
            let lhs = project(&m3.evaluate(&p).unwrap().image).unwrap();
            let rhs = m2.evaluate(&project(&p).unwrap()).unwrap().image;
            assert_eq!(lhs, rhs, "k = {k} at {p}");
        }
    }
}
