//! Acceptance suite: one test per shipped guarantee, each printing a
//! PASS/FAIL line. Tolerances and thresholds are pinned in the assertions.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::Instant;

use num_bigint::BigUint;

use heterochaos::bricks::{
    biased_pairs, construct_biased, interior_brick_search, periodic_point_in_brick,
    two_brick_chain, Brick, HcStructure,
};
use heterochaos::ergodic::{
    birkhoff, leaf_contraction, lyapunov, Observable, PointSampler,
};
use heterochaos::exact::{BitBudget, Rational};
use heterochaos::maps::{preset, project};
use heterochaos::periodic::{
    compose_word, enumerate_periodic, fixed_point_of_word, AxisClass, EnumerationBudget,
    StabilityFilter,
};
use heterochaos::symbolic::{
    brute_force_admissible, count_admissible, is_admissible, word_to_branches, HcSymbol, Word,
};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn pass(criterion: &str) {
    println!("criterion {criterion}: PASS");
}

// 1. Exact round-trip through the inverse on ten thousand seeded points.
#[test]
fn criterion_01_exact_round_trip() {
    let clock = Instant::now();
    let system = preset("hc3d").unwrap();
    let inverse = system.invert().unwrap();
    let mut sampler = PointSampler::new(2024);
    let mut checked = 0u32;
    while checked < 10_000 {
        let p = sampler.point(3);
        let step = system.evaluate(&p).unwrap();
        let (_, image_boundary) = system.branch_of(&step.image).unwrap();
        if step.boundary || image_boundary {
            continue;
        }
        let back = inverse.evaluate(&step.image).unwrap();
        assert_eq!(back.image, p, "round trip failed at {p}");
        checked += 1;
    }
    let elapsed = clock.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "round-trip suite took {elapsed:?}, budget is 10 s"
    );
    pass("1 (exact round-trip, 10^4 points < 10 s)");
}

// 2. Per-branch slope products are exactly 1 on the volume-preserving
// presets.
#[test]
fn criterion_02_volume_preservation() {
    for name in ["hc3d", "hc3d-k(2)", "hc3d-k(3)", "hc3d-k(5)", "hc3d-k(6)"] {
        let system = preset(name).unwrap();
        for branch in system.branches() {
            assert!(
                branch.slope_product().is_one(),
                "{name} branch {} has slope product {}",
                branch.label,
                branch.slope_product()
            );
        }
    }
    pass("2 (volume preservation of hc3d and hc3d-k)");
}

// 3. The XZ projection intertwines the 3D and 2D maps exactly.
#[test]
fn criterion_03_projection_commutation() {
    let m3 = preset("hc3d").unwrap();
    let m2 = preset("hc2d").unwrap();
    let mut sampler = PointSampler::new(777);
    for _ in 0..10_000 {
        let p = sampler.point(3);
        let lhs = project(&m3.evaluate(&p).unwrap().image).unwrap();
        let rhs = m2.evaluate(&project(&p).unwrap()).unwrap().image;
        assert_eq!(lhs, rhs, "projection fails to commute at {p}");
    }
    pass("3 (projection commutation on 10^4 points)");
}

// 4. Lyapunov numbers: 100 orbits of 10^5 steps against the closed forms.
#[test]
fn criterion_04_lyapunov_constants() {
    let clock = Instant::now();
    let m = preset("hc3d").unwrap();
    let est = lyapunov(&m, 100, 100_000, 9).unwrap();
    assert_eq!(est.lambda[0], 3.0, "Lambda_X must be exactly 3");
    assert!(
        (est.lambda[1] - 0.41997).abs() <= 0.01,
        "Lambda_Y = {}",
        est.lambda[1]
    );
    assert!(
        (est.lambda[2] - 0.79370).abs() <= 0.01,
        "Lambda_Z = {}",
        est.lambda[2]
    );
    let product: f64 = est.lambda.iter().product();
    assert!((product - 1.0).abs() <= 0.01, "volume drift {product}");

    let mk = preset("hc3d-k(5)").unwrap();
    let est5 = lyapunov(&mk, 100, 100_000, 9).unwrap();
    assert!(
        (est5.lambda[2] - 1.0772).abs() <= 0.02,
        "k=5 Lambda_Z = {}",
        est5.lambda[2]
    );
    let elapsed = clock.elapsed();
    assert!(
        elapsed.as_secs_f64() < 120.0,
        "lyapunov suite took {elapsed:?}, budget is 2 min"
    );
    pass("4 (Lyapunov constants within tolerance, < 2 min)");
}

// 5. The period-2 word (A,B) is a neutral family, excluded from both
// unstable classes.
#[test]
fn criterion_05_period_two_degeneracy() {
    let m = preset("hc3d").unwrap();
    let word = word_to_branches(&m, &"AB".parse::<Word>().unwrap()).unwrap();
    let family = fixed_point_of_word(&m, &word).unwrap().unwrap();
    assert_eq!(family.point.coord(0), &r(1, 4));
    assert_eq!(family.point.coord(1), &r(3, 4));
    assert_eq!(family.multipliers[2], Rational::one());
    assert_eq!(family.classes[2], AxisClass::Neutral);
    let (axis, interval) = family.neutral_interval.clone().unwrap();
    assert_eq!(axis, 2);
    assert_eq!(interval.lo(), &Rational::zero());
    assert_eq!(interval.hi(), &Rational::one());
    assert!(!StabilityFilter::OneDUnstable.matches(&family));
    assert!(!StabilityFilter::TwoDUnstable.matches(&family));

    // The enumeration reports it as neutral and keeps it out of both classes.
    let neutral =
        enumerate_periodic(&m, 2, StabilityFilter::Neutral, EnumerationBudget::default()).unwrap();
    assert!(neutral
        .iter()
        .any(|o| m.word_label(&o.word) == "AB" && o.multipliers[2].is_one()));
    for filter in [StabilityFilter::OneDUnstable, StabilityFilter::TwoDUnstable] {
        let orbits = enumerate_periodic(&m, 2, filter, EnumerationBudget::default()).unwrap();
        assert!(orbits.iter().all(|o| m.word_label(&o.word) != "AB"));
    }
    pass("5 (period-2 neutral family reported and excluded)");
}

// 6. Enumeration integrity on hc2d up to period 10: exact closure, word
// admissibility, symbol membership and run-to-run stability.
#[test]
fn criterion_06_periodic_enumeration_integrity() {
    let m = preset("hc2d").unwrap();
    let orbits =
        enumerate_periodic(&m, 10, StabilityFilter::All, EnumerationBudget::default()).unwrap();
    assert!(!orbits.is_empty());
    for orbit in &orbits {
        // Exact orbit closure and symbol-set membership.
        let mut cur = orbit.point.clone();
        for &b in &orbit.word {
            assert!(m.branch(b).domain.contains(&cur), "membership fails");
            cur = m.apply_branch(b, &cur);
        }
        assert_eq!(cur, orbit.point, "orbit fails to close exactly");
        // The branch word, read as A/B/C/D symbols, is admissible.
        let word: Word = m.word_label(&orbit.word).parse().unwrap();
        assert!(is_admissible(&word), "word {word} inadmissible");
    }
    let again =
        enumerate_periodic(&m, 10, StabilityFilter::All, EnumerationBudget::default()).unwrap();
    assert_eq!(orbits.len(), again.len());
    for (a, b) in orbits.iter().zip(&again) {
        assert_eq!(a.word, b.word);
        assert_eq!(a.point, b.point);
    }
    pass("6 (enumeration integrity to period 10, stable ordering)");
}

// 7. Density proxy: periodic points of both unstable classes up to period
// 13 hit every cell of the 8x8 grid. Empty cells are reported, not hidden.
#[test]
fn criterion_07_fig4_density_proxy() {
    let m = preset("hc2d").unwrap();
    let orbits =
        enumerate_periodic(&m, 13, StabilityFilter::All, EnumerationBudget::default()).unwrap();
    let eight = Rational::int(8);
    let mut hits_1d = [[false; 8]; 8];
    let mut hits_2d = [[false; 8]; 8];
    for orbit in &orbits {
        if orbit.has_neutral_axis() {
            continue;
        }
        let grid = match orbit.unstable_dimension() {
            1 => &mut hits_1d,
            2 => &mut hits_2d,
            _ => continue,
        };
        // Mark the cell of every point on the orbit.
        let mut cur = orbit.point.clone();
        for &b in &orbit.word {
            let cx = cell_index(cur.coord(0), &eight);
            let cz = cell_index(cur.coord(1), &eight);
            grid[cx][cz] = true;
            cur = m.apply_branch(b, &cur);
        }
    }
    let mut missing = Vec::new();
    for (label, grid) in [("1d", &hits_1d), ("2d", &hits_2d)] {
        for (i, row) in grid.iter().enumerate() {
            for (j, hit) in row.iter().enumerate() {
                if !hit {
                    missing.push(format!("{label} cell ({i},{j})"));
                }
            }
        }
    }
    if !missing.is_empty() {
        println!("criterion 7: empty grid cells: {}", missing.join(", "));
    }
    assert!(missing.is_empty(), "empty cells: {}", missing.join(", "));
    pass("7 (both classes hit all 64 cells at period <= 13)");
}

fn cell_index(x: &Rational, eight: &Rational) -> usize {
    let scaled = (x * eight).floor_int();
    let idx: u64 = (&scaled).try_into().unwrap_or(0);
    (idx as usize).min(7)
}

// 8. Admissibility: DP versus brute force, the frozen small counts, the
// growth-rate window and the non-SFT witness families.
#[test]
fn criterion_08_admissibility() {
    let rows = count_admissible(18).unwrap();
    for n in 1..=10usize {
        let oracle = brute_force_admissible(n).unwrap();
        assert_eq!(rows[n - 1].adm, oracle, "adm({n}) disagrees with brute force");
    }
    assert_eq!(rows[0].adm, BigUint::from(4u8));
    assert_eq!(rows[1].adm, BigUint::from(14u8));
    assert_eq!(rows[2].adm, BigUint::from(48u8));

    // Gamma(N) - 3 positive, decreasing, within a factor of 2 of 3/N; all
    // comparisons exact in rational arithmetic.
    let three = Rational::int(3);
    let mut prev: Option<Rational> = None;
    for row in rows.iter().filter(|r| (8..=18).contains(&r.n)) {
        let gap = row.gamma.clone().unwrap() - &three;
        let n = row.n as i64;
        assert!(gap > Rational::zero(), "Gamma({n}) <= 3");
        assert!(gap >= r(3, 2 * n), "Gamma({n}) - 3 below 3/(2N)");
        assert!(gap <= r(6, n), "Gamma({n}) - 3 above 6/N");
        if let Some(p) = prev {
            assert!(gap < p, "Gamma gap not decreasing at N = {n}");
        }
        prev = Some(gap);
    }

    // Non-SFT witnesses: A^j B^{j-1} C dies, A^j B^j C lives.
    for j in 1..=12usize {
        let mut dead = vec![HcSymbol::A; j];
        dead.extend(vec![HcSymbol::B; j - 1]);
        dead.push(HcSymbol::C);
        assert!(!is_admissible(&Word::new(dead).unwrap()), "j = {j}");
        let mut alive = vec![HcSymbol::A; j];
        alive.extend(vec![HcSymbol::B; j]);
        alive.push(HcSymbol::C);
        assert!(is_admissible(&Word::new(alive).unwrap()), "j = {j}");
    }
    pass("8 (adm counts, growth window, non-SFT witnesses)");
}

// 9. The full brick pipeline on 100 seeded targets at eps = 1/1000, plus
// the dual pipeline on the inverse map.
#[test]
fn criterion_09_brick_pipeline() {
    let system = preset("hc3d").unwrap();
    let structure = HcStructure::detect(&system).unwrap();
    let eps = r(1, 1000);
    let half = &eps * &r(1, 2);
    let guard = BitBudget::default();
    let mut sampler = PointSampler::new(4242);
    for case in 0..100 {
        let target = sampler.point(3);
        let profile = construct_biased(&structure, &target, &half).unwrap();
        assert!(profile.point().sup_distance(&target) < half);
        let (j, k) = biased_pairs(&profile, 0).unwrap();
        assert!(j >= 1 && k >= 1);
        let brick = interior_brick_search(&structure, &profile, &half, &guard).unwrap();
        assert!(brick.is_interior(), "case {case}");
        let orbit = periodic_point_in_brick(&structure, &brick).unwrap();
        // In the brick, in the ball, right period, 2D unstable / 1D stable.
        assert!(brick.b0().contains_interior(&orbit.point), "case {case}");
        assert!(orbit.point.sup_distance(&target) < eps, "case {case}");
        assert_eq!(orbit.period as u64, brick.j() + brick.k(), "case {case}");
        assert!(orbit.multipliers[0] > Rational::one());
        assert!(orbit.multipliers[2] > Rational::one());
        assert!(orbit.multipliers[1] < Rational::one());
        // And the orbit closes exactly under the forward map.
        let mut cur = orbit.point.clone();
        for _ in 0..orbit.period {
            cur = system.evaluate(&cur).unwrap().image;
        }
        assert_eq!(cur, orbit.point, "case {case}");
    }

    // Dual pipeline: 2D-unstable points of the inverse map are 1D-unstable
    // periodic points of the forward map.
    let inverse = system.invert().unwrap();
    let dual_structure = HcStructure::detect(&inverse).unwrap();
    let mut sampler = PointSampler::new(2425);
    for case in 0..10 {
        let target = sampler.point(3);
        let profile = construct_biased(&dual_structure, &target, &half).unwrap();
        let brick = interior_brick_search(&dual_structure, &profile, &half, &guard).unwrap();
        let dual_orbit = periodic_point_in_brick(&dual_structure, &brick).unwrap();
        assert_eq!(dual_orbit.unstable_dimension(), 2);
        // Classify the same point under the forward map.
        let mut word = Vec::with_capacity(dual_orbit.period);
        let mut cur = dual_orbit.point.clone();
        for _ in 0..dual_orbit.period {
            let step = system.evaluate(&cur).unwrap();
            word.push(step.branch);
            cur = step.image;
        }
        assert_eq!(cur, dual_orbit.point, "dual case {case}");
        let comp = compose_word(&system, &word).unwrap();
        let chi: Vec<Rational> = comp.iter().map(|p| p.slope().abs()).collect();
        assert!(chi[0] > Rational::one(), "dual case {case}");
        assert!(chi[1] < Rational::one(), "dual case {case}");
        assert!(chi[2] < Rational::one(), "dual case {case}");
    }
    pass("9 (brick pipeline on 100 targets and the dual pipeline)");
}

// 10. Two-brick chains through 5 seeded bricks: closure nesting and the
// exact visit containments.
#[test]
fn criterion_10_two_brick_chain() {
    let system = preset("hc3d").unwrap();
    let structure = HcStructure::detect(&system).unwrap();
    let guard = BitBudget::default();
    let eps = r(1, 50);
    let mut sampler = PointSampler::new(31337);
    let bricks: Vec<Brick> = (0..5)
        .map(|_| {
            let target = sampler.point(3);
            let profile = construct_biased(&structure, &target, &eps).unwrap();
            interior_brick_search(&structure, &profile, &eps, &guard).unwrap()
        })
        .collect();
    let chain = two_brick_chain(&structure, &bricks).unwrap();
    assert_eq!(chain.len(), 5);
    // Nested closures on the expanding and mixed axes.
    for t in 1..chain.len() {
        let outer = chain.breadbox(t - 1);
        let inner = chain.breadbox(t);
        for axis in [0usize, 2] {
            assert!(inner.interval(axis).lo() >= outer.interval(axis).lo());
            assert!(inner.interval(axis).hi() < outer.interval(axis).hi());
        }
    }
    // F^{N_s}(U_5) inside B^0_s for every s, re-verified by fresh mapping.
    chain.verify(&structure, &bricks).unwrap();
    pass("10 (two-brick chain nesting and visit containments)");
}

// 11. Leaf contraction: Y widths below (2/3)^100 always, Z short on at
// least 95% of leaves, and the all-R leaf never contracts in Z.
#[test]
fn criterion_11_leaf_contraction() {
    let m = preset("hc3d").unwrap();
    let mut sampler = PointSampler::new(55);
    let y_bound = r(2, 3).pow(100).unwrap();
    let z_bound = r(1, 1000);
    let mut short_z = 0u32;
    for _ in 0..100 {
        let x0 = sampler.rational();
        let record = leaf_contraction(&m, &x0, 100).unwrap();
        let last = record.last();
        assert!(last.y_width <= y_bound, "|Y_100| too large for x0 = {x0}");
        let z_len = match &last.z {
            heterochaos::symbolic::AdmissibilityState::Full => Rational::one(),
            heterochaos::symbolic::AdmissibilityState::Dyadic(d) => d.length(),
        };
        if z_len < z_bound {
            short_z += 1;
        }
    }
    assert!(short_z >= 95, "only {short_z}/100 leaves contracted in Z");

    let all_r = leaf_contraction(&m, &Rational::one(), 100).unwrap();
    for step in &all_r.steps {
        assert!(matches!(
            step.z,
            heterochaos::symbolic::AdmissibilityState::Full
        ));
    }
    pass("11 (leaf contraction with the all-R exception)");
}

// 12. Ergodicity proxy: Birkhoff averages of coord_x and indicator_R2 over
// 20 points and 10^6 steps.
#[test]
fn criterion_12_birkhoff_averages() {
    let m = preset("hc3d").unwrap();
    let coord = birkhoff(&m, Observable::CoordX, 20, 1_000_000, 6).unwrap();
    assert!(coord.spread <= 0.02, "coord_x spread {}", coord.spread);
    for (start, avg) in &coord.averages {
        assert!((avg - 0.5).abs() <= 0.01, "coord_x average {avg} at {start}");
    }
    let indicator = birkhoff(&m, Observable::IndicatorR2, 20, 1_000_000, 6).unwrap();
    assert!(indicator.spread <= 0.02, "indicator spread {}", indicator.spread);
    for (start, avg) in &indicator.averages {
        assert!(
            (avg - 1.0 / 3.0).abs() <= 0.01,
            "indicator average {avg} at {start}"
        );
    }
    pass("12 (Birkhoff averages match 1/2 and 1/3 within 0.01)");
}
