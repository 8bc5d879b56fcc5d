//! (j,k)-bricks: construction around a biased point, interior refinement and
//! the certified periodic point inside an interior brick.

use num_bigint::BigInt;

use crate::bricks::bias::{next_left_biased, next_right_biased};
use crate::bricks::profile::PhiProfile;
use crate::bricks::HcStructure;
use crate::error::{Error, Result};
use crate::exact::{BitBudget, BoxClass, DyadicInterval, HalfOpenInterval, Point, ProductBox, Rational};
use crate::periodic::{compose_word, AxisClass, PeriodicOrbit};

/// The boxes `B^m = F^m(B^0)` for `m = -j..=k` around a biased point, with
/// their symbol chain. `B^k` is an XZ pizzabox and `B^{-j}` a Y breadbox (in
/// the axis roles of the structure).
#[derive(Clone, Debug)]
pub struct Brick {
    j: u64,
    k: u64,
    /// `boxes[m + j] = B^m`.
    boxes: Vec<ProductBox>,
    /// `symbols[m + j]` = branch containing `B^m`, for `m = -j..k-1`.
    symbols: Vec<usize>,
    target: Point,
    interior: bool,
}

impl Brick {
    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn period(&self) -> u64 {
        self.j + self.k
    }

    /// `B^m` for `m` in `-j ..= k`.
    pub fn box_at(&self, m: i64) -> &ProductBox {
        let idx = m + self.j as i64;
        &self.boxes[idx as usize]
    }

    pub fn b0(&self) -> &ProductBox {
        self.box_at(0)
    }

    /// Branch chain over `m = -j..k-1`, i.e. the word of the periodic point
    /// the brick certifies, starting at `B^{-j}`.
    pub fn word(&self) -> &[usize] {
        &self.symbols
    }

    pub fn target(&self) -> &Point {
        &self.target
    }

    /// Interior brick: the breadbox `B^{-j}` has its X and Z closures inside
    /// (0,1) and the pizzabox `B^k` has its Y closure inside (0,1).
    pub fn is_interior(&self) -> bool {
        self.interior
    }
}

/// Builds the (j,k)-brick around the profile's point: `B^0` spans the
/// depth-k cylinder of the expanding coordinate, the depth-j backward
/// cylinder of the contracting coordinate, and the dyadic interval of length
/// `2^{-Φ(0,k)}` around the mixed coordinate; the remaining boxes come from
/// exact forward/backward box mapping.
pub fn build_brick(
    structure: &HcStructure,
    profile: &PhiProfile,
    j: u64,
    k: u64,
) -> Result<Brick> {
    if k == 0 {
        return Err(Error::BadParameter("bricks need k > 0".into()));
    }
    if !profile.is_right_biased(k) || (j > 0 && !profile.is_left_biased(j)) {
        return Err(Error::BadParameter(format!("({j},{k}) is not a biased pair")));
    }
    let p = profile.point();

    let x = p.coord(structure.expanding_axis());
    let (x_cell, _, touched) = structure.forward_map().cylinder(x, k as u32)?;
    if touched || !x_cell.contains_interior(x) {
        return Err(Error::NotRegular(format!(
            "expanding coordinate {x} lies on an endpoint grid of depth {k}"
        )));
    }

    let y = p.coord(structure.contracting_axis());
    let (y_cell, _, touched) = structure.backward_map().cylinder(y, j as u32)?;
    if touched || !y_cell.contains_interior(y) {
        return Err(Error::NotRegular(format!(
            "contracting coordinate {y} lies on an endpoint grid of depth {j}"
        )));
    }

    let z = p.coord(structure.mixed_axis());
    let phi0k = profile.phi(0, k as i64)?;
    debug_assert!(phi0k > 0, "right-biased k gives a positive Phi(0,k)");
    let level = phi0k as u32;
    let scaled = z * &Rational::from(BigInt::from(1) << level);
    if scaled.is_integer() {
        return Err(Error::NotRegular(format!(
            "mixed coordinate {z} lies on the dyadic grid of level {level}"
        )));
    }
    // Brick boxes stand in for the open boxes of the construction, so every
    // interval stays open at the top; exact images of half-open boxes are
    // then half-open all along the chain.
    let z_dyadic = DyadicInterval::containing(z, level)?.to_interval();
    let z_cell = HalfOpenInterval::new_open(z_dyadic.lo().clone(), z_dyadic.hi().clone())?;

    let mut intervals = vec![HalfOpenInterval::unit(); 3];
    intervals[structure.expanding_axis()] = x_cell;
    intervals[structure.contracting_axis()] = y_cell;
    intervals[structure.mixed_axis()] = z_cell;
    let b0 = ProductBox::new(structure.system().axes().to_vec(), intervals)?;

    // Map B^0 exactly through the symbol sets, forward k steps and backward j.
    let mut forward_boxes = Vec::with_capacity(k as usize);
    let mut forward_symbols = Vec::with_capacity(k as usize);
    let mut cur = b0.clone();
    for _ in 0..k {
        let (img, branch) = structure.system().evaluate_box(&cur)?;
        forward_symbols.push(branch);
        forward_boxes.push(img.clone());
        cur = img;
    }
    let mut backward_boxes = Vec::with_capacity(j as usize);
    let mut backward_symbols = Vec::with_capacity(j as usize);
    let mut cur = b0.clone();
    for _ in 0..j {
        let (img, branch) = structure.inverse().evaluate_box(&cur)?;
        backward_symbols.push(branch);
        backward_boxes.push(img.clone());
        cur = img;
    }

    let mut boxes = Vec::with_capacity((j + k + 1) as usize);
    boxes.extend(backward_boxes.into_iter().rev());
    boxes.push(b0);
    boxes.extend(forward_boxes);
    let mut symbols: Vec<usize> = backward_symbols.into_iter().rev().collect();
    symbols.extend(forward_symbols);

    let brick = Brick {
        j,
        k,
        boxes,
        symbols,
        target: p.clone(),
        interior: false,
    };

    // Shape checks from the brick definition.
    let head = brick.box_at(k as i64);
    let (e, c, m) = (
        structure.expanding_axis(),
        structure.contracting_axis(),
        structure.mixed_axis(),
    );
    if head.interval(e).length() != Rational::one()
        || head.interval(m).length() != Rational::one()
        || head.interval(c).length() == Rational::one()
    {
        return Err(Error::NotRegular(format!(
            "B^k is not an XZ pizzabox: {head}"
        )));
    }
    let tail = brick.box_at(-(j as i64));
    if tail.interval(c).length() != Rational::one()
        || tail.interval(e).length() == Rational::one()
        || tail.interval(m).length() == Rational::one()
    {
        return Err(Error::NotRegular(format!(
            "B^-j is not a Y breadbox: {tail}"
        )));
    }
    debug_assert!(brick.b0().contains_interior(p));

    let interior = tail.interval(e).closure_inside_open_unit()
        && tail.interval(m).closure_inside_open_unit()
        && head.interval(c).closure_inside_open_unit();
    Ok(Brick { interior, ..brick })
}

/// Grows j (to shrink the contracting edge) and then k along biased pairs
/// until the brick is interior and `B^0` fits in the eps-ball around the
/// profile's point.
pub fn interior_brick_search(
    structure: &HcStructure,
    profile: &PhiProfile,
    eps: &Rational,
    guard: &BitBudget,
) -> Result<Brick> {
    if eps <= &Rational::zero() {
        return Err(Error::BadParameter("eps must be positive".into()));
    }
    let p = profile.point();
    let y = p.coord(structure.contracting_axis());

    // Phase 1: the smallest left-biased j whose backward cylinder is short
    // enough and strictly inside (0,1).
    let mut j = 0u64;
    let max_attempts = 4096;
    let mut found_j = None;
    for _ in 0..max_attempts {
        j = next_left_biased(profile, j)?;
        let (cell, _, touched) = structure.backward_map().cylinder(y, j as u32)?;
        guard.check(cell.lo())?;
        if !touched && &cell.length() < eps && cell.closure_inside_open_unit() {
            found_j = Some(j);
            break;
        }
    }
    let j = found_j.ok_or_else(|| {
        Error::Budget("interior brick search exhausted its j attempts".into())
    })?;

    // Phase 2: grow k until the whole brick is interior and inside the ball.
    let mut k = 0u64;
    for _ in 0..max_attempts {
        k = next_right_biased(profile, k)?;
        let x_len = structure
            .forward_map()
            .cylinder(p.coord(structure.expanding_axis()), k as u32)?
            .0
            .length();
        if &x_len >= eps {
            continue;
        }
        let phi0k = profile.phi(0, k as i64)?;
        if phi0k <= 0 {
            continue;
        }
        let z_len = Rational::from_big(BigInt::from(1), BigInt::from(1) << phi0k as u32);
        if &z_len >= eps {
            continue;
        }
        let brick = build_brick(structure, profile, j, k)?;
        for iv in brick.b0().intervals() {
            guard.check(iv.lo())?;
            guard.check(iv.hi())?;
        }
        if brick.is_interior() && box_within_ball(brick.b0(), p, eps) {
            return Ok(brick);
        }
    }
    Err(Error::Budget("interior brick search exhausted its k attempts".into()))
}

fn box_within_ball(b: &ProductBox, center: &Point, eps: &Rational) -> bool {
    b.intervals().iter().zip(center.coords()).all(|(iv, c)| {
        &(c - iv.lo()) < eps && &(iv.hi() - c) <= eps
    })
}

/// The certified period-(j+k) point of an interior brick: the fixed point of
/// the brick's word, mapped forward to `B^0`. A violation here would
/// falsify the construction itself, so these checks panic rather than
/// return recoverable errors.
pub fn periodic_point_in_brick(structure: &HcStructure, brick: &Brick) -> Result<PeriodicOrbit> {
    if !brick.is_interior() {
        return Err(Error::BadParameter(
            "periodic points are only certified for interior bricks".into(),
        ));
    }
    let system = structure.system();
    let word = brick.word();
    let period = brick.period() as usize;
    let comp = compose_word(system, word)?;

    let one = Rational::one();
    let mut coords = Vec::with_capacity(3);
    for pair in &comp {
        assert!(
            pair.slope() != &one,
            "brick word composes to slope 1; the biased pair is broken"
        );
        let denom = &one - pair.slope();
        coords.push(pair.offset().checked_div(&denom)?);
    }
    let anchor = Point::new(coords);
    assert!(
        brick.box_at(-(brick.j as i64)).contains_interior(&anchor),
        "fixed point of the brick word must lie inside B^-j"
    );

    // Walk the orbit, checking membership in the brick's boxes.
    let mut cur = anchor.clone();
    let mut rep = None;
    for (step, &b) in word.iter().enumerate() {
        let m = step as i64 - brick.j as i64;
        assert!(
            brick.box_at(m).contains_interior(&cur),
            "orbit leaves the brick at step {step}"
        );
        assert!(system.branch(b).domain.contains(&cur));
        cur = system.apply_branch(b, &cur);
        if m + 1 == 0 {
            rep = Some(cur.clone());
        }
    }
    assert_eq!(cur, anchor, "orbit must close up exactly after j+k steps");
    let rep = if brick.j == 0 { anchor.clone() } else { rep.expect("j >= 1 passes m = -1") };
    assert!(brick.b0().contains_interior(&rep));

    let multipliers: Vec<Rational> = comp.iter().map(|p| p.slope().abs()).collect();
    let classes: Vec<AxisClass> = multipliers.iter().map(AxisClass::of).collect();
    let phi_total = profile_free_phi(structure, brick)?;
    assert_eq!(
        multipliers[structure.mixed_axis()],
        Rational::int(2).pow(phi_total as i32)?,
        "mixed multiplier must be 2^Phi(-j,k)"
    );
    assert!(classes[structure.expanding_axis()] == AxisClass::Unstable);
    assert!(classes[structure.mixed_axis()] == AxisClass::Unstable);
    assert!(classes[structure.contracting_axis()] == AxisClass::Stable);

    // Rotate the word to start at the representative in B^0.
    let mut rotated = word.to_vec();
    rotated.rotate_left(brick.j as usize);

    Ok(PeriodicOrbit {
        point: rep,
        period,
        word: rotated,
        multipliers,
        classes,
        neutral_interval: None,
        boundary: false,
    })
}

/// Φ(−j, k) read off the brick itself: the net count of doubling branches in
/// its word.
fn profile_free_phi(structure: &HcStructure, brick: &Brick) -> Result<i64> {
    let one = Rational::one();
    let mut total = 0i64;
    for &b in brick.word() {
        let slope = structure.system().branch(b).action[structure.mixed_axis()].slope();
        total += if slope > &one { 1 } else { -1 };
    }
    Ok(total)
}

/// Pizzabox/breadbox shape helper used by tests.
pub fn brick_shape(brick: &Brick) -> (BoxClass, BoxClass) {
    (
        brick.box_at(-(brick.j as i64)).classify(),
        brick.box_at(brick.k as i64).classify(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bricks::bias::{biased_pairs, construct_biased};
    use crate::bricks::profile::BiasedCertificate;
    use crate::exact::Axis;
    use crate::maps::presets::preset;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn structure() -> HcStructure {
        HcStructure::detect(&preset("hc3d").unwrap()).unwrap()
    }

    fn near_all_b_profile(s: &HcStructure) -> PhiProfile {
        // A regular biased point close to the all-B fixed point (1, 4/5, 0).
        construct_biased(s, &Point::xyz(r(1, 1), r(4, 5), r(0, 1)), &r(1, 64)).unwrap()
    }

    #[test]
    fn brick_contains_its_point_and_has_exact_widths() {
        let s = structure();
        let profile = near_all_b_profile(&s);
        let (j, k) = biased_pairs(&profile, 3).unwrap();
        let brick = build_brick(&s, &profile, j, k).unwrap();

        assert!(brick.b0().contains_interior(profile.point()));
        // |B^0_X| = 3^-k.
        assert_eq!(
            brick.b0().interval(0).length(),
            r(1, 3).pow(k as i32).unwrap()
        );
        // |B^m_Z| = 2^{-Phi(m,k)} for every m in the window.
        for m in -(j as i64)..=(k as i64) {
            let phi = profile.phi(m, k as i64).unwrap();
            let expect = Rational::int(2).pow(-phi as i32).unwrap();
            assert_eq!(brick.box_at(m).interval(2).length(), expect, "m = {m}");
        }
        // B^k is an XZ pizzabox, B^-j a Y breadbox.
        let (bread, pizza) = brick_shape(&brick);
        assert_eq!(bread, BoxClass::Breadbox(Axis::Y));
        assert_eq!(pizza, BoxClass::Pizzabox(Axis::X, Axis::Z));
        // F(B^m) = B^{m+1} re-verified by fresh box mapping.
        for m in -(j as i64)..(k as i64) {
            let (img, branch) = s.system().evaluate_box(brick.box_at(m)).unwrap();
            assert_eq!(&img, brick.box_at(m + 1));
            assert_eq!(branch, brick.word()[(m + j as i64) as usize]);
        }
    }

    #[test]
    fn generic_target_brick_has_exact_widths_and_grid_edges() {
        let s = structure();
        let profile =
            construct_biased(&s, &Point::xyz(r(3, 7), r(5, 11), r(2, 7)), &r(1, 40)).unwrap();
        let (j, k) = biased_pairs(&profile, 4).unwrap();
        let brick = build_brick(&s, &profile, j, k).unwrap();
        // Exact z widths 2^{-Phi(m,k)} all along the window.
        for m in -(j as i64)..=(k as i64) {
            let phi = profile.phi(m, k as i64).unwrap();
            let expect = Rational::int(2).pow(-phi as i32).unwrap();
            assert_eq!(brick.box_at(m).interval(2).length(), expect, "m = {m}");
        }
        // X widths 3^{m-k}.
        for m in -(j as i64)..=(k as i64) {
            let expect = r(1, 3).pow((k as i64 - m) as i32).unwrap();
            assert_eq!(brick.box_at(m).interval(0).length(), expect, "m = {m}");
        }
        // B^0_Y spans two consecutive endpoints of the j-fold backward map.
        let ends = s.backward_map().ends(j as u32);
        let y = brick.b0().interval(1);
        let lo_pos = ends.iter().position(|e| e == y.lo()).expect("lo on the grid");
        assert_eq!(&ends[lo_pos + 1], y.hi(), "consecutive endpoints");
    }

    #[test]
    fn interior_search_shrinks_the_brick() {
        let s = structure();
        let profile = near_all_b_profile(&s);
        let eps = r(1, 10);
        let brick = interior_brick_search(&s, &profile, &eps, &BitBudget::default()).unwrap();
        assert!(brick.is_interior());
        for iv in brick.b0().intervals() {
            assert!(iv.length() < eps);
        }
        let tail = brick.box_at(-(brick.j() as i64));
        assert!(tail.interval(0).closure_inside_open_unit());
        assert!(tail.interval(2).closure_inside_open_unit());
        let head = brick.box_at(brick.k() as i64);
        assert!(head.interval(1).closure_inside_open_unit());
        assert!(box_within_ball(brick.b0(), profile.point(), &eps));
    }

    #[test]
    fn periodic_point_has_the_certified_stability() {
        let s = structure();
        let profile = near_all_b_profile(&s);
        let brick = interior_brick_search(&s, &profile, &r(1, 10), &BitBudget::default()).unwrap();
        let orbit = periodic_point_in_brick(&s, &brick).unwrap();
        assert_eq!(orbit.period as u64, brick.period());
        assert!(brick.b0().contains_interior(&orbit.point));
        assert_eq!(orbit.multipliers[0], r(3, 1).pow(orbit.period as i32).unwrap());
        assert!(orbit.multipliers[2] > Rational::one());
        assert!(orbit.multipliers[1] < Rational::one());
        assert_eq!(orbit.unstable_dimension(), 2);
    }

    #[test]
    fn non_biased_pairs_are_rejected() {
        let s = structure();
        // The 1/7-style certificate starts with six mostly-contracting steps,
        // so k = 1 is not right biased.
        let profile = PhiProfile::from_certificate(
            &s,
            Point::xyz(r(1, 7), r(4, 5), r(1, 3)),
            BiasedCertificate {
                forward_prefix: vec![0, 1, 0, 2, 1, 2],
                forward_cycle: vec![0, 2, 2],
                backward_prefix: vec![],
                backward_cycle: vec![1],
            },
        )
        .unwrap();
        assert!(build_brick(&s, &profile, 1, 1).is_err());
    }
}
