//! Exact leaf contraction: forward images of the vertical leaf through x
//! stay product sets with an interval Y part and a binary-interval Z part.

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::maps::{MapSystem, OneDMap};
use crate::symbolic::{step_state, AdmissibilityState, HcSymbol};

/// State of `F^n(L_{x0})`: the Y width shrinks by 2/3 or 1/6 every step, the
/// Z part is a binary interval except that a doubling applied to the full
/// interval leaves it full.
#[derive(Clone, Debug)]
pub struct LeafStep {
    pub n: usize,
    pub x: Rational,
    pub y_width: Rational,
    pub z: AdmissibilityState,
    /// |Y_n| + |Z_n|, the product-metric diameter bound.
    pub diameter_bound: f64,
}

#[derive(Clone, Debug)]
pub struct LeafRecord {
    pub x0: Rational,
    pub steps: Vec<LeafStep>,
}

impl LeafRecord {
    pub fn last(&self) -> &LeafStep {
        self.steps.last().expect("records hold step 0")
    }
}

fn z_length(state: &AdmissibilityState) -> Rational {
    match state {
        AdmissibilityState::Full => Rational::one(),
        AdmissibilityState::Dyadic(d) => d.length(),
    }
}

/// Tracks the leaf through `n` steps of the four-symbol hetero-chaos map.
/// The map must carry the A/B/C/D branch labels (hc3d or hc2d).
pub fn leaf_contraction(system: &MapSystem, x0: &Rational, n: usize) -> Result<LeafRecord> {
    let labels: Result<Vec<usize>> = ["A", "B", "C", "D"]
        .iter()
        .map(|l| {
            system
                .branch_by_label(l)
                .ok_or_else(|| Error::Unsupported(format!(
                    "leaf tracking needs the A/B/C/D symbol sets, {} lacks {l}",
                    system.name()
                )))
        })
        .collect();
    let labels = labels?;
    let (a, b, c, d) = (labels[0], labels[1], labels[2], labels[3]);
    let y_axis = system
        .axes()
        .iter()
        .position(|ax| *ax == crate::exact::Axis::Y);
    let y_slope = |branch: usize| -> Rational {
        match y_axis {
            Some(idx) => system.branch(branch).action[idx].slope().clone(),
            None => Rational::one(),
        }
    };
    let tau = OneDMap::tau();

    let mut x = x0.clone();
    let mut y_width = Rational::one();
    let mut z = AdmissibilityState::Full;
    let mut steps = Vec::with_capacity(n + 1);
    steps.push(LeafStep {
        n: 0,
        x: x.clone(),
        y_width: y_width.clone(),
        z: z.clone(),
        diameter_bound: 1.0 + z_length(&z).to_f64(),
    });
    for i in 1..=n {
        let (x_next, x_branch, _) = tau.eval(&x)?;
        let (branch, sym) = match x_branch {
            0 => (a, HcSymbol::A),
            1 => (d, HcSymbol::D),
            _ => match &z {
                // The one case where the leaf is not inside a symbol set:
                // x in the doubling region with Z still full. Both halves
                // double back onto [0,1), so Z stays full.
                AdmissibilityState::Full => (b, HcSymbol::B),
                AdmissibilityState::Dyadic(dyadic) => {
                    let half = num_bigint::BigUint::from(1u8) << (dyadic.level - 1);
                    if dyadic.c < half {
                        (b, HcSymbol::B)
                    } else {
                        (c, HcSymbol::C)
                    }
                }
            },
        };
        z = step_state(&z, sym).expect("leaf transfer chooses the matching half");
        y_width = y_width * y_slope(branch);
        x = x_next;
        steps.push(LeafStep {
            n: i,
            x: x.clone(),
            y_width: y_width.clone(),
            z: z.clone(),
            diameter_bound: y_width.to_f64() + z_length(&z).to_f64(),
        });
    }
    Ok(LeafRecord { x0: x0.clone(), steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::presets::preset;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn y_width_contracts_by_two_thirds_or_one_sixth() {
        let m = preset("hc3d").unwrap();
        let record = leaf_contraction(&m, &r(1, 7), 30).unwrap();
        let bound = r(2, 3).pow(30).unwrap();
        assert!(record.last().y_width <= bound);
        for w in record.steps.windows(2) {
            let ratio = w[1].y_width.checked_div(&w[0].y_width).unwrap();
            assert!(ratio == r(2, 3) || ratio == r(1, 6));
        }
    }

    #[test]
    fn one_seventh_contracts_z_by_a_quarter_per_period() {
        let m = preset("hc3d").unwrap();
        let record = leaf_contraction(&m, &r(1, 7), 12).unwrap();
        // Levels: the 6-cycle has four halvings and two doublings.
        assert_eq!(z_length(&record.steps[6].z), r(1, 4));
        assert_eq!(z_length(&record.steps[12].z), r(1, 16));
    }

    #[test]
    fn all_r_leaf_never_contracts_in_z() {
        let m = preset("hc3d").unwrap();
        // x = 1 is fixed in the doubling region: the exception clause keeps
        // Z full forever.
        let record = leaf_contraction(&m, &Rational::one(), 50).unwrap();
        for step in &record.steps {
            assert_eq!(step.z, AdmissibilityState::Full);
        }
        assert!(record.last().y_width <= r(1, 6).pow(50).unwrap());
    }

    #[test]
    fn z_state_tracks_the_exact_leaf_image() {
        // Cross-check against direct interval mapping for a few starts.
        let m = preset("hc3d").unwrap();
        for x0 in [r(1, 7), r(2, 5), r(9, 11)] {
            let record = leaf_contraction(&m, &x0, 10).unwrap();
            // The z interval of the leaf image must contain the orbit of the
            // midpoint-z point of the initial leaf.
            let mut p = crate::exact::Point::xyz(x0.clone(), r(1, 2), r(1, 3));
            for step in record.steps.iter().skip(1) {
                p = m.evaluate(&p).unwrap().image;
                match &step.z {
                    AdmissibilityState::Full => {}
                    AdmissibilityState::Dyadic(dy) => {
                        assert!(dy.to_interval().contains(p.coord(2)), "step {}", step.n);
                    }
                }
            }
        }
    }
}
