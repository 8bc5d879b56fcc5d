//! Φ profiles of points with eventually periodic itinerary certificates.
//!
//! For a regular point, L_n is +1 when the n-th orbit step doubles the mixed
//! coordinate and −1 when it halves it; Φ(m,n) sums L over [m,n). Biasedness
//! (Φ → +∞ in both time directions) is undecidable for arbitrary points, so
//! the profile only certifies points whose forward and backward itineraries
//! are eventually periodic — every Φ query then reduces to closed-form
//! integer arithmetic.

use crate::bricks::HcStructure;
use crate::error::{Error, Result};
use crate::exact::Point;

/// Eventually periodic forward/backward itineraries, as factor-map branch
/// indices. The forward digits drive L_n for n ≥ 0, the backward digits
/// (the σ-itinerary of the contracting coordinate) drive L_n for n < 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiasedCertificate {
    pub forward_prefix: Vec<usize>,
    pub forward_cycle: Vec<usize>,
    pub backward_prefix: Vec<usize>,
    pub backward_cycle: Vec<usize>,
}

/// A certified reference point together with O(1) access to L_n, Φ and β.
#[derive(Clone, Debug)]
pub struct PhiProfile {
    point: Point,
    cert: BiasedCertificate,
    fwd: WeightedTail,
    bwd: WeightedTail,
}

/// Prefix sums of an eventually periodic ±1 sequence.
#[derive(Clone, Debug)]
struct WeightedTail {
    prefix_sums: Vec<i64>,
    cycle_sums: Vec<i64>,
}

impl WeightedTail {
    fn new(weights: &[i8], prefix: &[usize], cycle: &[usize]) -> Result<Self> {
        let sums = |digits: &[usize]| -> Vec<i64> {
            let mut out = Vec::with_capacity(digits.len() + 1);
            let mut acc = 0i64;
            out.push(0);
            for &d in digits {
                acc += weights[d] as i64;
                out.push(acc);
            }
            out
        };
        if cycle.is_empty() {
            return Err(Error::BadParameter("certificate cycle must be nonempty".into()));
        }
        let tail = WeightedTail { prefix_sums: sums(prefix), cycle_sums: sums(cycle) };
        if tail.cycle_total() <= 0 {
            return Err(Error::BadParameter(
                "certificate cycle must have positive net L-sum".into(),
            ));
        }
        Ok(tail)
    }

    fn prefix_len(&self) -> usize {
        self.prefix_sums.len() - 1
    }

    fn cycle_len(&self) -> usize {
        self.cycle_sums.len() - 1
    }

    fn cycle_total(&self) -> i64 {
        *self.cycle_sums.last().expect("nonempty")
    }

    /// Sum of the first `n` weights.
    fn sum(&self, n: u64) -> i64 {
        let p = self.prefix_len() as u64;
        if n <= p {
            return self.prefix_sums[n as usize];
        }
        let m = n - p;
        let c = self.cycle_len() as u64;
        let full = (m / c) as i64;
        let rem = (m % c) as usize;
        self.prefix_sums[p as usize] + full * self.cycle_total() + self.cycle_sums[rem]
    }

    fn weight(&self, n: u64) -> i8 {
        (self.sum(n + 1) - self.sum(n)) as i8
    }

    /// A horizon past which the running sum provably exceeds everything
    /// before it (the cycle gains at least 1 per turn).
    fn scan_horizon(&self) -> u64 {
        (self.prefix_len() + 2 * self.cycle_len()) as u64
    }

    /// Minimum of `sum(n)` over all n ≥ lo. The cycle gains at least 1 per
    /// turn, so the minimum is attained within one cycle past the horizon.
    fn min_from(&self, lo: u64) -> i64 {
        let hi = self.scan_horizon().max(lo) + self.cycle_len() as u64;
        (lo..=hi).map(|n| self.sum(n)).min().expect("nonempty range")
    }
}

impl PhiProfile {
    /// Validates the cycles (net-positive) and packages the certificate.
    pub fn from_certificate(
        structure: &HcStructure,
        point: Point,
        cert: BiasedCertificate,
    ) -> Result<Self> {
        let fwd = WeightedTail::new(structure.forward_l(), &cert.forward_prefix, &cert.forward_cycle)?;
        let bwd = WeightedTail::new(structure.backward_l(), &cert.backward_prefix, &cert.backward_cycle)?;
        Ok(PhiProfile { point, cert, fwd, bwd })
    }

    pub fn point(&self) -> &Point {
        &self.point
    }

    pub fn certificate(&self) -> &BiasedCertificate {
        &self.cert
    }

    /// L_n: +1 when step n doubles the mixed coordinate.
    pub fn l(&self, n: i64) -> i8 {
        if n >= 0 {
            self.fwd.weight(n as u64)
        } else {
            self.bwd.weight((-n - 1) as u64)
        }
    }

    /// Φ(0, n) for n ≥ 0.
    pub fn phi_forward(&self, n: u64) -> i64 {
        self.fwd.sum(n)
    }

    /// Φ(−j, 0) for j ≥ 0.
    pub fn phi_backward(&self, j: u64) -> i64 {
        self.bwd.sum(j)
    }

    /// Φ(m, n) = Σ_{i=m}^{n−1} L_i, exactly, via the closed forms.
    pub fn phi(&self, m: i64, n: i64) -> Result<i64> {
        if m > n {
            return Err(Error::BadParameter(format!("phi needs m <= n, got ({m}, {n})")));
        }
        let value = if m >= 0 {
            self.phi_forward(n as u64) - self.phi_forward(m as u64)
        } else if n <= 0 {
            self.phi_backward((-m) as u64) - self.phi_backward((-n) as u64)
        } else {
            self.phi_backward((-m) as u64) + self.phi_forward(n as u64)
        };
        Ok(value)
    }

    /// β(p) = −min_{m ≤ 0} Φ(m, 0) ≥ 0.
    pub fn beta(&self) -> i64 {
        -self.bwd.min_from(0)
    }

    /// The cumulative walk T with Φ(m, n) = T(n) − T(m).
    pub fn cumulative(&self, n: i64) -> i64 {
        if n >= 0 {
            self.phi_forward(n as u64)
        } else {
            -self.phi_backward((-n) as u64)
        }
    }

    /// k is right biased when Φ(m, k) > 0 for every m < k.
    pub fn is_right_biased(&self, k: u64) -> bool {
        let t_k = self.cumulative(k as i64);
        // Backward side: T(k) must beat sup_{m <= 0} T(m) = β.
        if t_k <= self.beta() {
            return false;
        }
        (1..k).all(|m| self.cumulative(m as i64) < t_k)
    }

    /// −j is left biased when Φ(−j, m) > 0 for every m > −j.
    pub fn is_left_biased(&self, j: u64) -> bool {
        if j == 0 {
            return false;
        }
        let t_j = self.cumulative(-(j as i64));
        // Forward side: inf_{m > 0} T(m) must stay above T(−j).
        if t_j >= self.fwd.min_from(1) {
            return false;
        }
        (0..j).all(|m| self.cumulative(-(m as i64)) > t_j)
    }

    pub(crate) fn forward_scan_horizon(&self) -> u64 {
        self.fwd.scan_horizon()
    }

    pub(crate) fn backward_scan_horizon(&self) -> u64 {
        self.bwd.scan_horizon()
    }
}
