//! Seeded point sampling and a long-horizon exact orbit engine.
//!
//! The engine keeps a coordinate exact only when some branch domain actually
//! constrains it (no preset constrains Y, so Y runs in floats). Exact
//! coordinates come in two representations:
//!
//! - a coordinate whose branch actions only halve (`u/2`, `(u+1)/2`) or
//!   double (`2u`, `2u−1`) and whose domain bounds are 0, 1/2 or 1 is a
//!   binary digit stack over a fixed fractional tail — O(1) per step no
//!   matter how long the orbit runs;
//! - anything else is an unreduced big-integer fraction; instead of full gcd
//!   reduction after each affine step, only the small primes occurring in
//!   the branch coefficients are peeled off, which keeps denominators within
//!   a constant factor of fully reduced at a fraction of the cost.

use std::cmp::Ordering;
use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{Point, Rational};
use crate::maps::affine::BitOp;
use crate::maps::MapSystem;

/// Fixed denominator of sampled coordinates: 2^31·3^19 + 1. It is odd and
/// not divisible by 3, so every sampled coordinate keeps a prime factor
/// other than 2 and 3 in its denominator forever and can never land on the
/// dyadic/trinary grids where symbol-set boundaries live.
pub const SAMPLE_DENOMINATOR: u64 = 2_147_483_648u64 * 1_162_261_467u64 + 1;

/// Deterministic sampler for boundary-avoiding rational points.
pub struct PointSampler {
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Derived stream for orbit `index`, attempt `attempt`; keeps parallel
    /// orbit sampling deterministic and resampling local.
    pub fn for_orbit(seed: u64, index: u64, attempt: u64) -> Self {
        let mixed = seed
            ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15)
            ^ attempt.wrapping_mul(0xD1B5_4A32_D192_ED03);
        PointSampler { rng: ChaCha8Rng::seed_from_u64(mixed) }
    }

    pub fn rational(&mut self) -> Rational {
        let a = self.rng.gen_range(1..SAMPLE_DENOMINATOR);
        Rational::from_big(BigInt::from(a), BigInt::from(SAMPLE_DENOMINATOR))
    }

    pub fn point(&mut self, dim: usize) -> Point {
        Point::new((0..dim).map(|_| self.rational()).collect())
    }
}

/// An exact coordinate held as an unreduced fraction `num/den`, `den > 0`.
#[derive(Clone, Debug)]
struct ExactCoord {
    num: BigInt,
    den: BigInt,
}

impl ExactCoord {
    fn from_rational(r: &Rational) -> Self {
        ExactCoord { num: r.numer().clone(), den: r.denom().clone() }
    }

    fn to_rational(&self) -> Rational {
        Rational::from_big(self.num.clone(), self.den.clone())
    }

    /// Three-way comparison with an exact rational (assumed positive den).
    fn cmp_rational(&self, q: &Rational) -> Ordering {
        (&self.num * q.denom()).cmp(&(q.numer() * &self.den))
    }

    fn to_f64(&self) -> f64 {
        BigRational::new_raw(self.num.clone(), self.den.clone())
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// A coordinate in `(0,1)` under pure halving/doubling dynamics: the value is
/// `0.b_1 b_2 … b_m` (binary) plus `tail/2^m`, with `tail = num/den` the
/// surviving fractional part of the start value. Halvings push a digit in
/// front, doublings pop one; all operations are O(1).
#[derive(Clone, Debug)]
struct DigitStack {
    bits: VecDeque<bool>,
    tail_num: u128,
    tail_den: u128,
}

impl DigitStack {
    /// Requires `0 < r < 1` with a denominator that fits u128 and is not a
    /// power of two; doubling then never drives the tail onto the dyadic
    /// grid, so it stays strictly inside (0,1) and off 1/2 forever.
    fn from_rational(r: &Rational) -> Option<Self> {
        let num = r.numer().to_u128()?;
        let den = r.denom().to_u128()?;
        if num == 0 || num >= den || den.leading_zeros() == 0 || den.is_power_of_two() {
            return None;
        }
        Some(DigitStack { bits: VecDeque::new(), tail_num: num, tail_den: den })
    }

    /// Compare with 1/2; never equal, since the tail stays strictly inside
    /// its dyadic cell.
    fn cmp_half(&self) -> Ordering {
        match self.bits.front() {
            Some(true) => Ordering::Greater,
            Some(false) => Ordering::Less,
            None => (2 * self.tail_num).cmp(&self.tail_den),
        }
    }

    fn apply(&mut self, op: BitOp) {
        match op {
            BitOp::Push(bit) => self.bits.push_front(bit),
            BitOp::Pop(expected) => match self.bits.pop_front() {
                Some(bit) => debug_assert_eq!(bit, expected),
                None => {
                    if expected {
                        // 2u - 1 on the bare tail, which sits in [1/2, 1).
                        self.tail_num = 2 * self.tail_num - self.tail_den;
                    } else {
                        self.tail_num *= 2;
                    }
                    debug_assert!(self.tail_num > 0 && self.tail_num < self.tail_den);
                }
            },
        }
    }

    /// O(1) comparison against the only bounds a halving axis can have.
    fn cmp_rational(&self, q: &Rational) -> Ordering {
        if q.is_zero() {
            Ordering::Greater
        } else if q.is_one() {
            Ordering::Less
        } else if q == &Rational::new(1, 2) {
            self.cmp_half()
        } else {
            self.to_rational().as_ratio().cmp(q.as_ratio())
        }
    }

    fn to_rational(&self) -> Rational {
        // value = (int(bits) + tail) / 2^m with the front bit most
        // significant.
        let mut int = BigInt::zero();
        for &b in &self.bits {
            int = (&int << 1) + BigInt::from(b as u8);
        }
        let den = BigInt::from(self.tail_den);
        let num = int * &den + BigInt::from(self.tail_num);
        Rational::from_big(num, den << self.bits.len())
    }

    /// Float value from the leading 64 bits; the dropped part is below
    /// 2^-64 in absolute value.
    fn to_f64(&self) -> f64 {
        let take = self.bits.len().min(64);
        let mut acc: u64 = 0;
        for i in 0..take {
            acc = (acc << 1) | self.bits[i] as u64;
        }
        let mut value = acc as f64 * (2.0f64).powi(-(take as i32));
        if self.bits.len() <= 64 {
            let tail = self.tail_num as f64 / self.tail_den as f64;
            value += tail * (2.0f64).powi(-(self.bits.len() as i32));
        }
        value
    }
}

/// Exact coordinate representations.
#[derive(Clone, Debug)]
enum Repr {
    Fraction(ExactCoord),
    Halving(DigitStack),
}

impl Repr {
    fn cmp_rational(&self, q: &Rational) -> Ordering {
        match self {
            Repr::Fraction(c) => c.cmp_rational(q),
            Repr::Halving(s) => s.cmp_rational(q),
        }
    }

    fn to_rational(&self) -> Rational {
        match self {
            Repr::Fraction(c) => c.to_rational(),
            Repr::Halving(s) => s.to_rational(),
        }
    }

    fn to_f64(&self) -> f64 {
        match self {
            Repr::Fraction(c) => c.to_f64(),
            Repr::Halving(s) => s.to_f64(),
        }
    }
}

/// Precomputed integer coefficients of one affine step `u ↦ c + d·u` with
/// `c = cn/cd`, `d = dn/dd`.
#[derive(Clone, Debug)]
struct StepCoeffs {
    cn: BigInt,
    cd: BigInt,
    dn: BigInt,
    dd: BigInt,
}

/// One application of the map inside the engine.
#[derive(Clone, Copy, Debug)]
pub struct EngineStep {
    pub branch: usize,
    pub boundary: bool,
}

/// Long-horizon orbit iterator with exact symbol decisions.
pub struct OrbitEngine<'a> {
    system: &'a MapSystem,
    exact: Vec<Option<Repr>>,
    floats: Vec<f64>,
    /// Odd primes each branch/axis step can introduce into the denominator;
    /// factors of 2 are peeled unconditionally (a trailing-zero check is
    /// cheap), odd-prime divisions only where they can succeed.
    odd_peels: Vec<Vec<Vec<u64>>>,
    coeffs: Vec<Vec<StepCoeffs>>,
    /// `halving_ops[branch][axis]` when the axis runs as a digit stack.
    halving_ops: Vec<Vec<Option<BitOp>>>,
    float_pairs: Vec<Vec<(f64, f64)>>,
    log_slopes: Vec<Vec<f64>>,
}

impl<'a> OrbitEngine<'a> {
    /// The start point must be strictly inside the unit box; coordinates on
    /// axes some branch constrains are tracked exactly.
    pub fn new(system: &'a MapSystem, start: &Point) -> Result<Self> {
        if start.dim() != system.dim() {
            return Err(Error::OutOfDomain("start point has the wrong dimension".into()));
        }
        let zero = Rational::zero();
        let one = Rational::one();
        for c in start.coords() {
            if c <= &zero || c >= &one {
                return Err(Error::NotRegular(format!(
                    "orbit sampling needs interior start points, got coordinate {c}"
                )));
            }
        }
        let dim = system.dim();
        let mut deciding = vec![false; dim];
        for b in system.branches() {
            for (axis, flag) in deciding.iter_mut().enumerate() {
                let iv = b.domain.interval(axis);
                if !iv.lo().is_zero() || !iv.hi().is_one() {
                    *flag = true;
                }
            }
        }
        let mut odd_peels = Vec::new();
        let mut coeffs = Vec::new();
        let mut halving_ops = Vec::new();
        let mut float_pairs = Vec::new();
        let mut log_slopes = Vec::new();
        for b in system.branches() {
            let mut row = Vec::with_capacity(dim);
            let mut prow = Vec::with_capacity(dim);
            let mut hrow = Vec::with_capacity(dim);
            let mut frow = Vec::with_capacity(dim);
            let mut lrow = Vec::with_capacity(dim);
            for pair in &b.action {
                row.push(StepCoeffs {
                    cn: pair.offset().numer().clone(),
                    cd: pair.offset().denom().clone(),
                    dn: pair.slope().numer().clone(),
                    dd: pair.slope().denom().clone(),
                });
                hrow.push(pair.bit_op());
                let mut primes = Vec::new();
                for value in [pair.offset().denom(), pair.slope().denom()] {
                    for p in small_prime_factors(value) {
                        if p != 2 && !primes.contains(&p) {
                            primes.push(p);
                        }
                    }
                }
                primes.sort_unstable();
                prow.push(primes);
                frow.push((pair.offset().to_f64(), pair.slope().to_f64()));
                lrow.push(pair.slope().to_f64().abs().ln());
            }
            coeffs.push(row);
            odd_peels.push(prow);
            halving_ops.push(hrow);
            float_pairs.push(frow);
            log_slopes.push(lrow);
        }

        // An axis runs as a digit stack when every action on it is a
        // halving/doubling and every domain bound is 0, 1/2 or 1, so that
        // branch location stays O(1).
        let half = Rational::new(1, 2);
        let mut exact: Vec<Option<Repr>> = Vec::with_capacity(dim);
        for axis in 0..dim {
            if !deciding[axis] {
                exact.push(None);
                continue;
            }
            let ops_ok = halving_ops.iter().all(|row| row[axis].is_some());
            let bounds_ok = system.branches().iter().all(|b| {
                let iv = b.domain.interval(axis);
                [iv.lo(), iv.hi()]
                    .into_iter()
                    .all(|v| v.is_zero() || v.is_one() || v == &half)
            });
            let repr = if ops_ok && bounds_ok {
                DigitStack::from_rational(start.coord(axis)).map(Repr::Halving)
            } else {
                None
            };
            exact.push(Some(repr.unwrap_or_else(|| {
                Repr::Fraction(ExactCoord::from_rational(start.coord(axis)))
            })));
        }
        let floats = start.coords().iter().map(|c| c.to_f64()).collect();
        Ok(OrbitEngine {
            system,
            exact,
            floats,
            odd_peels,
            coeffs,
            halving_ops,
            float_pairs,
            log_slopes,
        })
    }

    /// Current value of a coordinate as a float. Exactly-tracked axes
    /// convert their exact representation (a float mirror would diverge
    /// under expansion); the remaining contracting axes keep a cheap stepped
    /// mirror whose error stays bounded.
    pub fn float(&self, axis: usize) -> f64 {
        match &self.exact[axis] {
            Some(repr) => repr.to_f64(),
            None => self.floats[axis],
        }
    }

    /// ln|slope| per axis of a branch: the per-step Lyapunov contributions.
    pub fn log_slopes(&self, branch: usize) -> &[f64] {
        &self.log_slopes[branch]
    }

    pub fn exact_coord(&self, axis: usize) -> Option<Rational> {
        self.exact[axis].as_ref().map(|r| r.to_rational())
    }

    /// Advances one step. The branch is decided exactly; `boundary` reports
    /// an exact hit of a symbol-set boundary on a constrained axis.
    pub fn step(&mut self) -> Result<EngineStep> {
        let (branch, boundary) = self.locate()?;
        let row = &self.coeffs[branch];
        for (axis, slot) in self.exact.iter_mut().enumerate() {
            match slot {
                Some(Repr::Halving(stack)) => {
                    stack.apply(self.halving_ops[branch][axis].expect("validated at setup"));
                }
                Some(Repr::Fraction(coord)) => {
                    let c = &row[axis];
                    let num = &c.cn * (&c.dd * &coord.den) + &c.dn * (&c.cd * &coord.num);
                    let den = (&c.cd * &c.dd) * &coord.den;
                    let mut next = ExactCoord { num, den };
                    peel(&mut next, &self.odd_peels[branch][axis]);
                    *coord = next;
                }
                None => {}
            }
        }
        for (axis, f) in self.floats.iter_mut().enumerate() {
            if self.exact[axis].is_none() {
                let (c, d) = self.float_pairs[branch][axis];
                *f = c + d * *f;
            }
        }
        Ok(EngineStep { branch, boundary })
    }

    fn locate(&self) -> Result<(usize, bool)> {
        'branches: for (idx, b) in self.system.branches().iter().enumerate() {
            let mut boundary = false;
            for (axis, slot) in self.exact.iter().enumerate() {
                let Some(coord) = slot else { continue };
                let iv = b.domain.interval(axis);
                match coord.cmp_rational(iv.lo()) {
                    Ordering::Less => continue 'branches,
                    Ordering::Equal => boundary = true,
                    Ordering::Greater => {}
                }
                match coord.cmp_rational(iv.hi()) {
                    Ordering::Greater => continue 'branches,
                    Ordering::Equal => {
                        if iv.closed_hi() {
                            boundary = true;
                        } else {
                            continue 'branches;
                        }
                    }
                    Ordering::Less => {}
                }
            }
            return Ok((idx, boundary));
        }
        Err(Error::OutOfDomain("engine point escaped every branch".into()))
    }
}

/// Divides out common powers of 2 (always, via trailing-zero counts) and of
/// the given odd primes.
fn peel(c: &mut ExactCoord, odd_primes: &[u64]) {
    if c.num.is_zero() {
        c.den = BigInt::from(1);
        return;
    }
    let nz = c.num.trailing_zeros().unwrap_or(0);
    let dz = c.den.trailing_zeros().unwrap_or(0);
    let shift = nz.min(dz);
    if shift > 0 {
        c.num >>= shift;
        c.den >>= shift;
    }
    for &p in odd_primes {
        let pb = BigInt::from(p);
        while (&c.den % &pb).is_zero() && (&c.num % &pb).is_zero() {
            c.num /= &pb;
            c.den /= &pb;
        }
    }
    debug_assert!(c.den.is_positive());
}

fn small_prime_factors(value: &BigInt) -> Vec<u64> {
    let mut v = value.abs().to_u64().unwrap_or(0);
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= v {
        if v.is_multiple_of(p) {
            out.push(p);
            while v.is_multiple_of(p) {
                v /= p;
            }
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}
