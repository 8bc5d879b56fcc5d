//! Exact admissible-word counting and the word-growth rate Γ(N).

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::symbolic::state::{is_admissible, step_state, AdmissibilityState, HcSymbol, Word};

/// Hard cap on N for the counting DP; far beyond anything the growth-rate
/// analysis needs.
pub const MAX_COUNT_N: usize = 10_000;

/// Hard cap on the brute-force oracle (4^N enumeration).
pub const MAX_BRUTE_N: usize = 12;

/// One row of the adm(N) table.
#[derive(Clone, Debug)]
pub struct AdmRow {
    pub n: usize,
    pub adm: BigUint,
    /// Γ(N) = adm(N)/adm(N−1), absent for N = 1.
    pub gamma: Option<Rational>,
}

impl AdmRow {
    pub fn gamma_f64(&self) -> Option<f64> {
        self.gamma.as_ref().map(|g| g.to_f64())
    }

    /// log(adm(N)) / N, the length-N entropy estimate.
    pub fn entropy(&self) -> f64 {
        self.adm.to_f64().map(|v| v.ln()).unwrap_or(f64::NAN) / self.n as f64
    }
}

/// Exact adm(N) for N = 1..=max_n by dynamic programming on the
/// admissibility state.
///
/// The count of admissible continuations from a state depends only on the
/// dyadic level, never on the interval's position: A and D are always
/// allowed, while from a proper dyadic interval exactly one of B/C is
/// allowed (the one matching the interval's half) and from the full interval
/// both are. So the DP folds states by level, which keeps the table linear
/// in N where a position-keyed table would grow like 2^N.
pub fn count_admissible(max_n: usize) -> Result<Vec<AdmRow>> {
    if max_n == 0 {
        return Err(Error::BadParameter("max_n must be at least 1".into()));
    }
    if max_n > MAX_COUNT_N {
        return Err(Error::Budget(format!(
            "adm table up to N = {max_n} exceeds the configured limit of {MAX_COUNT_N}"
        )));
    }
    // counts[level] = number of admissible words of the current length whose
    // end state has that level.
    let mut counts: Vec<BigUint> = vec![BigUint::from(1u8)];
    let mut rows: Vec<AdmRow> = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let mut next: Vec<BigUint> = vec![BigUint::zero(); counts.len() + 1];
        for (level, count) in counts.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            // A and D push a digit.
            next[level + 1] += count * 2u8;
            if level == 0 {
                // Both B and C keep the full interval.
                next[0] += count * 2u8;
            } else {
                // Exactly one of B/C matches the interval's half.
                next[level - 1] += count;
            }
        }
        counts = next;
        let adm: BigUint = counts.iter().sum();
        let gamma = rows.last().map(|prev: &AdmRow| {
            Rational::from_big(adm.clone().into(), prev.adm.clone().into())
        });
        rows.push(AdmRow { n, adm, gamma });
    }
    Ok(rows)
}

/// Independent oracle: enumerate all 4^N words and count the admissible ones.
pub fn brute_force_admissible(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::BadParameter("n must be at least 1".into()));
    }
    if n > MAX_BRUTE_N {
        return Err(Error::Budget(format!(
            "brute force enumerates 4^{n} words; the limit is N = {MAX_BRUTE_N}"
        )));
    }
    let mut count: u64 = 0;
    let mut word = vec![HcSymbol::A; n];
    enumerate(&mut word, 0, &mut count);
    Ok(BigUint::from(count))
}

fn enumerate(word: &mut Vec<HcSymbol>, depth: usize, count: &mut u64) {
    if depth == word.len() {
        let w = Word::new(word.clone()).expect("nonempty");
        if is_admissible(&w) {
            *count += 1;
        }
        return;
    }
    for s in HcSymbol::ALL {
        word[depth] = s;
        enumerate(word, depth + 1, count);
    }
}

/// The entropy table: adm(N), Γ(N), log(adm(N))/N and the comparison columns
/// Γ(N) − 3 versus 3/N.
pub fn entropy_estimate(max_n: usize) -> Result<Vec<AdmRow>> {
    if max_n < 2 {
        return Err(Error::BadParameter("entropy estimates need N >= 2".into()));
    }
    count_admissible(max_n)
}

/// Walks the state chain of a word, returning every intermediate state
/// (diagnostics and tests).
pub fn state_chain(word: &Word) -> Option<Vec<AdmissibilityState>> {
    let mut state = AdmissibilityState::initial();
    let mut chain = vec![state.clone()];
    for &s in word.symbols() {
        state = step_state(&state, s)?;
        chain.push(state.clone());
    }
    Some(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_counts_match_the_brute_force_oracle() {
        // Frozen from the 4^N oracle: 𝔸ℂ and 𝔻𝔹 are the two dead pairs.
        let rows = count_admissible(3).unwrap();
        assert_eq!(rows[0].adm, BigUint::from(4u8));
        assert_eq!(rows[1].adm, BigUint::from(14u8));
        assert_eq!(rows[2].adm, BigUint::from(48u8));
        for n in 1..=10 {
            let oracle = brute_force_admissible(n).unwrap();
            let dp = &count_admissible(n).unwrap()[n - 1].adm;
            assert_eq!(&oracle, dp, "N = {n}");
        }
    }

    #[test]
    fn gamma_of_three_is_24_over_7() {
        let rows = count_admissible(3).unwrap();
        assert_eq!(rows[2].gamma.clone().unwrap(), Rational::new(24, 7));
        let g = rows[2].gamma_f64().unwrap();
        assert!((g - 3.4285714).abs() < 1e-6);
    }

    #[test]
    fn entropy_at_two_is_half_log_14() {
        let rows = entropy_estimate(2).unwrap();
        assert!((rows[1].entropy() - 14f64.ln() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_exceeds_three_and_decreases() {
        let rows = count_admissible(20).unwrap();
        let three = Rational::int(3);
        let mut prev: Option<Rational> = None;
        for row in &rows[3..] {
            let gamma = row.gamma.clone().unwrap();
            assert!(gamma > three, "Gamma({}) = {gamma}", row.n);
            if let Some(p) = prev {
                assert!(gamma < p, "Gamma not decreasing at {}", row.n);
            }
            prev = Some(gamma);
        }
    }

    #[test]
    fn budgets_are_enforced() {
        assert!(matches!(brute_force_admissible(13), Err(Error::Budget(_))));
        assert!(matches!(count_admissible(MAX_COUNT_N + 1), Err(Error::Budget(_))));
        assert!(count_admissible(0).is_err());
    }
}
