//! The two-brick pullback step and the nested-breadbox chain it builds,
//! certifying a dense trajectory at finite depth.

use crate::bricks::brick::Brick;
use crate::bricks::HcStructure;
use crate::error::{Error, Result};
use crate::exact::ProductBox;

/// Nested interior breadboxes `U_1 ⊃ U_2 ⊃ …` with visit times `N_s` such
/// that `F^{N_s}(U_t) ⊂ B^0_s` for every `t ≥ s`.
#[derive(Clone, Debug)]
pub struct BrickChain {
    breadboxes: Vec<ProductBox>,
    visit_times: Vec<u64>,
    /// Symbol chain of each breadbox (U_s is a (0, word-length)-brick).
    words: Vec<Vec<usize>>,
}

impl BrickChain {
    pub fn len(&self) -> usize {
        self.breadboxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.breadboxes.is_empty()
    }

    pub fn breadbox(&self, s: usize) -> &ProductBox {
        &self.breadboxes[s]
    }

    pub fn breadboxes(&self) -> &[ProductBox] {
        &self.breadboxes
    }

    pub fn visit_time(&self, s: usize) -> u64 {
        self.visit_times[s]
    }

    pub fn visit_times(&self) -> &[u64] {
        &self.visit_times
    }

    pub fn word(&self, s: usize) -> &[usize] {
        &self.words[s]
    }

    /// Re-verifies `F^{N_s}(U_t) ⊂ B^0_s` exactly for all `t ≥ s` by fresh
    /// box mapping.
    pub fn verify(&self, structure: &HcStructure, bricks: &[Brick]) -> Result<()> {
        for t in 0..self.len() {
            let word = &self.words[t];
            let mut images = Vec::with_capacity(word.len() + 1);
            let mut cur = self.breadboxes[t].clone();
            images.push(cur.clone());
            for &b in word {
                let (img, branch) = structure.system().evaluate_box(&cur)?;
                if branch != b {
                    return Err(Error::NotRegular(format!(
                        "chain word mismatch while verifying U_{t}"
                    )));
                }
                images.push(img.clone());
                cur = img;
            }
            for (s, brick) in bricks.iter().enumerate().take(t + 1) {
                let n = self.visit_times[s] as usize;
                if !brick.b0().contains_box(&images[n]) {
                    return Err(Error::NotRegular(format!(
                        "F^{n}(U_{t}) escapes B^0_{s}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Builds the nested chain through a list of interior bricks: `U_1` is the
/// first brick's breadbox `B^{-j}`, and each later `U_{s+1}` is the pullback
/// of `F^{M}(U_s) ∩ B^{-j}_{s+1}`.
pub fn two_brick_chain(structure: &HcStructure, bricks: &[Brick]) -> Result<BrickChain> {
    if bricks.is_empty() {
        return Err(Error::BadParameter("the chain needs at least one brick".into()));
    }
    for (i, b) in bricks.iter().enumerate() {
        if !b.is_interior() {
            return Err(Error::BadParameter(format!("brick {i} is not interior")));
        }
    }
    let system = structure.system();
    let e = structure.expanding_axis();
    let m_axis = structure.mixed_axis();

    let first = &bricks[0];
    let mut u = first.box_at(-(first.j() as i64)).clone();
    let mut word: Vec<usize> = first.word().to_vec();
    let mut total: u64 = first.period();
    let mut breadboxes = vec![u.clone()];
    let mut visit_times = vec![first.j()];
    let mut words = vec![word.clone()];

    for brick in &bricks[1..] {
        // F^M(U): an XZ pizzabox.
        let mut pizza = u.clone();
        for &b in &word {
            let (img, branch) = system.evaluate_box(&pizza)?;
            debug_assert_eq!(branch, b);
            pizza = img;
        }
        let bread = brick.box_at(-(brick.j() as i64));
        let q = pizza.intersect(bread).ok_or_else(|| {
            Error::NotRegular("pizzabox and breadbox fail to intersect".into())
        })?;
        // Pull Q back along U's word.
        let mut cur = q;
        for &b in word.iter().rev() {
            let branch = system.branch(b);
            let intervals: Vec<_> = branch
                .action
                .iter()
                .zip(cur.intervals())
                .map(|(pair, iv)| pair.interval_preimage(iv))
                .collect();
            let pre = ProductBox::new(system.axes().to_vec(), intervals)?;
            if !branch.domain.contains_box(&pre) {
                return Err(Error::NotRegular(
                    "two-brick pullback leaves its symbol set".into(),
                ));
            }
            cur = pre;
        }
        let u_next = cur;

        // Closure containment on the expanding and mixed axes (the nested
        // relation behind the dense-trajectory construction).
        for axis in [e, m_axis] {
            let outer = u.interval(axis);
            let inner = u_next.interval(axis);
            if inner.lo() < outer.lo() || inner.hi() >= outer.hi() {
                return Err(Error::NotRegular(format!(
                    "chain breadboxes are not closure-nested on axis {axis}"
                )));
            }
        }

        visit_times.push(total + brick.j());
        word.extend_from_slice(brick.word());
        total += brick.period();
        u = u_next;
        breadboxes.push(u.clone());
        words.push(word.clone());
    }

    let chain = BrickChain { breadboxes, visit_times, words };
    chain.verify(structure, bricks)?;
    Ok(chain)
}
