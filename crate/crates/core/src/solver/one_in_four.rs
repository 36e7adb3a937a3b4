//! One-in-Four Assignment: every entry of a diagonal block is a star, so
//! each block sends one row out and receives one column in. Because each
//! star choice enters the cost exactly once, the problem collapses to a plain
//! assignment over blocks.

use crate::error::{Error, Result};
use crate::instance::OitmInstance;

use super::assignment::min_cost_assignment;
use super::matching::BipartiteGraph;
use super::one_in_two::permutations;

/// Collapses a weighted instance to an `n x n` block-level cost matrix.
///
/// Cell `(i, j)`, `i != j`, holds the minimum over the present entries of
/// block `(i, j)`; a block with no entries and the diagonal are forbidden.
pub fn one_in_four_collapse(inst: &OitmInstance) -> Result<BipartiteGraph> {
    if !inst.is_weighted() {
        return Err(Error::Instance(
            "one-in-four collapse needs a weighted instance".into(),
        ));
    }
    let n = inst.blocks();
    let mut g = BipartiteGraph::new(n);
    for ((r, c), w) in inst.entries() {
        let (bi, bj) = ((r - 1) / 2, (c - 1) / 2);
        if g.cost(bi, bj).is_none_or(|old| w < old) {
            g.add_edge(bi, bj, w);
        }
    }
    Ok(g)
}

/// Optimal One-in-Four cost via the collapse, `None` if infeasible.
pub fn one_in_four_optimum(inst: &OitmInstance) -> Result<Option<i64>> {
    Ok(min_cost_assignment(&one_in_four_collapse(inst)?).map(|a| a.cost))
}

/// Exhaustive oracle over `(sigma, tau, pi)`: row `2i - sigma_i` of block
/// `i` goes to column `2 pi(i) - tau_pi(i)`, `pi` a derangement of blocks.
pub fn one_in_four_bruteforce(inst: &OitmInstance) -> Result<Option<i64>> {
    const CAP: usize = 5;
    let n = inst.blocks();
    if n > CAP {
        return Err(Error::ResourceLimit(format!(
            "one-in-four brute force supports at most {CAP} blocks, got {n}"
        )));
    }
    let mut best: Option<i64> = None;
    for pi in permutations(n) {
        if pi.iter().enumerate().any(|(i, &p)| i == p) {
            continue;
        }
        for sigma in 0u32..(1 << n) {
            for tau in 0u32..(1 << n) {
                let mut total = 0i64;
                let feasible = (0..n).all(|i| {
                    let row = 2 * (i + 1) - (sigma >> i & 1) as usize;
                    let col = 2 * (pi[i] + 1) - (tau >> pi[i] & 1) as usize;
                    match inst.weight(row, col) {
                        Some(w) => {
                            total += w;
                            true
                        }
                        None => false,
                    }
                });
                if feasible && best.is_none_or(|b| total < b) {
                    best = Some(total);
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_block() -> OitmInstance {
        let mut inst = OitmInstance::weighted(2, 100).unwrap();
        // block (1,2): rows 1-2, cols 3-4
        for ((r, c), w) in [((1, 3), 3), ((1, 4), 7), ((2, 3), 5), ((2, 4), 4)] {
            inst.insert_weighted(r, c, w).unwrap();
        }
        for ((r, c), w) in [((3, 1), 2), ((3, 2), 6), ((4, 1), 8), ((4, 2), 9)] {
            inst.insert_weighted(r, c, w).unwrap();
        }
        inst
    }

    #[test]
    fn two_block_collapse() {
        let g = one_in_four_collapse(&two_block()).unwrap();
        assert_eq!(g.cost(0, 1), Some(3));
        assert_eq!(g.cost(1, 0), Some(2));
        assert!(!g.has_edge(0, 0) && !g.has_edge(1, 1));
        assert_eq!(one_in_four_optimum(&two_block()).unwrap(), Some(5));
        assert_eq!(one_in_four_bruteforce(&two_block()).unwrap(), Some(5));
    }

    #[test]
    fn constant_blocks_collapse_to_constant() {
        let n = 3;
        let mut inst = OitmInstance::weighted(n, 0).unwrap();
        for r in 1..=2 * n {
            for c in 1..=2 * n {
                if (r - 1) / 2 != (c - 1) / 2 {
                    inst.insert_weighted(r, c, 7).unwrap();
                }
            }
        }
        let g = one_in_four_collapse(&inst).unwrap();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(g.cost(i, j), (i != j).then_some(7));
            }
        }
    }

    #[test]
    fn partial_and_empty_blocks() {
        let mut inst = OitmInstance::weighted(2, 0).unwrap();
        inst.insert_weighted(2, 4, 6).unwrap();
        let g = one_in_four_collapse(&inst).unwrap();
        assert_eq!(g.cost(0, 1), Some(6));
        assert_eq!(g.cost(1, 0), None);
        assert_eq!(one_in_four_optimum(&inst).unwrap(), None);
        assert_eq!(one_in_four_bruteforce(&inst).unwrap(), None);
    }

    #[test]
    fn decision_instances_are_rejected() {
        assert!(one_in_four_collapse(&OitmInstance::new(2).unwrap()).is_err());
    }
}
