//! Exact One-in-Two Matching / Assignment.
//!
//! Star choices are explored depth-first, block 1 first, `sigma_b = 0`
//! before `sigma_b = 1`, i.e. in ascending lexicographic order of the sigma
//! vector. Subtrees are cut only when they provably contain no solution (or,
//! for weighted instances, no solution cheaper than the incumbent), so the
//! reported solution is always the one with the lowest sigma among the
//! (optimal) solutions, paired with the lexicographically smallest (optimal)
//! permutation of its minor. The brute-force oracle enumerates in the same
//! order and therefore reports the very same solution.

use crate::error::{Error, Result};
use crate::instance::{block_of, unfixed_index, OitmInstance, OitmSolution};

use super::assignment::min_cost_assignment;
use super::matching::{lex_smallest_perfect, max_matching, BipartiteGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest block count accepted for weighted instances.
    pub max_blocks: usize,
    /// Search-node budget for the depth-first star search.
    pub node_limit: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_blocks: 24,
            node_limit: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OneInTwoOutcome {
    /// A solution; `cost` is set for weighted instances.
    Found {
        solution: OitmSolution,
        cost: Option<i64>,
    },
    Unsat,
}

impl OneInTwoOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, Self::Found { .. })
    }

    pub fn solution(&self) -> Option<&OitmSolution> {
        match self {
            Self::Found { solution, .. } => Some(solution),
            Self::Unsat => None,
        }
    }

    pub fn cost(&self) -> Option<i64> {
        match self {
            Self::Found { cost, .. } => *cost,
            Self::Unsat => None,
        }
    }

    /// Decision answer: a solution exists (with cost within the budget for
    /// weighted instances).
    pub fn within_budget(&self, inst: &OitmInstance) -> bool {
        match (self, inst.budget()) {
            (Self::Unsat, _) => false,
            (Self::Found { cost: Some(c), .. }, Some(b)) => *c <= b,
            _ => true,
        }
    }
}

pub fn solve_one_in_two(inst: &OitmInstance) -> Result<OneInTwoOutcome> {
    solve_one_in_two_with(inst, &SolverConfig::default())
}

pub fn solve_one_in_two_with(inst: &OitmInstance, cfg: &SolverConfig) -> Result<OneInTwoOutcome> {
    if inst.is_weighted() && inst.blocks() > cfg.max_blocks {
        return Err(Error::ResourceLimit(format!(
            "{} blocks exceed the enumeration cap of {}",
            inst.blocks(),
            cfg.max_blocks
        )));
    }
    let mut search = Search::new(inst, cfg.node_limit);
    let mut sigma = vec![None; inst.blocks()];
    search.dfs(&mut sigma)?;
    Ok(match search.best {
        Some((solution, cost)) => OneInTwoOutcome::Found {
            solution,
            cost: inst.is_weighted().then_some(cost),
        },
        None => OneInTwoOutcome::Unsat,
    })
}

struct Search<'a> {
    inst: &'a OitmInstance,
    weighted: bool,
    /// Off-block entries per row / per column, 0-based indices.
    rows: Vec<Vec<(usize, i64)>>,
    cols: Vec<Vec<usize>>,
    nodes: u64,
    node_limit: u64,
    best: Option<(OitmSolution, i64)>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a OitmInstance, node_limit: u64) -> Self {
        let dim = inst.dimension();
        let mut rows = vec![Vec::new(); dim];
        let mut cols = vec![Vec::new(); dim];
        for ((r, c), w) in inst.entries() {
            rows[r - 1].push((c - 1, w));
            cols[c - 1].push(r - 1);
        }
        Self {
            inst,
            weighted: inst.is_weighted(),
            rows,
            cols,
            nodes: 0,
            node_limit,
            best: None,
        }
    }

    fn dfs(&mut self, sigma: &mut Vec<Option<bool>>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::ResourceLimit(format!(
                "star search exceeded {} nodes",
                self.node_limit
            )));
        }
        let saved = sigma.clone();
        if !propagate(self, sigma) {
            *sigma = saved;
            return Ok(());
        }
        let Some(bound) = self.relaxation(sigma) else {
            *sigma = saved;
            return Ok(());
        };
        if self.weighted {
            if let Some((_, best)) = &self.best {
                // later leaves are lexicographically larger, so ties lose
                if bound >= *best {
                    *sigma = saved;
                    return Ok(());
                }
            }
        }
        match sigma.iter().position(Option::is_none) {
            None => {
                let full: Vec<bool> = sigma.iter().map(|s| s.expect("decided")).collect();
                self.leaf(full);
            }
            Some(b) => {
                for value in [false, true] {
                    sigma[b] = Some(value);
                    self.dfs(sigma)?;
                    sigma[b] = None;
                    if !self.weighted && self.best.is_some() {
                        break;
                    }
                }
            }
        }
        *sigma = saved;
        Ok(())
    }

    fn leaf(&mut self, sigma: Vec<bool>) {
        let minor = self.inst.minor(&sigma).expect("sigma length checked");
        if self.weighted {
            if let Some(a) = min_cost_assignment(&minor) {
                if self.best.as_ref().is_none_or(|(_, c)| a.cost < *c) {
                    self.best = Some((OitmSolution::from_minor(sigma, &a.perm), a.cost));
                }
            }
        } else if let Some(perm) = lex_perfect(&minor) {
            self.best = Some((OitmSolution::from_minor(sigma, &perm), 0));
        }
    }

    fn is_live(&self, sigma: &[Option<bool>], i: usize) -> bool {
        let b = i / 2 + 1;
        match sigma[b - 1] {
            None => true,
            Some(s) => unfixed_index(b, s) == i + 1,
        }
    }

    /// Matching relaxation: undecided blocks may use either, both or none of
    /// their stars. Returns `None` if infeasible, otherwise a lower bound on
    /// the cost of any completion (0 for decision instances).
    fn relaxation(&self, sigma: &[Option<bool>]) -> Option<i64> {
        let dim = self.inst.dimension();
        // live indices are compacted; fixed indices of decided blocks drop out
        let live: Vec<usize> = (0..dim).filter(|&i| self.is_live(sigma, i)).collect();
        let mut pos = vec![usize::MAX; dim];
        for (k, &i) in live.iter().enumerate() {
            pos[i] = k;
        }
        let mut g = BipartiteGraph::new(live.len());
        for (k, &i) in live.iter().enumerate() {
            if sigma[i / 2].is_none() {
                g.add_edge(k, k, 0);
            }
            for &(j, w) in &self.rows[i] {
                if pos[j] != usize::MAX {
                    g.add_edge(k, pos[j], w);
                }
            }
        }
        if self.weighted {
            min_cost_assignment(&g).map(|a| a.cost)
        } else {
            max_matching(&g).is_perfect().then_some(0)
        }
    }
}

fn lex_perfect(g: &BipartiteGraph) -> Option<Vec<usize>> {
    let perm = max_matching(g).into_permutation()?;
    Some(lex_smallest_perfect(&g.adjacency_lists(), perm))
}

/// Unit-style propagation on star choices. Returns `false` on conflict.
///
/// A live index of a decided block must be matched off-block; a live index
/// of an undecided block with no live partner must be its block's star.
fn propagate(search: &Search<'_>, sigma: &mut [Option<bool>]) -> bool {
    let dim = search.inst.dimension();
    loop {
        let mut changed = false;
        for i in 0..dim {
            if !search.is_live(sigma, i) {
                continue;
            }
            let b = i / 2;
            for by_row in [true, false] {
                let partners = if by_row {
                    search.rows[i]
                        .iter()
                        .map(|&(j, _)| j)
                        .filter(|&j| search.is_live(sigma, j))
                        .collect::<Vec<_>>()
                } else {
                    search.cols[i]
                        .iter()
                        .copied()
                        .filter(|&j| search.is_live(sigma, j))
                        .collect::<Vec<_>>()
                };
                match (sigma[b], partners.as_slice()) {
                    (Some(_), []) => return false,
                    (None, []) => {
                        // i must be the fixed index: sigma = 1 fixes the odd one
                        sigma[b] = Some(i % 2 == 0);
                        changed = true;
                        break;
                    }
                    (Some(_), [j]) if sigma[j / 2].is_none() => {
                        // j must stay unfixed: sigma = 1 leaves the even one
                        sigma[j / 2] = Some(j % 2 == 1);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Exhaustive oracle over every sigma and every permutation of its minor.
pub fn brute_force_one_in_two(inst: &OitmInstance) -> Result<OneInTwoOutcome> {
    const CAP: usize = 6;
    let n = inst.blocks();
    if n > CAP {
        return Err(Error::ResourceLimit(format!(
            "brute force supports at most {CAP} blocks, got {n}"
        )));
    }
    let mut best: Option<(OitmSolution, i64)> = None;
    for code in 0u32..(1 << n) {
        // block 1 is the most significant digit
        let sigma: Vec<bool> = (0..n).map(|b| code >> (n - 1 - b) & 1 == 1).collect();
        let unfixed: Vec<usize> = (0..n).map(|b| unfixed_index(b + 1, sigma[b])).collect();
        for perm in permutations(n) {
            let mut cost = 0;
            let ok = perm.iter().enumerate().all(|(b, &c)| {
                let (i, j) = (unfixed[b], unfixed[c]);
                match (block_of(i) != block_of(j))
                    .then(|| inst.weight(i, j))
                    .flatten()
                {
                    Some(w) => {
                        cost += w;
                        true
                    }
                    None => false,
                }
            });
            if ok && best.as_ref().is_none_or(|(_, c)| cost < *c) {
                best = Some((OitmSolution::from_minor(sigma.clone(), &perm), cost));
                if !inst.is_weighted() {
                    break;
                }
            }
        }
        if !inst.is_weighted() && best.is_some() {
            break;
        }
    }
    Ok(match best {
        Some((solution, cost)) => OneInTwoOutcome::Found {
            solution,
            cost: inst.is_weighted().then_some(cost),
        },
        None => OneInTwoOutcome::Unsat,
    })
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next: Option<Vec<usize>> = Some((0..n).collect());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut p = cur.clone();
        // standard next-permutation step
        if let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) {
            let j = (i..p.len())
                .rev()
                .find(|&j| p[j] > p[i - 1])
                .expect("exists");
            p.swap(i - 1, j);
            p[i..].reverse();
            next = Some(p);
        }
        Some(cur)
    })
}
