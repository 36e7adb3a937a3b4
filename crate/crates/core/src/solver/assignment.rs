//! Minimum-cost perfect assignment (Hungarian method with potentials).

use super::matching::{lex_smallest_perfect, max_matching, BipartiteGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    /// `perm[row] = col`, 0-based.
    pub perm: Vec<usize>,
    pub cost: i64,
}

/// Optimal assignment avoiding forbidden (absent) cells, or `None` when no
/// perfect matching exists.
///
/// Among equal-cost optima the lexicographically smallest permutation is
/// returned.
pub fn min_cost_assignment(g: &BipartiteGraph) -> Option<Assignment> {
    let n = g.size();
    if n == 0 {
        return Some(Assignment {
            perm: Vec::new(),
            cost: 0,
        });
    }
    if !max_matching(g).is_perfect() {
        return None;
    }
    let (u, v, perm) = hungarian(g);
    let cost = perm
        .iter()
        .enumerate()
        .map(|(r, &c)| g.cost(r, c).expect("assignment uses an edge"))
        .sum();
    // Every optimal assignment lives on the tight edges of an optimal dual.
    let tight: Vec<Vec<usize>> = (0..n)
        .map(|r| {
            g.neighbors(r)
                .filter(|&(c, w)| w - u[r + 1] - v[c + 1] == 0)
                .map(|(c, _)| c)
                .collect()
        })
        .collect();
    let perm = lex_smallest_perfect(&tight, perm);
    Some(Assignment { perm, cost })
}

/// Returns row potentials, column potentials (1-based, index 0 unused) and
/// an optimal row -> column assignment. Requires a perfect matching.
fn hungarian(g: &BipartiteGraph) -> (Vec<i64>, Vec<i64>, Vec<usize>) {
    const INF: i64 = i64::MAX / 4;
    let n = g.size();
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    // p[col] = row matched to col (1-based, 0 = none)
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = INF;
            let mut j1 = 0usize;
            for (c, w) in g.neighbors(i0 - 1) {
                let j = c + 1;
                if used[j] {
                    continue;
                }
                let cur = w - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
            }
            for j in 1..=n {
                if !used[j] && minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            debug_assert!(delta < INF, "no augmenting path despite perfect matching");
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else if minv[j] < INF {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut perm = vec![0usize; n];
    for j in 1..=n {
        perm[p[j] - 1] = j - 1;
    }
    (u, v, perm)
}
