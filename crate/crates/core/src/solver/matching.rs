use std::collections::BTreeMap;

/// Square bipartite graph on `n` rows and `n` columns (0-based), with an
/// integer cost on every edge. Absent edges are forbidden cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    adj: Vec<BTreeMap<usize, i64>>,
}

impl BipartiteGraph {
    pub fn new(size: usize) -> Self {
        Self {
            adj: vec![BTreeMap::new(); size],
        }
    }

    /// Builds a graph from a dense matrix; `None` cells are forbidden.
    pub fn from_dense(costs: &[Vec<Option<i64>>]) -> Self {
        let mut g = Self::new(costs.len());
        for (r, row) in costs.iter().enumerate() {
            assert_eq!(row.len(), costs.len(), "cost matrix must be square");
            for (c, w) in row.iter().enumerate() {
                if let Some(w) = w {
                    g.add_edge(r, c, *w);
                }
            }
        }
        g
    }

    /// Complete graph with the given costs.
    pub fn complete(costs: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<Option<i64>>> = costs
            .iter()
            .map(|row| row.iter().copied().map(Some).collect())
            .collect();
        Self::from_dense(&dense)
    }

    pub fn size(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, row: usize, col: usize, cost: i64) {
        assert!(col < self.size(), "column {col} out of range");
        self.adj[row].insert(col, cost);
    }

    pub fn has_edge(&self, row: usize, col: usize) -> bool {
        self.adj[row].contains_key(&col)
    }

    pub fn cost(&self, row: usize, col: usize) -> Option<i64> {
        self.adj[row].get(&col).copied()
    }

    /// Neighbours of `row` in ascending column order.
    pub fn neighbors(&self, row: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.adj[row].iter().map(|(&c, &w)| (c, w))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeMap::len).sum()
    }

    pub(crate) fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        self.adj
            .iter()
            .map(|m| m.keys().copied().collect())
            .collect()
    }
}

/// A partial injection from rows to columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub row_to_col: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.row_to_col.iter().flatten().count()
    }

    pub fn is_perfect(&self) -> bool {
        self.row_to_col.iter().all(Option::is_some)
    }

    /// The matching as a permutation, if perfect.
    pub fn into_permutation(self) -> Option<Vec<usize>> {
        self.row_to_col.into_iter().collect()
    }
}

/// Maximum-cardinality matching by augmenting paths.
///
/// Rows are processed in ascending order and columns are scanned in
/// ascending order, so the result is deterministic.
pub fn max_matching(g: &BipartiteGraph) -> Matching {
    let adj = g.adjacency_lists();
    let row_to_col = augment_all(&adj, g.size(), |_| true, |_| true);
    Matching { row_to_col }
}

/// Kuhn's algorithm restricted to the rows and columns accepted by the
/// filters. Returns the row-to-column assignment.
pub(crate) fn augment_all(
    adj: &[Vec<usize>],
    ncols: usize,
    row_ok: impl Fn(usize) -> bool,
    col_ok: impl Fn(usize) -> bool,
) -> Vec<Option<usize>> {
    let mut row_to_col = vec![None; adj.len()];
    let mut col_to_row = vec![None; ncols];
    let mut seen = vec![0usize; ncols];
    let mut stamp = 0;
    for r in 0..adj.len() {
        if !row_ok(r) {
            continue;
        }
        stamp += 1;
        try_augment(
            r,
            adj,
            &col_ok,
            &mut seen,
            stamp,
            &mut row_to_col,
            &mut col_to_row,
        );
    }
    row_to_col
}

fn try_augment(
    r: usize,
    adj: &[Vec<usize>],
    col_ok: &impl Fn(usize) -> bool,
    seen: &mut [usize],
    stamp: usize,
    row_to_col: &mut [Option<usize>],
    col_to_row: &mut [Option<usize>],
) -> bool {
    for &c in &adj[r] {
        if seen[c] == stamp || !col_ok(c) {
            continue;
        }
        seen[c] = stamp;
        let free = match col_to_row[c] {
            None => true,
            Some(r2) => try_augment(r2, adj, col_ok, seen, stamp, row_to_col, col_to_row),
        };
        if free {
            row_to_col[r] = Some(c);
            col_to_row[c] = Some(r);
            return true;
        }
    }
    false
}

/// Lexicographically smallest perfect matching of `adj`, starting from any
/// perfect matching `initial` (row -> column).
pub(crate) fn lex_smallest_perfect(adj: &[Vec<usize>], initial: Vec<usize>) -> Vec<usize> {
    let n = adj.len();
    let mut row_to_col: Vec<Option<usize>> = initial.into_iter().map(Some).collect();
    let mut col_to_row = vec![None; n];
    for (r, c) in row_to_col.iter().enumerate() {
        col_to_row[c.expect("initial matching is perfect")] = Some(r);
    }
    let mut locked_col = vec![false; n];
    let mut seen = vec![0usize; n];
    let mut stamp = 0;
    for r in 0..n {
        let current = row_to_col[r].expect("perfect");
        for &c in &adj[r] {
            if locked_col[c] {
                continue;
            }
            if c == current {
                break;
            }
            // Move r onto c, then re-route the displaced row through the
            // unlocked part of the graph towards the freed column.
            let r2 = col_to_row[c].expect("perfect");
            let saved_rows = row_to_col.clone();
            let saved_cols = col_to_row.clone();
            row_to_col[r] = Some(c);
            col_to_row[c] = Some(r);
            col_to_row[current] = None;
            row_to_col[r2] = None;
            locked_col[c] = true;
            stamp += 1;
            let ok = try_augment(
                r2,
                adj,
                &|col| !locked_col[col],
                &mut seen,
                stamp,
                &mut row_to_col,
                &mut col_to_row,
            );
            locked_col[c] = false;
            if ok {
                break;
            }
            row_to_col = saved_rows;
            col_to_row = saved_cols;
        }
        locked_col[row_to_col[r].expect("perfect")] = true;
    }
    row_to_col
        .into_iter()
        .map(|c| c.expect("perfect"))
        .collect()
}
