use std::fmt;

use crate::error::{Error, Result};
use crate::instance::OitmInstance;
use crate::solver::{max_matching, BipartiteGraph};
use crate::table::{TruthTable, MAX_ARITY};

/// Largest arity accepted by [`truth_table_of`].
pub const MAX_TABLE_ARITY: usize = 12;

/// A `2k x 2k` 0/1 clause matrix in the satisfaction-testing layout: rows
/// are first copies, columns second copies, block `i` covers indices
/// `2i-1` (the `+` index) and `2i` (the `-` index). Diagonal blocks may
/// hold entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GadgetMatrix {
    k: usize,
    /// Bit `c` of `rows[r]` is column `c + 1` of row `r + 1`.
    rows: Vec<u32>,
}

impl GadgetMatrix {
    /// All-zero matrix of arity `k`.
    pub fn new(k: usize) -> Result<Self> {
        if !(1..=MAX_ARITY).contains(&k) {
            return Err(Error::Parameter(format!(
                "gadget arity must be in 1..={MAX_ARITY}, got {k}"
            )));
        }
        Ok(Self {
            k,
            rows: vec![0; 2 * k],
        })
    }

    /// Decodes row integers whose most significant bit is column 1.
    pub fn from_row_bytes(k: usize, rows: &[u64]) -> Result<Self> {
        let mut g = Self::new(k)?;
        let w = 2 * k;
        if rows.len() != w {
            return Err(Error::Dimension {
                expected: w,
                found: rows.len(),
            });
        }
        for (r, &bits) in rows.iter().enumerate() {
            if bits >> w != 0 {
                return Err(Error::Parameter(format!(
                    "row value {bits} does not fit in {w} columns"
                )));
            }
            for c in 0..w {
                if bits >> (w - 1 - c) & 1 == 1 {
                    g.rows[r] |= 1 << c;
                }
            }
        }
        Ok(g)
    }

    /// Inverse of [`GadgetMatrix::from_row_bytes`].
    pub fn row_bytes(&self) -> Vec<u64> {
        let w = 2 * self.k;
        self.rows
            .iter()
            .map(|&bits| (0..w).fold(0u64, |acc, c| acc << 1 | u64::from(bits >> c & 1)))
            .collect()
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn width(&self) -> usize {
        2 * self.k
    }

    /// Entry at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.check(row, col);
        self.rows[row - 1] >> (col - 1) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.check(row, col);
        if value {
            self.rows[row - 1] |= 1 << (col - 1);
        } else {
            self.rows[row - 1] &= !(1 << (col - 1));
        }
    }

    fn check(&self, row: usize, col: usize) {
        let w = self.width();
        assert!(
            (1..=w).contains(&row) && (1..=w).contains(&col),
            "({row}, {col}) outside a {w}x{w} gadget"
        );
    }

    /// Writes the 2x2 pattern `[[a, b], [c, d]]` into block `(i, j)`.
    pub fn set_block(&mut self, i: usize, j: usize, pattern: [[u8; 2]; 2]) {
        for (dr, row) in pattern.iter().enumerate() {
            for (dc, &v) in row.iter().enumerate() {
                self.set(2 * i - 1 + dr, 2 * j - 1 + dc, v != 0);
            }
        }
    }

    pub fn block(&self, i: usize, j: usize) -> [[u8; 2]; 2] {
        let mut out = [[0u8; 2]; 2];
        for (dr, row) in out.iter_mut().enumerate() {
            for (dc, v) in row.iter_mut().enumerate() {
                *v = u8::from(self.get(2 * i - 1 + dr, 2 * j - 1 + dc));
            }
        }
        out
    }

    /// Number of 1 entries.
    pub fn ones(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// 1-based `(row, col)` positions of the ones, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.width();
        (1..=w).flat_map(move |r| {
            (1..=w)
                .filter(move |&c| self.get(r, c))
                .map(move |c| (r, c))
        })
    }

    /// The `k x k` minor selected by `tau`: block `i` keeps its even index
    /// when `tau_i` is true and its odd index otherwise.
    pub fn minor(&self, tau: &[bool]) -> BipartiteGraph {
        assert_eq!(tau.len(), self.k, "assignment length");
        let keep: Vec<usize> = tau
            .iter()
            .enumerate()
            .map(|(i, &t)| if t { 2 * i + 2 } else { 2 * i + 1 })
            .collect();
        let mut g = BipartiteGraph::new(self.k);
        for (a, &r) in keep.iter().enumerate() {
            for (b, &c) in keep.iter().enumerate() {
                if self.get(r, c) {
                    g.add_edge(a, b, 0);
                }
            }
        }
        g
    }
}

impl fmt::Display for GadgetMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.width();
        for r in 1..=w {
            let line: Vec<&str> = (1..=w)
                .map(|c| if self.get(r, c) { "1" } else { "0" })
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// The table of assignments whose minor admits a perfect matching.
pub fn truth_table_of(g: &GadgetMatrix) -> Result<TruthTable> {
    if g.arity() > MAX_TABLE_ARITY {
        return Err(Error::ResourceLimit(format!(
            "truth table extraction supports arity <= {MAX_TABLE_ARITY}, got {}",
            g.arity()
        )));
    }
    let mut t = TruthTable::new(g.arity())?;
    for code in 0..t.size() {
        if max_matching(&g.minor(&t.assignment(code))).is_perfect() {
            t.insert(code);
        }
    }
    Ok(t)
}

/// Swaps rows `2p-1, 2p` and columns `2p-1, 2p`, negating literal `p`.
pub fn negate_literal(g: &GadgetMatrix, pos: usize) -> Result<GadgetMatrix> {
    if !(1..=g.arity()).contains(&pos) {
        return Err(Error::Parameter(format!(
            "literal {pos} out of range 1..={}",
            g.arity()
        )));
    }
    let swap = |x: usize| match x {
        x if x == 2 * pos - 1 => 2 * pos,
        x if x == 2 * pos => 2 * pos - 1,
        x => x,
    };
    let mut out = GadgetMatrix::new(g.arity())?;
    for (r, c) in g.entries() {
        out.set(swap(r), swap(c), true);
    }
    Ok(out)
}

/// Embeds the gadget as the top-right quadrant of a `4k x 4k` instance,
/// `[[I*, W], [0, I*]]`.
pub fn embed_gadget(g: &GadgetMatrix) -> OitmInstance {
    let k = g.arity();
    let mut inst = OitmInstance::new(2 * k).expect("positive size");
    for (r, c) in g.entries() {
        inst.insert(r, 2 * k + c).expect("off-block quadrant");
    }
    inst
}

/// The gadget as a stand-alone clause over `k` fresh variables: the
/// embedding of [`embed_gadget`] plus the identity in the bottom-left
/// quadrant, which ties the two copies of each literal together.
pub fn single_clause_instance(g: &GadgetMatrix) -> OitmInstance {
    let k = g.arity();
    let mut inst = embed_gadget(g);
    for i in 1..=2 * k {
        inst.insert(2 * k + i, i).expect("off-block quadrant");
    }
    inst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_bytes_msb_is_first_column() {
        let g = GadgetMatrix::from_row_bytes(1, &[2, 1]).unwrap();
        assert!(g.get(1, 1) && !g.get(1, 2));
        assert!(g.get(2, 2) && !g.get(2, 1));
        assert_eq!(g.row_bytes(), vec![2, 1]);
    }

    #[test]
    fn row_bytes_validation() {
        assert!(GadgetMatrix::from_row_bytes(1, &[4, 0]).is_err());
        assert!(GadgetMatrix::from_row_bytes(2, &[0, 0]).is_err());
    }

    #[test]
    fn blocks_round_trip() {
        let mut g = GadgetMatrix::new(2).unwrap();
        g.set_block(1, 2, [[0, 1], [1, 0]]);
        assert_eq!(g.block(1, 2), [[0, 1], [1, 0]]);
        assert_eq!(g.ones(), 2);
        assert_eq!(g.entries().collect::<Vec<_>>(), vec![(1, 4), (2, 3)]);
    }

    #[test]
    fn negation_is_an_involution() {
        let g = GadgetMatrix::from_row_bytes(2, &[1, 8, 6, 3]).unwrap();
        let twice = negate_literal(&negate_literal(&g, 2).unwrap(), 2).unwrap();
        assert_eq!(twice, g);
        assert!(negate_literal(&g, 3).is_err());
    }

    #[test]
    fn embedding_layout() {
        let mut g = GadgetMatrix::new(1).unwrap();
        g.set(2, 2, true);
        let inst = embed_gadget(&g);
        assert_eq!(inst.dimension(), 4);
        assert!(inst.contains(2, 4));
        assert_eq!(inst.nnz(), 1);
        let full = single_clause_instance(&g);
        assert_eq!(full.nnz(), 3);
        assert!(full.contains(3, 1) && full.contains(4, 2));
    }
}
