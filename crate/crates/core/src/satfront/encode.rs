use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::factor::FactorGraph;
use crate::gadgets::negate_literal;
use crate::instance::{parse_num, significant_lines, OitmInstance, OitmSolution};

/// Block numbers of one edge: its first copy sits in the first half of the
/// blocks, its second copy in the second half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeBlocks {
    pub var: usize,
    pub clause: usize,
    pub block1: usize,
    pub block2: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMap {
    num_vars: usize,
    edges: Vec<EdgeBlocks>,
}

/// `+` index of a block (odd), `-` index (even).
fn plus(b: usize) -> usize {
    2 * b - 1
}

fn minus(b: usize) -> usize {
    2 * b
}

impl IndexMap {
    pub fn from_factor_graph(fg: &FactorGraph) -> Self {
        let n = fg.edges().len();
        let edges = fg
            .edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| EdgeBlocks {
                var: edge.var,
                clause: edge.clause,
                block1: e + 1,
                block2: n + e + 1,
            })
            .collect();
        Self {
            num_vars: fg.num_vars(),
            edges,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn edges(&self) -> &[EdgeBlocks] {
        &self.edges
    }

    pub fn blocks(&self) -> usize {
        2 * self.edges.len()
    }

    /// Edge ids of `var` in cyclic (ascending clause) order.
    pub fn var_cycle(&self, var: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].var == var)
            .collect()
    }

    /// Reads the sidecar format written by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = significant_lines(text);
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| parse_err(0, "missing `vars` line"))?;
        let num_vars = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["vars", n] => parse_num(n, lineno)?,
            _ => return Err(parse_err(lineno, format!("bad header `{header}`"))),
        };
        let mut edges = Vec::new();
        for (lineno, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let ["edge", v, a, b1, b2] = toks.as_slice() else {
                return Err(parse_err(lineno, format!("bad edge line `{line}`")));
            };
            edges.push(EdgeBlocks {
                var: parse_num(v, lineno)?,
                clause: parse_num(a, lineno)?,
                block1: parse_num(b1, lineno)?,
                block2: parse_num(b2, lineno)?,
            });
        }
        let n = edges.len();
        for (e, eb) in edges.iter().enumerate() {
            if eb.block1 != e + 1 || eb.block2 != n + e + 1 || eb.var == 0 || eb.var > num_vars {
                return Err(parse_err(
                    0,
                    format!("edge {} has an inconsistent layout", e + 1),
                ));
            }
        }
        Ok(Self { num_vars, edges })
    }
}

/// Sidecar format: `vars <n>` then `edge <var> <clause> <block1> <block2>`.
impl fmt::Display for IndexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars {}", self.num_vars)?;
        for e in &self.edges {
            writeln!(f, "edge {} {} {} {}", e.var, e.clause, e.block1, e.block2)?;
        }
        Ok(())
    }
}

/// Encodes the factor graph as a One-in-Two instance with `2|E|` blocks.
///
/// Bottom-left quadrant (rows second copies, columns first copies): for
/// every variable, edge `e` and its cyclic successor `e'`, entries
/// `(e_2^-, e_1^-)` and `(e_2^+, e'_1^+)`. Top-right quadrant: each
/// clause's matrix between the first copies (rows) and second copies
/// (columns) of its edges, with the two indices of a negated literal
/// swapped.
pub fn encode(fg: &FactorGraph) -> Result<(OitmInstance, IndexMap)> {
    let map = IndexMap::from_factor_graph(fg);
    if map.edges().is_empty() {
        return Err(Error::Instance(
            "a formula without literals has no encoding".into(),
        ));
    }
    let mut inst = OitmInstance::new(map.blocks())?;
    for var in 1..=fg.num_vars() {
        let cycle = map.var_cycle(var);
        for (t, &e) in cycle.iter().enumerate() {
            let next = cycle[(t + 1) % cycle.len()];
            let eb = map.edges()[e];
            inst.insert(minus(eb.block2), minus(eb.block1))?;
            inst.insert(plus(eb.block2), plus(map.edges()[next].block1))?;
        }
    }
    for a in 1..=fg.num_clauses() {
        let range = fg.clause_range(a);
        let mut g = fg.kind(a).matrix(range.len())?;
        for (p, edge) in fg.clause_edges(a).iter().enumerate() {
            if !edge.positive {
                g = negate_literal(&g, p + 1)?;
            }
        }
        let index = |x: usize, second: bool| {
            let eb = map.edges()[range.start + (x - 1) / 2];
            let b = if second { eb.block2 } else { eb.block1 };
            if x % 2 == 1 {
                plus(b)
            } else {
                minus(b)
            }
        };
        for (r, c) in g.entries() {
            inst.insert(index(r, false), index(c, true))?;
        }
    }
    Ok((inst, map))
}

/// The variable assignment carried by a solution: the star choice shared
/// by all copies of a variable (`sigma = 1` is true). Variables without
/// occurrences are false.
pub fn decode(sol: &OitmSolution, map: &IndexMap) -> Result<Vec<bool>> {
    if sol.blocks() != map.blocks() {
        return Err(Error::Dimension {
            expected: map.blocks(),
            found: sol.blocks(),
        });
    }
    let sigma = sol.sigma();
    let mut out = vec![false; map.num_vars()];
    for (var, slot) in out.iter_mut().enumerate() {
        let var = var + 1;
        let mut values = map
            .var_cycle(var)
            .into_iter()
            .flat_map(|e| [map.edges()[e].block1, map.edges()[e].block2])
            .map(|b| (b, sigma[b - 1]));
        let Some((_, first)) = values.next() else {
            continue;
        };
        if let Some((b, _)) = values.find(|&(_, v)| v != first) {
            return Err(Error::Consistency(format!(
                "variable {var}: block {b} disagrees with its other copies"
            )));
        }
        *slot = first;
    }
    Ok(out)
}

/// Size accounting of an encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeStats {
    pub edges: usize,
    pub clauses: usize,
    pub dimension: usize,
    pub nnz: usize,
    /// `2|E|` truth-setting ones plus each clause's count (`4k - 3` for
    /// SAT, `6k - 8` for NAE).
    pub predicted_nnz: usize,
    /// Every entry lies in the top-right or bottom-left quadrant.
    pub quadrant_pure: bool,
}

impl SizeStats {
    /// Closed-form sizes for a factor graph, before encoding.
    pub fn predicted(fg: &FactorGraph) -> Result<Self> {
        let edges = fg.edges().len();
        let mut predicted = 2 * edges;
        for a in 1..=fg.num_clauses() {
            predicted += fg.kind(a).ones(fg.clause_range(a).len())?;
        }
        Ok(Self {
            edges,
            clauses: fg.num_clauses(),
            dimension: 4 * edges,
            nnz: predicted,
            predicted_nnz: predicted,
            quadrant_pure: true,
        })
    }

    pub fn matches_prediction(&self) -> bool {
        self.nnz == self.predicted_nnz && self.dimension == 4 * self.edges
    }
}

impl fmt::Display for SizeStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# edges {}", self.edges)?;
        writeln!(f, "# clauses {}", self.clauses)?;
        writeln!(f, "# dimension {}", self.dimension)?;
        writeln!(f, "# nnz {}", self.nnz)?;
        writeln!(f, "# predicted_nnz {}", self.predicted_nnz)?;
        writeln!(f, "# quadrant_pure {}", self.quadrant_pure)
    }
}

pub fn stats(inst: &OitmInstance, fg: &FactorGraph) -> Result<SizeStats> {
    let mut s = SizeStats::predicted(fg)?;
    let half = inst.dimension() / 2;
    s.dimension = inst.dimension();
    s.nnz = inst.nnz();
    s.quadrant_pure = inst.entries().all(|((r, c), _)| (r <= half) != (c <= half));
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::{build_factor_graph, ClauseKind};
    use crate::satfront::Cnf;

    fn graph(num_vars: usize, clauses: Vec<Vec<i32>>) -> FactorGraph {
        build_factor_graph(&Cnf::new(num_vars, clauses)).unwrap()
    }

    #[test]
    fn single_sat_clause_sizes() {
        let fg = graph(3, vec![vec![1, 2, 3]]);
        let (inst, map) = encode(&fg).unwrap();
        assert_eq!(inst.dimension(), 12);
        assert_eq!(map.blocks(), 6);
        let s = stats(&inst, &fg).unwrap();
        assert_eq!(s.nnz, 15);
        assert!(s.quadrant_pure && s.matches_prediction());
    }

    #[test]
    fn single_nae_clause_sizes() {
        let fg = graph(3, vec![vec![1, 2, 3]])
            .with_kind(ClauseKind::Nae)
            .unwrap();
        let (inst, _) = encode(&fg).unwrap();
        assert_eq!(inst.nnz(), 16);
    }

    #[test]
    fn truth_setting_layout() {
        // variable 1 in clauses 1 and 2: edges 1 and 2, blocks 1,2 | 3,4
        let fg = graph(1, vec![vec![1], vec![1]]);
        let (inst, map) = encode(&fg).unwrap();
        assert_eq!(map.edges()[1].block2, 4);
        assert!(inst.contains(6, 2) && inst.contains(5, 3));
        assert!(inst.contains(8, 4) && inst.contains(7, 1));
    }

    #[test]
    fn negation_swaps_the_clause_block() {
        let pos = encode(&graph(1, vec![vec![1]])).unwrap().0;
        let neg = encode(&graph(1, vec![vec![-1]])).unwrap().0;
        assert!(pos.contains(2, 4) && !pos.contains(1, 3));
        assert!(neg.contains(1, 3) && !neg.contains(2, 4));
    }

    #[test]
    fn empty_formula_predicts_zero() {
        let fg = graph(0, vec![]);
        assert!(encode(&fg).is_err());
        let s = SizeStats::predicted(&fg).unwrap();
        assert_eq!((s.dimension, s.nnz), (0, 0));
    }

    #[test]
    fn decode_all_true() {
        let fg = graph(1, vec![vec![1]]);
        let (_, map) = encode(&fg).unwrap();
        let sol = OitmSolution::from_minor(vec![true, true], &[1, 0]);
        assert_eq!(decode(&sol, &map).unwrap(), vec![true]);
    }

    #[test]
    fn decode_rejects_disagreement() {
        let fg = graph(1, vec![vec![1]]);
        let (_, map) = encode(&fg).unwrap();
        let sol = OitmSolution::from_minor(vec![true, false], &[1, 0]);
        assert!(matches!(decode(&sol, &map), Err(Error::Consistency(_))));
        let short = OitmSolution::from_minor(vec![true], &[0]);
        assert!(matches!(decode(&short, &map), Err(Error::Dimension { .. })));
    }

    #[test]
    fn sidecar_round_trip() {
        let fg = graph(3, vec![vec![1, -2], vec![2, 3]]);
        let (_, map) = encode(&fg).unwrap();
        assert_eq!(IndexMap::parse(&map.to_string()).unwrap(), map);
        assert!(IndexMap::parse("vars 1\nedge 1 1 2 2\n").is_err());
    }
}
