//! Signed variable/clause factor graphs.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::gadgets::{nae_clause, sat_clause, truth_table_of, GadgetMatrix};
use crate::satfront::Cnf;
use crate::table::TruthTable;

/// How a clause constrains its literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClauseKind {
    /// At least one literal true.
    Sat,
    /// Literals not all equal.
    Nae,
    /// The table realized by a gadget of the clause's length, read over
    /// literal values (negations already applied).
    Gadget(GadgetMatrix),
}

impl ClauseKind {
    /// The satisfaction-testing matrix for an all-positive clause of `k`
    /// literals.
    pub fn matrix(&self, k: usize) -> Result<GadgetMatrix> {
        match self {
            Self::Sat => sat_clause(k),
            Self::Nae => nae_clause(k).map_err(|e| Error::UnsupportedClause(e.to_string())),
            Self::Gadget(g) if g.arity() == k => Ok(g.clone()),
            Self::Gadget(g) => Err(Error::UnsupportedClause(format!(
                "gadget of arity {} on a clause of {k} literals",
                g.arity()
            ))),
        }
    }

    /// Nonzero count of [`ClauseKind::matrix`].
    pub fn ones(&self, k: usize) -> Result<usize> {
        Ok(match self {
            Self::Sat => 4 * k - 3,
            Self::Nae => self.matrix(k).map(|_| 6 * k - 8)?,
            Self::Gadget(_) => self.matrix(k)?.ones(),
        })
    }
}

/// One literal occurrence; `var` and `clause` are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub var: usize,
    pub clause: usize,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorGraph {
    num_vars: usize,
    /// Ordered by (clause, position in clause).
    edges: Vec<Edge>,
    clause_ranges: Vec<Range<usize>>,
    kinds: Vec<ClauseKind>,
    tables: Vec<Option<TruthTable>>,
}

pub fn build_factor_graph(cnf: &Cnf) -> Result<FactorGraph> {
    let mut edges = Vec::new();
    let mut clause_ranges = Vec::with_capacity(cnf.clauses.len());
    for (a, clause) in cnf.clauses.iter().enumerate() {
        if clause.is_empty() {
            return Err(Error::Instance(format!("clause {} is empty", a + 1)));
        }
        let start = edges.len();
        for &lit in clause {
            let var = lit.unsigned_abs() as usize;
            if var == 0 || var > cnf.num_vars {
                return Err(Error::Instance(format!(
                    "literal {lit} out of range 1..={}",
                    cnf.num_vars
                )));
            }
            if edges[start..].iter().any(|e: &Edge| e.var == var) {
                return Err(Error::DuplicateIncidence { var, clause: a + 1 });
            }
            edges.push(Edge {
                var,
                clause: a + 1,
                positive: lit > 0,
            });
        }
        clause_ranges.push(start..edges.len());
    }
    let m = clause_ranges.len();
    Ok(FactorGraph {
        num_vars: cnf.num_vars,
        edges,
        clause_ranges,
        kinds: vec![ClauseKind::Sat; m],
        tables: vec![None; m],
    })
}

impl FactorGraph {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clause_ranges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edges of clause `a` (1-based) in literal order.
    pub fn clause_edges(&self, a: usize) -> &[Edge] {
        &self.edges[self.clause_ranges[a - 1].clone()]
    }

    /// Range of edge ids of clause `a` (1-based).
    pub fn clause_range(&self, a: usize) -> Range<usize> {
        self.clause_ranges[a - 1].clone()
    }

    pub fn kind(&self, a: usize) -> &ClauseKind {
        &self.kinds[a - 1]
    }

    pub fn kinds(&self) -> &[ClauseKind] {
        &self.kinds
    }

    /// Edge ids incident to `var`, in ascending clause order.
    pub fn var_edges(&self, var: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].var == var)
            .collect()
    }

    pub fn var_degree(&self, var: usize) -> usize {
        self.edges.iter().filter(|e| e.var == var).count()
    }

    pub fn set_kind(&mut self, a: usize, kind: ClauseKind) -> Result<()> {
        if a == 0 || a > self.num_clauses() {
            return Err(Error::Parameter(format!("no clause {a}")));
        }
        let k = self.clause_ranges[a - 1].len();
        let m = kind.matrix(k)?;
        self.tables[a - 1] = match kind {
            ClauseKind::Gadget(_) => Some(truth_table_of(&m)?),
            _ => None,
        };
        self.kinds[a - 1] = kind;
        Ok(())
    }

    /// Same kind for every clause.
    pub fn with_kind(mut self, kind: ClauseKind) -> Result<Self> {
        for a in 1..=self.num_clauses() {
            self.set_kind(a, kind.clone())?;
        }
        Ok(self)
    }

    /// Whether clause `a` holds under `assignment[v - 1]`.
    pub fn clause_satisfied(&self, a: usize, assignment: &[bool]) -> bool {
        let lits: Vec<bool> = self
            .clause_edges(a)
            .iter()
            .map(|e| assignment[e.var - 1] == e.positive)
            .collect();
        match &self.kinds[a - 1] {
            ClauseKind::Sat => lits.iter().any(|&b| b),
            ClauseKind::Nae => lits.iter().any(|&b| b) && lits.iter().any(|&b| !b),
            ClauseKind::Gadget(_) => self.tables[a - 1]
                .as_ref()
                .expect("table computed with the kind")
                .contains_assignment(&lits),
        }
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        (1..=self.num_clauses()).all(|a| self.clause_satisfied(a, assignment))
    }
}

/// First satisfying assignment in ascending binary order (variable 1 most
/// significant), by exhaustive search over at most 24 variables.
pub fn brute_force_sat(fg: &FactorGraph) -> Result<Option<Vec<bool>>> {
    let n = fg.num_vars();
    if n > 24 {
        return Err(Error::ResourceLimit(format!(
            "exhaustive SAT supports at most 24 variables, got {n}"
        )));
    }
    for code in 0u64..1 << n {
        let a: Vec<bool> = (0..n).map(|i| code >> (n - 1 - i) & 1 == 1).collect();
        if fg.is_satisfied_by(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_and_counts() {
        let fg = build_factor_graph(&Cnf::new(2, vec![vec![1, -2]])).unwrap();
        assert_eq!(fg.edges().len(), 2);
        assert!(fg.edges()[0].positive && !fg.edges()[1].positive);
        assert_eq!(fg.var_degree(2), 1);
    }

    #[test]
    fn empty_formula() {
        let fg = build_factor_graph(&Cnf::default()).unwrap();
        assert_eq!(fg.edges().len(), 0);
        assert_eq!(fg.num_clauses(), 0);
    }

    #[test]
    fn duplicates_rejected() {
        let err = build_factor_graph(&Cnf::new(2, vec![vec![2], vec![1, -1]])).unwrap_err();
        assert_eq!(err, Error::DuplicateIncidence { var: 1, clause: 2 });
    }

    #[test]
    fn kinds_are_checked() {
        let mut fg = build_factor_graph(&Cnf::new(2, vec![vec![1], vec![1, 2]])).unwrap();
        assert!(matches!(
            fg.set_kind(1, ClauseKind::Nae),
            Err(Error::UnsupportedClause(_))
        ));
        fg.set_kind(2, ClauseKind::Nae).unwrap();
        assert!(fg.clause_satisfied(2, &[true, false]));
        assert!(!fg.clause_satisfied(2, &[true, true]));
        let g = crate::gadgets::range_t(3, 1, 1).unwrap();
        assert!(fg.set_kind(2, ClauseKind::Gadget(g)).is_err());
    }

    #[test]
    fn gadget_clauses_read_literal_values() {
        let xor = crate::gadgets::nae_clause(2).unwrap();
        let mut fg = build_factor_graph(&Cnf::new(2, vec![vec![1, -2]])).unwrap();
        fg.set_kind(1, ClauseKind::Gadget(xor)).unwrap();
        // literal values (u1, not u2) must differ, so u1 = u2
        assert!(fg.is_satisfied_by(&[true, true]));
        assert!(!fg.is_satisfied_by(&[true, false]));
    }

    #[test]
    fn brute_force() {
        let fg = build_factor_graph(&Cnf::new(1, vec![vec![1], vec![-1]])).unwrap();
        assert_eq!(brute_force_sat(&fg).unwrap(), None);
        let fg = build_factor_graph(&Cnf::new(2, vec![vec![1, 2], vec![-2]])).unwrap();
        assert_eq!(brute_force_sat(&fg).unwrap(), Some(vec![true, false]));
    }
}
