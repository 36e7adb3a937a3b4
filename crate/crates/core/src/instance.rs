//! One-in-Two Matching instances and solutions.
//!
//! An instance of dimension `2B` is split into `B` diagonal blocks
//! `{2b-1, 2b}`. The two diagonal positions of every block are the
//! always-available "stars" of weight 0; the two anti-diagonal positions of
//! a block are never usable. Every other position is either a stored entry
//! or forbidden. All public indices are 1-based.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use crate::error::{parse_err, Error, Result};
use crate::solver::BipartiteGraph;

/// Block (1-based) containing the 1-based index `i`.
#[inline]
pub fn block_of(i: usize) -> usize {
    i.div_ceil(2)
}

/// The index of block `b` left unfixed by the star choice `sigma_b`.
///
/// `sigma_b = true` fixes the odd index `2b-1`, leaving `2b`.
#[inline]
pub fn unfixed_index(b: usize, sigma_b: bool) -> usize {
    if sigma_b {
        2 * b
    } else {
        2 * b - 1
    }
}

/// The index of block `b` fixed (matched to itself) by `sigma_b`.
#[inline]
pub fn fixed_index(b: usize, sigma_b: bool) -> usize {
    if sigma_b {
        2 * b - 1
    } else {
        2 * b
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OitmInstance {
    blocks: usize,
    entries: BTreeMap<(usize, usize), i64>,
    budget: Option<i64>,
}

impl OitmInstance {
    /// Decision instance with `blocks` diagonal blocks and no entries.
    pub fn new(blocks: usize) -> Result<Self> {
        if blocks == 0 {
            return Err(Error::Instance("block count must be positive".into()));
        }
        Ok(Self {
            blocks,
            entries: BTreeMap::new(),
            budget: None,
        })
    }

    /// Weighted (assignment) instance with the given cost threshold.
    pub fn weighted(blocks: usize, budget: i64) -> Result<Self> {
        let mut inst = Self::new(blocks)?;
        inst.budget = Some(budget);
        Ok(inst)
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn dimension(&self) -> usize {
        2 * self.blocks
    }

    pub fn is_weighted(&self) -> bool {
        self.budget.is_some()
    }

    pub fn budget(&self) -> Option<i64> {
        self.budget
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Adds an unweighted entry. Re-adding an existing entry is a no-op.
    pub fn insert(&mut self, row: usize, col: usize) -> Result<()> {
        if self.is_weighted() {
            return Err(Error::Instance(format!(
                "entry ({row}, {col}) needs a weight in a weighted instance"
            )));
        }
        self.check_position(row, col)?;
        self.entries.insert((row, col), 0);
        Ok(())
    }

    /// Adds (or overwrites) a weighted entry.
    pub fn insert_weighted(&mut self, row: usize, col: usize, weight: i64) -> Result<()> {
        if !self.is_weighted() {
            return Err(Error::Instance(format!(
                "weighted entry ({row}, {col}) in a decision instance"
            )));
        }
        self.check_position(row, col)?;
        self.entries.insert((row, col), weight);
        Ok(())
    }

    fn check_position(&self, row: usize, col: usize) -> Result<()> {
        let dim = self.dimension();
        if row == 0 || col == 0 || row > dim || col > dim {
            return Err(Error::Instance(format!(
                "entry ({row}, {col}) outside 1..={dim}"
            )));
        }
        if block_of(row) == block_of(col) {
            return Err(Error::Instance(format!(
                "entry ({row}, {col}) lies inside diagonal block {}",
                block_of(row)
            )));
        }
        Ok(())
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.entries.contains_key(&(row, col))
    }

    /// Weight of a stored entry (0 for decision instances).
    pub fn weight(&self, row: usize, col: usize) -> Option<i64> {
        self.entries.get(&(row, col)).copied()
    }

    /// All stored entries as `((row, col), weight)`, sorted.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.entries.iter().map(|(&k, &w)| (k, w))
    }

    /// Entries of one row, sorted by column.
    pub fn row(&self, row: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.entries
            .range((row, 0)..=(row, usize::MAX))
            .map(|(&(_, c), &w)| (c, w))
    }

    /// The `B x B` minor left after removing the indices fixed by `sigma`.
    ///
    /// Row/column `b` (0-based) of the minor is the unfixed index of block
    /// `b + 1`. The minor diagonal is always absent: using it would fix both
    /// indices of a block.
    pub fn minor(&self, sigma: &[bool]) -> Result<BipartiteGraph> {
        if sigma.len() != self.blocks {
            return Err(Error::Dimension {
                expected: self.blocks,
                found: sigma.len(),
            });
        }
        let mut g = BipartiteGraph::new(self.blocks);
        for ((r, c), w) in self.entries() {
            let (br, bc) = (block_of(r), block_of(c));
            if unfixed_index(br, sigma[br - 1]) == r && unfixed_index(bc, sigma[bc - 1]) == c {
                g.add_edge(br - 1, bc - 1, w);
            }
        }
        Ok(g)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = significant_lines(text);
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| parse_err(0, "missing `oitm` header"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let mut inst = match toks.as_slice() {
            ["oitm", b] => Self::new(parse_num(b, lineno)?),
            ["oitm", b, "weighted", budget] => {
                Self::weighted(parse_num(b, lineno)?, parse_num(budget, lineno)?)
            }
            _ => return Err(parse_err(lineno, format!("bad header `{header}`"))),
        }
        .map_err(|e| parse_err(lineno, e.to_string()))?;
        for (lineno, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let res = match (toks.as_slice(), inst.is_weighted()) {
                ([i, j], false) => inst.insert(parse_num(i, lineno)?, parse_num(j, lineno)?),
                ([i, j, w], true) => inst.insert_weighted(
                    parse_num(i, lineno)?,
                    parse_num(j, lineno)?,
                    parse_num(w, lineno)?,
                ),
                _ => return Err(parse_err(lineno, format!("bad entry line `{line}`"))),
            };
            res.map_err(|e| parse_err(lineno, e.to_string()))?;
        }
        Ok(inst)
    }
}

impl fmt::Display for OitmInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.budget {
            Some(budget) => writeln!(f, "oitm {} weighted {}", self.blocks, budget)?,
            None => writeln!(f, "oitm {}", self.blocks)?,
        }
        for ((r, c), w) in self.entries() {
            if self.is_weighted() {
                writeln!(f, "{r} {c} {w}")?;
            } else {
                writeln!(f, "{r} {c}")?;
            }
        }
        Ok(())
    }
}

/// A One-in-Two solution: one star per block plus a fixed-point-free
/// matching of the remaining `B` indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OitmSolution {
    sigma: Vec<bool>,
    perm: BTreeMap<usize, usize>,
}

impl OitmSolution {
    /// `perm` maps unfixed indices to their targets (original 1-based indexing).
    pub fn new(sigma: Vec<bool>, perm: BTreeMap<usize, usize>) -> Self {
        Self { sigma, perm }
    }

    /// Builds a solution from a 0-based assignment on the minor selected by
    /// `sigma` (`minor_perm[b] = c` sends block `b`'s unfixed row to block
    /// `c`'s unfixed column).
    pub fn from_minor(sigma: Vec<bool>, minor_perm: &[usize]) -> Self {
        let perm = minor_perm
            .iter()
            .enumerate()
            .map(|(b, &c)| {
                (
                    unfixed_index(b + 1, sigma[b]),
                    unfixed_index(c + 1, sigma[c]),
                )
            })
            .collect();
        Self { sigma, perm }
    }

    /// Recovers `(sigma, perm)` from a full 1-based permutation of `1..=2B`.
    pub fn from_permutation(pi: &[usize]) -> Result<Self> {
        if !pi.len().is_multiple_of(2) {
            return Err(Error::Instance("permutation length must be even".into()));
        }
        let blocks = pi.len() / 2;
        let mut sigma = Vec::with_capacity(blocks);
        let mut perm = BTreeMap::new();
        for b in 1..=blocks {
            let odd = pi[2 * b - 2] == 2 * b - 1;
            let even = pi[2 * b - 1] == 2 * b;
            if odd == even {
                return Err(Error::Instance(format!(
                    "block {b} has {} fixed points, expected exactly one",
                    if odd { 2 } else { 0 }
                )));
            }
            sigma.push(odd);
            let u = unfixed_index(b, odd);
            perm.insert(u, pi[u - 1]);
        }
        Ok(Self { sigma, perm })
    }

    pub fn blocks(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[bool] {
        &self.sigma
    }

    pub fn perm(&self) -> &BTreeMap<usize, usize> {
        &self.perm
    }

    /// Full 1-based permutation of `1..=2B`; indices missing from `perm`
    /// map to 0.
    pub fn full_permutation(&self) -> Vec<usize> {
        let mut pi = vec![0; 2 * self.blocks()];
        for (b, &s) in self.sigma.iter().enumerate() {
            let f = fixed_index(b + 1, s);
            pi[f - 1] = f;
        }
        for (&i, &j) in &self.perm {
            if (1..=pi.len()).contains(&i) {
                pi[i - 1] = j;
            }
        }
        pi
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = significant_lines(text);
        let (l1, sigma_line) = lines
            .next()
            .ok_or_else(|| parse_err(0, "missing `sigma` line"))?;
        let sigma = match sigma_line.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["sigma", bits] => bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(parse_err(l1, format!("bad sigma digit `{c}`"))),
                })
                .collect::<Result<Vec<bool>>>()?,
            _ => return Err(parse_err(l1, "expected `sigma <bits>`")),
        };
        let (l2, perm_line) = lines
            .next()
            .ok_or_else(|| parse_err(l1 + 1, "missing `perm` line"))?;
        let mut toks = perm_line.split_whitespace();
        if toks.next() != Some("perm") {
            return Err(parse_err(l2, "expected `perm <targets>`"));
        }
        let targets = toks
            .map(|t| parse_num(t, l2))
            .collect::<Result<Vec<usize>>>()?;
        if targets.len() != sigma.len() {
            return Err(parse_err(
                l2,
                format!("expected {} targets, found {}", sigma.len(), targets.len()),
            ));
        }
        if let Some((l, extra)) = lines.next() {
            return Err(parse_err(l, format!("trailing content `{extra}`")));
        }
        let perm = sigma
            .iter()
            .enumerate()
            .zip(targets)
            .map(|((b, &s), t)| (unfixed_index(b + 1, s), t))
            .collect();
        Ok(Self { sigma, perm })
    }
}

impl fmt::Display for OitmSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self
            .sigma
            .iter()
            .map(|&s| if s { '1' } else { '0' })
            .collect();
        writeln!(f, "sigma {bits}")?;
        let mut line = String::from("perm");
        for (b, &s) in self.sigma.iter().enumerate() {
            let u = unfixed_index(b + 1, s);
            let _ = write!(line, " {}", self.perm.get(&u).copied().unwrap_or(0));
        }
        writeln!(f, "{line}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// An unfixed index has no target.
    Unmatched { index: usize },
    /// `perm` has a key that is not an unfixed index.
    NotUnfixed { index: usize },
    /// A target is not an unfixed index (out of range or already fixed).
    BadTarget { index: usize, target: usize },
    /// Two indices share a target.
    TargetReused { target: usize },
    /// Both stars of a block are used.
    DoubleStar { block: usize },
    /// The edge is inside a diagonal block but is not a star.
    InBlock { index: usize, target: usize },
    /// The edge is not a stored entry.
    MissingEntry { index: usize, target: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub cost: Option<i64>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// Valid and within budget (always true for decision instances).
    pub fn within_budget(&self, inst: &OitmInstance) -> bool {
        match (inst.budget(), self.cost) {
            (Some(budget), Some(cost)) => self.valid && cost <= budget,
            _ => self.valid,
        }
    }
}

pub fn validate_solution(inst: &OitmInstance, sol: &OitmSolution) -> Result<ValidationReport> {
    if sol.blocks() != inst.blocks() {
        return Err(Error::Dimension {
            expected: inst.blocks(),
            found: sol.blocks(),
        });
    }
    let unfixed: BTreeSet<usize> = sol
        .sigma
        .iter()
        .enumerate()
        .map(|(b, &s)| unfixed_index(b + 1, s))
        .collect();
    let mut violations = Vec::new();
    let mut used = BTreeSet::new();
    let mut cost = 0i64;
    for &u in &unfixed {
        if !sol.perm.contains_key(&u) {
            violations.push(Violation::Unmatched { index: u });
        }
    }
    for (&i, &j) in &sol.perm {
        if !unfixed.contains(&i) {
            violations.push(Violation::NotUnfixed { index: i });
            continue;
        }
        if i == j {
            violations.push(Violation::DoubleStar { block: block_of(i) });
            continue;
        }
        if !unfixed.contains(&j) {
            violations.push(Violation::BadTarget {
                index: i,
                target: j,
            });
            continue;
        }
        if !used.insert(j) {
            violations.push(Violation::TargetReused { target: j });
        }
        if block_of(i) == block_of(j) {
            violations.push(Violation::InBlock {
                index: i,
                target: j,
            });
            continue;
        }
        match inst.weight(i, j) {
            Some(w) => cost += w,
            None => violations.push(Violation::MissingEntry {
                index: i,
                target: j,
            }),
        }
    }
    let valid = violations.is_empty();
    Ok(ValidationReport {
        valid,
        cost: (valid && inst.is_weighted()).then_some(cost),
        violations,
    })
}

/// Free-function form of [`OitmInstance::minor`].
pub fn minor_of(inst: &OitmInstance, sigma: &[bool]) -> Result<BipartiteGraph> {
    inst.minor(sigma)
}

pub(crate) fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub(crate) fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad number `{tok}`")))
}
