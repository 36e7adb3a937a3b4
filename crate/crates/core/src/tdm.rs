//! 3-dimensional matching and the reduction from One-in-Two Matching.
//!
//! An instance with `B` blocks becomes a 3DM instance on `n = 2B` vertices
//! per class. Layer `k <= B` holds the two star triples of block `k`; layer
//! `B + b` holds one triple `(i, j, B + b)` per entry `(i, j)` with `i` in
//! block `b`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::instance::{block_of, parse_num, significant_lines, OitmInstance, OitmSolution};

pub type Triple = (usize, usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdmInstance {
    n: usize,
    /// Triple -> weight (0 for decision instances).
    triples: BTreeMap<Triple, i64>,
    budget: Option<i64>,
}

impl TdmInstance {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            triples: BTreeMap::new(),
            budget: None,
        }
    }

    pub fn weighted(n: usize, budget: i64) -> Self {
        Self {
            budget: Some(budget),
            ..Self::new(n)
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_weighted(&self) -> bool {
        self.budget.is_some()
    }

    pub fn budget(&self) -> Option<i64> {
        self.budget
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Adds a triple (1-based coordinates); duplicates are rejected.
    pub fn insert(&mut self, t: Triple, weight: i64) -> Result<()> {
        let (i, j, k) = t;
        let r = 1..=self.n;
        if !(r.contains(&i) && r.contains(&j) && r.contains(&k)) {
            return Err(Error::Instance(format!(
                "triple {t:?} outside 1..={}",
                self.n
            )));
        }
        if self.triples.insert(t, weight).is_some() {
            return Err(Error::Instance(format!("duplicate triple {t:?}")));
        }
        Ok(())
    }

    pub fn contains(&self, t: Triple) -> bool {
        self.triples.contains_key(&t)
    }

    pub fn weight(&self, t: Triple) -> Option<i64> {
        self.triples.get(&t).copied()
    }

    pub fn triples(&self) -> impl Iterator<Item = (Triple, i64)> + '_ {
        self.triples.iter().map(|(&t, &w)| (t, w))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = significant_lines(text);
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| parse_err(0, "missing `3dm` header"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let mut inst = match toks.as_slice() {
            ["3dm", n] => Self::new(parse_num(n, lineno)?),
            ["3dm", n, "weighted", b] => {
                Self::weighted(parse_num(n, lineno)?, parse_num(b, lineno)?)
            }
            _ => return Err(parse_err(lineno, format!("bad header `{header}`"))),
        };
        for (lineno, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let (t, w) = match (toks.as_slice(), inst.is_weighted()) {
                ([i, j, k], false) => ((*i, *j, *k), None),
                ([i, j, k, w], true) => ((*i, *j, *k), Some(*w)),
                _ => return Err(parse_err(lineno, format!("bad triple line `{line}`"))),
            };
            let triple = (
                parse_num(t.0, lineno)?,
                parse_num(t.1, lineno)?,
                parse_num(t.2, lineno)?,
            );
            let w = w.map(|w| parse_num(w, lineno)).transpose()?.unwrap_or(0);
            inst.insert(triple, w)
                .map_err(|e| parse_err(lineno, e.to_string()))?;
        }
        Ok(inst)
    }
}

impl fmt::Display for TdmInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.budget {
            Some(b) => writeln!(f, "3dm {} weighted {}", self.n, b)?,
            None => writeln!(f, "3dm {}", self.n)?,
        }
        for ((i, j, k), w) in self.triples() {
            if self.is_weighted() {
                writeln!(f, "{i} {j} {k} {w}")?;
            } else {
                writeln!(f, "{i} {j} {k}")?;
            }
        }
        Ok(())
    }
}

/// A set of triples, sorted by the third coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TdmSolution {
    pub triples: Vec<Triple>,
}

impl fmt::Display for TdmSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j, k) in &self.triples {
            writeln!(f, "{i} {j} {k}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdmReport {
    pub valid: bool,
    pub cost: Option<i64>,
}

/// Checks membership and that every value is used once per coordinate.
pub fn validate_3dm(inst: &TdmInstance, sol: &TdmSolution) -> TdmReport {
    let n = inst.n();
    let mut used = [vec![false; n + 1], vec![false; n + 1], vec![false; n + 1]];
    let mut cost = 0;
    let mut valid = sol.triples.len() == n;
    for &t in &sol.triples {
        let Some(w) = inst.weight(t) else {
            valid = false;
            continue;
        };
        cost += w;
        for (axis, v) in [t.0, t.1, t.2].into_iter().enumerate() {
            if std::mem::replace(&mut used[axis][v], true) {
                valid = false;
            }
        }
    }
    TdmReport {
        valid,
        cost: (valid && inst.is_weighted()).then_some(cost),
    }
}

/// What [`decode_3dm`] needs to map a 3DM solution back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeContext {
    pub blocks: usize,
}

pub fn reduce_to_3dm(inst: &OitmInstance) -> (TdmInstance, DecodeContext) {
    let b = inst.blocks();
    let n = 2 * b;
    let mut out = match inst.budget() {
        Some(budget) => TdmInstance::weighted(n, budget),
        None => TdmInstance::new(n),
    };
    for k in 1..=b {
        for i in [2 * k - 1, 2 * k] {
            out.insert((i, i, k), 0).expect("star triple is new");
        }
    }
    for ((i, j), w) in inst.entries() {
        out.insert((i, j, b + block_of(i)), w)
            .expect("entry triple is new");
    }
    (out, DecodeContext { blocks: b })
}

pub fn decode_3dm(sol: &TdmSolution, ctx: &DecodeContext) -> Result<OitmSolution> {
    let b = ctx.blocks;
    if sol.triples.len() != 2 * b {
        return Err(Error::Dimension {
            expected: 2 * b,
            found: sol.triples.len(),
        });
    }
    let mut sigma = vec![None; b];
    let mut perm = BTreeMap::new();
    for &(i, j, k) in &sol.triples {
        if k <= b {
            if i != j || block_of(i) != k {
                return Err(Error::Consistency(format!(
                    "({i}, {j}, {k}) is not a star triple"
                )));
            }
            // sigma = 1 fixes the odd index
            if sigma[k - 1].replace(i % 2 == 1).is_some() {
                return Err(Error::Consistency(format!("layer {k} used twice")));
            }
        } else if perm.insert(i, j).is_some() {
            return Err(Error::Consistency(format!("row {i} used twice")));
        }
    }
    let sigma = sigma
        .into_iter()
        .enumerate()
        .map(|(k, s)| s.ok_or_else(|| Error::Consistency(format!("layer {} unused", k + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(OitmSolution::new(sigma, perm))
}

/// Exhaustive search layer by layer, third coordinate ascending. Decision
/// instances return the first matching found; weighted ones a minimum-cost
/// matching (first found among ties).
pub fn solve_3dm_bruteforce(inst: &TdmInstance) -> Result<Option<TdmSolution>> {
    const CAP: usize = 8;
    let n = inst.n();
    if n > CAP {
        return Err(Error::ResourceLimit(format!(
            "3DM brute force supports n <= {CAP}, got {n}"
        )));
    }
    let mut layers: Vec<Vec<(Triple, i64)>> = vec![Vec::new(); n + 1];
    for (t, w) in inst.triples() {
        layers[t.2].push((t, w));
    }
    let mut s = BruteState {
        layers,
        weighted: inst.is_weighted(),
        used_i: BTreeSet::new(),
        used_j: BTreeSet::new(),
        chosen: Vec::new(),
        best: None,
    };
    s.go(1, 0);
    Ok(s.best.map(|(triples, _)| TdmSolution { triples }))
}

struct BruteState {
    layers: Vec<Vec<(Triple, i64)>>,
    weighted: bool,
    used_i: BTreeSet<usize>,
    used_j: BTreeSet<usize>,
    chosen: Vec<Triple>,
    best: Option<(Vec<Triple>, i64)>,
}

impl BruteState {
    fn go(&mut self, k: usize, cost: i64) {
        if !self.weighted && self.best.is_some() {
            return;
        }
        if k == self.layers.len() {
            if self.best.as_ref().is_none_or(|(_, c)| cost < *c) {
                self.best = Some((self.chosen.clone(), cost));
            }
            return;
        }
        for idx in 0..self.layers[k].len() {
            let (t, w) = self.layers[k][idx];
            if self.used_i.contains(&t.0) || self.used_j.contains(&t.1) {
                continue;
            }
            self.used_i.insert(t.0);
            self.used_j.insert(t.1);
            self.chosen.push(t);
            self.go(k + 1, cost + w);
            self.chosen.pop();
            self.used_i.remove(&t.0);
            self.used_j.remove(&t.1);
        }
    }
}
