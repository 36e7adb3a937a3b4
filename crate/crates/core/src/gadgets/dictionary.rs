//! The clause dictionary: one encoding matrix per gauge class of 4-literal
//! tables.
//!
//! Text format, one entry per line:
//! `<|T|> <signature> <n(T)> <r1> .. <r2k> <ones> [note]`, where each `r` is
//! a matrix row read as a binary number with column 1 most significant.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;

use crate::classify::{apply_gauge, triviality, GaugeElement, GaugeGroup, Rule};
use crate::error::{parse_err, Error, Result};
use crate::instance::{parse_num, significant_lines};
use crate::table::TruthTable;

use super::matrix::{negate_literal, truth_table_of, GadgetMatrix};

const BUILTIN: &str = include_str!("../../data/dictionary_k4.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DictEntry {
    pub t_size: usize,
    pub signature: BigInt,
    pub table_index: u64,
    pub row_bytes: Vec<u64>,
    pub ones: usize,
    pub annotation: Option<String>,
}

impl DictEntry {
    pub fn arity(&self) -> usize {
        self.row_bytes.len() / 2
    }

    pub fn popcount(&self) -> usize {
        self.row_bytes.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn matrix(&self) -> Result<GadgetMatrix> {
        GadgetMatrix::from_row_bytes(self.arity(), &self.row_bytes)
    }

    /// The declared table `n(T)`.
    pub fn table(&self) -> Result<TruthTable> {
        TruthTable::from_index_u64(self.arity(), self.table_index)
    }

    fn parse_line(lineno: usize, line: &str) -> Result<Self> {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let numeric = tokens
            .iter()
            .take_while(|t| t.parse::<i128>().is_ok())
            .count();
        // |T|, signature, n(T), 2k rows, ones
        if numeric < 6 || (numeric - 4) % 2 != 0 {
            return Err(parse_err(lineno, "expected |T| signature n(T) rows.. ones"));
        }
        let signature = tokens[1]
            .parse::<BigInt>()
            .map_err(|e| parse_err(lineno, format!("bad signature: {e}")))?;
        let row_bytes = tokens[3..numeric - 1]
            .iter()
            .map(|t| parse_num::<u64>(t, lineno))
            .collect::<Result<Vec<_>>>()?;
        let note = tokens[numeric..].join(" ");
        let entry = Self {
            t_size: parse_num(tokens[0], lineno)?,
            signature,
            table_index: parse_num(tokens[2], lineno)?,
            row_bytes,
            ones: parse_num(tokens[numeric - 1], lineno)?,
            annotation: (!note.is_empty()).then_some(note),
        };
        let k = entry.arity();
        if entry.row_bytes.iter().any(|&r| r >> (2 * k) != 0) {
            return Err(parse_err(lineno, "row value wider than 2k columns"));
        }
        if entry.popcount() != entry.ones {
            return Err(parse_err(
                lineno,
                format!(
                    "rows hold {} ones, entry declares {}",
                    entry.popcount(),
                    entry.ones
                ),
            ));
        }
        let table = entry
            .table()
            .map_err(|e| parse_err(lineno, e.to_string()))?;
        if table.len() != entry.t_size {
            return Err(parse_err(
                lineno,
                format!(
                    "n(T) has {} assignments, entry declares {}",
                    table.len(),
                    entry.t_size
                ),
            ));
        }
        Ok(entry)
    }
}

#[derive(Debug, Clone)]
pub struct Dictionary {
    entries: Vec<DictEntry>,
    /// Canonical index of each declared table -> entry position.
    by_class: BTreeMap<(usize, u64), usize>,
    groups: BTreeMap<usize, GaugeGroup>,
}

impl Dictionary {
    pub fn parse(text: &str) -> Result<Self> {
        let entries = significant_lines(text)
            .map(|(n, line)| DictEntry::parse_line(n, line))
            .collect::<Result<Vec<_>>>()?;
        let mut groups = BTreeMap::new();
        let mut by_class = BTreeMap::new();
        for (pos, e) in entries.iter().enumerate() {
            let k = e.arity();
            if let Entry::Vacant(slot) = groups.entry(k) {
                slot.insert(GaugeGroup::new(k)?);
            }
            let canon = groups[&k].canonical(&e.table()?);
            let key = (k, canon.index_u64().expect("small arity"));
            by_class.entry(key).or_insert(pos);
        }
        Ok(Self {
            entries,
            by_class,
            groups,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Dictionary(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The shipped 4-literal dictionary.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("shipped dictionary parses")
    }

    pub fn entries(&self) -> &[DictEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The entry covering the gauge class of `t`, if any.
    pub fn lookup(&self, t: &TruthTable) -> Option<&DictEntry> {
        let group = self.groups.get(&t.arity())?;
        let canon = group.canonical(t).index_u64()?;
        self.by_class
            .get(&(t.arity(), canon))
            .map(|&pos| &self.entries[pos])
    }

    /// A matrix whose table is exactly `t`, obtained by moving the entry's
    /// matrix along the gauge element that maps its table onto `t`.
    ///
    /// `Ok(None)` if no entry covers the class; an error if the entry's
    /// matrix does not realize its class.
    pub fn realize(&self, t: &TruthTable) -> Result<Option<GadgetMatrix>> {
        let Some(entry) = self.lookup(t) else {
            return Ok(None);
        };
        let m = entry.matrix()?;
        let have = truth_table_of(&m)?;
        let k = t.arity();
        for g in GaugeElement::all(k)? {
            if apply_gauge(&g, &have) == *t {
                let out = apply_gauge_to_matrix(&g, &m)?;
                debug_assert_eq!(truth_table_of(&out)?, *t);
                return Ok(Some(out));
            }
        }
        Err(Error::Dictionary(format!(
            "entry {} does not realize the class of its table",
            entry.table_index
        )))
    }
}

/// The matrix realizing `g(T)` when `m` realizes `T`: negate the flipped
/// literals, then move block `i` to block `perm[i]`.
pub fn apply_gauge_to_matrix(g: &GaugeElement, m: &GadgetMatrix) -> Result<GadgetMatrix> {
    let k = m.arity();
    let mut neg = m.clone();
    for (i, &f) in g.flips().iter().enumerate() {
        if f {
            neg = negate_literal(&neg, i + 1)?;
        }
    }
    let map = |x: usize| {
        let b = (x - 1) / 2;
        2 * g.perm()[b] + 1 + (x - 1) % 2
    };
    let mut out = GadgetMatrix::new(k)?;
    for (r, c) in neg.entries() {
        out.set(map(r), map(c), true);
    }
    Ok(out)
}

/// The triviality note derived from a table: rules 3 to 5 only, as the
/// dictionary excludes empty and full tables.
pub fn annotation_of(t: &TruthTable) -> Option<String> {
    triviality(t)
        .filter(|r| !matches!(r, Rule::Rule1 | Rule::Rule2))
        .map(|r| r.to_string())
}
