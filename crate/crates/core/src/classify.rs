//! Gauge classes of truth tables, triviality rules and the algebraic
//! signature.
//!
//! The gauge group `S_k x Z_2^k` relabels and negates literals. Each class
//! is represented by its member of lowest index `n(T)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::table::TruthTable;

/// Largest arity for which whole gauge groups are enumerated.
pub const MAX_GAUGE_ARITY: usize = 6;

pub fn table_index(t: &TruthTable) -> BigUint {
    t.index()
}

pub fn table_from_index(k: usize, n: &BigUint) -> Result<TruthTable> {
    TruthTable::from_index(k, n)
}

/// A relabeling-plus-negation of literals: literal `i` (0-based) moves to
/// position `perm[i]` after being negated when `flips[i]` is set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaugeElement {
    perm: Vec<usize>,
    flips: Vec<bool>,
}

impl GaugeElement {
    pub fn new(perm: Vec<usize>, flips: Vec<bool>) -> Result<Self> {
        let k = perm.len();
        let mut seen = vec![false; k];
        for &p in &perm {
            if p >= k || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Parameter(format!("{perm:?} is not a permutation")));
            }
        }
        if flips.len() != k {
            return Err(Error::Dimension {
                expected: k,
                found: flips.len(),
            });
        }
        Ok(Self { perm, flips })
    }

    pub fn identity(k: usize) -> Self {
        Self {
            perm: (0..k).collect(),
            flips: vec![false; k],
        }
    }

    /// `R_i`, negation of literal `i` (1-based).
    pub fn negation(k: usize, i: usize) -> Self {
        let mut g = Self::identity(k);
        g.flips[i - 1] = true;
        g
    }

    pub fn arity(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn flips(&self) -> &[bool] {
        &self.flips
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.arity(), other.arity(), "arity mismatch");
        let k = self.arity();
        let perm = (0..k).map(|i| self.perm[other.perm[i]]).collect();
        let flips = (0..k)
            .map(|i| other.flips[i] ^ self.flips[other.perm[i]])
            .collect();
        Self { perm, flips }
    }

    pub fn inverse(&self) -> Self {
        let k = self.arity();
        let mut perm = vec![0; k];
        let mut flips = vec![false; k];
        for i in 0..k {
            perm[self.perm[i]] = i;
            flips[self.perm[i]] = self.flips[i];
        }
        Self { perm, flips }
    }

    /// Image of the assignment `tau`.
    pub fn apply_assignment(&self, tau: &[bool]) -> Vec<bool> {
        let mut out = vec![false; tau.len()];
        for (i, &t) in tau.iter().enumerate() {
            out[self.perm[i]] = t ^ self.flips[i];
        }
        out
    }

    /// Image of every code `0..2^k`.
    fn code_map(&self) -> Vec<usize> {
        let k = self.arity();
        (0..1usize << k)
            .map(|code| {
                let mut out = 0;
                for i in 0..k {
                    let bit = (code >> (k - 1 - i) & 1 == 1) ^ self.flips[i];
                    if bit {
                        out |= 1 << (k - 1 - self.perm[i]);
                    }
                }
                out
            })
            .collect()
    }

    /// Every element of `S_k x Z_2^k`.
    pub fn all(k: usize) -> Result<Vec<Self>> {
        check_gauge_arity(k)?;
        let mut out = Vec::new();
        for perm in crate::solver::permutations(k) {
            for mask in 0u32..1 << k {
                out.push(Self {
                    perm: perm.clone(),
                    flips: (0..k).map(|i| mask >> i & 1 == 1).collect(),
                });
            }
        }
        Ok(out)
    }
}

fn check_gauge_arity(k: usize) -> Result<()> {
    if (1..=MAX_GAUGE_ARITY).contains(&k) {
        Ok(())
    } else {
        Err(Error::ResourceLimit(format!(
            "gauge enumeration supports arity 1..={MAX_GAUGE_ARITY}, got {k}"
        )))
    }
}

pub fn apply_gauge(g: &GaugeElement, t: &TruthTable) -> TruthTable {
    assert_eq!(g.arity(), t.arity(), "arity mismatch");
    let mut out = TruthTable::new(t.arity()).expect("valid arity");
    for c in t.codes() {
        out.insert(t.code(&g.apply_assignment(&t.assignment(c))));
    }
    out
}

/// The whole gauge group of one arity, with precomputed code maps.
#[derive(Debug, Clone)]
pub struct GaugeGroup {
    k: usize,
    maps: Vec<Vec<usize>>,
}

impl GaugeGroup {
    pub fn new(k: usize) -> Result<Self> {
        let maps = GaugeElement::all(k)?
            .iter()
            .map(GaugeElement::code_map)
            .collect();
        Ok(Self { k, maps })
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    fn image(&self, map: &[usize], t: &TruthTable) -> TruthTable {
        let mut out = TruthTable::new(self.k).expect("valid arity");
        for c in t.codes() {
            out.insert(map[c]);
        }
        out
    }

    pub fn orbit(&self, t: &TruthTable) -> BTreeSet<TruthTable> {
        assert_eq!(t.arity(), self.k, "arity mismatch");
        self.maps.iter().map(|m| self.image(m, t)).collect()
    }

    pub fn canonical(&self, t: &TruthTable) -> TruthTable {
        assert_eq!(t.arity(), self.k, "arity mismatch");
        self.maps
            .iter()
            .map(|m| self.image(m, t))
            .min()
            .expect("group is non-empty")
    }

    /// Every class of the arity, as `(canonical table, orbit size)`, in
    /// ascending canonical index. Requires `k <= 4`.
    pub fn classes(&self) -> Result<Vec<(TruthTable, usize)>> {
        if self.k > 4 {
            return Err(Error::ResourceLimit(format!(
                "class enumeration supports arity <= 4, got {}",
                self.k
            )));
        }
        let total = 1usize << (1 << self.k);
        let mut seen = vec![false; total];
        let mut out = Vec::new();
        for n in 0..total {
            if seen[n] {
                continue;
            }
            let t = TruthTable::from_index_u64(self.k, n as u64)?;
            let orbit = self.orbit(&t);
            for member in &orbit {
                seen[member.index_u64().expect("k <= 4") as usize] = true;
            }
            out.push((t, orbit.len()));
        }
        Ok(out)
    }
}

pub fn gauge_orbit(t: &TruthTable) -> Result<BTreeSet<TruthTable>> {
    Ok(GaugeGroup::new(t.arity())?.orbit(t))
}

/// Orbit member with the lowest index.
pub fn canonical(t: &TruthTable) -> Result<TruthTable> {
    Ok(GaugeGroup::new(t.arity())?.canonical(t))
}

/// Reasons for a clause to be trivial; literal indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Never satisfied.
    Rule1,
    /// Always satisfied.
    Rule2,
    /// The literal does not matter.
    Rule3 { literal: usize },
    /// The literal is forced.
    Rule4 { literal: usize, value: bool },
    /// The xor of two literals is forced.
    Rule5 {
        first: usize,
        second: usize,
        parity: bool,
    },
}

impl Rule {
    pub fn number(&self) -> u8 {
        match self {
            Self::Rule1 => 1,
            Self::Rule2 => 2,
            Self::Rule3 { .. } => 3,
            Self::Rule4 { .. } => 4,
            Self::Rule5 { .. } => 5,
        }
    }
}

fn truth(b: bool) -> &'static str {
    if b {
        "True"
    } else {
        "False"
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Rule1 => write!(f, "R1: T is empty"),
            Self::Rule2 => write!(f, "R2: T is full"),
            Self::Rule3 { literal } => write!(f, "R3: u{literal} not in C"),
            Self::Rule4 { literal, value } => write!(f, "R4: u{literal} = {}", truth(value)),
            Self::Rule5 {
                first,
                second,
                parity,
            } => write!(f, "R5: u{first} xor u{second} = {}", truth(parity)),
        }
    }
}

/// The lowest-numbered applicable rule, lowest literal indices first.
pub fn triviality(t: &TruthTable) -> Option<Rule> {
    let k = t.arity();
    if t.is_empty() {
        return Some(Rule::Rule1);
    }
    if t.is_full() {
        return Some(Rule::Rule2);
    }
    if let Some(literal) = (1..=k).find(|&i| t.negate(i) == *t) {
        return Some(Rule::Rule3 { literal });
    }
    let rows: Vec<Vec<bool>> = t.codes().map(|c| t.assignment(c)).collect();
    for i in 0..k {
        let v = rows[0][i];
        if rows.iter().all(|r| r[i] == v) {
            return Some(Rule::Rule4 {
                literal: i + 1,
                value: v,
            });
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let p = rows[0][i] ^ rows[0][j];
            if rows.iter().all(|r| r[i] ^ r[j] == p) {
                return Some(Rule::Rule5 {
                    first: i + 1,
                    second: j + 1,
                    parity: p,
                });
            }
        }
    }
    None
}

/// The kernel values `r(d)` as integers over `10^18`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureConstants {
    values: Vec<BigInt>,
}

impl SignatureConstants {
    pub const SCALE_DIGITS: u32 = 18;

    /// `r(0..=d)` from integers scaled by `10^18`.
    pub fn new(values: Vec<BigInt>) -> Self {
        Self { values }
    }

    /// Largest distance covered.
    pub fn max_distance(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, d: usize) -> Option<&BigInt> {
        self.values.get(d)
    }
}

impl Default for SignatureConstants {
    fn default() -> Self {
        let v = [
            1_000_000_000_000_000_000i64,
            831_907_372_580_707_469,
            -577_215_664_901_532_861,
            367_879_441_171_442_322,
            -318_309_886_183_790_672,
        ];
        Self::new(v.iter().map(|&x| BigInt::from(x)).collect())
    }
}

/// Exact determinant of an integer matrix (fraction-free elimination).
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for p in 0..n {
        if m[p][p].is_zero() {
            let Some(r) = (p + 1..n).find(|&r| !m[r][p].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(p, r);
            sign = !sign;
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let v = &m[i][j] * &m[p][p] - &m[i][p] * &m[p][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[p][p].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// `floor(10^16 det M)` with `M_{tau,tau'} = r(d(tau, tau'))` over `T`, or
/// over its complement when `|T| > 2^(k-1)`.
pub fn signature(t: &TruthTable) -> Result<BigInt> {
    signature_with(t, &SignatureConstants::default())
}

pub fn signature_with(t: &TruthTable, r: &SignatureConstants) -> Result<BigInt> {
    let eff = if t.len() > t.size() / 2 {
        t.complement()
    } else {
        t.clone()
    };
    let codes: Vec<usize> = eff.codes().collect();
    let n = codes.len();
    let mut m = Vec::with_capacity(n);
    for &a in &codes {
        let mut row = Vec::with_capacity(n);
        for &b in &codes {
            let d = (a ^ b).count_ones() as usize;
            let v = r.value(d).ok_or_else(|| {
                Error::Parameter(format!(
                    "no signature constant for distance {d} (have up to {})",
                    r.max_distance()
                ))
            })?;
            row.push(v.clone());
        }
        m.push(row);
    }
    let det = bareiss_determinant(m);
    let scale = BigInt::from(10u32).pow(SignatureConstants::SCALE_DIGITS * n as u32);
    Ok((det * BigInt::from(10u64.pow(16))).div_floor(&scale))
}

/// `|a - b| <= |b| 10^-12 + 1`, with `b` the reference value.
pub fn within_tolerance(a: &BigInt, b: &BigInt) -> bool {
    let diff = (a - b).abs() * BigInt::from(10u64.pow(12));
    diff <= b.abs() + BigInt::from(10u64.pow(12))
}

/// Result of the class discrimination audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub arity: usize,
    pub classes: usize,
    /// Classes considered: `3 <= |T| <= 2^k - 3`.
    pub audited: usize,
    /// `(|T_eff|, signature)` keys shared by several classes, with the
    /// canonical indices sharing them.
    pub collisions: Vec<((usize, BigInt), Vec<BigUint>)>,
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "arity {}: {} classes, {} audited, {} colliding keys",
            self.arity,
            self.classes,
            self.audited,
            self.collisions.len()
        )?;
        for ((size, sig), members) in &self.collisions {
            let list: Vec<String> = members.iter().map(ToString::to_string).collect();
            writeln!(f, "  |T_eff| = {size}, signature {sig}: {}", list.join(" "))?;
        }
        Ok(())
    }
}

/// Groups all classes of arity `k <= 4` with `3 <= |T| <= 2^k - 3` by
/// `(|T_eff|, signature)` and lists the keys shared by classes that are not
/// complements of each other (complement classes share a key by
/// construction). Members are listed by canonical index.
pub fn discrimination_audit(k: usize) -> Result<AuditReport> {
    let group = GaugeGroup::new(k)?;
    let classes = group.classes()?;
    let size = 1usize << k;
    let mut keys: BTreeMap<(usize, BigInt), BTreeMap<TruthTable, Vec<BigUint>>> = BTreeMap::new();
    let mut audited = 0;
    for (t, _) in &classes {
        let len = t.len();
        if len < 3 || len > size - 3 {
            continue;
        }
        audited += 1;
        let pair = t.clone().min(group.canonical(&t.complement()));
        keys.entry((len.min(size - len), signature(t)?))
            .or_default()
            .entry(pair)
            .or_default()
            .push(t.index());
    }
    let collisions = keys
        .into_iter()
        .filter(|(_, pairs)| pairs.len() > 1)
        .map(|(key, pairs)| (key, pairs.into_values().flatten().collect()))
        .collect();
    Ok(AuditReport {
        arity: k,
        classes: classes.len(),
        audited,
        collisions,
    })
}
