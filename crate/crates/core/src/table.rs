//! Truth tables over `k` literals.
//!
//! Assignment `tau` has code `n'(tau) = sum_i 2^(k-i) [tau_i]`, so `u1` is
//! the most significant digit. The table index `n(T)` sets bit `n'(tau)` for
//! every `tau` in `T`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Largest supported arity.
pub const MAX_ARITY: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    k: usize,
    /// Little-endian words; bit `c` of the table is bit `c % 64` of word `c / 64`.
    words: Vec<u64>,
}

fn check_arity(k: usize) -> Result<()> {
    if (1..=MAX_ARITY).contains(&k) {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "arity must be in 1..={MAX_ARITY}, got {k}"
        )))
    }
}

impl TruthTable {
    /// The empty table.
    pub fn new(k: usize) -> Result<Self> {
        check_arity(k)?;
        let words = (1usize << k).div_ceil(64);
        Ok(Self {
            k,
            words: vec![0; words],
        })
    }

    /// The table containing every assignment.
    pub fn full(k: usize) -> Result<Self> {
        Ok(Self::new(k)?.complement())
    }

    /// Table of the assignments accepted by `f`; `f` receives `tau_1..tau_k`.
    pub fn from_fn(k: usize, mut f: impl FnMut(&[bool]) -> bool) -> Result<Self> {
        let mut t = Self::new(k)?;
        for code in 0..t.size() {
            if f(&t.assignment(code)) {
                t.insert(code);
            }
        }
        Ok(t)
    }

    /// Table with the given `n'` codes.
    pub fn from_codes(k: usize, codes: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut t = Self::new(k)?;
        for c in codes {
            if c >= t.size() {
                return Err(Error::Parameter(format!(
                    "code {c} out of range for arity {k}"
                )));
            }
            t.insert(c);
        }
        Ok(t)
    }

    /// Inverse of [`TruthTable::index`].
    pub fn from_index(k: usize, n: &BigUint) -> Result<Self> {
        let mut t = Self::new(k)?;
        if n.bits() > t.size() as u64 {
            return Err(Error::Parameter(format!(
                "index {n} needs more than 2^{k} bits"
            )));
        }
        for (w, d) in t.words.iter_mut().zip(n.iter_u64_digits()) {
            *w = d;
        }
        Ok(t)
    }

    pub fn from_index_u64(k: usize, n: u64) -> Result<Self> {
        Self::from_index(k, &BigUint::from(n))
    }

    /// `n(T) = sum over tau in T of 2^n'(tau)`.
    pub fn index(&self) -> BigUint {
        let mut bytes = Vec::with_capacity(self.words.len() * 8);
        for w in &self.words {
            bytes.extend_from_slice(&w.to_le_bytes());
        }
        BigUint::from_bytes_le(&bytes)
    }

    /// `n(T)` when it fits in 64 bits (always for `k <= 6`).
    pub fn index_u64(&self) -> Option<u64> {
        if self.words[1..].iter().any(|&w| w != 0) {
            return None;
        }
        Some(self.words[0])
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    /// Number of assignments, `2^k`.
    pub fn size(&self) -> usize {
        1 << self.k
    }

    /// `|T|`.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.size()
    }

    pub fn contains(&self, code: usize) -> bool {
        code < self.size() && self.words[code / 64] >> (code % 64) & 1 == 1
    }

    pub fn contains_assignment(&self, tau: &[bool]) -> bool {
        tau.len() == self.k && self.contains(self.code(tau))
    }

    pub fn insert(&mut self, code: usize) {
        assert!(code < self.size(), "code {code} out of range");
        self.words[code / 64] |= 1 << (code % 64);
    }

    pub fn remove(&mut self, code: usize) {
        assert!(code < self.size(), "code {code} out of range");
        self.words[code / 64] &= !(1 << (code % 64));
    }

    /// Codes in ascending order.
    pub fn codes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.size()).filter(|&c| self.contains(c))
    }

    /// `tau_1..tau_k` of a code.
    pub fn assignment(&self, code: usize) -> Vec<bool> {
        (0..self.k)
            .map(|i| code >> (self.k - 1 - i) & 1 == 1)
            .collect()
    }

    /// `n'(tau)`.
    pub fn code(&self, tau: &[bool]) -> usize {
        debug_assert_eq!(tau.len(), self.k);
        tau.iter().fold(0, |acc, &b| acc << 1 | usize::from(b))
    }

    pub fn complement(&self) -> Self {
        let mut t = self.clone();
        for w in &mut t.words {
            *w = !*w;
        }
        let used = self.size() % 64;
        if used != 0 {
            *t.words.last_mut().expect("non-empty") &= (1u64 << used) - 1;
        }
        t
    }

    /// `R_i(T)`: negate literal `i` (1-based).
    pub fn negate(&self, i: usize) -> Self {
        assert!((1..=self.k).contains(&i), "literal {i} out of range");
        let mask = 1 << (self.k - i);
        let mut t = Self::new(self.k).expect("same arity");
        for c in self.codes() {
            t.insert(c ^ mask);
        }
        t
    }
}

impl PartialOrd for TruthTable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Tables order by arity, then by `n(T)`.
impl Ord for TruthTable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.k
            .cmp(&other.k)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

/// One line per satisfying assignment, `T`/`F` per literal.
impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.codes() {
            let s: String = self
                .assignment(c)
                .iter()
                .map(|&b| if b { 'T' } else { 'F' })
                .collect();
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_of_empty_and_single() {
        assert_eq!(TruthTable::new(4).unwrap().index_u64(), Some(0));
        let t = TruthTable::from_fn(4, |tau| tau.iter().all(|&b| !b)).unwrap();
        assert_eq!(t.index_u64(), Some(1));
    }

    #[test]
    fn entry_8226() {
        let t = TruthTable::from_index_u64(4, 8226).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.codes().collect::<Vec<_>>(), vec![1, 5, 13]);
    }

    #[test]
    fn msb_is_first_literal() {
        let t = TruthTable::from_fn(3, |tau| tau[0]).unwrap();
        assert_eq!(t.codes().collect::<Vec<_>>(), vec![4, 5, 6, 7]);
    }

    #[test]
    fn index_round_trip_wide() {
        let t = TruthTable::from_codes(8, [0, 77, 200, 255]).unwrap();
        let back = TruthTable::from_index(8, &t.index()).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.index_u64(), None);
    }

    #[test]
    fn index_out_of_range() {
        assert!(TruthTable::from_index_u64(2, 16).is_err());
        assert!(TruthTable::from_index_u64(2, 15).is_ok());
        assert!(TruthTable::new(0).is_err());
        assert!(TruthTable::new(17).is_err());
    }

    #[test]
    fn complement_and_negate() {
        let t = TruthTable::from_codes(3, [0, 3]).unwrap();
        assert_eq!(t.complement().len(), 6);
        assert_eq!(t.complement().complement(), t);
        assert_eq!(t.negate(1).codes().collect::<Vec<_>>(), vec![4, 7]);
        assert_eq!(t.negate(3).codes().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn ordering_follows_index() {
        let a = TruthTable::from_index_u64(4, 300).unwrap();
        let b = TruthTable::from_index_u64(4, 8226).unwrap();
        assert!(a < b);
    }

    #[test]
    fn display_lists_assignments() {
        let t = TruthTable::from_codes(2, [1, 2]).unwrap();
        assert_eq!(t.to_string(), "FT\nTF\n");
    }
}
