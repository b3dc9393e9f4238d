//! Candidate universes, candidate subsets, ballots and committees.
//!
//! Candidates are the indices `0..m`. Subsets are stored as bitmasks, so `m`
//! is limited to [`MAX_CANDIDATES`].

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_CANDIDATES: usize = 63;

/// The fixed candidate universe `{0, ..., m-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateSet {
    m: usize,
}

impl CandidateSet {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_CANDIDATES {
            return Err(Error::BadCandidateCount { m, max: MAX_CANDIDATES });
        }
        Ok(CandidateSet { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn all(&self) -> CandSet {
        CandSet((1u64 << self.m) - 1)
    }

    pub fn contains_set(&self, s: CandSet) -> bool {
        s.0 & !self.all().0 == 0
    }

    pub fn check(&self, s: CandSet) -> Result<()> {
        match s.iter().find(|&c| c >= self.m) {
            Some(candidate) => Err(Error::CandidateOutOfRange { candidate, m: self.m }),
            None => Ok(()),
        }
    }

    pub fn same_as(&self, other: &CandidateSet) -> Result<()> {
        if self.m != other.m {
            return Err(Error::MismatchedCandidates { left: self.m, right: other.m });
        }
        Ok(())
    }

    /// All nonempty ballots in canonical order: by size, then lexicographically.
    pub fn ballots(&self) -> Vec<Ballot> {
        let mut all: Vec<Ballot> = (1..=self.all().0).map(|b| Ballot(CandSet(b))).collect();
        all.sort();
        all
    }

    /// All committees of size `k` in canonical order.
    pub fn committees_of_size(&self, k: usize) -> Vec<CandSet> {
        use itertools::Itertools;
        (0..self.m).combinations(k).map(|c| CandSet::from_indices_unchecked(&c)).collect()
    }

    /// All committees of every size, smallest first.
    pub fn all_committees(&self) -> Vec<CandSet> {
        (0..=self.m).flat_map(|k| self.committees_of_size(k)).collect()
    }
}

/// A subset of candidates. Committees are plain candidate subsets.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CandSet(u64);

pub type Committee = CandSet;

impl CandSet {
    pub const EMPTY: CandSet = CandSet(0);

    pub fn from_bits(bits: u64) -> Self {
        CandSet(bits)
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &c in indices {
            if c >= MAX_CANDIDATES {
                return Err(Error::CandidateOutOfRange { candidate: c, m: MAX_CANDIDATES });
            }
            bits |= 1 << c;
        }
        Ok(CandSet(bits))
    }

    pub(crate) fn from_indices_unchecked(indices: &[usize]) -> Self {
        CandSet(indices.iter().fold(0, |acc, &c| acc | (1 << c)))
    }

    pub fn singleton(c: usize) -> Self {
        CandSet(1 << c)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, c: usize) -> bool {
        c < 64 && self.0 & (1 << c) != 0
    }

    pub fn with(&self, c: usize) -> Self {
        CandSet(self.0 | (1 << c))
    }

    pub fn without(&self, c: usize) -> Self {
        CandSet(self.0 & !(1 << c))
    }

    pub fn union(&self, other: CandSet) -> Self {
        CandSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: CandSet) -> Self {
        CandSet(self.0 & other.0)
    }

    pub fn difference(&self, other: CandSet) -> Self {
        CandSet(self.0 & !other.0)
    }

    pub fn is_subset(&self, other: CandSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |&c| bits & (1u64 << c) != 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Candidate names `a`, `b`, ... for human-readable output.
    pub fn letters(&self) -> String {
        let inner: Vec<String> = self.iter().map(candidate_letter).collect();
        format!("{{{}}}", inner.join(","))
    }
}

/// `0 -> a`, `1 -> b`, ...; indices past `z` fall back to `c<i>`.
pub fn candidate_letter(c: usize) -> String {
    if c < 26 {
        ((b'a' + c as u8) as char).to_string()
    } else {
        format!("c{c}")
    }
}

impl Ord for CandSet {
    /// Canonical order: by size, then lexicographically by sorted members.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for CandSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CandSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters())
    }
}

/// A nonempty approval ballot.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ballot(CandSet);

impl Ballot {
    pub fn new(approved: CandSet) -> Result<Self> {
        if approved.is_empty() {
            return Err(Error::EmptyBallot);
        }
        Ok(Ballot(approved))
    }

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        Ballot::new(CandSet::from_indices(indices)?)
    }

    pub fn approved(&self) -> CandSet {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, c: usize) -> bool {
        self.0.contains(c)
    }

    /// `|A_i ∩ W|`.
    pub fn overlap(&self, w: Committee) -> usize {
        self.0.intersection(w).len()
    }
}

impl fmt::Debug for Ballot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.letters())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ballots_are_nonempty() {
        assert_eq!(Ballot::new(CandSet::EMPTY), Err(Error::EmptyBallot));
        assert!(Ballot::from_indices(&[0, 2]).is_ok());
    }

    #[test]
    fn canonical_ballot_order() {
        let cs = CandidateSet::new(3).unwrap();
        let order: Vec<String> = cs.ballots().iter().map(|b| b.approved().letters()).collect();
        assert_eq!(order, ["{a}", "{b}", "{c}", "{a,b}", "{a,c}", "{b,c}", "{a,b,c}"]);
    }

    #[test]
    fn committees_of_size() {
        let cs = CandidateSet::new(4).unwrap();
        assert_eq!(cs.committees_of_size(0), vec![CandSet::EMPTY]);
        assert_eq!(cs.committees_of_size(2).len(), 6);
        assert_eq!(cs.all_committees().len(), 16);
    }

    #[test]
    fn universe_bounds() {
        assert!(CandidateSet::new(0).is_err());
        assert!(CandidateSet::new(64).is_err());
        let cs = CandidateSet::new(2).unwrap();
        assert_eq!(
            cs.check(CandSet::from_indices(&[2]).unwrap()),
            Err(Error::CandidateOutOfRange { candidate: 2, m: 2 })
        );
    }

    #[test]
    fn set_ops() {
        let a = CandSet::from_indices(&[0, 1]).unwrap();
        let b = CandSet::from_indices(&[1, 2]).unwrap();
        assert_eq!(a.intersection(b), CandSet::singleton(1));
        assert_eq!(a.union(b).len(), 3);
        assert_eq!(a.difference(b), CandSet::singleton(0));
        assert!(CandSet::singleton(1).is_subset(a));
        assert_eq!(a.with(3).without(0).to_vec(), vec![1, 3]);
    }
}
