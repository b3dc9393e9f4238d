//! Approval profiles and the profile algebra: disjoint sums, replication,
//! candidate permutations and symmetrization.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::sets::{Ballot, CandSet, CandidateSet, Committee};

/// Default cap on `(m - |fixed|)! * n` for [`Profile::symmetrize`].
pub const DEFAULT_SYMMETRIZE_CAP: u128 = 10_000;

/// A nonempty map from positive voter ids to ballots over a shared
/// candidate set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    candidates: CandidateSet,
    votes: BTreeMap<u32, Ballot>,
}

impl Profile {
    pub fn new(candidates: CandidateSet, votes: BTreeMap<u32, Ballot>) -> Result<Self> {
        if votes.is_empty() {
            return Err(Error::EmptyProfile);
        }
        if votes.contains_key(&0) {
            return Err(Error::InvalidVoterId);
        }
        for ballot in votes.values() {
            candidates.check(ballot.approved())?;
        }
        Ok(Profile { candidates, votes })
    }

    /// Voters get ids `1..=n` in the given order.
    pub fn from_ballots(candidates: CandidateSet, ballots: impl IntoIterator<Item = Ballot>) -> Result<Self> {
        let votes = ballots.into_iter().enumerate().map(|(i, b)| (i as u32 + 1, b)).collect();
        Profile::new(candidates, votes)
    }

    /// Builds a profile from `(count, approved candidates)` groups, assigning
    /// ids `1..=n` group by group.
    pub fn from_counts(m: usize, groups: &[(usize, &[usize])]) -> Result<Self> {
        let candidates = CandidateSet::new(m)?;
        let mut ballots = Vec::new();
        for &(count, approved) in groups {
            let ballot = Ballot::from_indices(approved)?;
            ballots.extend(std::iter::repeat_n(ballot, count));
        }
        Profile::from_ballots(candidates, ballots)
    }

    pub fn candidates(&self) -> CandidateSet {
        self.candidates
    }

    pub fn m(&self) -> usize {
        self.candidates.m()
    }

    pub fn len(&self) -> usize {
        self.votes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn votes(&self) -> &BTreeMap<u32, Ballot> {
        &self.votes
    }

    pub fn ballots(&self) -> impl Iterator<Item = &Ballot> + '_ {
        self.votes.values()
    }

    pub fn voter_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.votes.keys().copied()
    }

    pub fn max_voter_id(&self) -> u32 {
        *self.votes.keys().next_back().expect("profiles are nonempty")
    }

    /// Anonymous view: ballot multiplicities.
    pub fn ballot_counts(&self) -> BTreeMap<Ballot, usize> {
        let mut counts = BTreeMap::new();
        for b in self.votes.values() {
            *counts.entry(*b).or_insert(0) += 1;
        }
        counts
    }

    /// Sorted ballot multiset; equal keys means anonymously equal profiles.
    pub fn anonymous_key(&self) -> Vec<Ballot> {
        let mut key: Vec<Ballot> = self.votes.values().copied().collect();
        key.sort();
        key
    }

    /// Human-readable multiset, e.g. `3×{a,b} + 1×{c}`.
    pub fn summary(&self) -> String {
        self.ballot_counts()
            .iter()
            .map(|(b, n)| format!("{n}×{}", b.approved().letters()))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Multiset equality of ballots, the equality used for rule semantics.
    pub fn anon_eq(&self, other: &Profile) -> bool {
        self.candidates == other.candidates && self.anonymous_key() == other.anonymous_key()
    }

    /// `C_A`, the candidates approved by at least one voter.
    pub fn support(&self) -> CandSet {
        self.votes.values().fold(CandSet::EMPTY, |acc, b| acc.union(b.approved()))
    }

    pub fn approval_score(&self, c: usize) -> usize {
        self.votes.values().filter(|b| b.contains(c)).count()
    }

    /// Number of voters whose ballot is exactly `{c}`.
    pub fn singleton_reports(&self, c: usize) -> usize {
        let target = CandSet::singleton(c);
        self.votes.values().filter(|b| b.approved() == target).count()
    }

    /// Disjoint union `A + A'`; overlapping voter ids are an error.
    pub fn sum(&self, other: &Profile) -> Result<Profile> {
        self.candidates.same_as(&other.candidates)?;
        let mut votes = self.votes.clone();
        for (&id, &ballot) in &other.votes {
            if votes.insert(id, ballot).is_some() {
                return Err(Error::OverlappingVoters(id));
            }
        }
        Ok(Profile { candidates: self.candidates, votes })
    }

    /// Same ballots in id order, renumbered to `first, first+1, ...`.
    pub fn relabeled_from(&self, first: u32) -> Profile {
        let votes = self.votes.values().enumerate().map(|(i, &b)| (first + i as u32, b)).collect();
        Profile { candidates: self.candidates, votes }
    }

    /// `self + other` after moving `other` onto ids above `self`'s.
    pub fn sum_fresh(&self, other: &Profile) -> Result<Profile> {
        self.sum(&other.relabeled_from(self.max_voter_id() + 1))
    }

    /// `jA`: `j` disjoint copies. The first copy keeps the original ids;
    /// copy `t` shifts every id by `t * max_id`.
    pub fn scale(&self, j: usize) -> Result<Profile> {
        if j == 0 {
            return Err(Error::InvalidScalar);
        }
        let stride = self.max_voter_id();
        let mut votes = BTreeMap::new();
        for t in 0..j as u32 {
            for (&id, &b) in &self.votes {
                votes.insert(id + t * stride, b);
            }
        }
        Ok(Profile { candidates: self.candidates, votes })
    }

    /// `τ(A)`: same voters, each ballot mapped pointwise.
    pub fn permute_candidates(&self, tau: &CandidatePermutation) -> Result<Profile> {
        if tau.m() != self.m() {
            return Err(Error::MismatchedCandidates { left: self.m(), right: tau.m() });
        }
        let votes = self
            .votes
            .iter()
            .map(|(&id, b)| (id, Ballot::new(tau.apply_set(b.approved())).expect("bijection keeps ballots nonempty")))
            .collect();
        Ok(Profile { candidates: self.candidates, votes })
    }

    /// `π(A)`: voter `i` becomes voter `pi(i)`. `pi` must be injective on
    /// the voters and map into positive ids.
    pub fn permute_voters(&self, pi: impl Fn(u32) -> u32) -> Result<Profile> {
        let mut votes = BTreeMap::new();
        for (&id, &b) in &self.votes {
            let new_id = pi(id);
            if new_id == 0 {
                return Err(Error::InvalidVoterId);
            }
            if votes.insert(new_id, b).is_some() {
                return Err(Error::OverlappingVoters(new_id));
            }
        }
        Ok(Profile { candidates: self.candidates, votes })
    }

    /// Disjoint sum of `τ(A)` over every permutation `τ` fixing each member
    /// of `fixed`, which makes all candidates outside `fixed` symmetric.
    pub fn symmetrize(&self, fixed: Committee, cap: u128) -> Result<Profile> {
        self.candidates.check(fixed)?;
        let free: Vec<usize> = self.candidates.all().difference(fixed).to_vec();
        let count = factorial(free.len()).saturating_mul(self.len() as u128);
        if count > cap {
            return Err(Error::SizeCap { what: "symmetrized profile", size: count, cap });
        }
        let m = self.m();
        let mut votes = BTreeMap::new();
        let mut next_id = 1u32;
        for image in free.iter().copied().permutations(free.len()) {
            let mut map: Vec<usize> = (0..m).collect();
            for (&from, &to) in free.iter().zip(&image) {
                map[from] = to;
            }
            let tau = CandidatePermutation::new(map)?;
            for b in self.votes.values() {
                votes.insert(next_id, Ballot::new(tau.apply_set(b.approved()))?);
                next_id += 1;
            }
        }
        Ok(Profile { candidates: self.candidates, votes })
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, x| acc.saturating_mul(x))
}

impl std::fmt::Debug for Profile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.votes.iter()).finish()
    }
}

/// A bijection on `0..m`, stored as the image of each candidate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CandidatePermutation {
    images: Vec<usize>,
}

impl CandidatePermutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x >= m {
                return Err(Error::NotAPermutation { m, detail: format!("image {x} out of range") });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPermutation { m, detail: format!("image {x} repeated") });
            }
        }
        Ok(CandidatePermutation { images })
    }

    pub fn identity(m: usize) -> Self {
        CandidatePermutation { images: (0..m).collect() }
    }

    pub fn swap(m: usize, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..m).collect();
        if a >= m || b >= m {
            return Err(Error::NotAPermutation { m, detail: format!("cannot swap {a} and {b}") });
        }
        images.swap(a, b);
        Ok(CandidatePermutation { images })
    }

    /// Every permutation of `0..m` in lexicographic order.
    pub fn all(m: usize) -> impl Iterator<Item = CandidatePermutation> {
        (0..m).permutations(m).map(|images| CandidatePermutation { images })
    }

    pub fn m(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, c: usize) -> usize {
        self.images[c]
    }

    pub fn apply_set(&self, s: CandSet) -> CandSet {
        s.iter().fold(CandSet::EMPTY, |acc, c| acc.with(self.images[c]))
    }

    pub fn inverse(&self) -> CandidatePermutation {
        let mut images = vec![0; self.images.len()];
        for (from, &to) in self.images.iter().enumerate() {
            images[to] = from;
        }
        CandidatePermutation { images }
    }
}
