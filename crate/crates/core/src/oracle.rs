//! Brute-force ground truth: exhaustive profile enumeration, optimizing
//! rules, and rule comparison.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::counting::{committee_score, Valuation};
use crate::engine::Rule;
use crate::error::{Error, Result};
use crate::family::CommitteeFamily;
use crate::profile::Profile;
use crate::rational::Rational;
use crate::sets::{CandidateSet, Committee};

pub const DEFAULT_COMMITTEE_CAP: u128 = 1_000_000;
pub const DEFAULT_UNIVERSE_CAP: u128 = 1_000_000;

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of anonymous profiles with `n` voters over `m` candidates:
/// multisets of size `n` over the `2^m - 1` nonempty ballots.
pub fn multiset_count(m: usize, n: usize) -> u128 {
    let ballots = (1u128 << m) - 1;
    binomial(ballots + n as u128 - 1, n as u128)
}

/// All anonymous profiles over `m` candidates with between `min_voters` and
/// `max_voters` voters, in canonical order: by voter count, then
/// lexicographically as sorted ballot sequences. Voter ids are `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileUniverse {
    candidates: CandidateSet,
    min_voters: usize,
    max_voters: usize,
}

impl ProfileUniverse {
    pub fn new(m: usize, max_voters: usize) -> Result<Self> {
        Ok(ProfileUniverse { candidates: CandidateSet::new(m)?, min_voters: 1, max_voters })
    }

    pub fn exactly(m: usize, voters: usize) -> Result<Self> {
        Ok(ProfileUniverse { candidates: CandidateSet::new(m)?, min_voters: voters.max(1), max_voters: voters })
    }

    pub fn m(&self) -> usize {
        self.candidates.m()
    }

    pub fn max_voters(&self) -> usize {
        self.max_voters
    }

    pub fn count(&self) -> u128 {
        (self.min_voters..=self.max_voters).map(|n| multiset_count(self.m(), n)).sum()
    }

    /// The profiles, without a size check.
    pub fn iter(&self) -> impl Iterator<Item = Profile> {
        let candidates = self.candidates;
        let ballots = candidates.ballots();
        (self.min_voters..=self.max_voters).flat_map(move |n| {
            ballots
                .clone()
                .into_iter()
                .combinations_with_replacement(n)
                .map(move |combo| Profile::from_ballots(candidates, combo).expect("n >= 1 canonical ballots"))
        })
    }
}

/// [`ProfileUniverse::iter`], refusing universes above [`DEFAULT_UNIVERSE_CAP`].
pub fn enumerate_profiles(u: &ProfileUniverse) -> Result<impl Iterator<Item = Profile>> {
    let size = u.count();
    if size > DEFAULT_UNIVERSE_CAP {
        return Err(Error::SizeCap { what: "profile universe", size, cap: DEFAULT_UNIVERSE_CAP });
    }
    Ok(u.iter())
}

/// The committees of size `k` maximizing `s_v(A, W)`.
pub fn brute_force_optimal(v: &Valuation, a: &Profile, k: usize) -> Result<CommitteeFamily> {
    brute_force_optimal_with_cap(v, a, k, DEFAULT_COMMITTEE_CAP)
}

pub fn brute_force_optimal_with_cap(v: &Valuation, a: &Profile, k: usize, cap: u128) -> Result<CommitteeFamily> {
    let m = a.m();
    if k > m {
        return Err(Error::CommitteeTooLarge { k, m });
    }
    v.check_compatible(m)?;
    let size = binomial(m as u128, k as u128);
    if size > cap {
        return Err(Error::SizeCap { what: "committees of size k", size, cap });
    }
    let mut best: Option<Rational> = None;
    let mut winners = Vec::new();
    for w in a.candidates().committees_of_size(k) {
        let s = committee_score(v, a, w)?;
        match best.as_ref().map(|b| s.cmp(b)) {
            None | Some(std::cmp::Ordering::Greater) => {
                best = Some(s);
                winners = vec![w];
            }
            Some(std::cmp::Ordering::Equal) => winners.push(w),
            Some(std::cmp::Ordering::Less) => {}
        }
    }
    CommitteeFamily::new(a.candidates(), k, winners)
}

/// The size-`k` committees whose members all have approval score at least
/// that of every non-member.
pub fn top_k_by_approval(a: &Profile, k: usize) -> Result<CommitteeFamily> {
    let cs = a.candidates();
    let winners = cs.committees_of_size(k).into_iter().filter(|w| {
        let lowest_in = w.iter().map(|c| a.approval_score(c)).min();
        let highest_out = cs.all().difference(*w).iter().map(|c| a.approval_score(c)).max();
        match (lowest_in, highest_out) {
            (Some(lo), Some(hi)) => lo >= hi,
            _ => true,
        }
    });
    CommitteeFamily::new(cs, k, winners)
}

/// End points of every greedy chain `∅ ⊂ W₁ ⊂ ... ⊂ W_k` in which each step
/// adds a candidate of maximal total score. Explores chains one by one
/// without merging, as an independent check on the engine's level merging.
pub fn greedy_chain_endpoints(v: &Valuation, a: &Profile, k: usize) -> Result<BTreeSet<Committee>> {
    fn walk(v: &Valuation, a: &Profile, w: Committee, left: usize, out: &mut BTreeSet<Committee>) -> Result<()> {
        if left == 0 {
            out.insert(w);
            return Ok(());
        }
        let outside: Vec<usize> = a.candidates().all().difference(w).iter().collect();
        let scores: Vec<Rational> = outside.iter().map(|&x| committee_score(v, a, w.with(x))).collect::<Result<_>>()?;
        let best = scores.iter().max().expect("k <= m leaves a candidate");
        for (x, s) in outside.iter().zip(&scores) {
            if s == best {
                walk(v, a, w.with(*x), left - 1, out)?;
            }
        }
        Ok(())
    }
    if k > a.m() {
        return Err(Error::CommitteeTooLarge { k, m: a.m() });
    }
    let mut out = BTreeSet::new();
    walk(v, a, Committee::EMPTY, k, &mut out)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    EqualExhaustive { profiles: u64 },
    Differ { profile: Profile, k: usize, left: CommitteeFamily, right: CommitteeFamily },
}

/// The first `(A, k)` in canonical order where the rules disagree.
pub fn compare_rules(r1: &Rule, r2: &Rule, u: &ProfileUniverse, sizes: &[usize]) -> Result<Comparison> {
    let mut profiles = 0;
    for a in enumerate_profiles(u)? {
        profiles += 1;
        for &k in sizes.iter().filter(|&&k| k <= a.m()) {
            let left = r1.apply(&a, k)?;
            let right = r2.apply(&a, k)?;
            if left != right {
                return Ok(Comparison::Differ { profile: a, k, left, right });
            }
        }
    }
    Ok(Comparison::EqualExhaustive { profiles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::ThieleCounting;
    use crate::sets::CandSet;

    fn p1() -> Profile {
        Profile::from_counts(3, &[(3, &[0, 1]), (1, &[2])]).unwrap()
    }

    #[test]
    fn universe_counts() {
        let n_profiles = |m, n| ProfileUniverse::exactly(m, n).unwrap().iter().count() as u128;
        assert_eq!(n_profiles(2, 1), 3);
        assert_eq!(n_profiles(2, 2), 6);
        assert_eq!(n_profiles(3, 2), 28);
        for m in 1..=3 {
            for n in 1..=4 {
                assert_eq!(n_profiles(m, n), multiset_count(m, n));
            }
        }
        assert_eq!(ProfileUniverse::new(3, 2).unwrap().count(), 35);
    }

    #[test]
    fn universe_is_duplicate_free_and_ordered() {
        let all: Vec<Profile> = ProfileUniverse::new(3, 3).unwrap().iter().collect();
        let keys: BTreeSet<Vec<_>> = all.iter().map(|p| p.anonymous_key()).collect();
        assert_eq!(keys.len(), all.len());
        assert_eq!(all[0].anonymous_key(), vec![crate::sets::Ballot::from_indices(&[0]).unwrap()]);
    }

    #[test]
    fn universe_cap() {
        let huge = ProfileUniverse::new(6, 6).unwrap();
        assert!(matches!(enumerate_profiles(&huge), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn brute_force_examples() {
        let av = Valuation::thiele(ThieleCounting::av(3).unwrap());
        let pav = Valuation::thiele(ThieleCounting::pav(3).unwrap());
        let ab = CandSet::from_indices(&[0, 1]).unwrap();
        assert_eq!(brute_force_optimal(&av, &p1(), 2).unwrap().unique(), Some(ab));
        assert_eq!(brute_force_optimal(&pav, &p1(), 2).unwrap().unique(), Some(ab));
        assert_eq!(brute_force_optimal(&pav, &p1(), 3).unwrap().unique(), Some(CandSet::from_bits(0b111)));
        assert!(matches!(brute_force_optimal_with_cap(&av, &p1(), 2, 2), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn brute_force_av_is_top_k() {
        let av = Valuation::thiele(ThieleCounting::av(3).unwrap());
        for a in ProfileUniverse::new(3, 3).unwrap().iter() {
            for k in 0..=3 {
                assert_eq!(brute_force_optimal(&av, &a, k).unwrap(), top_k_by_approval(&a, k).unwrap());
            }
        }
    }
}
