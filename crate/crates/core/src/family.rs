use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::profile::CandidatePermutation;
use crate::sets::{CandidateSet, Committee};

/// The winning committees of one size: a nonempty, duplicate-free set of
/// equal-size committees.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CommitteeFamily {
    candidates: CandidateSet,
    k: usize,
    committees: BTreeSet<Committee>,
}

impl CommitteeFamily {
    pub fn new(candidates: CandidateSet, k: usize, committees: impl IntoIterator<Item = Committee>) -> Result<Self> {
        if k > candidates.m() {
            return Err(Error::CommitteeTooLarge { k, m: candidates.m() });
        }
        let committees: BTreeSet<Committee> = committees.into_iter().collect();
        if committees.is_empty() {
            return Err(Error::Precondition("a committee family must be nonempty".into()));
        }
        for w in &committees {
            candidates.check(*w)?;
            if w.len() != k {
                return Err(Error::Precondition(format!("committee {w:?} does not have size {k}")));
            }
        }
        Ok(CommitteeFamily { candidates, k, committees })
    }

    /// `{∅}`, the only possible outcome for `k = 0`.
    pub fn empty_committee(candidates: CandidateSet) -> Self {
        CommitteeFamily { candidates, k: 0, committees: [Committee::EMPTY].into() }
    }

    /// Every committee of size `k`.
    pub fn all_of_size(candidates: CandidateSet, k: usize) -> Result<Self> {
        CommitteeFamily::new(candidates, k, candidates.committees_of_size(k))
    }

    pub fn candidates(&self) -> CandidateSet {
        self.candidates
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.committees.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, w: &Committee) -> bool {
        self.committees.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Committee> + '_ {
        self.committees.iter()
    }

    pub fn committees(&self) -> &BTreeSet<Committee> {
        &self.committees
    }

    /// The unique winner, if there is exactly one.
    pub fn unique(&self) -> Option<Committee> {
        if self.committees.len() == 1 {
            self.committees.iter().next().copied()
        } else {
            None
        }
    }

    /// `{τ(W) : W ∈ F}`.
    pub fn permuted(&self, tau: &CandidatePermutation) -> CommitteeFamily {
        CommitteeFamily {
            candidates: self.candidates,
            k: self.k,
            committees: self.committees.iter().map(|w| tau.apply_set(*w)).collect(),
        }
    }
}

impl fmt::Debug for CommitteeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.committees.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::CandSet;

    #[test]
    fn validation() {
        let cs = CandidateSet::new(3).unwrap();
        let ab = CandSet::from_indices(&[0, 1]).unwrap();
        assert!(CommitteeFamily::new(cs, 2, [ab, ab]).unwrap().len() == 1);
        assert!(CommitteeFamily::new(cs, 1, [ab]).is_err());
        assert!(CommitteeFamily::new(cs, 2, []).is_err());
        assert!(CommitteeFamily::new(cs, 4, [ab]).is_err());
        assert_eq!(CommitteeFamily::all_of_size(cs, 2).unwrap().len(), 3);
        assert_eq!(CommitteeFamily::empty_committee(cs).unique(), Some(CandSet::EMPTY));
    }
}
