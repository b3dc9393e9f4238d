//! Bounded axiom checkers.
//!
//! Universal axioms (anonymity, consistency, ...) are checked on every
//! profile of a bounded universe and end in [`Verdict::PassExhaustive`] or
//! [`Verdict::Violation`]. Existential axioms (non-imposition, continuity)
//! can only be confirmed by a search, so they end in [`Verdict::Pass`] or
//! [`Verdict::Inconclusive`], never in a violation.

mod clones;
mod existence;
mod invariance;
mod nstats;
mod structure;

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;

use crate::engine::{GeneratorFunction, Rule};
use crate::error::{Error, Result};
use crate::family::CommitteeFamily;
use crate::oracle::{enumerate_profiles, ProfileUniverse};
use crate::profile::Profile;
use crate::sets::{CandSet, Committee};

pub(crate) use clones::{acceptance_violation, bloc_violation, distrust_violation, rejection_violation};
pub use clones::{check_clone_axiom, clones, CloneAxiom};
pub use existence::{check_continuity, check_continuity_search, check_non_imposition, continuity_certificate};
pub use invariance::{check_anonymity, check_neutrality};
pub use nstats::{check_information_basis, compute_n_stats, NStats};
pub use structure::{
    check_committee_monotonicity, check_committee_separability, check_generator_consistency,
    check_independence_of_losers,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Anonymity,
    Neutrality,
    NonImposition,
    Continuity,
    CommitteeMonotonicity,
    GeneratorConsistency,
    IndependenceOfLosers,
    CommitteeSeparability,
    CloneRejection,
    CloneAcceptance,
    Distrust,
    CloneProportionality,
    InformationBasis,
}

impl Axiom {
    pub const ALL: [Axiom; 13] = [
        Axiom::Anonymity,
        Axiom::Neutrality,
        Axiom::NonImposition,
        Axiom::Continuity,
        Axiom::CommitteeMonotonicity,
        Axiom::GeneratorConsistency,
        Axiom::IndependenceOfLosers,
        Axiom::CommitteeSeparability,
        Axiom::CloneRejection,
        Axiom::CloneAcceptance,
        Axiom::Distrust,
        Axiom::CloneProportionality,
        Axiom::InformationBasis,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Anonymity => "anonymity",
            Axiom::Neutrality => "neutrality",
            Axiom::NonImposition => "non-imposition",
            Axiom::Continuity => "continuity",
            Axiom::CommitteeMonotonicity => "committee-monotonicity",
            Axiom::GeneratorConsistency => "generator-consistency",
            Axiom::IndependenceOfLosers => "independence-of-losers",
            Axiom::CommitteeSeparability => "committee-separability",
            Axiom::CloneRejection => "clone-rejection",
            Axiom::CloneAcceptance => "clone-acceptance",
            Axiom::Distrust => "distrust",
            Axiom::CloneProportionality => "clone-proportionality",
            Axiom::InformationBasis => "information-basis",
        }
    }

    /// Existential axioms assert that some profile exists.
    pub fn is_existential(&self) -> bool {
        matches!(self, Axiom::NonImposition | Axiom::Continuity)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Axiom::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| Error::UnknownAxiom(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// A universal axiom held on every instance within the bounds.
    PassExhaustive,
    /// An existential axiom was confirmed by the search.
    Pass,
    Violation,
    /// The search ended without confirming an existential axiom.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::PassExhaustive => "pass-exhaustive",
            Verdict::Pass => "pass",
            Verdict::Violation => "violation",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::PassExhaustive | Verdict::Pass)
    }
}

/// One observed rule or generator outcome inside a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Observation {
    Outcome { label: String, profile: Profile, k: usize, family: CommitteeFamily },
    Generator { label: String, profile: Profile, committee: Committee, output: CandSet },
}

impl Observation {
    pub fn outcome(label: impl Into<String>, profile: Profile, k: usize, family: CommitteeFamily) -> Self {
        Observation::Outcome { label: label.into(), profile, k, family }
    }

    pub fn generator(label: impl Into<String>, profile: Profile, committee: Committee, output: CandSet) -> Self {
        Observation::Generator { label: label.into(), profile, committee, output }
    }

    pub fn label(&self) -> &str {
        match self {
            Observation::Outcome { label, .. } | Observation::Generator { label, .. } => label,
        }
    }

    pub fn profile(&self) -> &Profile {
        match self {
            Observation::Outcome { profile, .. } | Observation::Generator { profile, .. } => profile,
        }
    }
}

/// The concrete instance behind a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomWitness {
    pub summary: String,
    pub observations: Vec<Observation>,
}

impl AxiomWitness {
    pub fn new(summary: impl Into<String>, observations: Vec<Observation>) -> Self {
        AxiomWitness { summary: summary.into(), observations }
    }

    /// Whether `rule` reproduces every recorded outcome.
    pub fn replay(&self, rule: &Rule) -> Result<bool> {
        for obs in &self.observations {
            if let Observation::Outcome { profile, k, family, .. } = obs {
                if &rule.apply(profile, *k)? != family {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether `g` reproduces every recorded generator output.
    pub fn replay_generator(&self, g: &GeneratorFunction) -> Result<bool> {
        for obs in &self.observations {
            if let Observation::Generator { profile, committee, output, .. } = obs {
                if g.apply(profile, *committee)? != *output {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    /// The rule or generator under test.
    pub subject: String,
    pub verdict: Verdict,
    pub witness: Option<AxiomWitness>,
    /// The search space, in words.
    pub bounds: String,
    /// Number of instances examined.
    pub instances: u64,
    pub note: String,
}

impl AxiomReport {
    fn universal(axiom: Axiom, subject: &str, bounds: String, found: (u64, Option<AxiomWitness>)) -> Self {
        let (instances, witness) = found;
        let verdict = if witness.is_some() { Verdict::Violation } else { Verdict::PassExhaustive };
        AxiomReport {
            axiom,
            subject: subject.to_string(),
            verdict,
            witness,
            bounds,
            instances,
            note: UNIVERSAL_NOTE.to_string(),
        }
    }
}

const UNIVERSAL_NOTE: &str =
    "universal axiom: a bounded search either finds a violation or passes every instance in bounds";
const EXISTENTIAL_NOTE: &str = "existential axiom: a bounded search can confirm it but never refute it";

/// Search limits shared by the checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub min_m: usize,
    pub max_m: usize,
    /// Voters per profile for single-profile axioms.
    pub max_voters: usize,
    /// Voters per side for axioms over pairs of profiles.
    pub pair_max_voters: usize,
    /// Largest replication factor tried for continuity.
    pub j_max: usize,
    /// Largest bloc size in the two-bloc clone-proportionality family.
    pub max_bloc: usize,
    /// Largest committee size in the two-bloc clone-proportionality family.
    pub max_bloc_k: usize,
    /// Largest `|W|` for the information-basis check.
    pub max_w: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            min_m: 2,
            max_m: 4,
            max_voters: 5,
            pair_max_voters: 3,
            j_max: 10,
            max_bloc: 8,
            max_bloc_k: 3,
            max_w: 2,
        }
    }
}

impl Bounds {
    /// Single-profile and pairwise bounds set to `max_m` and `max_voters`.
    pub fn small(max_m: usize, max_voters: usize) -> Self {
        Bounds { max_m, max_voters, pair_max_voters: max_voters, ..Bounds::default() }
    }

    pub fn with_m(self, min_m: usize, max_m: usize) -> Self {
        Bounds { min_m, max_m, ..self }
    }

    pub fn with_voters(self, max_voters: usize, pair_max_voters: usize) -> Self {
        Bounds { max_voters, pair_max_voters, ..self }
    }

    fn ms(&self) -> std::ops::RangeInclusive<usize> {
        self.min_m.max(1)..=self.max_m
    }

    fn describe(&self, voters: usize) -> String {
        format!("m in {}..={}, n <= {voters}", self.min_m.max(1), self.max_m)
    }

    fn describe_pairs(&self) -> String {
        format!("m in {}..={}, n <= {} per side", self.min_m.max(1), self.max_m, self.pair_max_voters)
    }
}

/// Profiles over `m` candidates with at most `n` voters. For id-sensitive
/// rules every distinct assignment of the ballots to ids `1..=n` is included.
fn universe(m: usize, n: usize, id_sensitive: bool) -> Result<Vec<Profile>> {
    let anonymous = enumerate_profiles(&ProfileUniverse::new(m, n)?)?;
    if !id_sensitive {
        return Ok(anonymous.collect());
    }
    let mut all = Vec::new();
    for a in anonymous {
        all.extend(arrangements(&a)?);
    }
    Ok(all)
}

/// Every distinct assignment of `a`'s ballots to ids `1..=n`, in
/// lexicographic order.
fn arrangements(a: &Profile) -> Result<Vec<Profile>> {
    let ballots: Vec<_> = a.anonymous_key();
    ballots
        .iter()
        .copied()
        .permutations(ballots.len())
        .unique()
        .map(|seq| Profile::from_ballots(a.candidates(), seq))
        .collect()
}

/// The first witness in `items` order, with the number of items examined.
fn find_first<T: Sync, W: Send>(
    items: &[T],
    check: impl Fn(&T) -> Result<Option<W>> + Sync,
) -> Result<(u64, Option<W>)> {
    let hit = items.par_iter().enumerate().find_map_first(|(i, t)| match check(t) {
        Ok(None) => None,
        Ok(Some(w)) => Some(Ok((i, w))),
        Err(e) => Some(Err(e)),
    });
    match hit {
        None => Ok((items.len() as u64, None)),
        Some(Ok((i, w))) => Ok((i as u64 + 1, Some(w))),
        Some(Err(e)) => Err(e),
    }
}

/// Named groups of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Anonymity, neutrality, non-imposition and continuity.
    Proper,
    /// Committee monotonicity and generator consistency.
    Monotone,
    Clones,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proper" => Ok(Suite::Proper),
            "monotone" => Ok(Suite::Monotone),
            "clones" => Ok(Suite::Clones),
            "all" => Ok(Suite::All),
            _ => Err(Error::UnknownAxiom(format!("suite {s}"))),
        }
    }
}

/// Anonymity, neutrality, non-imposition and a continuity search.
pub fn check_proper(rule: &Rule, bounds: &Bounds) -> Result<Vec<AxiomReport>> {
    Ok(vec![
        check_anonymity(rule, bounds)?,
        check_neutrality(rule, bounds)?,
        check_non_imposition(rule, bounds)?,
        check_continuity_search(rule, bounds)?,
    ])
}

/// Proper within bounds: the universal checks passed exhaustively and the
/// existential searches succeeded.
pub fn is_proper_bounded(reports: &[AxiomReport]) -> bool {
    let verdict = |axiom| reports.iter().find(|r| r.axiom == axiom).map(|r| r.verdict);
    verdict(Axiom::Anonymity) == Some(Verdict::PassExhaustive)
        && verdict(Axiom::Neutrality) == Some(Verdict::PassExhaustive)
        && verdict(Axiom::NonImposition) == Some(Verdict::Pass)
        && verdict(Axiom::Continuity) == Some(Verdict::Pass)
}

/// The generator used to test consistency of `rule`: the valuation's
/// generator or the rule's own, otherwise the one derived from the rule.
///
/// The derived generator collects every `x` with `W ∪ {x}` winning, so under
/// tie branching it can pick up extensions reached from other parents. It is
/// a last resort for rules given only by their outcomes.
pub fn generator_of(rule: &Rule) -> GeneratorFunction {
    if let Some(v) = rule.valuation() {
        return GeneratorFunction::from_valuation(rule.name(), v.clone());
    }
    match rule.generator() {
        Some(g) => g.clone(),
        None => GeneratorFunction::derived(rule.clone()),
    }
}

pub fn run_suite(rule: &Rule, suite: Suite, bounds: &Bounds) -> Result<Vec<AxiomReport>> {
    let monotone = || -> Result<Vec<AxiomReport>> {
        Ok(vec![check_committee_monotonicity(rule, bounds)?, check_generator_consistency(&generator_of(rule), bounds)?])
    };
    let clone_checks = || -> Result<Vec<AxiomReport>> {
        CloneAxiom::ALL.iter().map(|&which| check_clone_axiom(rule, which, bounds)).collect()
    };
    match suite {
        Suite::Proper => check_proper(rule, bounds),
        Suite::Monotone => monotone(),
        Suite::Clones => clone_checks(),
        Suite::All => {
            let mut all = check_proper(rule, bounds)?;
            all.extend(monotone()?);
            all.push(check_independence_of_losers(rule, bounds)?);
            all.push(check_committee_separability(rule, bounds)?);
            all.extend(clone_checks()?);
            Ok(all)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axiom_names_round_trip() {
        for a in Axiom::ALL {
            assert_eq!(a.name().parse::<Axiom>().unwrap(), a);
        }
        assert!(matches!("fairness".parse::<Axiom>(), Err(Error::UnknownAxiom(_))));
    }

    #[test]
    fn arrangements_are_distinct() {
        let a = Profile::from_counts(2, &[(2, &[0]), (1, &[1])]).unwrap();
        assert_eq!(arrangements(&a).unwrap().len(), 3);
    }
}
