use std::str::FromStr;

use super::{find_first, universe, Axiom, AxiomReport, AxiomWitness, Bounds, Observation};
use crate::engine::Rule;
use crate::error::{Error, Result};
use crate::family::CommitteeFamily;
use crate::profile::Profile;
use crate::sets::CandidateSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CloneAxiom {
    Rejection,
    Acceptance,
    Distrust,
    Proportionality,
}

impl CloneAxiom {
    pub const ALL: [CloneAxiom; 4] =
        [CloneAxiom::Rejection, CloneAxiom::Acceptance, CloneAxiom::Distrust, CloneAxiom::Proportionality];

    pub fn axiom(&self) -> Axiom {
        match self {
            CloneAxiom::Rejection => Axiom::CloneRejection,
            CloneAxiom::Acceptance => Axiom::CloneAcceptance,
            CloneAxiom::Distrust => Axiom::Distrust,
            CloneAxiom::Proportionality => Axiom::CloneProportionality,
        }
    }
}

impl FromStr for CloneAxiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rejection" | "clone-rejection" => Ok(CloneAxiom::Rejection),
            "acceptance" | "clone-acceptance" => Ok(CloneAxiom::Acceptance),
            "distrust" => Ok(CloneAxiom::Distrust),
            "proportionality" | "clone-proportionality" => Ok(CloneAxiom::Proportionality),
            _ => Err(Error::UnknownAxiom(s.to_string())),
        }
    }
}

/// `c` and `d` are approved by exactly the same voters.
pub fn clones(a: &Profile, c: usize, d: usize) -> bool {
    a.ballots().all(|b| b.contains(c) == b.contains(d))
}

pub fn check_clone_axiom(rule: &Rule, which: CloneAxiom, bounds: &Bounds) -> Result<AxiomReport> {
    if which == CloneAxiom::Proportionality {
        return check_proportionality(rule, bounds);
    }
    let mut instances = 0;
    let describe = bounds.describe(bounds.max_voters);
    for m in bounds.ms() {
        let profiles = universe(m, bounds.max_voters, rule.is_id_sensitive())?;
        let (seen, witness) = find_first(&profiles, |a| {
            let trace = rule.trace(a, m)?;
            Ok(match which {
                CloneAxiom::Rejection => rejection_violation(a, &trace),
                CloneAxiom::Acceptance => acceptance_violation(a, &trace),
                CloneAxiom::Distrust => distrust_violation(a, &trace),
                CloneAxiom::Proportionality => unreachable!("handled above"),
            })
        })?;
        instances += seen;
        if witness.is_some() {
            return Ok(AxiomReport::universal(which.axiom(), rule.name(), describe, (instances, witness)));
        }
    }
    Ok(AxiomReport::universal(which.axiom(), rule.name(), describe, (instances, None)))
}

/// A unique winner other than `C` may not contain two clones.
pub(crate) fn rejection_violation(a: &Profile, trace: &[CommitteeFamily]) -> Option<AxiomWitness> {
    let m = a.m();
    for (k, family) in trace.iter().enumerate().take(m).skip(2) {
        let Some(w) = family.unique() else { continue };
        let members = w.to_vec();
        for (i, &c) in members.iter().enumerate() {
            if let Some(&d) = members[i + 1..].iter().find(|&&d| clones(a, c, d)) {
                return Some(AxiomWitness::new(
                    format!("unique winner {} contains the clones {} and {}", w.letters(), letter(c), letter(d)),
                    vec![Observation::outcome("A", a.clone(), k, family.clone())],
                ));
            }
        }
    }
    None
}

/// If `W ∪ {c}` wins and `d` is a clone of `c`, then `W ∪ {c, d}` wins.
pub(crate) fn acceptance_violation(a: &Profile, trace: &[CommitteeFamily]) -> Option<AxiomWitness> {
    let m = a.m();
    for k in 1..m {
        for x in trace[k].iter() {
            for c in x.iter() {
                let outside = a.candidates().all().difference(*x);
                if let Some(d) = outside.iter().find(|&d| clones(a, c, d)) {
                    if !trace[k + 1].contains(&x.with(d)) {
                        return Some(AxiomWitness::new(
                            format!(
                                "{} wins but {} does not, although {} and {} are clones",
                                x.letters(),
                                x.with(d).letters(),
                                letter(c),
                                letter(d)
                            ),
                            vec![
                                Observation::outcome("A", a.clone(), k, trace[k].clone()),
                                Observation::outcome("A", a.clone(), k + 1, trace[k + 1].clone()),
                            ],
                        ));
                    }
                }
            }
        }
    }
    None
}

/// A unique winner `W ≠ C` must contain `c` when more voters report
/// exactly `{c}` than approve some member `b` of `W`.
pub(crate) fn distrust_violation(a: &Profile, trace: &[CommitteeFamily]) -> Option<AxiomWitness> {
    let m = a.m();
    for (k, family) in trace.iter().enumerate().take(m).skip(1) {
        let Some(w) = family.unique() else { continue };
        for b in w.iter() {
            let outside = a.candidates().all().difference(w);
            if let Some(c) = outside.iter().find(|&c| a.singleton_reports(c) > a.approval_score(b)) {
                return Some(AxiomWitness::new(
                    format!(
                        "{} wins alone; {} voters report {{{}}} but only {} approve {}",
                        w.letters(),
                        a.singleton_reports(c),
                        letter(c),
                        a.approval_score(b),
                        letter(b)
                    ),
                    vec![Observation::outcome("A", a.clone(), k, family.clone())],
                ));
            }
        }
    }
    None
}

/// Over profiles of `n1` voters reporting `A1` and `n2` voters reporting
/// `{c}` with `c ∉ A1` and `k ≤ |A1|`: `c ∉ W` when `n1/k > n2`, and
/// `c ∈ W` when `n1/k < n2`.
fn check_proportionality(rule: &Rule, bounds: &Bounds) -> Result<AxiomReport> {
    let mut instances = 0;
    let describe = format!(
        "m in {}..={}, two blocs of n1, n2 <= {} voters, k <= {}",
        bounds.min_m.max(1),
        bounds.max_m,
        bounds.max_bloc,
        bounds.max_bloc_k
    );
    for m in bounds.ms() {
        let cs = CandidateSet::new(m)?;
        let mut cases = Vec::new();
        for a1 in cs.ballots() {
            for c in cs.all().difference(a1.approved()).iter() {
                for n1 in 1..=bounds.max_bloc {
                    for n2 in 1..=bounds.max_bloc {
                        cases.push((a1, c, n1, n2));
                    }
                }
            }
        }
        let (seen, witness) = find_first(&cases, |&(a1, c, n1, n2)| {
            let members = a1.approved().to_vec();
            let a = Profile::from_counts(m, &[(n1, &members), (n2, &[c])])?;
            let max_k = a1.len().min(bounds.max_bloc_k);
            let trace = rule.trace(&a, max_k)?;
            Ok(bloc_violation(&a, c, n1, n2, &trace))
        })?;
        instances += seen;
        if witness.is_some() {
            return Ok(AxiomReport::universal(
                Axiom::CloneProportionality,
                rule.name(),
                describe,
                (instances, witness),
            ));
        }
    }
    Ok(AxiomReport::universal(Axiom::CloneProportionality, rule.name(), describe, (instances, None)))
}

/// The clone-proportionality predicate on a two-bloc profile with `n1`
/// voters on one ballot and `n2` voters on `{c}`.
pub(crate) fn bloc_violation(
    a: &Profile,
    c: usize,
    n1: usize,
    n2: usize,
    trace: &[CommitteeFamily],
) -> Option<AxiomWitness> {
    for (k, family) in trace.iter().enumerate().skip(1) {
        let single = k * n2;
        let bad = family.iter().find(|w| (n1 > single && w.contains(c)) || (n1 < single && !w.contains(c)));
        if let Some(w) = bad {
            let relation = if n1 > single { ">" } else { "<" };
            return Some(AxiomWitness::new(
                format!("n1/k = {n1}/{k} {relation} n2 = {n2} but {} wins", w.letters()),
                vec![Observation::outcome("A", a.clone(), k, family.clone())],
            ));
        }
    }
    None
}

fn letter(c: usize) -> String {
    crate::sets::candidate_letter(c)
}
