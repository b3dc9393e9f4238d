use std::collections::HashMap;

use itertools::Itertools;

use super::{find_first, universe, Axiom, AxiomReport, AxiomWitness, Bounds, Observation};
use crate::engine::{GeneratorFunction, Rule};
use crate::error::Result;
use crate::family::CommitteeFamily;
use crate::profile::Profile;
use crate::sets::{Ballot, CandSet, Committee};

/// Every size-`k` winner extends a size-`(k-1)` winner, and every
/// size-`(k-1)` winner extends to a size-`k` winner.
pub fn check_committee_monotonicity(rule: &Rule, bounds: &Bounds) -> Result<AxiomReport> {
    let mut instances = 0;
    let describe = bounds.describe(bounds.max_voters);
    for m in bounds.ms() {
        let profiles = universe(m, bounds.max_voters, rule.is_id_sensitive())?;
        let (seen, witness) = find_first(&profiles, |a| {
            let trace = rule.trace(a, m)?;
            for k in 1..=m {
                let (small, large) = (&trace[k - 1], &trace[k]);
                let orphan = large.iter().find(|w| !small.iter().any(|s| s.is_subset(**w)));
                let dead_end = small.iter().find(|s| !large.iter().any(|w| s.is_subset(*w)));
                let summary = match (orphan, dead_end) {
                    (Some(w), _) => format!("{} wins at k={k} but contains no winner of size {}", w.letters(), k - 1),
                    (None, Some(s)) => {
                        format!("{} wins at k={} but no winner of size {k} contains it", s.letters(), k - 1)
                    }
                    (None, None) => continue,
                };
                return Ok(Some(AxiomWitness::new(
                    summary,
                    vec![
                        Observation::outcome("A", a.clone(), k - 1, small.clone()),
                        Observation::outcome("A", a.clone(), k, large.clone()),
                    ],
                )));
            }
            Ok(None)
        })?;
        instances += seen;
        if witness.is_some() {
            return Ok(AxiomReport::universal(
                Axiom::CommitteeMonotonicity,
                rule.name(),
                describe,
                (instances, witness),
            ));
        }
    }
    Ok(AxiomReport::universal(Axiom::CommitteeMonotonicity, rule.name(), describe, (instances, None)))
}

/// `g(A + A', W) = g(A, W) ∩ g(A', W)` whenever the intersection and
/// `g(A + A', W)` are both nonempty, over disjoint electorates.
pub fn check_generator_consistency(g: &GeneratorFunction, bounds: &Bounds) -> Result<AxiomReport> {
    let mut instances = 0;
    let describe = bounds.describe_pairs();
    for m in bounds.ms() {
        let profiles = universe(m, bounds.pair_max_voters, g.is_id_sensitive())?;
        let full = profiles[0].candidates().all();
        let committees: Vec<Committee> =
            profiles[0].candidates().all_committees().into_iter().filter(|w| *w != full).collect();
        let outputs: Vec<Vec<CandSet>> = profiles
            .iter()
            .map(|a| committees.iter().map(|&w| g.apply(a, w)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        // A + A' and A' + A differ only in voter ids.
        let pairs: Vec<(usize, usize)> = (0..profiles.len())
            .flat_map(|i| {
                let start = if g.is_id_sensitive() { 0 } else { i };
                (start..profiles.len()).map(move |j| (i, j))
            })
            .collect();
        let (seen, witness) = find_first(&pairs, |&(i, j)| {
            // In A + A' the voters of A' get ids after those of A; an
            // id-sensitive generator has to see A' under those ids.
            let fresh = || profiles[j].relabeled_from(profiles[i].max_voter_id() + 1);
            let shifted = g.is_id_sensitive().then(fresh);
            let mut sum = None;
            for (t, &w) in committees.iter().enumerate() {
                let out_j = match &shifted {
                    Some(p) => g.apply(p, w)?,
                    None => outputs[j][t],
                };
                let both = outputs[i][t].intersection(out_j);
                if both.is_empty() {
                    continue;
                }
                let combined = match &sum {
                    Some(p) => p,
                    None => sum.insert(profiles[i].sum(&shifted.clone().unwrap_or_else(fresh))?),
                };
                let joint = g.apply(combined, w)?;
                if !joint.is_empty() && joint != both {
                    return Ok(Some(AxiomWitness::new(
                        format!(
                            "W={}: g(A,W) ∩ g(A',W) = {} but g(A+A',W) = {}",
                            w.letters(),
                            both.letters(),
                            joint.letters()
                        ),
                        vec![
                            Observation::generator("A", profiles[i].clone(), w, outputs[i][t]),
                            Observation::generator("A'", shifted.clone().unwrap_or_else(fresh), w, out_j),
                            Observation::generator("A+A'", combined.clone(), w, joint),
                        ],
                    )));
                }
            }
            Ok(None)
        })?;
        instances += seen;
        if witness.is_some() {
            return Ok(AxiomReport::universal(Axiom::GeneratorConsistency, g.name(), describe, (instances, witness)));
        }
    }
    Ok(AxiomReport::universal(Axiom::GeneratorConsistency, g.name(), describe, (instances, None)))
}

/// Traces `f(A, 0..=m)` for every profile, keyed by ballot multiset.
fn trace_table(rule: &Rule, profiles: &[Profile], m: usize) -> Result<HashMap<Vec<Ballot>, Vec<CommitteeFamily>>> {
    profiles.iter().map(|a| Ok((a.anonymous_key(), rule.trace(a, m)?))).collect()
}

/// Shrinking ballots outside a winning committee keeps it winning.
pub fn check_independence_of_losers(rule: &Rule, bounds: &Bounds) -> Result<AxiomReport> {
    let mut instances = 0;
    let describe = bounds.describe(bounds.max_voters);
    for m in bounds.ms() {
        let profiles = universe(m, bounds.max_voters, rule.is_id_sensitive())?;
        let table = if rule.is_id_sensitive() { None } else { Some(trace_table(rule, &profiles, m)?) };
        let (seen, witness) = find_first(&profiles, |a| {
            let trace = match &table {
                Some(t) => t[&a.anonymous_key()].clone(),
                None => rule.trace(a, m)?,
            };
            for (k, family) in trace.iter().enumerate() {
                for &w in family.iter() {
                    if let Some(found) = shrink_violation(rule, a, w, k, &table, m)? {
                        let (shrunk, f_shrunk) = found;
                        return Ok(Some(AxiomWitness::new(
                            format!("{} wins for A but not after removing approvals outside it", w.letters()),
                            vec![
                                Observation::outcome("A", a.clone(), k, family.clone()),
                                Observation::outcome("A'", shrunk, k, f_shrunk),
                            ],
                        )));
                    }
                }
            }
            Ok(None)
        })?;
        instances += seen;
        if witness.is_some() {
            return Ok(AxiomReport::universal(
                Axiom::IndependenceOfLosers,
                rule.name(),
                describe,
                (instances, witness),
            ));
        }
    }
    Ok(AxiomReport::universal(Axiom::IndependenceOfLosers, rule.name(), describe, (instances, None)))
}

/// The first shrinking `A'` of `A` outside `w` where `w` stops winning.
fn shrink_violation(
    rule: &Rule,
    a: &Profile,
    w: Committee,
    k: usize,
    table: &Option<HashMap<Vec<Ballot>, Vec<CommitteeFamily>>>,
    m: usize,
) -> Result<Option<(Profile, CommitteeFamily)>> {
    let ids: Vec<u32> = a.voter_ids().collect();
    let options: Vec<Vec<Ballot>> = a
        .ballots()
        .map(|b| {
            let kept = b.approved().intersection(w);
            let loose: Vec<usize> = b.approved().difference(w).to_vec();
            loose
                .iter()
                .copied()
                .powerset()
                .filter_map(|extra| Ballot::new(kept.union(CandSet::from_indices_unchecked(&extra))).ok())
                .collect()
        })
        .collect();
    let mut tried = std::collections::HashSet::new();
    for choice in options.into_iter().multi_cartesian_product() {
        let shrunk = Profile::new(a.candidates(), ids.iter().copied().zip(choice).collect())?;
        if &shrunk == a {
            continue;
        }
        let family = match table {
            Some(t) => {
                let key = shrunk.anonymous_key();
                if !tried.insert(key.clone()) {
                    continue;
                }
                t[&key][k].clone()
            }
            None => rule.apply(&shrunk, k)?,
        };
        if !family.contains(&w) {
            return Ok(Some((shrunk, family)));
        }
    }
    let _ = m;
    Ok(None)
}

/// For electorates `A`, `B` with disjoint supports covering all candidates,
/// each winner `W` of `A + B` splits into winners `W ∩ C_A` of `A` and
/// `W ∩ C_B` of `B`.
pub fn check_committee_separability(rule: &Rule, bounds: &Bounds) -> Result<AxiomReport> {
    let mut instances = 0;
    let describe = bounds.describe_pairs();
    for m in bounds.ms() {
        let profiles = universe(m, bounds.pair_max_voters, rule.is_id_sensitive())?;
        let full = profiles[0].candidates().all();
        let traces: Vec<Vec<CommitteeFamily>> = profiles.iter().map(|a| rule.trace(a, m)).collect::<Result<_>>()?;
        let pairs: Vec<(usize, usize)> = (0..profiles.len())
            .flat_map(|i| {
                let support = profiles[i].support();
                let profiles = &profiles;
                (0..profiles.len())
                    .filter(move |&j| support != full && profiles[j].support() == full.difference(support))
                    .map(move |j| (i, j))
            })
            .collect();
        let (seen, witness) = find_first(&pairs, |&(i, j)| {
            let (a, b) = (&profiles[i], &profiles[j]);
            let c_a = a.support();
            let sum = a.sum_fresh(b)?;
            let joint = rule.trace(&sum, m)?;
            for (k, family) in joint.iter().enumerate() {
                for w in family.iter() {
                    let (wa, wb) = (w.intersection(c_a), w.difference(c_a));
                    let (fa, fb) = (&traces[i][wa.len()], &traces[j][wb.len()]);
                    if !fa.contains(&wa) || !fb.contains(&wb) {
                        let fresh = sum.voter_ids().nth(a.len()).expect("B is nonempty");
                        return Ok(Some(AxiomWitness::new(
                            format!(
                                "{} wins for A+B but {} or {} does not win in its part",
                                w.letters(),
                                wa.letters(),
                                wb.letters()
                            ),
                            vec![
                                Observation::outcome("A+B", sum.clone(), k, family.clone()),
                                Observation::outcome("A", a.clone(), wa.len(), fa.clone()),
                                Observation::outcome("B", b.relabeled_from(fresh), wb.len(), fb.clone()),
                            ],
                        )));
                    }
                }
            }
            Ok(None)
        })?;
        instances += seen;
        if witness.is_some() {
            return Ok(AxiomReport::universal(
                Axiom::CommitteeSeparability,
                rule.name(),
                describe,
                (instances, witness),
            ));
        }
    }
    Ok(AxiomReport::universal(Axiom::CommitteeSeparability, rule.name(), describe, (instances, None)))
}
