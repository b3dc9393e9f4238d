use std::collections::BTreeMap;

use super::{find_first, universe, Axiom, AxiomReport, AxiomWitness, Bounds, Observation, Verdict, EXISTENTIAL_NOTE};
use crate::counting::{committee_score, Valuation};
use crate::engine::{generator_step, run_sequential_trace, Rule, DEFAULT_BRANCH_CAP};
use crate::error::{Error, Result};
use crate::family::CommitteeFamily;
use crate::oracle::binomial;
use crate::profile::Profile;
use crate::rational::Rational;
use crate::sets::Committee;

/// Searches for a profile electing each committee as the unique winner.
pub fn check_non_imposition(rule: &Rule, bounds: &Bounds) -> Result<AxiomReport> {
    let mut instances = 0;
    let mut found = Vec::new();
    let mut uncovered = Vec::new();
    let mut tie_example = None;
    let mut structural = true;
    for m in bounds.ms() {
        let mut winners: BTreeMap<Committee, Profile> = BTreeMap::new();
        let mut always_full = vec![true; m + 1];
        let mut first_profile = None;
        for a in universe(m, bounds.max_voters, false)? {
            instances += 1;
            let trace = rule.trace(&a, m)?;
            for (k, family) in trace.iter().enumerate() {
                if let Some(w) = family.unique() {
                    winners.entry(w).or_insert_with(|| a.clone());
                }
                if family.len() as u128 != binomial(m as u128, k as u128) {
                    always_full[k] = false;
                }
            }
            if first_profile.is_none() {
                first_profile = Some((a, trace));
            }
            if winners.len() == 1 << m {
                break;
            }
        }
        for w in a_candidates(m).all_committees() {
            match winners.get(&w) {
                Some(a) => {
                    let family = CommitteeFamily::new(a.candidates(), w.len(), [w])?;
                    found.push(Observation::outcome(format!("A electing {}", w.letters()), a.clone(), w.len(), family));
                }
                None => {
                    structural &= always_full[w.len()];
                    if tie_example.is_none() {
                        if let Some((a, trace)) = &first_profile {
                            tie_example = Some(Observation::outcome(
                                format!("first searched profile at k={}", w.len()),
                                a.clone(),
                                w.len(),
                                trace[w.len()].clone(),
                            ));
                        }
                    }
                    uncovered.push(w);
                }
            }
        }
    }
    let describe = bounds.describe(bounds.max_voters);
    let subject = rule.name().to_string();
    if uncovered.is_empty() {
        return Ok(AxiomReport {
            axiom: Axiom::NonImposition,
            subject,
            verdict: Verdict::Pass,
            witness: Some(AxiomWitness::new("every committee is the unique winner of some profile", found)),
            bounds: describe,
            instances,
            note: EXISTENTIAL_NOTE.to_string(),
        });
    }
    let listed: Vec<String> = uncovered.iter().map(|w| w.letters()).collect();
    let mut note = format!("{EXISTENTIAL_NOTE}; no profile found electing only {}", listed.join(", "));
    if structural {
        note.push_str("; structural ties: every searched profile elected all committees of those sizes");
    }
    Ok(AxiomReport {
        axiom: Axiom::NonImposition,
        subject,
        verdict: Verdict::Inconclusive,
        witness: tie_example.map(|o| AxiomWitness::new("no unique winner found for some committees", vec![o])),
        bounds: describe,
        instances,
        note,
    })
}

fn a_candidates(m: usize) -> crate::sets::CandidateSet {
    crate::sets::CandidateSet::new(m).expect("bounds hold valid m")
}

/// Looks for the smallest `j <= j_max` with `f(jA + A', k) = f(A, k)`.
pub fn check_continuity(rule: &Rule, a: &Profile, a2: &Profile, k: usize, j_max: usize) -> Result<AxiomReport> {
    let base = rule.apply(a, k)?;
    if base.unique().is_none() {
        return Err(Error::Precondition(format!("continuity needs a unique winner, f(A,{k}) has {}", base.len())));
    }
    let mut note = EXISTENTIAL_NOTE.to_string();
    if let Some(v) = rule.valuation() {
        let j = continuity_certificate(v, a, a2, k)?;
        note.push_str(&format!("; score gaps guarantee every j >= {j} works"));
    }
    let mut last = None;
    for j in 1..=j_max.max(1) {
        let combined = a.scale(j)?.sum_fresh(a2)?;
        let family = rule.apply(&combined, k)?;
        if family == base {
            return Ok(AxiomReport {
                axiom: Axiom::Continuity,
                subject: rule.name().to_string(),
                verdict: Verdict::Pass,
                witness: Some(AxiomWitness::new(
                    format!("j={j} restores f(A,{k})"),
                    vec![
                        Observation::outcome("A", a.clone(), k, base),
                        Observation::outcome(format!("{j}A+A'"), combined, k, family),
                    ],
                )),
                bounds: format!("j <= {j_max}"),
                instances: j as u64,
                note,
            });
        }
        last = Some((j, combined, family));
    }
    let (j, combined, family) = last.expect("at least one j is tried");
    note.push_str(&format!("; no j <= {j_max} reproduces f(A,{k})"));
    Ok(AxiomReport {
        axiom: Axiom::Continuity,
        subject: rule.name().to_string(),
        verdict: Verdict::Inconclusive,
        witness: Some(AxiomWitness::new(
            format!("f(jA+A',{k}) differs from f(A,{k}) for every j <= {j_max}"),
            vec![
                Observation::outcome("A", a.clone(), k, base),
                Observation::outcome(format!("{j}A+A'"), combined, k, family),
            ],
        )),
        bounds: format!("j <= {j_max}"),
        instances: j as u64,
        note,
    })
}

/// A `j` such that `f(j'A + A', k) ⊆ f(A, k)` for every `j' >= j`, for the
/// sequential rule of `v`.
///
/// Every candidate the rule adds for `A` beats every candidate it skips by
/// at least `Δ¹`, and `A'` favors a skipped candidate by at most `Δ²`, so
/// `jΔ¹ > Δ²` keeps the skipped candidates out.
pub fn continuity_certificate(v: &Valuation, a: &Profile, a2: &Profile, k: usize) -> Result<u64> {
    a.candidates().same_as(&a2.candidates())?;
    let trace = run_sequential_trace(v, a, k, DEFAULT_BRANCH_CAP)?;
    let mut gap_a: Option<Rational> = None;
    let mut gap_b: Option<Rational> = None;
    for level in &trace[..k] {
        for &x in level.iter() {
            let chosen = generator_step(v, a, x)?;
            let skipped = a.candidates().all().difference(x).difference(chosen);
            for c in chosen.iter() {
                let (sa_c, sb_c) = (committee_score(v, a, x.with(c))?, committee_score(v, a2, x.with(c))?);
                for d in skipped.iter() {
                    let da = &sa_c - &committee_score(v, a, x.with(d))?;
                    let db = &committee_score(v, a2, x.with(d))? - &sb_c;
                    if gap_a.as_ref().is_none_or(|g| &da < g) {
                        gap_a = Some(da);
                    }
                    if gap_b.as_ref().is_none_or(|g| &db > g) {
                        gap_b = Some(db);
                    }
                }
            }
        }
    }
    match (gap_a, gap_b) {
        (Some(da), Some(db)) => Ok(da.smallest_multiplier_exceeding(&db).expect("argmax gaps are positive")),
        _ => Ok(1),
    }
}

/// Continuity over every pair `(A, A')` in a small universe, for each `k`
/// with a unique winner. Uses at most three candidates and two voters per
/// side, as every pair costs up to `j_max` rule runs.
pub fn check_continuity_search(rule: &Rule, bounds: &Bounds) -> Result<AxiomReport> {
    let max_m = bounds.max_m.min(3);
    let n = bounds.pair_max_voters.min(2);
    let mut instances = 0;
    let mut failure = None;
    for m in bounds.min_m.max(1)..=max_m {
        let profiles = universe(m, n, rule.is_id_sensitive())?;
        let (seen, hit) = find_first(&profiles, |a| {
            for k in 1..m {
                if rule.apply(a, k)?.unique().is_none() {
                    continue;
                }
                for a2 in &profiles {
                    let report = check_continuity(rule, a, a2, k, bounds.j_max)?;
                    if report.verdict != Verdict::Pass {
                        return Ok(Some(report));
                    }
                }
            }
            Ok(None)
        })?;
        instances += seen;
        if hit.is_some() {
            failure = hit;
            break;
        }
    }
    let describe = format!("m in {}..={max_m}, n <= {n} per side, j <= {}", bounds.min_m.max(1), bounds.j_max);
    Ok(match failure {
        None => AxiomReport {
            axiom: Axiom::Continuity,
            subject: rule.name().to_string(),
            verdict: Verdict::Pass,
            witness: None,
            bounds: describe,
            instances,
            note: format!("{EXISTENTIAL_NOTE}; a suitable j was found for every pair"),
        },
        Some(report) => AxiomReport { bounds: describe, instances, ..report },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::counting::ThieleCounting;

    #[test]
    fn non_imposition_examples() {
        let b = Bounds::small(3, 2).with_m(3, 3);
        assert_eq!(check_non_imposition(&catalog::seq_av(3).unwrap(), &b).unwrap().verdict, Verdict::Pass);
        let trivial = check_non_imposition(&catalog::trivial(), &b).unwrap();
        assert_eq!(trivial.verdict, Verdict::Inconclusive);
        assert!(trivial.note.contains("structural ties"));
        assert!(trivial.witness.unwrap().replay(&catalog::trivial()).unwrap());
    }

    #[test]
    fn seq_ccav_elects_ab_uniquely() {
        let a = Profile::from_counts(3, &[(2, &[0]), (1, &[1])]).unwrap();
        let f = catalog::seq_ccav(3).unwrap().apply(&a, 2).unwrap();
        assert_eq!(f.unique(), Some(Committee::from_indices(&[0, 1]).unwrap()));
    }

    #[test]
    fn continuity_examples() {
        let av = catalog::seq_av(2).unwrap();
        let two_a = Profile::from_counts(2, &[(2, &[0])]).unwrap();
        let one_b = Profile::from_counts(2, &[(1, &[1])]).unwrap();
        let report = check_continuity(&av, &two_a, &one_b, 1, 10).unwrap();
        assert_eq!((report.verdict, report.instances), (Verdict::Pass, 1));

        let one_a = Profile::from_counts(2, &[(1, &[0])]).unwrap();
        let two_b = Profile::from_counts(2, &[(2, &[1])]).unwrap();
        let report = check_continuity(&av, &one_a, &two_b, 1, 10).unwrap();
        assert_eq!((report.verdict, report.instances), (Verdict::Pass, 3));
        assert!(report.witness.unwrap().replay(&av).unwrap());

        let tie = Profile::from_counts(2, &[(1, &[0]), (1, &[1])]).unwrap();
        assert!(matches!(check_continuity(&av, &tie, &one_b, 1, 10), Err(Error::Precondition(_))));
    }

    #[test]
    fn certificate_matches_search() {
        let v = Valuation::thiele(ThieleCounting::av(2).unwrap());
        let one_a = Profile::from_counts(2, &[(1, &[0])]).unwrap();
        let two_b = Profile::from_counts(2, &[(2, &[1])]).unwrap();
        assert_eq!(continuity_certificate(&v, &one_a, &two_b, 1).unwrap(), 3);
        assert_eq!(continuity_certificate(&v, &two_b, &one_a, 1).unwrap(), 1);
    }

    #[test]
    fn seq_pav_continuity_search() {
        let r = check_continuity_search(&catalog::seq_pav(3).unwrap(), &Bounds::small(3, 2)).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }
}
