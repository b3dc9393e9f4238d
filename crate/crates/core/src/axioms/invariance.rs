use super::{arrangements, find_first, universe, Axiom, AxiomReport, AxiomWitness, Bounds, Observation};
use crate::engine::Rule;
use crate::error::Result;
use crate::profile::{CandidatePermutation, Profile};

/// `f(π(A), k) = f(A, k)` for every reassignment of ballots to voter ids,
/// plus a shift of all ids past the original ones.
pub fn check_anonymity(rule: &Rule, bounds: &Bounds) -> Result<AxiomReport> {
    let mut instances = 0;
    for m in bounds.ms() {
        let profiles = universe(m, bounds.max_voters, rule.is_id_sensitive())?;
        let (seen, witness) = find_first(&profiles, |a| {
            let base = rule.trace(a, m)?;
            let shift = a.len() as u32;
            let mut images = arrangements(a)?;
            images.push(a.permute_voters(|id| id + shift)?);
            for image in images {
                let t = rule.trace(&image, m)?;
                if let Some(k) = (0..=m).find(|&k| t[k] != base[k]) {
                    return Ok(Some(AxiomWitness::new(
                        format!("renaming voters changes the outcome at k={k}"),
                        vec![
                            Observation::outcome("A", a.clone(), k, base[k].clone()),
                            Observation::outcome("π(A)", image, k, t[k].clone()),
                        ],
                    )));
                }
            }
            Ok(None)
        })?;
        instances += seen;
        if witness.is_some() {
            return Ok(AxiomReport::universal(
                Axiom::Anonymity,
                rule.name(),
                bounds.describe(bounds.max_voters),
                (instances, witness),
            ));
        }
    }
    Ok(AxiomReport::universal(Axiom::Anonymity, rule.name(), bounds.describe(bounds.max_voters), (instances, None)))
}

/// `f(τ(A), k) = τ(f(A, k))` for every candidate permutation `τ`.
pub fn check_neutrality(rule: &Rule, bounds: &Bounds) -> Result<AxiomReport> {
    let mut instances = 0;
    let describe = bounds.describe(bounds.max_voters);
    for m in bounds.ms() {
        let profiles = universe(m, bounds.max_voters, rule.is_id_sensitive())?;
        let perms: Vec<CandidatePermutation> = CandidatePermutation::all(m).skip(1).collect();
        let (seen, witness) = find_first(&profiles, |a: &Profile| {
            let base = rule.trace(a, m)?;
            for tau in &perms {
                let image = a.permute_candidates(tau)?;
                let t = rule.trace(&image, m)?;
                if let Some(k) = (0..=m).find(|&k| t[k] != base[k].permuted(tau)) {
                    return Ok(Some(AxiomWitness::new(
                        format!("renaming candidates by {:?} does not rename the outcome at k={k}", tau.images()),
                        vec![
                            Observation::outcome("A", a.clone(), k, base[k].clone()),
                            Observation::outcome("τ(A)", image, k, t[k].clone()),
                        ],
                    )));
                }
            }
            Ok(None)
        })?;
        instances += seen;
        if witness.is_some() {
            return Ok(AxiomReport::universal(Axiom::Neutrality, rule.name(), describe, (instances, witness)));
        }
    }
    Ok(AxiomReport::universal(Axiom::Neutrality, rule.name(), describe, (instances, None)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::Verdict;
    use crate::catalog;

    #[test]
    fn seq_av_is_anonymous_and_neutral() {
        let b = Bounds::small(3, 3);
        let rule = catalog::seq_av(3).unwrap();
        assert_eq!(check_anonymity(&rule, &b).unwrap().verdict, Verdict::PassExhaustive);
        assert_eq!(check_neutrality(&catalog::seq_pav(3).unwrap(), &b).unwrap().verdict, Verdict::PassExhaustive);
    }

    #[test]
    fn trivial_is_anonymous_and_neutral() {
        let b = Bounds::small(3, 3);
        assert_eq!(check_anonymity(&catalog::trivial(), &b).unwrap().verdict, Verdict::PassExhaustive);
        assert_eq!(check_neutrality(&catalog::trivial(), &b).unwrap().verdict, Verdict::PassExhaustive);
    }

    #[test]
    fn voter1_doubled_breaks_anonymity() {
        let rule = catalog::voter1_doubled_seq_av();
        let report = check_anonymity(&rule, &Bounds::small(3, 3)).unwrap();
        assert_eq!(report.verdict, Verdict::Violation);
        let w = report.witness.unwrap();
        assert!(w.replay(&rule).unwrap());
        let expected = Profile::from_counts(2, &[(1, &[0]), (1, &[1])]).unwrap();
        assert_eq!(w.observations[0].profile(), &expected);
    }

    #[test]
    fn candidate_a_doubled_breaks_neutrality() {
        let rule = catalog::candidate_a_doubled_seq_av();
        let report = check_neutrality(&rule, &Bounds::small(3, 3)).unwrap();
        assert_eq!(report.verdict, Verdict::Violation);
        assert!(report.witness.unwrap().replay(&rule).unwrap());
    }
}
