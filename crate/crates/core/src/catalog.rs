//! Named rules: the standard sequential Thiele and step-scoring rules, and a
//! zoo of rules that each drop one axiom.

use std::collections::BTreeSet;

use crate::axioms::Axiom;
use crate::counting::{
    validate_step_counting, validate_step_thiele, validate_thiele, StepCounting, StepThieleCounting, ThieleCounting,
    Valuation,
};
use crate::engine::{argmax_extensions, GeneratorFunction, Rule, RuleClass};
use crate::error::{Error, Result};
use crate::family::CommitteeFamily;
use crate::oracle::brute_force_optimal;
use crate::profile::Profile;
use crate::rational::Rational;
use crate::sets::{Ballot, Committee};

pub fn make_seq_thiele(name: impl Into<String>, h: ThieleCounting) -> Result<Rule> {
    validate_thiele(&h).map_err(|e| Error::InvalidCounting(e.to_string()))?;
    Ok(Rule::sequential(name, RuleClass::SeqThiele, Valuation::thiele(h)))
}

pub fn make_step_thiele(name: impl Into<String>, h: StepThieleCounting) -> Result<Rule> {
    validate_step_thiele(&h).map_err(|e| Error::InvalidCounting(e.to_string()))?;
    Ok(Rule::sequential(name, RuleClass::StepThiele, Valuation::step_thiele(h)))
}

pub fn make_step_scoring(name: impl Into<String>, h: StepCounting) -> Result<Rule> {
    let check = validate_step_counting(&h);
    if !check.is_valid() {
        return Err(Error::InvalidCounting(format!(
            "no x with h(x+1,y,z) > h(x,y,z) for committee sizes {:?}",
            check.failing_steps
        )));
    }
    Ok(Rule::sequential(name, RuleClass::StepScoring, Valuation::step(h)))
}

pub fn seq_av(m: usize) -> Result<Rule> {
    make_seq_thiele("seqAV", ThieleCounting::av(m)?)
}

pub fn seq_pav(m: usize) -> Result<Rule> {
    make_seq_thiele("seqPAV", ThieleCounting::pav(m)?)
}

pub fn seq_ccav(m: usize) -> Result<Rule> {
    make_seq_thiele("seqCCAV", ThieleCounting::ccav(m)?)
}

pub fn seq_sav(m: usize) -> Result<Rule> {
    make_step_scoring("seqSAV", StepCounting::sav(m)?)
}

/// seqAV in odd steps, seqCCAV in even steps.
pub fn av_cc_alternating(m: usize) -> Result<Rule> {
    make_step_thiele("seqAV-CC-alternating", StepThieleCounting::av_cc_alternating(m)?)
}

pub fn clone_trusting(m: usize) -> Result<Rule> {
    make_seq_thiele("clone-trusting", ThieleCounting::clone_trusting(m)?)
}

/// seqAV with the ballot of voter 1 counted twice.
pub fn voter1_doubled_seq_av() -> Rule {
    let g = GeneratorFunction::new("voter1-doubled-seqAV", true, |a: &Profile, w| {
        argmax_extensions(a.candidates(), w, |x| {
            let total: usize =
                a.votes().iter().filter(|(_, b)| b.contains(x)).map(|(&id, _)| if id == 1 { 2 } else { 1 }).sum();
            Rational::from(total)
        })
    })
    .id_sensitive();
    Rule::generated("voter1-doubled-seqAV", RuleClass::Zoo, g).id_sensitive()
}

/// seqAV where approvals of candidate 0 count twice.
pub fn candidate_a_doubled_seq_av() -> Rule {
    let v = Valuation::custom("AV with candidate a doubled", |b: Ballot, w: Committee| {
        let hits = b.approved().intersection(w);
        Rational::from(hits.len() + usize::from(hits.contains(0)))
    });
    Rule::sequential("candidate-a-doubled-seqAV", RuleClass::Zoo, v)
}

/// Every committee of size `k` wins, whatever the profile.
pub fn trivial() -> Rule {
    Rule::custom("trivial", RuleClass::Zoo, |a: &Profile, k, cap| {
        let all = a.candidates().committees_of_size(k);
        if all.len() > cap {
            return Err(Error::BranchOverflow { cap });
        }
        CommitteeFamily::new(a.candidates(), k, all)
    })
}

/// seqAV whose ties are narrowed to the candidates with maximal
/// Chamberlin-Courant gain; remaining ties are kept.
pub fn cc_tiebreak_seq_av() -> Rule {
    let g = GeneratorFunction::new("cc-tiebreak-seqAV", true, |a: &Profile, w| {
        let av_winners = argmax_extensions(a.candidates(), w, |x| Rational::from(a.approval_score(x)))?;
        let newly_covered = |x: usize| a.ballots().filter(|b| b.contains(x) && b.overlap(w) == 0).count();
        let best = av_winners.iter().map(newly_covered).max().expect("argmax is nonempty");
        Ok(av_winners.iter().filter(|&x| newly_covered(x) == best).fold(Committee::EMPTY, |s, x| s.with(x)))
    });
    Rule::generated("cc-tiebreak-seqAV", RuleClass::Zoo, g)
}

/// Committees of size `k` with maximal total `h` score.
pub fn optimizing_thiele(name: impl Into<String>, h: ThieleCounting) -> Result<Rule> {
    validate_thiele(&h).map_err(|e| Error::InvalidCounting(e.to_string()))?;
    let v = Valuation::thiele(h);
    Ok(Rule::custom(name, RuleClass::Oracle, move |a: &Profile, k, _| brute_force_optimal(&v, a, k)))
}

/// Reverse sequential Thiele: start from all candidates and repeatedly drop
/// the candidates whose removal keeps the score highest, branching on ties.
pub fn reverse_seq_thiele(name: impl Into<String>, h: ThieleCounting) -> Result<Rule> {
    validate_thiele(&h).map_err(|e| Error::InvalidCounting(e.to_string()))?;
    let v = Valuation::thiele(h);
    Ok(Rule::custom(name, RuleClass::Zoo, move |a: &Profile, k, cap| {
        v.check_compatible(a.m())?;
        let score = |w: Committee| a.ballots().map(|b| v.eval(*b, w)).sum::<Rational>();
        let mut level: BTreeSet<Committee> = [a.candidates().all()].into();
        for _ in k..a.m() {
            let mut next = BTreeSet::new();
            for w in &level {
                let scores: Vec<(usize, Rational)> = w.iter().map(|x| (x, score(w.without(x)))).collect();
                let best = scores.iter().map(|(_, s)| s).max().expect("committee is nonempty");
                next.extend(scores.iter().filter(|(_, s)| s == best).map(|(x, _)| w.without(*x)));
                if next.len() > cap {
                    return Err(Error::BranchOverflow { cap });
                }
            }
            level = next;
        }
        CommitteeFamily::new(a.candidates(), k, level)
    }))
}

/// Registry entry for a named rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleSpec {
    pub name: &'static str,
    pub class: RuleClass,
    pub summary: &'static str,
    /// The axiom this rule is built to violate, if any.
    pub violates: Option<Axiom>,
}

const fn spec(name: &'static str, class: RuleClass, summary: &'static str, violates: Option<Axiom>) -> RuleSpec {
    RuleSpec { name, class, summary, violates }
}

pub const RULES: &[RuleSpec] = &[
    spec("seqAV", RuleClass::SeqThiele, "sequential approval voting, h(x) = x", None),
    spec("seqPAV", RuleClass::SeqThiele, "sequential proportional approval voting, h(x) = 1 + 1/2 + ... + 1/x", None),
    spec("seqCCAV", RuleClass::SeqThiele, "sequential Chamberlin-Courant, h(x) = min(x, 1)", None),
    spec("seqSAV", RuleClass::StepScoring, "sequential satisfaction approval voting, h(x,y,z) = x/z", None),
    spec("seqAV-CC-alternating", RuleClass::StepThiele, "seqAV in odd steps, seqCCAV in even steps", None),
    spec("voter1-doubled-seqAV", RuleClass::Zoo, "seqAV counting voter 1 twice", Some(Axiom::Anonymity)),
    spec("candidate-a-doubled-seqAV", RuleClass::Zoo, "seqAV counting approvals of a twice", Some(Axiom::Neutrality)),
    spec("trivial", RuleClass::Zoo, "every committee of size k wins", Some(Axiom::NonImposition)),
    spec("cc-tiebreak-seqAV", RuleClass::Zoo, "seqAV with Chamberlin-Courant tie-breaking", Some(Axiom::Continuity)),
    spec("optimizing-AV", RuleClass::Oracle, "committees maximizing total AV score", None),
    spec(
        "optimizing-PAV",
        RuleClass::Oracle,
        "committees maximizing total PAV score",
        Some(Axiom::CommitteeMonotonicity),
    ),
    spec("optimizing-CCAV", RuleClass::Oracle, "committees maximizing total CC score", None),
    spec("reverse-seqAV", RuleClass::Zoo, "reverse sequential AV (coincides with seqAV)", None),
    spec("reverse-seqPAV", RuleClass::Zoo, "reverse sequential PAV", Some(Axiom::GeneratorConsistency)),
    spec("reverse-seqCCAV", RuleClass::Zoo, "reverse sequential Chamberlin-Courant", Some(Axiom::GeneratorConsistency)),
    spec("clone-trusting", RuleClass::SeqThiele, "Thiele rule with h(x) = 2x + 1 for x >= 2", Some(Axiom::Distrust)),
];

pub fn rule_spec(name: &str) -> Option<&'static RuleSpec> {
    RULES.iter().find(|s| s.name == name)
}

/// Builds a named rule for profiles over `m` candidates.
pub fn by_name(name: &str, m: usize) -> Result<Rule> {
    match name {
        "seqAV" => seq_av(m),
        "seqPAV" => seq_pav(m),
        "seqCCAV" => seq_ccav(m),
        "seqSAV" => seq_sav(m),
        "seqAV-CC-alternating" => av_cc_alternating(m),
        "voter1-doubled-seqAV" => Ok(voter1_doubled_seq_av()),
        "candidate-a-doubled-seqAV" => Ok(candidate_a_doubled_seq_av()),
        "trivial" => Ok(trivial()),
        "cc-tiebreak-seqAV" => Ok(cc_tiebreak_seq_av()),
        "optimizing-AV" => optimizing_thiele(name, ThieleCounting::av(m)?),
        "optimizing-PAV" => optimizing_thiele(name, ThieleCounting::pav(m)?),
        "optimizing-CCAV" => optimizing_thiele(name, ThieleCounting::ccav(m)?),
        "reverse-seqAV" => reverse_seq_thiele(name, ThieleCounting::av(m)?),
        "reverse-seqPAV" => reverse_seq_thiele(name, ThieleCounting::pav(m)?),
        "reverse-seqCCAV" => reverse_seq_thiele(name, ThieleCounting::ccav(m)?),
        "clone-trusting" => clone_trusting(m),
        _ => Err(Error::UnknownRule(name.to_string())),
    }
}

/// The step-scoring rules of the catalog, as `(name, table)` for `m` candidates.
pub fn counting_tables(m: usize) -> Result<Vec<(&'static str, StepCounting)>> {
    Ok(vec![
        ("seqAV", ThieleCounting::av(m)?.to_step_counting()),
        ("seqPAV", ThieleCounting::pav(m)?.to_step_counting()),
        ("seqCCAV", ThieleCounting::ccav(m)?.to_step_counting()),
        ("seqSAV", StepCounting::sav(m)?),
        ("seqAV-CC-alternating", StepThieleCounting::av_cc_alternating(m)?.to_step_counting()),
        ("clone-trusting", ThieleCounting::clone_trusting(m)?.to_step_counting()),
    ])
}
