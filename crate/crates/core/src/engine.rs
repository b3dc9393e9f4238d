//! Execution of sequential valuation rules and generator functions.
//!
//! Ties are never broken here: every maximal extension is kept, and the
//! branching stops with [`Error::BranchOverflow`] instead of pruning.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::counting::{committee_score, Valuation, WeightFunction};
use crate::error::{Error, Result};
use crate::family::CommitteeFamily;
use crate::profile::Profile;
use crate::rational::Rational;
use crate::sets::{CandSet, CandidateSet, Committee};

pub const DEFAULT_BRANCH_CAP: usize = 100_000;

/// Candidates outside `w` whose score is maximal. `score(x)` is evaluated
/// once per candidate.
pub fn argmax_extensions(
    candidates: CandidateSet,
    w: Committee,
    mut score: impl FnMut(usize) -> Rational,
) -> Result<CandSet> {
    let outside = candidates.all().difference(w);
    if outside.is_empty() {
        return Err(Error::NoCandidates);
    }
    let mut best: Option<Rational> = None;
    let mut winners = CandSet::EMPTY;
    for x in outside.iter() {
        let s = score(x);
        match best.as_ref().map(|b| s.cmp(b)) {
            None | Some(std::cmp::Ordering::Greater) => {
                best = Some(s);
                winners = CandSet::singleton(x);
            }
            Some(std::cmp::Ordering::Equal) => winners = winners.with(x),
            Some(std::cmp::Ordering::Less) => {}
        }
    }
    Ok(winners)
}

/// `g(A, W)`: candidates whose addition maximizes `s_v(A, W ∪ {x})`.
pub fn generator_step(v: &Valuation, a: &Profile, w: Committee) -> Result<CandSet> {
    v.check_compatible(a.m())?;
    a.candidates().check(w)?;
    argmax_extensions(a.candidates(), w, |x| {
        let wx = w.with(x);
        a.ballots().map(|b| v.eval(*b, wx)).sum()
    })
}

/// Grows committee families level by level with `extend`, returning
/// `f(A, 0), ..., f(A, k)`.
pub fn run_generated_trace(
    candidates: CandidateSet,
    k: usize,
    branch_cap: usize,
    mut extend: impl FnMut(Committee) -> Result<CandSet>,
) -> Result<Vec<CommitteeFamily>> {
    if k > candidates.m() {
        return Err(Error::CommitteeTooLarge { k, m: candidates.m() });
    }
    let mut trace = vec![CommitteeFamily::empty_committee(candidates)];
    let mut level: BTreeSet<Committee> = [Committee::EMPTY].into();
    for size in 1..=k {
        let mut next = BTreeSet::new();
        for w in &level {
            let ext = extend(*w)?;
            if ext.is_empty() {
                return Err(Error::Precondition(format!("generator returned no candidates for {w:?}")));
            }
            for x in ext.iter() {
                next.insert(w.with(x));
            }
            if next.len() > branch_cap {
                return Err(Error::BranchOverflow { cap: branch_cap });
            }
        }
        trace.push(CommitteeFamily::new(candidates, size, next.iter().copied())?);
        level = next;
    }
    Ok(trace)
}

/// `f(A, 0), ..., f(A, k)` for the sequential rule of `v`.
pub fn run_sequential_trace(v: &Valuation, a: &Profile, k: usize, branch_cap: usize) -> Result<Vec<CommitteeFamily>> {
    v.check_compatible(a.m())?;
    run_generated_trace(a.candidates(), k, branch_cap, |w| generator_step(v, a, w))
}

pub fn run_sequential(v: &Valuation, a: &Profile, k: usize) -> Result<CommitteeFamily> {
    run_sequential_with_cap(v, a, k, DEFAULT_BRANCH_CAP)
}

pub fn run_sequential_with_cap(v: &Valuation, a: &Profile, k: usize, branch_cap: usize) -> Result<CommitteeFamily> {
    Ok(run_sequential_trace(v, a, k, branch_cap)?.pop().expect("trace has k + 1 levels"))
}

/// `AV_v(A, W)`: maximize `Σ_{i : c ∈ A_i} v(|W ∩ A_i|, |A_i|)`.
pub fn weighted_approval_step(v: &WeightFunction, a: &Profile, w: Committee) -> Result<CandSet> {
    if v.m() < a.m() {
        return Err(Error::MismatchedCandidates { left: a.m(), right: v.m() });
    }
    a.candidates().check(w)?;
    argmax_extensions(a.candidates(), w, |c| {
        a.ballots().filter(|b| b.contains(c)).map(|b| v.value(b.overlap(w), b.len()).clone()).sum()
    })
}

/// The generator extracted from a rule: `{x : W ∪ {x} ∈ f(A, |W| + 1)}` when
/// `W ∈ f(A, |W|)`, and `∅` otherwise.
pub fn derive_generator(rule: &Rule, a: &Profile, w: Committee) -> Result<CandSet> {
    a.candidates().check(w)?;
    if w == a.candidates().all() {
        return Err(Error::NoCandidates);
    }
    let trace = rule.trace(a, w.len() + 1)?;
    if !trace[w.len()].contains(&w) {
        return Ok(CandSet::EMPTY);
    }
    Ok(trace[w.len() + 1].iter().filter(|x| w.is_subset(**x)).fold(CandSet::EMPTY, |acc, x| acc.union(x.difference(w))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleClass {
    SeqThiele,
    StepThiele,
    StepScoring,
    Zoo,
    Oracle,
}

impl RuleClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            RuleClass::SeqThiele => "seq-thiele",
            RuleClass::StepThiele => "step-thiele",
            RuleClass::StepScoring => "step-scoring",
            RuleClass::Zoo => "zoo",
            RuleClass::Oracle => "oracle",
        }
    }
}

type RuleFn = dyn Fn(&Profile, usize, usize) -> Result<CommitteeFamily> + Send + Sync;

#[derive(Clone)]
enum RuleBody {
    Sequential(Valuation),
    Generated(GeneratorFunction),
    /// Arguments are the profile, `k`, and the branch cap.
    Custom(Arc<RuleFn>),
}

/// An executable ABC voting rule `(A, k) -> f(A, k)`.
#[derive(Clone)]
pub struct Rule {
    name: String,
    class: RuleClass,
    id_sensitive: bool,
    branch_cap: usize,
    body: RuleBody,
}

impl Rule {
    /// The sequential valuation rule of `v`.
    pub fn sequential(name: impl Into<String>, class: RuleClass, v: Valuation) -> Rule {
        Rule {
            name: name.into(),
            class,
            id_sensitive: false,
            branch_cap: DEFAULT_BRANCH_CAP,
            body: RuleBody::Sequential(v),
        }
    }

    /// The rule generated by a complete generator function.
    pub fn generated(name: impl Into<String>, class: RuleClass, g: GeneratorFunction) -> Rule {
        Rule {
            name: name.into(),
            class,
            id_sensitive: false,
            branch_cap: DEFAULT_BRANCH_CAP,
            body: RuleBody::Generated(g),
        }
    }

    pub fn custom(
        name: impl Into<String>,
        class: RuleClass,
        apply: impl Fn(&Profile, usize, usize) -> Result<CommitteeFamily> + Send + Sync + 'static,
    ) -> Rule {
        Rule {
            name: name.into(),
            class,
            id_sensitive: false,
            branch_cap: DEFAULT_BRANCH_CAP,
            body: RuleBody::Custom(Arc::new(apply)),
        }
    }

    /// Marks a rule whose outcome depends on voter ids.
    pub fn id_sensitive(mut self) -> Rule {
        self.id_sensitive = true;
        self
    }

    pub fn with_branch_cap(mut self, cap: usize) -> Rule {
        self.branch_cap = cap;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn class(&self) -> RuleClass {
        self.class
    }

    pub fn is_id_sensitive(&self) -> bool {
        self.id_sensitive
    }

    pub fn branch_cap(&self) -> usize {
        self.branch_cap
    }

    /// The valuation, for sequential valuation rules.
    pub fn valuation(&self) -> Option<&Valuation> {
        match &self.body {
            RuleBody::Sequential(v) => Some(v),
            _ => None,
        }
    }

    /// The generator, for rules built from one.
    pub fn generator(&self) -> Option<&GeneratorFunction> {
        match &self.body {
            RuleBody::Generated(g) => Some(g),
            _ => None,
        }
    }

    pub fn apply(&self, a: &Profile, k: usize) -> Result<CommitteeFamily> {
        if k > a.m() {
            return Err(Error::CommitteeTooLarge { k, m: a.m() });
        }
        match &self.body {
            RuleBody::Sequential(v) => run_sequential_with_cap(v, a, k, self.branch_cap),
            RuleBody::Generated(_) => Ok(self.trace(a, k)?.pop().expect("trace has k + 1 levels")),
            RuleBody::Custom(f) => {
                let family = f(a, k, self.branch_cap)?;
                debug_assert_eq!(family.k(), k);
                Ok(family)
            }
        }
    }

    /// `f(A, 0), ..., f(A, k)`, each computed as [`Rule::apply`] would.
    pub fn trace(&self, a: &Profile, k: usize) -> Result<Vec<CommitteeFamily>> {
        match &self.body {
            RuleBody::Sequential(v) => run_sequential_trace(v, a, k, self.branch_cap),
            RuleBody::Generated(g) => run_generated_trace(a.candidates(), k, self.branch_cap, |w| g.apply(a, w)),
            RuleBody::Custom(_) => (0..=k).map(|j| self.apply(a, j)).collect(),
        }
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rule({}, {})", self.name, self.class.as_str())
    }
}

type GeneratorFn = dyn Fn(&Profile, Committee) -> Result<CandSet> + Send + Sync;

/// A generator function `g(A, W) ⊆ C \ W`.
#[derive(Clone)]
pub struct GeneratorFunction {
    name: String,
    complete: bool,
    id_sensitive: bool,
    step: Arc<GeneratorFn>,
}

impl GeneratorFunction {
    pub fn new(
        name: impl Into<String>,
        complete: bool,
        step: impl Fn(&Profile, Committee) -> Result<CandSet> + Send + Sync + 'static,
    ) -> Self {
        GeneratorFunction { name: name.into(), complete, id_sensitive: false, step: Arc::new(step) }
    }

    /// [`generator_step`] of a valuation; complete.
    pub fn from_valuation(name: impl Into<String>, v: Valuation) -> Self {
        GeneratorFunction::new(name, true, move |a, w| generator_step(&v, a, w))
    }

    /// [`derive_generator`] of a rule; partial.
    pub fn derived(rule: Rule) -> Self {
        let name = format!("derived({})", rule.name());
        let id_sensitive = rule.is_id_sensitive();
        let g = GeneratorFunction::new(name, false, move |a, w| derive_generator(&rule, a, w));
        GeneratorFunction { id_sensitive, ..g }
    }

    /// Marks a generator whose output depends on voter ids.
    pub fn id_sensitive(mut self) -> Self {
        self.id_sensitive = true;
        self
    }

    pub fn is_id_sensitive(&self) -> bool {
        self.id_sensitive
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn apply(&self, a: &Profile, w: Committee) -> Result<CandSet> {
        let out = (self.step)(a, w)?;
        if !out.intersection(w).is_empty() {
            return Err(Error::Precondition(format!("generator {} returned members of {w:?}", self.name)));
        }
        if self.complete && out.is_empty() {
            return Err(Error::Precondition(format!("complete generator {} returned no candidates", self.name)));
        }
        Ok(out)
    }
}

impl fmt::Debug for GeneratorFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GeneratorFunction({})", self.name)
    }
}

/// Marginal scores `s_v(A, W ∪ {x}) - s_v(A, W)` for every `x ∉ W`.
pub fn marginal_scores(v: &Valuation, a: &Profile, w: Committee) -> Result<Vec<(usize, Rational)>> {
    let base = committee_score(v, a, w)?;
    a.candidates().all().difference(w).iter().map(|x| Ok((x, committee_score(v, a, w.with(x))? - &base))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{StepCounting, ThieleCounting};

    fn p1() -> Profile {
        Profile::from_counts(3, &[(3, &[0, 1]), (1, &[2])]).unwrap()
    }

    fn set(indices: &[usize]) -> CandSet {
        CandSet::from_indices(indices).unwrap()
    }

    fn av() -> Valuation {
        Valuation::thiele(ThieleCounting::av(3).unwrap())
    }

    fn pav() -> Valuation {
        Valuation::thiele(ThieleCounting::pav(3).unwrap())
    }

    fn cc() -> Valuation {
        Valuation::thiele(ThieleCounting::ccav(3).unwrap())
    }

    fn fam(k: usize, ws: &[&[usize]]) -> CommitteeFamily {
        CommitteeFamily::new(CandidateSet::new(3).unwrap(), k, ws.iter().map(|w| set(w))).unwrap()
    }

    #[test]
    fn generator_step_examples() {
        assert_eq!(generator_step(&av(), &p1(), CandSet::EMPTY).unwrap(), set(&[0, 1]));
        assert_eq!(generator_step(&pav(), &p1(), set(&[0])).unwrap(), set(&[1]));
        let everyone = Profile::from_counts(3, &[(2, &[0, 1, 2])]).unwrap();
        for v in [av(), pav(), cc()] {
            for w in CandidateSet::new(3).unwrap().all_committees() {
                if w.len() < 3 {
                    assert_eq!(generator_step(&v, &everyone, w).unwrap(), CandSet::from_bits(0b111).difference(w));
                }
            }
        }
        assert_eq!(generator_step(&av(), &p1(), set(&[0, 1, 2])), Err(Error::NoCandidates));
    }

    #[test]
    fn pav_marginals() {
        let m = marginal_scores(&pav(), &p1(), set(&[0])).unwrap();
        assert_eq!(m, vec![(1, Rational::new(3, 2).unwrap()), (2, Rational::one())]);
    }

    #[test]
    fn run_sequential_examples() {
        for v in [av(), pav(), cc()] {
            assert_eq!(run_sequential(&v, &p1(), 0).unwrap(), fam(0, &[&[]]));
        }
        assert_eq!(run_sequential(&pav(), &p1(), 2).unwrap(), fam(2, &[&[0, 1]]));
        assert_eq!(run_sequential(&cc(), &p1(), 2).unwrap(), fam(2, &[&[0, 2], &[1, 2]]));
        assert_eq!(run_sequential(&av(), &p1(), 2).unwrap(), fam(2, &[&[0, 1]]));
        assert_eq!(run_sequential(&av(), &p1(), 4), Err(Error::CommitteeTooLarge { k: 4, m: 3 }));
    }

    #[test]
    fn pav_scores_on_p1() {
        let s = |w: &[usize]| committee_score(&pav(), &p1(), set(w)).unwrap();
        assert_eq!(s(&[0, 1]), Rational::new(9, 2).unwrap());
        assert_eq!(s(&[0, 2]), Rational::from_integer(4));
    }

    #[test]
    fn branch_cap_overflows_instead_of_pruning() {
        let everyone = Profile::from_counts(6, &[(1, &[0, 1, 2, 3, 4, 5])]).unwrap();
        let v = Valuation::thiele(ThieleCounting::av(6).unwrap());
        // 20 tied committees of size 3
        assert_eq!(run_sequential_with_cap(&v, &everyone, 3, 20).unwrap().len(), 20);
        assert_eq!(run_sequential_with_cap(&v, &everyone, 3, 19), Err(Error::BranchOverflow { cap: 19 }));
    }

    #[test]
    fn weighted_approval_examples() {
        let ones = WeightFunction::from_fn(3, |_, _| Rational::one()).unwrap();
        assert_eq!(weighted_approval_step(&ones, &p1(), CandSet::EMPTY).unwrap(), set(&[0, 1]));
        let c_only = Profile::from_counts(3, &[(1, &[2])]).unwrap();
        assert_eq!(weighted_approval_step(&ones, &c_only, CandSet::EMPTY).unwrap(), set(&[2]));
        let harmonic = WeightFunction::from_fn(3, |x, _| Rational::new(1, x as i64 + 1).unwrap()).unwrap();
        assert_eq!(weighted_approval_step(&harmonic, &p1(), set(&[0])).unwrap(), set(&[1]));
        assert_eq!(weighted_approval_step(&ones, &p1(), set(&[0, 1, 2])), Err(Error::NoCandidates));
    }

    #[test]
    fn derived_generator() {
        let seq_av = Rule::sequential("seqAV", RuleClass::SeqThiele, av());
        assert_eq!(derive_generator(&seq_av, &p1(), set(&[0])).unwrap(), set(&[1]));
        // {c} never wins at size 1
        assert_eq!(derive_generator(&seq_av, &p1(), set(&[2])).unwrap(), CandSet::EMPTY);
        let g = GeneratorFunction::derived(seq_av);
        assert!(!g.is_complete());
        assert_eq!(g.apply(&p1(), CandSet::EMPTY).unwrap(), set(&[0, 1]));
    }

    #[test]
    fn derived_generator_sees_other_parents() {
        // {a,c} wins at size 2 through {c}, although seqPAV adds only b to {a}
        let pav = Valuation::thiele(ThieleCounting::pav(3).unwrap());
        let rule = Rule::sequential("seqPAV", RuleClass::SeqThiele, pav.clone());
        let a = Profile::from_counts(3, &[(1, &[0]), (1, &[1]), (1, &[0, 2]), (1, &[1, 2])]).unwrap();
        assert_eq!(generator_step(&pav, &a, set(&[0])).unwrap(), set(&[1]));
        assert_eq!(derive_generator(&rule, &a, set(&[0])).unwrap(), set(&[1, 2]));
    }

    #[test]
    fn sav_generator() {
        let v = Valuation::step(StepCounting::sav(3).unwrap());
        // {a}: 1, {a,b}: 1/2 each, so a wins alone
        let p = Profile::from_counts(3, &[(1, &[0]), (1, &[0, 1])]).unwrap();
        assert_eq!(generator_step(&v, &p, CandSet::EMPTY).unwrap(), set(&[0]));
    }

    #[test]
    fn rule_apply_and_trace_agree() {
        let rule = Rule::sequential("seqPAV", RuleClass::SeqThiele, pav());
        let trace = rule.trace(&p1(), 3).unwrap();
        for (k, f) in trace.iter().enumerate() {
            assert_eq!(&rule.apply(&p1(), k).unwrap(), f);
        }
    }
}
