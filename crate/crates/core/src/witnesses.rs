//! Explicit counterexample profiles for the clone axioms, built from a
//! Thiele counting function `h`.
//!
//! Every construction first normalizes `h` to `h(0) = 0`, `h(1) = 1`, reads
//! off the first index `x` where `h` departs from the rule the axiom
//! characterizes, and sizes the profile by the smallest `ℓ` with `ℓΔ > 1`
//! for the gap `Δ` at `x`. Candidates `c₁, ..., c_x` are `0..x`; auxiliary
//! candidates come next. Extra candidates are approved by nobody.

use crate::axioms::{
    acceptance_violation, bloc_violation, distrust_violation, rejection_violation, Axiom, AxiomWitness,
};
use crate::catalog::make_seq_thiele;
use crate::counting::ThieleCounting;
use crate::engine::Rule;
use crate::error::{Error, Result};
use crate::family::CommitteeFamily;
use crate::profile::Profile;
use crate::rational::Rational;
use crate::sets::{CandSet, Committee};

/// A constructed profile that should violate `axiom` at committee size `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub axiom: Axiom,
    /// How the profile is built, in words.
    pub construction: String,
    pub x: usize,
    pub delta: Rational,
    pub ell: u64,
    pub profile: Profile,
    pub k: usize,
    /// Families the construction predicts, each at its own size.
    pub expected: Vec<CommitteeFamily>,
    /// The predicted violation, in words.
    pub claim: String,
}

/// What a rule does on a witness profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    /// `f(A, 0), ..., f(A, k)`.
    pub observed: Vec<CommitteeFamily>,
    pub expected_match: bool,
    pub violation: Option<AxiomWitness>,
}

impl WitnessCheck {
    pub fn holds(&self) -> bool {
        self.expected_match && self.violation.is_some()
    }
}

impl Witness {
    /// Runs `rule` on the profile and evaluates the axiom's predicate.
    pub fn verify(&self, rule: &Rule) -> Result<WitnessCheck> {
        let observed = rule.trace(&self.profile, self.k)?;
        let expected_match = self.expected.iter().all(|f| observed[f.k()] == *f);
        let violation = match self.axiom {
            Axiom::CloneRejection => rejection_violation(&self.profile, &observed),
            Axiom::Distrust => distrust_violation(&self.profile, &observed),
            Axiom::CloneAcceptance => acceptance_violation(&self.profile, &observed),
            Axiom::CloneProportionality => {
                let c = self.x;
                let n2 = self.profile.singleton_reports(c);
                bloc_violation(&self.profile, c, self.profile.len() - n2, n2, &observed)
            }
            other => return Err(Error::NotApplicable(format!("no witness construction for {other}"))),
        };
        Ok(WitnessCheck { observed, expected_match, violation })
    }
}

fn normalize(h: &ThieleCounting) -> Result<ThieleCounting> {
    make_seq_thiele("h", h.clone())?;
    h.normalized()
}

fn range(from: usize, to: usize) -> CandSet {
    CandSet::from_indices(&(from..to).collect::<Vec<_>>()).expect("indices below m")
}

fn needs_candidates(h: &ThieleCounting, needed: usize) -> Result<()> {
    if h.m() < needed {
        return Err(Error::Precondition(format!(
            "the construction needs m >= {needed}, h is defined for m = {}",
            h.m()
        )));
    }
    Ok(())
}

fn minimal_ell(delta: &Rational) -> u64 {
    delta.smallest_multiplier_exceeding(&Rational::one()).expect("gap is positive")
}

fn check_ell(ell: u64, minimal: u64) -> Result<()> {
    if ell < minimal {
        return Err(Error::Precondition(format!("ℓ = {ell} is below the smallest valid ℓ = {minimal}")));
    }
    Ok(())
}

fn groups(m: usize, blocs: &[(u64, CandSet)]) -> Result<Profile> {
    let lists: Vec<(usize, Vec<usize>)> =
        blocs.iter().filter(|(n, _)| *n > 0).map(|(n, s)| (*n as usize, s.to_vec())).collect();
    let refs: Vec<(usize, &[usize])> = lists.iter().map(|(n, s)| (*n, s.as_slice())).collect();
    Profile::from_counts(m, &refs)
}

fn family(m: usize, k: usize, committees: &[Committee]) -> Result<CommitteeFamily> {
    CommitteeFamily::new(crate::sets::CandidateSet::new(m)?, k, committees.iter().copied())
}

/// Checks the witness on the rules of the normalized and the original `h`.
fn self_verify(w: Witness, h: &ThieleCounting) -> Result<Witness> {
    for (label, table) in [("normalized", h.normalized()?), ("original", h.clone())] {
        let check = w.verify(&make_seq_thiele(label, table)?)?;
        if !check.holds() {
            return Err(Error::NoWitness(format!(
                "the {label} rule does not reproduce the {} construction (observed {:?})",
                w.axiom, check.observed
            )));
        }
    }
    Ok(w)
}

fn rejection_parameters(hn: &ThieleCounting) -> Result<(usize, Rational)> {
    let one = Rational::one();
    (2..=hn.m())
        .find(|&x| hn.value(x) > &one)
        .map(|x| (x, hn.value(x) - &one))
        .ok_or_else(|| Error::NoWitness("h is Chamberlin-Courant up to normalization and rejects clones".into()))
}

/// A unique winning committee `{c₁, ..., c_x}` containing the clones `c₁, c₂`.
pub fn witness_clone_rejection(h: &ThieleCounting) -> Result<Witness> {
    let hn = normalize(h)?;
    let (_, delta) = rejection_parameters(&hn)?;
    witness_clone_rejection_with_ell(h, minimal_ell(&delta))
}

pub fn witness_clone_rejection_with_ell(h: &ThieleCounting, ell: u64) -> Result<Witness> {
    let hn = normalize(h)?;
    let (x, delta) = rejection_parameters(&hn)?;
    check_ell(ell, minimal_ell(&delta))?;
    needs_candidates(h, x + 1)?;
    let m = h.m();
    let mut blocs = vec![(ell, range(0, x)), (x as u64, range(0, 2))];
    for i in 3..=x + 1 {
        blocs.push(((x + 2 - i) as u64, CandSet::singleton(i - 1)));
    }
    let winners = range(0, x);
    let w = Witness {
        axiom: Axiom::CloneRejection,
        construction: format!(
            "ℓ voters approve c1..c{x}, {x} voters approve c1 and c2, and x+2-i voters approve only ci for i in 3..={}",
            x + 1
        ),
        x,
        delta,
        ell,
        profile: groups(m, &blocs)?,
        k: x,
        expected: vec![family(m, x, &[winners])?],
        claim: format!("{} is the unique winner but contains the clones a and b", winners.letters()),
    };
    self_verify(w, h)
}

/// First `x` with `h(x) != x`, and the signed gap `h(x) - x`.
fn av_departure(hn: &ThieleCounting) -> Option<(usize, Rational)> {
    (2..=hn.m()).map(|x| (x, hn.value(x) - &Rational::from(x))).find(|(_, d)| !d.is_zero())
}

fn distrust_parameters(hn: &ThieleCounting) -> Result<(usize, Rational)> {
    match av_departure(hn) {
        None => Err(Error::NotApplicable("h is approval voting up to normalization and is distrusting".into())),
        Some((_, d)) if d.is_negative() => {
            Err(Error::NotApplicable("h falls below approval voting first; use the clone-acceptance witness".into()))
        }
        Some(found) => Ok(found),
    }
}

/// `ℓ` voters approve `W ∪ {c}`, `ℓ + 1` voters approve `{d}` and two voters
/// approve `W`, with `|W| = x - 1`. The unique winner `W ∪ {c}` excludes `d`
/// although more voters report `{d}` than approve `c`.
pub fn witness_distrust(h: &ThieleCounting) -> Result<Witness> {
    let hn = normalize(h)?;
    let (_, delta) = distrust_parameters(&hn)?;
    witness_distrust_with_ell(h, minimal_ell(&delta))
}

pub fn witness_distrust_with_ell(h: &ThieleCounting, ell: u64) -> Result<Witness> {
    let hn = normalize(h)?;
    let (x, delta) = distrust_parameters(&hn)?;
    check_ell(ell, minimal_ell(&delta))?;
    needs_candidates(h, x + 1)?;
    let m = h.m();
    let w_set = range(0, x - 1);
    let (c, d) = (x - 1, x);
    let winner = w_set.with(c);
    let w = Witness {
        axiom: Axiom::Distrust,
        construction: format!(
            "ℓ voters approve W ∪ {{c}}, ℓ+1 voters approve {{d}}, two voters approve W, with |W| = {}",
            x - 1
        ),
        x,
        delta,
        ell,
        profile: groups(m, &[(ell, winner), (ell + 1, CandSet::singleton(d)), (2, w_set)])?,
        k: x,
        expected: vec![family(m, x, &[winner])?],
        claim: format!("{} wins alone though more voters report {{d}} than approve c", winner.letters()),
    };
    self_verify(w, h)
}

fn acceptance_parameters(hn: &ThieleCounting) -> Result<(usize, Rational)> {
    match av_departure(hn) {
        None => Err(Error::NotApplicable("h is approval voting up to normalization and accepts clones".into())),
        Some((_, d)) if d.is_positive() => {
            Err(Error::NotApplicable("h rises above approval voting first; use the distrust witness".into()))
        }
        Some((x, d)) => Ok((x, -d)),
    }
}

/// `ℓ` voters approve `W ∪ {c, d}` and `ℓ - 1` voters approve `{b}`, with
/// `|W| = x - 2`. Both `W ∪ {c}` and `W ∪ {d}` win at size `x - 1`, yet the
/// clones never win together at size `x`.
pub fn witness_clone_acceptance(h: &ThieleCounting) -> Result<Witness> {
    let hn = normalize(h)?;
    let (_, delta) = acceptance_parameters(&hn)?;
    witness_clone_acceptance_with_ell(h, minimal_ell(&delta))
}

pub fn witness_clone_acceptance_with_ell(h: &ThieleCounting, ell: u64) -> Result<Witness> {
    let hn = normalize(h)?;
    let (x, delta) = acceptance_parameters(&hn)?;
    check_ell(ell, minimal_ell(&delta))?;
    needs_candidates(h, x + 1)?;
    let m = h.m();
    let w_set = range(0, x - 2);
    let (c, d, b) = (x - 2, x - 1, x);
    let w = Witness {
        axiom: Axiom::CloneAcceptance,
        construction: format!("ℓ voters approve W ∪ {{c, d}} and ℓ-1 voters approve {{b}}, with |W| = {}", x - 2),
        x,
        delta,
        ell,
        profile: groups(m, &[(ell, w_set.with(c).with(d)), (ell - 1, CandSet::singleton(b))])?,
        k: x,
        expected: vec![
            family(m, x - 1, &[w_set.with(c), w_set.with(d)])?,
            family(m, x, &[w_set.with(b).with(c), w_set.with(b).with(d)])?,
        ],
        claim: "the clones c and d each win at size x-1 but never together at size x".into(),
    };
    self_verify(w, h)
}

/// First `x` with `h(x) != H_x`, and the signed gap `h(x) - H_x`.
fn pav_departure(hn: &ThieleCounting) -> Result<(usize, Rational)> {
    (2..=hn.m())
        .map(|x| (x, hn.value(x) - &Rational::harmonic(x)))
        .find(|(_, d)| !d.is_zero())
        .ok_or_else(|| Error::NoWitness("h is proportional approval voting up to normalization".into()))
}

fn proportionality_ell(x: usize, delta: &Rational) -> u64 {
    let scaled = delta * &Rational::from(x);
    minimal_ell(&scaled).max(x as u64)
}

/// Two blocs: voters approving `{c₁, ..., c_x}` and voters approving `{c}`.
/// When `h(x) > H_x`, `ℓx` against `ℓ + 1` voters elects `{c₁, ..., c_x}`
/// though `c` deserves a seat; when `h(x) < H_x`, `ℓx + 1` against `ℓ`
/// voters always seats `c` though it does not deserve one.
pub fn witness_clone_proportionality(h: &ThieleCounting) -> Result<Witness> {
    let hn = normalize(h)?;
    let (x, gap) = pav_departure(&hn)?;
    witness_clone_proportionality_with_ell(h, proportionality_ell(x, &gap.abs()))
}

pub fn witness_clone_proportionality_with_ell(h: &ThieleCounting, ell: u64) -> Result<Witness> {
    let hn = normalize(h)?;
    let (x, gap) = pav_departure(&hn)?;
    let delta = gap.abs();
    check_ell(ell, proportionality_ell(x, &delta))?;
    needs_candidates(h, x + 1)?;
    let m = h.m();
    let bloc = range(0, x);
    let c = x;
    let xl = ell * x as u64;
    let w = if gap.is_positive() {
        Witness {
            axiom: Axiom::CloneProportionality,
            construction: format!("ℓ·{x} voters approve c1..c{x} and ℓ+1 voters approve {{c}}"),
            x,
            delta,
            ell,
            profile: groups(m, &[(xl, bloc), (ell + 1, CandSet::singleton(c))])?,
            k: x,
            expected: vec![family(m, x, &[bloc])?],
            claim: format!("n1/k = {ell} < n2 = {} but {} wins without c", ell + 1, bloc.letters()),
        }
    } else {
        Witness {
            axiom: Axiom::CloneProportionality,
            construction: format!("ℓ·{x}+1 voters approve c1..c{x} and ℓ voters approve {{c}}"),
            x,
            delta,
            ell,
            profile: groups(m, &[(xl + 1, bloc), (ell, CandSet::singleton(c))])?,
            k: x,
            expected: vec![],
            claim: format!("n1/k = {}/{x} > n2 = {ell} but every winning committee contains c", xl + 1),
        }
    };
    self_verify(w, h)
}

/// A pair `(A, A')` on which seqAV with Chamberlin-Courant tie-breaking
/// never returns to `f(A, k)`, however often `A` is replicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuityWitness {
    pub a: Profile,
    pub a_prime: Profile,
    pub k: usize,
    pub explanation: &'static str,
}

/// `A = {a}, {a, b}, {c}` elects `{a, c}` at size 2: `b` and `c` tie on
/// approvals after `a` and only `c` covers a new voter. One extra `{b}`
/// voter in `A'` gives `b` a strict approval lead in `jA + A'` for every `j`,
/// so the tie-break never applies again.
pub fn cc_tiebreak_continuity() -> ContinuityWitness {
    ContinuityWitness {
        a: Profile::from_counts(3, &[(1, &[0]), (1, &[0, 1]), (1, &[2])]).expect("valid profile"),
        a_prime: Profile::from_counts(3, &[(1, &[1])]).expect("valid profile"),
        k: 2,
        explanation: "A decides b against c only by the tie-break, and A' turns that tie into a strict approval \
                      lead for b that replication of A preserves",
    }
}
