//! Counting functions, weight functions and valuations.
//!
//! Every counting function is a finite table over `0..=m`, so validation is
//! decidable and tables serialize exactly. Index conventions:
//!
//! * [`ThieleCounting`]: `h(x)`, `x ∈ 0..=m`.
//! * [`StepThieleCounting`]: `h(x, y)`, `x ∈ 0..=m`, `y ∈ 1..=m`.
//! * [`StepCounting`]: `h(x, y, z)`, `x ∈ 0..=m`, `y, z ∈ 1..=m`, where `x`
//!   is `|A_i ∩ W|`, `y` is `|W|` and `z` is `|A_i|`.
//! * [`StepWeights`]: `v(x, y, z)`, `x, y ∈ 0..m`, `z ∈ 1..=m`. Growing a
//!   committee from size `y` to `y + 1` adds `v(x, y, |A_i|)` for every voter
//!   that approves the new member and already approves `x` members, i.e.
//!   `h(x + 1, y + 1, z) = h(x, y + 1, z) + v(x, y, z)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::rational::Rational;
use crate::sets::{Ballot, Committee};

fn check_m(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Domain("tables need m >= 1".into()));
    }
    Ok(())
}

/// A Thiele counting function `h(x)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ThieleCounting {
    values: Vec<Rational>,
}

/// The first constraint a Thiele table (or one column of a step-dependent
/// Thiele table) violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThieleViolation {
    Negative { x: usize },
    Decreasing { x: usize },
    NoInitialIncrease,
}

impl fmt::Display for ThieleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThieleViolation::Negative { x } => write!(f, "h({x}) is negative"),
            ThieleViolation::Decreasing { x } => write!(f, "h({x}) < h({})", x - 1),
            ThieleViolation::NoInitialIncrease => write!(f, "h(1) > h(0) does not hold"),
        }
    }
}

impl ThieleCounting {
    /// `values[x] = h(x)` for `x ∈ 0..=m`.
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Domain(format!("h(x) needs entries for x in 0..=m with m >= 1, got {}", values.len())));
        }
        Ok(ThieleCounting { values })
    }

    pub fn from_fn(m: usize, f: impl FnMut(usize) -> Rational) -> Result<Self> {
        check_m(m)?;
        ThieleCounting::new((0..=m).map(f).collect())
    }

    /// From explicit `x -> h(x)` entries; every `x ∈ 0..=m` must be present.
    pub fn from_entries(m: usize, entries: &BTreeMap<usize, Rational>) -> Result<Self> {
        check_m(m)?;
        let mut values = Vec::with_capacity(m + 1);
        for x in 0..=m {
            values.push(entries.get(&x).cloned().ok_or_else(|| Error::Domain(format!("missing entry h({x})")))?);
        }
        if let Some(x) = entries.keys().find(|&&x| x > m) {
            return Err(Error::Domain(format!("entry h({x}) outside 0..={m}")));
        }
        ThieleCounting::new(values)
    }

    /// `h(x) = x`.
    pub fn av(m: usize) -> Result<Self> {
        ThieleCounting::from_fn(m, Rational::from)
    }

    /// `h(x) = 1 + 1/2 + ... + 1/x`.
    pub fn pav(m: usize) -> Result<Self> {
        ThieleCounting::from_fn(m, Rational::harmonic)
    }

    /// `h(0) = 0`, `h(x) = 1` for `x > 0`.
    pub fn ccav(m: usize) -> Result<Self> {
        ThieleCounting::from_fn(m, |x| Rational::from(x.min(1)))
    }

    /// `h(0) = 0`, `h(1) = 1`, `h(x) = 2x + 1` for `x >= 2`.
    pub fn clone_trusting(m: usize) -> Result<Self> {
        ThieleCounting::from_fn(m, |x| if x < 2 { Rational::from(x) } else { Rational::from(2 * x + 1) })
    }

    pub fn m(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, x: usize) -> &Rational {
        &self.values[x]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `(h - h(0)) / (h(1) - h(0))`; requires `h(1) != h(0)`.
    pub fn normalized(&self) -> Result<ThieleCounting> {
        let base = &self.values[0];
        let unit = &self.values[1] - base;
        if unit.is_zero() {
            return Err(Error::InvalidCounting("cannot normalize: h(1) = h(0)".into()));
        }
        let values = self.values.iter().map(|v| (v - base).checked_div(&unit)).collect::<Result<_>>()?;
        Ok(ThieleCounting { values })
    }

    /// Embeds as `h(x, y, z) = h(x)`.
    pub fn to_step_counting(&self) -> StepCounting {
        let m = self.m();
        StepCounting::from_fn(m, |x, _, _| self.values[x].clone()).expect("m >= 1")
    }
}

impl fmt::Debug for ThieleCounting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.values.iter()).finish()
    }
}

/// Non-negativity, monotonicity and `h(1) > h(0)`, reported in index order.
pub fn validate_thiele(h: &ThieleCounting) -> std::result::Result<(), ThieleViolation> {
    for (x, v) in h.values.iter().enumerate() {
        if v.is_negative() {
            return Err(ThieleViolation::Negative { x });
        }
        if x > 0 && v < &h.values[x - 1] {
            return Err(ThieleViolation::Decreasing { x });
        }
    }
    if h.values[1] <= h.values[0] {
        return Err(ThieleViolation::NoInitialIncrease);
    }
    Ok(())
}

/// A step-dependent Thiele counting function `h(x, y)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StepThieleCounting {
    m: usize,
    // x-major: values[x * m + (y - 1)]
    values: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepThieleViolation {
    Negative { x: usize, y: usize },
    Decreasing { x: usize, y: usize },
    NoIncrease { y: usize },
}

impl fmt::Display for StepThieleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepThieleViolation::Negative { x, y } => write!(f, "h({x},{y}) is negative"),
            StepThieleViolation::Decreasing { x, y } => write!(f, "h({x},{y}) < h({},{y})", x - 1),
            StepThieleViolation::NoIncrease { y } => write!(f, "no x in 1..={y} with h(x,{y}) > h(x-1,{y})"),
        }
    }
}

impl StepThieleCounting {
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        check_m(m)?;
        let mut values = Vec::with_capacity((m + 1) * m);
        for x in 0..=m {
            for y in 1..=m {
                values.push(f(x, y));
            }
        }
        Ok(StepThieleCounting { m, values })
    }

    pub fn from_entries(m: usize, entries: &BTreeMap<(usize, usize), Rational>) -> Result<Self> {
        check_m(m)?;
        if let Some((x, y)) = entries.keys().find(|&&(x, y)| x > m || y == 0 || y > m) {
            return Err(Error::Domain(format!("entry h({x},{y}) outside the table")));
        }
        let mut missing = None;
        let table = StepThieleCounting::from_fn(m, |x, y| match entries.get(&(x, y)) {
            Some(v) => v.clone(),
            None => {
                missing.get_or_insert((x, y));
                Rational::zero()
            }
        })?;
        match missing {
            Some((x, y)) => Err(Error::Domain(format!("missing entry h({x},{y})"))),
            None => Ok(table),
        }
    }

    /// seqAV in odd steps, seqCCAV in even steps: `h(x, y) = x` for odd `y`
    /// and `min(x, 1)` for even `y`.
    pub fn av_cc_alternating(m: usize) -> Result<Self> {
        StepThieleCounting::from_fn(m, |x, y| if y % 2 == 1 { Rational::from(x) } else { Rational::from(x.min(1)) })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn value(&self, x: usize, y: usize) -> &Rational {
        &self.values[x * self.m + (y - 1)]
    }

    pub fn to_step_counting(&self) -> StepCounting {
        StepCounting::from_fn(self.m, |x, y, _| self.value(x, y).clone()).expect("m >= 1")
    }
}

impl fmt::Debug for StepThieleCounting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StepThieleCounting(m={})", self.m)
    }
}

pub fn validate_step_thiele(h: &StepThieleCounting) -> std::result::Result<(), StepThieleViolation> {
    let m = h.m;
    for y in 1..=m {
        for x in 0..=m {
            let v = h.value(x, y);
            if v.is_negative() {
                return Err(StepThieleViolation::Negative { x, y });
            }
            if x > 0 && v < h.value(x - 1, y) {
                return Err(StepThieleViolation::Decreasing { x, y });
            }
        }
    }
    for y in 1..m {
        if !(1..=y).any(|x| h.value(x, y) > h.value(x - 1, y)) {
            return Err(StepThieleViolation::NoIncrease { y });
        }
    }
    Ok(())
}

/// A step-dependent counting function `h(x, y, z)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StepCounting {
    m: usize,
    // values[(x * m + (y - 1)) * m + (z - 1)]
    values: Vec<Rational>,
}

impl StepCounting {
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Result<Self> {
        check_m(m)?;
        let mut values = Vec::with_capacity((m + 1) * m * m);
        for x in 0..=m {
            for y in 1..=m {
                for z in 1..=m {
                    values.push(f(x, y, z));
                }
            }
        }
        Ok(StepCounting { m, values })
    }

    pub fn from_entries(m: usize, entries: &BTreeMap<(usize, usize, usize), Rational>) -> Result<Self> {
        check_m(m)?;
        if let Some((x, y, z)) = entries.keys().find(|&&(x, y, z)| x > m || y == 0 || y > m || z == 0 || z > m) {
            return Err(Error::Domain(format!("entry h({x},{y},{z}) outside the table")));
        }
        let mut missing = None;
        let table = StepCounting::from_fn(m, |x, y, z| match entries.get(&(x, y, z)) {
            Some(v) => v.clone(),
            None => {
                missing.get_or_insert((x, y, z));
                Rational::zero()
            }
        })?;
        match missing {
            Some((x, y, z)) => Err(Error::Domain(format!("missing entry h({x},{y},{z})"))),
            None => Ok(table),
        }
    }

    /// `h(x, y, z) = x / z`.
    pub fn sav(m: usize) -> Result<Self> {
        StepCounting::from_fn(m, |x, _, z| Rational::new(x as i64, z as i64).expect("z >= 1"))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn value(&self, x: usize, y: usize, z: usize) -> &Rational {
        let m = self.m;
        &self.values[(x * m + (y - 1)) * m + (z - 1)]
    }
}

impl fmt::Debug for StepCounting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StepCounting(m={})", self.m)
    }
}

/// Outcome of [`validate_step_counting`]: for each step `y ∈ 1..m`, either a
/// witness `(x, z)` with `h(x, y, z) != h(x - 1, y, z)` or a failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepCountingCheck {
    pub witnesses: BTreeMap<usize, (usize, usize)>,
    pub failing_steps: Vec<usize>,
}

impl StepCountingCheck {
    pub fn is_valid(&self) -> bool {
        self.failing_steps.is_empty()
    }
}

pub fn validate_step_counting(h: &StepCounting) -> StepCountingCheck {
    let m = h.m;
    let mut witnesses = BTreeMap::new();
    let mut failing_steps = Vec::new();
    for y in 1..m {
        let found = (1..=y).find_map(|x| {
            let z_max = m - 1 - (y - x);
            (x..=z_max).find(|&z| h.value(x, y, z) != h.value(x - 1, y, z)).map(|z| (x, z))
        });
        match found {
            Some(w) => {
                witnesses.insert(y, w);
            }
            None => failing_steps.push(y),
        }
    }
    StepCountingCheck { witnesses, failing_steps }
}

/// A weight function `v(x, z)` for one step: `x = |W ∩ A_i| ∈ 0..=m`,
/// `z = |A_i| ∈ 1..=m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightFunction {
    m: usize,
    // values[x * m + (z - 1)]
    values: Vec<Rational>,
}

impl WeightFunction {
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        check_m(m)?;
        let mut values = Vec::with_capacity((m + 1) * m);
        for x in 0..=m {
            for z in 1..=m {
                values.push(f(x, z));
            }
        }
        Ok(WeightFunction { m, values })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn value(&self, x: usize, z: usize) -> &Rational {
        &self.values[x * self.m + (z - 1)]
    }
}

impl fmt::Debug for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightFunction(m={})", self.m)
    }
}

/// Per-step weight tables `v(x, y, z)` with `x, y ∈ 0..m`, `z ∈ 1..=m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StepWeights {
    m: usize,
    // values[(x * m + y) * m + (z - 1)]
    values: Vec<Rational>,
}

impl StepWeights {
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Result<Self> {
        check_m(m)?;
        let mut values = Vec::with_capacity(m * m * m);
        for x in 0..m {
            for y in 0..m {
                for z in 1..=m {
                    values.push(f(x, y, z));
                }
            }
        }
        Ok(StepWeights { m, values })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn value(&self, x: usize, y: usize, z: usize) -> Result<&Rational> {
        let m = self.m;
        if x >= m || y >= m || z == 0 || z > m {
            return Err(Error::Domain(format!("v({x},{y},{z}) outside x,y in 0..{m}, z in 1..={m}")));
        }
        Ok(&self.values[(x * m + y) * m + (z - 1)])
    }

    /// The weight function used when growing a committee to `target_size`
    /// members, i.e. `v(·, target_size - 1, ·)`. The unreachable row
    /// `x = m` is zero.
    pub fn for_target_size(&self, target_size: usize) -> Result<WeightFunction> {
        if target_size == 0 || target_size > self.m {
            return Err(Error::Domain(format!("target size {target_size} outside 1..={}", self.m)));
        }
        let y = target_size - 1;
        WeightFunction::from_fn(self.m, |x, z| {
            if x < self.m {
                self.values[(x * self.m + y) * self.m + (z - 1)].clone()
            } else {
                Rational::zero()
            }
        })
    }
}

impl fmt::Debug for StepWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StepWeights(m={})", self.m)
    }
}

/// Telescopes weights into a counting function:
/// `h(0, y, z) = 0` and `h(x, y, z) = h(x - 1, y, z) + v(x - 1, y - 1, z)`.
pub fn counting_from_weight(v: &StepWeights) -> StepCounting {
    let m = v.m;
    let mut values = vec![Rational::zero(); (m + 1) * m * m];
    let idx = |x: usize, y: usize, z: usize| (x * m + (y - 1)) * m + (z - 1);
    for x in 1..=m {
        for y in 1..=m {
            for z in 1..=m {
                let prev = values[idx(x - 1, y, z)].clone();
                values[idx(x, y, z)] = prev + &v.values[((x - 1) * m + (y - 1)) * m + (z - 1)];
            }
        }
    }
    StepCounting { m, values }
}

/// Forward differences: `v(x - 1, y - 1, z) = h(x, y, z) - h(x - 1, y, z)`.
pub fn weight_from_counting(h: &StepCounting) -> StepWeights {
    let m = h.m;
    StepWeights::from_fn(m, |x, y, z| h.value(x + 1, y + 1, z) - h.value(x, y + 1, z)).expect("m >= 1")
}

/// Where a valuation's numbers come from.
#[derive(Clone)]
pub enum Valuation {
    Thiele(Arc<ThieleCounting>),
    StepThiele(Arc<StepThieleCounting>),
    Step(Arc<StepCounting>),
    Custom { name: String, eval: Arc<dyn Fn(Ballot, Committee) -> Rational + Send + Sync> },
}

impl Valuation {
    pub fn thiele(h: ThieleCounting) -> Self {
        Valuation::Thiele(Arc::new(h))
    }

    pub fn step_thiele(h: StepThieleCounting) -> Self {
        Valuation::StepThiele(Arc::new(h))
    }

    pub fn step(h: StepCounting) -> Self {
        Valuation::Step(Arc::new(h))
    }

    pub fn custom(
        name: impl Into<String>,
        eval: impl Fn(Ballot, Committee) -> Rational + Send + Sync + 'static,
    ) -> Self {
        Valuation::Custom { name: name.into(), eval: Arc::new(eval) }
    }

    /// `v(A_i, W)`. Step-dependent tables have no column for `|W| = 0`;
    /// the empty committee is valued at zero there.
    pub fn eval(&self, ballot: Ballot, w: Committee) -> Rational {
        let x = ballot.overlap(w);
        match self {
            Valuation::Thiele(h) => h.value(x).clone(),
            Valuation::StepThiele(h) if !w.is_empty() => h.value(x, w.len()).clone(),
            Valuation::Step(h) if !w.is_empty() => h.value(x, w.len(), ballot.len()).clone(),
            Valuation::StepThiele(_) | Valuation::Step(_) => Rational::zero(),
            Valuation::Custom { eval, .. } => eval(ballot, w),
        }
    }

    /// Table-backed valuations apply to profiles with at most the table's
    /// `m` candidates; smaller profiles use the leading part of the table.
    pub fn table_m(&self) -> Option<usize> {
        match self {
            Valuation::Thiele(h) => Some(h.m()),
            Valuation::StepThiele(h) => Some(h.m()),
            Valuation::Step(h) => Some(h.m()),
            Valuation::Custom { .. } => None,
        }
    }

    pub fn check_compatible(&self, m: usize) -> Result<()> {
        match self.table_m() {
            Some(tm) if tm < m => Err(Error::MismatchedCandidates { left: m, right: tm }),
            _ => Ok(()),
        }
    }

    /// The valuation as a step-dependent counting table, when it has one.
    pub fn as_step_counting(&self) -> Option<StepCounting> {
        match self {
            Valuation::Thiele(h) => Some(h.to_step_counting()),
            Valuation::StepThiele(h) => Some(h.to_step_counting()),
            Valuation::Step(h) => Some((**h).clone()),
            Valuation::Custom { .. } => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Valuation::Thiele(h) => format!("thiele{:?}", h.values()),
            Valuation::StepThiele(h) => format!("step-thiele(m={})", h.m()),
            Valuation::Step(h) => format!("step-scoring(m={})", h.m()),
            Valuation::Custom { name, .. } => name.clone(),
        }
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// `s_v(A, W) = Σ_i v(A_i, W)`.
pub fn committee_score(v: &Valuation, a: &Profile, w: Committee) -> Result<Rational> {
    v.check_compatible(a.m())?;
    a.candidates().check(w)?;
    Ok(a.ballots().map(|b| v.eval(*b, w)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::CandSet;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn thiele_validation() {
        assert_eq!(validate_thiele(&ThieleCounting::av(4).unwrap()), Ok(()));
        assert_eq!(validate_thiele(&ThieleCounting::pav(4).unwrap()), Ok(()));
        assert_eq!(validate_thiele(&ThieleCounting::ccav(4).unwrap()), Ok(()));
        let zero = ThieleCounting::from_fn(3, |_| Rational::zero()).unwrap();
        assert_eq!(validate_thiele(&zero), Err(ThieleViolation::NoInitialIncrease));
        let dip = ThieleCounting::new(vec![r(0, 1), r(1, 1), r(1, 2)]).unwrap();
        assert_eq!(validate_thiele(&dip), Err(ThieleViolation::Decreasing { x: 2 }));
        let neg = ThieleCounting::new(vec![r(-1, 1), r(1, 1)]).unwrap();
        assert_eq!(validate_thiele(&neg), Err(ThieleViolation::Negative { x: 0 }));
    }

    #[test]
    fn incomplete_tables_are_domain_errors() {
        assert!(matches!(ThieleCounting::new(vec![r(0, 1)]), Err(Error::Domain(_))));
        let entries: BTreeMap<usize, Rational> = [(0, r(0, 1)), (2, r(2, 1))].into();
        assert!(matches!(ThieleCounting::from_entries(2, &entries), Err(Error::Domain(_))));
        let step: BTreeMap<(usize, usize, usize), Rational> = [((0, 1, 1), r(0, 1))].into();
        assert!(matches!(StepCounting::from_entries(2, &step), Err(Error::Domain(_))));
    }

    #[test]
    fn step_counting_validation() {
        for m in 2..=5 {
            assert!(validate_step_counting(&StepCounting::sav(m).unwrap()).is_valid());
        }
        let constant = StepCounting::from_fn(4, |_, _, _| Rational::one()).unwrap();
        let check = validate_step_counting(&constant);
        assert_eq!(check.failing_steps, vec![1, 2, 3]);
        assert!(check.witnesses.is_empty());

        let x = StepCounting::from_fn(4, |x, _, _| Rational::from(x)).unwrap();
        let check = validate_step_counting(&x);
        assert!(check.is_valid());
        assert_eq!(check.witnesses, [(1, (1, 1)), (2, (1, 1)), (3, (1, 1))].into());
    }

    #[test]
    fn thiele_embeds_into_step_counting() {
        // A Thiele table is valid iff validation of its embedding passes, on
        // a few representative tables including invalid ones.
        let tables = [
            ThieleCounting::av(4).unwrap(),
            ThieleCounting::ccav(4).unwrap(),
            ThieleCounting::from_fn(4, |_| Rational::one()).unwrap(),
        ];
        assert!(validate_step_counting(&tables[0].to_step_counting()).is_valid());
        assert!(validate_step_counting(&tables[1].to_step_counting()).is_valid());
        assert!(!validate_step_counting(&tables[2].to_step_counting()).is_valid());
    }

    #[test]
    fn alternating_is_step_thiele() {
        let h = StepThieleCounting::av_cc_alternating(4).unwrap();
        assert_eq!(validate_step_thiele(&h), Ok(()));
        assert_eq!(h.value(3, 1), &r(3, 1));
        assert_eq!(h.value(3, 2), &r(1, 1));
        assert!(validate_step_counting(&h.to_step_counting()).is_valid());
        let flat =
            StepThieleCounting::from_fn(3, |x, y| if y == 2 { Rational::zero() } else { Rational::from(x) }).unwrap();
        assert_eq!(validate_step_thiele(&flat), Err(StepThieleViolation::NoIncrease { y: 2 }));
    }

    #[test]
    fn scores() {
        let p = Profile::from_counts(3, &[(1, &[0, 1])]).unwrap();
        let ab = CandSet::from_indices(&[0, 1]).unwrap();
        let pav = Valuation::thiele(ThieleCounting::pav(3).unwrap());
        assert_eq!(committee_score(&pav, &p, ab).unwrap(), r(3, 2));

        let miss = Profile::from_counts(3, &[(2, &[2])]).unwrap();
        for h in [ThieleCounting::av(3), ThieleCounting::pav(3), ThieleCounting::ccav(3)] {
            assert_eq!(committee_score(&Valuation::thiele(h.unwrap()), &miss, ab).unwrap(), Rational::zero());
        }

        let sav = Valuation::step(StepCounting::sav(3).unwrap());
        let abc = Profile::from_counts(3, &[(1, &[0, 1, 2])]).unwrap();
        assert_eq!(committee_score(&sav, &abc, ab).unwrap(), r(2, 3));

        let short = Valuation::thiele(ThieleCounting::av(2).unwrap());
        assert!(committee_score(&short, &p, ab).is_err());
        let long = Valuation::thiele(ThieleCounting::av(4).unwrap());
        assert_eq!(committee_score(&long, &p, ab).unwrap(), r(2, 1));
    }

    #[test]
    fn weights_to_counting() {
        let ones = StepWeights::from_fn(4, |_, _, _| Rational::one()).unwrap();
        let h = counting_from_weight(&ones);
        assert_eq!(h, StepCounting::from_fn(4, |x, _, _| Rational::from(x)).unwrap());

        // v(x, y, z) = 1/(x+1) telescopes to harmonic numbers; by hand
        // H_1 = 1, H_2 = 3/2, H_3 = 11/6, H_4 = 25/12.
        let pav_w = StepWeights::from_fn(4, |x, _, _| r(1, x as i64 + 1)).unwrap();
        let h = counting_from_weight(&pav_w);
        let expected = [r(0, 1), r(1, 1), r(3, 2), r(11, 6), r(25, 12)];
        for (x, e) in expected.iter().enumerate() {
            for y in 1..=4 {
                for z in 1..=4 {
                    assert_eq!(h.value(x, y, z), e);
                }
            }
        }

        let cc_w = StepWeights::from_fn(3, |x, _, _| Rational::from(usize::from(x == 0))).unwrap();
        let h = counting_from_weight(&cc_w);
        assert_eq!(h, ThieleCounting::ccav(3).unwrap().to_step_counting());
    }

    #[test]
    fn counting_to_weights() {
        let h = StepCounting::from_fn(3, |x, _, _| Rational::from(x)).unwrap();
        assert_eq!(weight_from_counting(&h), StepWeights::from_fn(3, |_, _, _| Rational::one()).unwrap());
        let pav = ThieleCounting::pav(4).unwrap().to_step_counting();
        assert_eq!(weight_from_counting(&pav), StepWeights::from_fn(4, |x, _, _| r(1, x as i64 + 1)).unwrap());
    }

    #[test]
    fn weight_domain() {
        let w = StepWeights::from_fn(3, |_, _, _| Rational::one()).unwrap();
        assert!(w.value(3, 0, 1).is_err());
        assert!(w.value(0, 0, 0).is_err());
        assert!(w.for_target_size(0).is_err());
        assert!(w.for_target_size(4).is_err());
        assert_eq!(w.for_target_size(3).unwrap().value(3, 2), &Rational::zero());
    }

    #[test]
    fn normalization() {
        let h = ThieleCounting::new(vec![r(2, 1), r(4, 1), r(8, 1)]).unwrap();
        assert_eq!(h.normalized().unwrap().values(), &[r(0, 1), r(1, 1), r(3, 1)]);
        assert!(ThieleCounting::from_fn(2, |_| Rational::one()).unwrap().normalized().is_err());
    }
}
