use std::collections::BTreeMap;

use super::{universe, Axiom, AxiomReport, AxiomWitness, Bounds, Observation};
use crate::counting::Valuation;
use crate::engine::generator_step;
use crate::error::Result;
use crate::profile::Profile;
use crate::sets::{CandSet, Committee};

/// `n(c, k, ℓ)`: the number of voters approving `c ∉ W` with `|A_i ∩ W| = k`
/// and `|A_i| = ℓ`, for `(k, ℓ)` in
/// `Z_W = {(k, ℓ) : 0 ≤ k ≤ |W|, k < ℓ ≤ m - 1 - |W| + k}`.
///
/// Cells outside `Z_W` count ballots holding every candidate outside `W`;
/// those are shared by all candidates and cannot change a generator's choice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NStats {
    m: usize,
    w: Committee,
    counts: BTreeMap<(usize, usize, usize), usize>,
}

impl NStats {
    pub fn in_domain(m: usize, w_len: usize, k: usize, l: usize) -> bool {
        k <= w_len && k < l && l + w_len < m + k
    }

    pub fn committee(&self) -> Committee {
        self.w
    }

    /// Zero outside `Z_W`.
    pub fn get(&self, c: usize, k: usize, l: usize) -> usize {
        self.counts.get(&(c, k, l)).copied().unwrap_or(0)
    }

    /// Every `(c, k, ℓ)` cell with its count, zeros included.
    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize, usize), usize)> + '_ {
        self.counts.iter().map(|(&cell, &n)| (cell, n))
    }

    /// `Σ_{(k, ℓ) ∈ Z_W} n(c, k, ℓ)`.
    pub fn row_sum(&self, c: usize) -> usize {
        self.counts.iter().filter(|((d, _, _), _)| *d == c).map(|(_, n)| n).sum()
    }
}

pub fn compute_n_stats(a: &Profile, w: Committee) -> NStats {
    let m = a.m();
    let outside = a.candidates().all().difference(w);
    let mut counts = BTreeMap::new();
    for c in outside.iter() {
        for k in 0..=w.len() {
            for l in k + 1..=m {
                if NStats::in_domain(m, w.len(), k, l) {
                    counts.insert((c, k, l), 0);
                }
            }
        }
    }
    for b in a.ballots() {
        let (k, l) = (b.overlap(w), b.len());
        for c in b.approved().difference(w).iter() {
            if let Some(n) = counts.get_mut(&(c, k, l)) {
                *n += 1;
            }
        }
    }
    NStats { m, w, counts }
}

/// Profiles with equal n-statistics for `W` get equal generator outputs.
/// Profiles with up to `bounds.max_voters` voters are compared across all
/// voter counts, for `|W| ≤ min(bounds.max_w, m - 2)`.
pub fn check_information_basis(name: &str, v: &Valuation, bounds: &Bounds) -> Result<AxiomReport> {
    let mut instances = 0;
    let describe = format!("{}, |W| <= {}", bounds.describe(bounds.max_voters), bounds.max_w);
    for m in bounds.ms() {
        let profiles = universe(m, bounds.max_voters, false)?;
        let cs = profiles[0].candidates();
        let max_w = bounds.max_w.min(m.saturating_sub(2));
        for w in cs.all_committees().into_iter().filter(|w| w.len() <= max_w) {
            let mut seen: BTreeMap<NStats, (usize, CandSet)> = BTreeMap::new();
            for (i, a) in profiles.iter().enumerate() {
                instances += 1;
                let out = generator_step(v, a, w)?;
                let stats = compute_n_stats(a, w);
                match seen.get(&stats) {
                    None => {
                        seen.insert(stats, (i, out));
                    }
                    Some(&(j, first)) if first != out => {
                        let witness = AxiomWitness::new(
                            format!("equal n-statistics for W={} but different generator outputs", w.letters()),
                            vec![
                                Observation::generator("A", profiles[j].clone(), w, first),
                                Observation::generator("A'", a.clone(), w, out),
                            ],
                        );
                        return Ok(AxiomReport::universal(
                            Axiom::InformationBasis,
                            name,
                            describe,
                            (instances, Some(witness)),
                        ));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(AxiomReport::universal(Axiom::InformationBasis, name, describe, (instances, None)))
}
