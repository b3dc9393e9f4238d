//! Sequential committee voting rules over approval ballots, with exact
//! rational scoring, bounded axiom checkers and counterexample constructions.
//!
//! ```
//! use seqrules::{catalog, Profile};
//!
//! let profile = Profile::from_counts(3, &[(3, &[0, 1]), (1, &[2])]).unwrap();
//! let rule = catalog::seq_ccav(3).unwrap();
//! let winners = rule.apply(&profile, 2).unwrap();
//! assert_eq!(format!("{winners:?}"), "{{a,c}, {b,c}}");
//! ```

pub mod axioms;
pub mod catalog;
pub mod counting;
pub mod engine;
pub mod error;
pub mod family;
pub mod oracle;
pub mod profile;
pub mod rational;
pub mod sets;
pub mod witnesses;

pub use counting::{StepCounting, StepThieleCounting, ThieleCounting, Valuation, WeightFunction};
pub use engine::{GeneratorFunction, Rule, RuleClass};
pub use error::{Error, Result};
pub use family::CommitteeFamily;
pub use profile::{CandidatePermutation, Profile};
pub use rational::Rational;
pub use sets::{Ballot, CandSet, CandidateSet, Committee};
