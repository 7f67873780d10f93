//! Type enumeration, character-ring search and case verdicts for semisimple
//! Hopf algebras of dimension `p^2 q^2`.

pub mod arithmetic;
pub mod fusion;
pub mod groups;
pub mod rules;
pub mod trace;
pub mod typeprofile;
pub mod verdict;

pub use arithmetic::{DimensionProfile, Regime, TypeSolution};
pub use fusion::{FusionTable, GrouplikeGroup, SearchConfig, SearchOutcome};
pub use rules::RuleId;
pub use trace::{Check, ProofStep, ProofTrace};
pub use typeprofile::{AlgebraType, FilterReport};
pub use verdict::{CaseVerdict, Outcome};
