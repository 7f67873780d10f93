//! Partial fusion tables, propagation of the multiplicity identities, and
//! exhaustive search.

mod engine;
mod group;
mod orbits;
mod search;
mod table;
mod validate;

use thiserror::Error;

pub use engine::{propagate, Contradiction};
pub use group::{abelian_classes, GrouplikeGroup};
pub use orbits::{orbit_assignment, subgroups, Orbit, OrbitAssignment};
pub use search::{
    all_groups_abelian, default_focus, eliminate_type, search_consistent_table, search_from, ClassResult, Elimination,
    EliminationVerdict, SearchConfig, SearchOutcome, SearchStats, DEFAULT_BUDGET,
};
pub use table::{
    build_skeleton, standard_subalgebra_closure, CharId, Character, Closure, DegreeClass, Domain, FusionTable,
    NeedsEntries, Stabilizer, MAX_CHARACTERS,
};
pub use validate::{validate, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    #[error("group of order {group} does not match {grouplikes} group-likes")]
    GroupMismatch { group: u64, grouplikes: u64 },
    #[error("{characters} characters exceed the limit of {max}")]
    TooLarge { characters: usize, max: usize },
    #[error("not a group: {0}")]
    InvalidGroup(String),
    #[error("relabeling must permute characters within degree classes and fix group-likes")]
    BadRelabeling,
    #[error("the action on character {character} is not fully assigned")]
    Unassigned { character: CharId },
    #[error("non-abelian group-likes of order {order} are not supported")]
    NonAbelianGroup { order: u64 },
    #[error("the type has no characters of degree {degree}")]
    NoSuchDegree { degree: u64 },
    #[error("focus pair ({a}, {b}) names a character outside the table")]
    BadFocus { a: CharId, b: CharId },
}
