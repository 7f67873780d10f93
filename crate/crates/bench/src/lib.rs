//! Benchmark fixtures shared by the criterion targets.

use hopfsieve_core::AlgebraType;

/// The degree-four-heavy types whose fusion searches dominate running time.
pub const ELIMINATION_TYPES: [&str; 5] =
    ["(1,2;4,3;5,2)", "(1,2;4,6;7,2)", "(1,2;4,15;11,2)", "(1,2;4,21;13,2)", "(1,11;4,22;11,1)"];

pub fn elimination_types() -> Vec<AlgebraType> {
    ELIMINATION_TYPES.iter().map(|s| AlgebraType::parse(s, None).expect("fixture types are valid")).collect()
}
