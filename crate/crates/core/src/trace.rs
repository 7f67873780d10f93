//! Proof traces: ordered, citation-bearing steps with machine-checkable
//! payloads.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::rules::RuleId;

/// What a step asserts, in a form that can be re-checked without the code
/// that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Check {
    /// No `c >= 0` satisfies `dim = offset + c * square`.
    NoSolution { dim: u64, offset: u64, square: u64 },
    /// `target` is not a nonnegative integer combination of `parts`.
    NotExpressible { target: u64, parts: Vec<u64> },
    /// The dimension equation for `(p, q, g_order)` under `pins` has exactly
    /// these solutions (degree -> count, degree 1 omitted).
    Enumeration {
        p: u64,
        q: u64,
        g_order: u64,
        #[serde(with = "pairs")]
        pins: BTreeMap<u64, u64>,
        #[serde(with = "pair_lists")]
        solutions: Vec<BTreeMap<u64, u64>>,
    },
    /// Whether `divisor` divides `dividend`.
    Divides { divisor: u64, dividend: u64, holds: bool },
    /// A type fails the named filter.
    Filter { p: u64, q: u64, type_notation: String, rule: RuleId },
    /// Exhaustive fusion search over each listed abelian group found no table.
    Fusion { type_notation: String, dim: u64, groups: Vec<Vec<u64>>, nodes: u64 },
    /// `gcd(a, b) = value`.
    Gcd { a: u64, b: u64, value: u64 },
    /// The coideal obstruction for `(p, q)`.
    Coideal { p: u64, q: u64, obstructed: bool },
    /// Every orbit of a group of this order on a class of this size has
    /// length 1 (a nontrivial orbit would be at least the smallest prime
    /// divisor of the order).
    Orbit { group_order: u64, class_size: u64 },
    /// A result imported from the literature.
    Cited,
    /// Bookkeeping with nothing to re-check.
    Note,
    /// The case outcome.
    Conclusion { outcome: String },
}

// Count maps are written as `[degree, count]` pairs: integer map keys do
// not survive the buffering that internally tagged enums deserialize through.
mod pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<u64, u64>, s: S) -> Result<S::Ok, S::Error> {
        m.iter().collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u64, u64>, D::Error> {
        Ok(Vec::<(u64, u64)>::deserialize(d)?.into_iter().collect())
    }
}

mod pair_lists {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BTreeMap<u64, u64>], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|m| m.iter().collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BTreeMap<u64, u64>>, D::Error> {
        Ok(Vec::<Vec<(u64, u64)>>::deserialize(d)?.into_iter().map(|v| v.into_iter().collect()).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStep {
    pub rule: RuleId,
    pub citation: String,
    pub detail: String,
    pub check: Check,
}

impl ProofStep {
    pub fn new(rule: RuleId, detail: impl Into<String>, check: Check) -> Self {
        ProofStep { rule, citation: rule.citation().to_string(), detail: detail.into(), check }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProofTrace {
    pub steps: Vec<ProofStep>,
}

impl ProofTrace {
    pub fn new() -> Self {
        ProofTrace::default()
    }

    pub fn push(&mut self, step: ProofStep) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, other: ProofTrace) {
        self.steps.extend(other.steps);
    }

    pub fn rules(&self) -> impl Iterator<Item = RuleId> + '_ {
        self.steps.iter().map(|s| s.rule)
    }

    pub fn mentions(&self, rule: RuleId) -> bool {
        self.rules().any(|r| r == rule)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_checks_round_trip() {
        let check = Check::Enumeration {
            p: 2,
            q: 5,
            g_order: 2,
            pins: [(2, 0)].into(),
            solutions: vec![[(2, 0), (4, 3), (5, 2)].into()],
        };
        let step = ProofStep::new(RuleId::EmptyEnumeration, "x", check);
        let json = serde_json::to_string(&step).unwrap();
        assert_eq!(serde_json::from_str::<ProofStep>(&json).unwrap(), step);
    }
}
