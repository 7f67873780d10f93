//! Report objects and their JSON and Markdown renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use hopfsieve_core::arithmetic::TypeSolution;
use hopfsieve_core::fusion::{Elimination, EliminationVerdict, SearchOutcome};
use hopfsieve_core::typeprofile::FilterReport;
use hopfsieve_core::verdict::CaseVerdict;

use crate::{RunConfig, EXIT_EXHAUSTED, EXIT_FAILURE, EXIT_OK};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: RunConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cases: Vec<CaseEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub types: Vec<TypeEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub eliminations: Vec<EliminationEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub criteria: Vec<CriterionResult>,
    pub findings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseEntry {
    #[serde(flatten)]
    pub verdict: CaseVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeEntry {
    pub solution: TypeSolution,
    pub filters: FilterReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationEntry {
    #[serde(flatten)]
    pub elimination: Elimination,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl Report {
    pub fn new(config: RunConfig) -> Self {
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            cases: Vec::new(),
            types: Vec::new(),
            eliminations: Vec::new(),
            criteria: Vec::new(),
            findings: Vec::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.criteria.iter().any(|c| !c.passed) {
            return EXIT_FAILURE;
        }
        let exhausted = self.eliminations.iter().any(|e| e.elimination.verdict == EliminationVerdict::BudgetExceeded);
        if exhausted && self.criteria.is_empty() {
            return EXIT_EXHAUSTED;
        }
        if !self.findings.is_empty() {
            return EXIT_FAILURE;
        }
        EXIT_OK
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "# hopfsieve {} v{}\n", c.command, self.version);
        if let (Some(p), Some(q)) = (c.p, c.q) {
            let _ = writeln!(out, "p = {p}, q = {q}, dim = {}\n", p * p * q * q);
        }
        if !self.types.is_empty() {
            let _ = writeln!(out, "| type | counts | filters |\n|---|---|---|");
            for t in &self.types {
                let counts: Vec<String> = t.solution.counts.iter().map(|(d, n)| format!("{d}:{n}")).collect();
                let status = if t.filters.passed {
                    "pass".to_string()
                } else {
                    t.filters.failures.iter().map(|f| f.rule.as_str()).collect::<Vec<_>>().join(", ")
                };
                let _ = writeln!(out, "| {} | {} | {} |", t.filters.ty, counts.join(" "), status);
            }
            out.push('\n');
        }
        if !self.eliminations.is_empty() {
            let _ = writeln!(out, "| type | group | result | nodes |\n|---|---|---|---|");
            for e in &self.eliminations {
                for class in &e.elimination.classes {
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} |",
                        e.elimination.ty,
                        class.group.label(),
                        class.outcome.label(),
                        class.outcome.stats().nodes
                    );
                }
                let _ = writeln!(out, "\nVerdict for {}: **{:?}**\n", e.elimination.ty, e.elimination.verdict);
                for class in &e.elimination.classes {
                    if let SearchOutcome::Infeasible { trace, .. } = &class.outcome {
                        for s in &trace.steps {
                            let _ = writeln!(out, "- `{}`: {}", s.rule, s.detail);
                        }
                        out.push('\n');
                    }
                }
            }
        }
        if !self.cases.is_empty() {
            let _ = writeln!(out, "| group-like order | outcome | surviving types |\n|---|---|---|");
            for e in &self.cases {
                let v = &e.verdict;
                let g = v.g_order.map(|g| g.to_string()).unwrap_or_else(|| "any".into());
                let types: Vec<String> = v.surviving_types.iter().map(|t| t.notation()).collect();
                let _ = writeln!(out, "| {g} | {} | {} |", v.outcome, types.join(" "));
            }
            out.push('\n');
            let _ = writeln!(out, "## Summary\n");
            let _ = writeln!(out, "{}\n", summary(&self.cases));
            for e in &self.cases {
                let v = &e.verdict;
                let g = v.g_order.map(|g| g.to_string()).unwrap_or_else(|| "any".into());
                let _ = writeln!(out, "### |G(H*)| = {g}: {}\n", v.outcome);
                for s in &v.trace.steps {
                    let _ = writeln!(out, "- `{}`: {}", s.rule, s.detail);
                }
                out.push('\n');
            }
        }
        if !self.criteria.is_empty() {
            let _ = writeln!(out, "| # | criterion | result | detail |\n|---|---|---|---|");
            for r in &self.criteria {
                let mark = if r.passed { "pass" } else { "FAIL" };
                let _ = writeln!(out, "| {} | {} | {mark} | {} |", r.id, r.name, r.detail.replace('|', "/"));
            }
            out.push('\n');
        }
        let _ = writeln!(out, "## Findings\n");
        if self.findings.is_empty() {
            let _ = writeln!(out, "none");
        } else {
            for f in &self.findings {
                let _ = writeln!(out, "- {f}");
            }
        }
        out
    }
}

/// One sentence over all cases of a classification.
fn summary(cases: &[CaseEntry]) -> String {
    use hopfsieve_core::verdict::Outcome;
    let Some(first) = cases.first() else { return String::new() };
    let dim = first.verdict.profile.dim;
    let by = |o: Outcome| -> Vec<String> {
        cases
            .iter()
            .filter(|c| c.verdict.outcome == o)
            .map(|c| c.verdict.g_order.map(|g| g.to_string()).unwrap_or_else(|| "any".into()))
            .collect()
    };
    let mut parts = Vec::new();
    for o in Outcome::ALL {
        let gs = by(o);
        if !gs.is_empty() {
            parts.push(format!("{o} for |G(H*)| in {{{}}}", gs.join(", ")));
        }
    }
    let all_settled = cases.iter().all(|c| c.verdict.outcome != Outcome::Unsupported);
    let tail = if all_settled {
        "every case is settled"
    } else {
        "some cases are not settled"
    };
    format!("Dimension {dim}: {}; {tail}.", parts.join("; "))
}
