use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use hopfsieve_core::arithmetic::{enumerate_dimension_solutions, DimensionProfile};
use hopfsieve_core::fusion::{eliminate_type, SearchConfig};
use hopfsieve_core::typeprofile::{apply_filters, frobenius_degree_set};
use hopfsieve_core::verdict::{classify_timed, VerdictError};
use hopfsieve_core::AlgebraType;

use crate::criteria::{run_all, SuiteConfig};
use crate::report::{CaseEntry, EliminationEntry, Report, TypeEntry};
use crate::{CommandKind, RunConfig, UsageError};

fn ms(d: Duration, timings: bool) -> Option<u64> {
    timings.then(|| d.as_millis() as u64)
}

fn search_config(config: &RunConfig) -> SearchConfig {
    SearchConfig { budget: config.budget, focus: config.focus.clone(), ..SearchConfig::default() }
}

pub fn run(config: &RunConfig) -> Result<Report, UsageError> {
    config.validate()?;
    match config.command {
        CommandKind::Enumerate => cmd_enumerate(config),
        CommandKind::Eliminate => cmd_eliminate(config),
        CommandKind::Classify => cmd_classify(config),
        CommandKind::VerifyPaper => Ok(cmd_verify_paper(config)),
    }
}

/// Every solution of the dimension equation for the configured group-like
/// order, each screened by the filters.
pub fn cmd_enumerate(config: &RunConfig) -> Result<Report, UsageError> {
    let usage = |e: &dyn std::fmt::Display| UsageError(e.to_string());
    let (p, q, g) = (config.p.unwrap_or(0), config.q.unwrap_or(0), config.g_order.unwrap_or(0));
    let profile = DimensionProfile::new(p, q).map_err(|e| usage(&e))?;
    let mut pins = BTreeMap::new();
    for (k, &n) in &config.pins {
        let d = match k.as_str() {
            "a" => p,
            "b" => p * p,
            _ => q,
        };
        pins.insert(d, n);
    }
    let sols = enumerate_dimension_solutions(&profile, g, &frobenius_degree_set(&profile), &pins).map_err(|e| usage(&e))?;
    let mut report = Report::new(config.clone());
    for s in sols {
        let t = AlgebraType::from_solution(profile, &s).map_err(|e| usage(&e))?;
        report.types.push(TypeEntry { filters: apply_filters(&t), solution: s });
    }
    Ok(report)
}

/// Character-ring search on one type, per abelian group class.
pub fn cmd_eliminate(config: &RunConfig) -> Result<Report, UsageError> {
    let t = config.algebra_type()?;
    let start = Instant::now();
    let e = eliminate_type(&t, &search_config(config), config.group.as_deref()).map_err(|e| UsageError(e.to_string()))?;
    let mut report = Report::new(config.clone());
    report.eliminations.push(EliminationEntry { elimination: e, wall_ms: ms(start.elapsed(), config.timings) });
    Ok(report)
}

/// One verdict per group-like order.
pub fn cmd_classify(config: &RunConfig) -> Result<Report, UsageError> {
    let (p, q) = (config.p.unwrap_or(0), config.q.unwrap_or(0));
    let cases = classify_timed(p, q, &search_config(config)).map_err(|e| match e {
        VerdictError::HypothesisViolation { p, q, p4 } => {
            UsageError(format!("unsupported regime: p^4 = {p4} is not below q = {q} and ({p}, {q}) is not a 4q^2 case"))
        }
        e => UsageError(e.to_string()),
    })?;
    let mut report = Report::new(config.clone());
    for (v, d) in cases {
        report.findings.extend(v.findings.iter().map(|f| format!("|G(H*)| = {:?}: {f}", v.g_order)));
        report.cases.push(CaseEntry { verdict: v, wall_ms: ms(d, config.timings) });
    }
    Ok(report)
}

/// Runs the reproduction suite.
pub fn cmd_verify_paper(config: &RunConfig) -> Report {
    let suite = SuiteConfig { budget: config.budget, timings: config.timings, ..SuiteConfig::default() };
    let (criteria, findings) = run_all(&suite);
    let mut report = Report::new(config.clone());
    report.criteria = criteria;
    report.findings = findings;
    report
}
