//! Case-by-case classification over the possible group-like orders, with a
//! proof trace for every case and an independent trace checker.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arithmetic::{
    coideal_obstruction, divisors, enumerate_dimension_solutions, gcd, no_solution_check, ArithmeticError,
    DimensionProfile, Regime,
};
use crate::fusion::{eliminate_type, search_consistent_table, EliminationVerdict, FusionError, GrouplikeGroup};
use crate::fusion::{SearchConfig, SearchOutcome};
use crate::rules::RuleId;
use crate::trace::{Check, ProofStep, ProofTrace};
use crate::typeprofile::{frobenius_degree_set, screen_types, AlgebraType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Impossible,
    UpperSemisolvable,
    LowerSemisolvable,
    /// Upper or lower semisolvable, without saying which.
    Semisolvable,
    SemisolvableOrBiproduct,
    BiproductCandidate,
    DualGroupAlgebra,
    /// The computation could not settle the case.
    Unsupported,
}

impl Outcome {
    pub const ALL: [Outcome; 8] = [
        Outcome::Impossible,
        Outcome::UpperSemisolvable,
        Outcome::LowerSemisolvable,
        Outcome::Semisolvable,
        Outcome::SemisolvableOrBiproduct,
        Outcome::BiproductCandidate,
        Outcome::DualGroupAlgebra,
        Outcome::Unsupported,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Impossible => "impossible",
            Outcome::UpperSemisolvable => "upper-semisolvable",
            Outcome::LowerSemisolvable => "lower-semisolvable",
            Outcome::Semisolvable => "semisolvable",
            Outcome::SemisolvableOrBiproduct => "semisolvable-or-biproduct",
            Outcome::BiproductCandidate => "biproduct-candidate",
            Outcome::DualGroupAlgebra => "dual-group-algebra",
            Outcome::Unsupported => "unsupported",
        }
    }

    pub fn parse(s: &str) -> Option<Outcome> {
        Outcome::ALL.into_iter().find(|o| o.as_str() == s)
    }

    /// True for the labels of the dichotomy: some form of semisolvability,
    /// or the biproduct alternative.
    pub fn is_structural(self) -> bool {
        matches!(
            self,
            Outcome::UpperSemisolvable
                | Outcome::LowerSemisolvable
                | Outcome::Semisolvable
                | Outcome::SemisolvableOrBiproduct
                | Outcome::BiproductCandidate
        )
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseVerdict {
    pub profile: DimensionProfile,
    /// `|G(H*)|`; `None` for a verdict covering every order at once.
    pub g_order: Option<u64>,
    pub outcome: Outcome,
    pub surviving_types: Vec<AlgebraType>,
    pub trace: ProofTrace,
    /// Divergences between the computation and the expected conclusion.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerdictError {
    #[error("p^4 < q is required (p = {p}, q = {q}, p^4 = {p4})")]
    HypothesisViolation { p: u64, q: u64, p4: u64 },
    #[error("{dim_k} does not divide {dim}")]
    DivisibilityViolation { dim_k: u64, dim: u64 },
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

/// True iff `gcd(gH, gH*) = p^2`, the hypothesis of the biproduct criterion.
pub fn biproduct_condition(g_h: u64, g_hstar: u64, p: u64) -> bool {
    gcd(g_h, g_hstar) == p * p
}

/// True iff a Hopf subalgebra of dimension `dim_k` has index `p`, so that it
/// is normal and `H` is lower semisolvable.
pub fn subalgebra_semisolvability_rule(dim_k: u64, profile: &DimensionProfile) -> Result<bool, VerdictError> {
    if dim_k == 0 || profile.dim % dim_k != 0 {
        return Err(VerdictError::DivisibilityViolation { dim_k, dim: profile.dim });
    }
    Ok(dim_k == profile.p * profile.q * profile.q)
}

/// The expected outcome of each case, as stated for the general regime.
pub fn expected_p2q2(profile: &DimensionProfile, g: u64) -> Outcome {
    let (p, q) = (profile.p, profile.q);
    if g == 1 || g == q {
        Outcome::Impossible
    } else if g == p || g == p * q || g == q * q || g == p * q * q {
        Outcome::UpperSemisolvable
    } else if g == p * p || g == p * p * q {
        if coideal_obstruction(p, q).obstructed {
            Outcome::Semisolvable
        } else {
            Outcome::SemisolvableOrBiproduct
        }
    } else {
        Outcome::DualGroupAlgebra
    }
}

/// The expected outcome of each case for dimension `4q^2`, `q` in 5..=13.
pub fn expected_4q2(q: u64, g: u64) -> Outcome {
    if g == 1 || g == q {
        Outcome::Impossible
    } else if g == 4 || g == 4 * q {
        Outcome::SemisolvableOrBiproduct
    } else if g == 4 * q * q {
        Outcome::DualGroupAlgebra
    } else {
        Outcome::UpperSemisolvable
    }
}

fn step(rule: RuleId, detail: impl Into<String>, check: Check) -> ProofStep {
    ProofStep::new(rule, detail, check)
}

fn no_solution(rule: RuleId, dim: u64, offset: u64, square: u64) -> ProofStep {
    debug_assert!(no_solution_check(dim, offset, square));
    step(rule, format!("{dim} = {offset} + c*{square} has no solution c >= 0"), Check::NoSolution { dim, offset, square })
}

struct Case {
    profile: DimensionProfile,
    g: u64,
    trace: ProofTrace,
    surviving: Vec<AlgebraType>,
    findings: Vec<String>,
}

impl Case {
    fn new(profile: DimensionProfile, g: u64) -> Self {
        Case { profile, g, trace: ProofTrace::new(), surviving: Vec::new(), findings: Vec::new() }
    }

    fn push(&mut self, s: ProofStep) {
        self.trace.push(s);
    }

    /// Solutions of the dimension equation with the given pins, recorded as
    /// an enumeration step.
    fn enumerate(&mut self, pins: &[(u64, u64)], rule: RuleId) -> Result<Vec<AlgebraType>, VerdictError> {
        let pins: BTreeMap<u64, u64> = pins.iter().copied().collect();
        let sols = enumerate_dimension_solutions(&self.profile, self.g, &frobenius_degree_set(&self.profile), &pins)?;
        let solutions: Vec<BTreeMap<u64, u64>> = sols.iter().map(|s| s.counts.clone()).collect();
        let types: Vec<AlgebraType> = sols
            .iter()
            .map(|s| AlgebraType::from_solution(self.profile, s).expect("solutions are types"))
            .collect();
        let listed: Vec<String> = types.iter().map(|t| t.notation()).collect();
        let detail = if types.is_empty() {
            format!("|G| = {} with counts {pins:?}: no solution", self.g)
        } else {
            format!("|G| = {} with counts {pins:?}: {}", self.g, listed.join(", "))
        };
        self.push(step(
            rule,
            detail,
            Check::Enumeration { p: self.profile.p, q: self.profile.q, g_order: self.g, pins, solutions },
        ));
        Ok(types)
    }

    /// Runs the character-ring search on `t`; true when it is eliminated.
    fn eliminate(&mut self, t: &AlgebraType, config: &SearchConfig) -> Result<bool, VerdictError> {
        let e = eliminate_type(t, config, None)?;
        match e.verdict {
            EliminationVerdict::Infeasible => {
                for class in e.classes {
                    if let SearchOutcome::Infeasible { trace, .. } = class.outcome {
                        self.trace.extend(trace);
                    }
                }
                Ok(true)
            }
            EliminationVerdict::Feasible => {
                self.findings.push(format!("type {t} admits a consistent character table"));
                self.surviving.push(t.clone());
                Ok(false)
            }
            EliminationVerdict::BudgetExceeded => {
                self.findings.push(format!("search on type {t} exceeded the node budget of {}", config.budget));
                self.surviving.push(t.clone());
                Ok(false)
            }
            EliminationVerdict::Unsupported => {
                self.findings.push(format!("type {t} needs non-abelian group-likes"));
                self.surviving.push(t.clone());
                Ok(false)
            }
        }
    }

    /// Types with `|G| = g` and a nonzero count of degree `d`: those failing
    /// a filter are recorded; survivors must have a quotient of dimension
    /// `p q^2`.
    fn screen_nonzero(&mut self, d: u64) -> Result<(), VerdictError> {
        let (p, q) = (self.profile.p, self.profile.q);
        for r in screen_types(&self.profile, self.g)? {
            if r.ty.count(d) == 0 {
                continue;
            }
            let notation = r.ty.notation();
            if let Some(f) = r.failures.first() {
                self.push(step(
                    f.rule,
                    format!("{notation}: {}", f.detail),
                    Check::Filter { p, q, type_notation: notation, rule: f.rule },
                ));
            } else {
                let quotient = self.g + r.ty.count(d) * d * d;
                self.push(step(
                    RuleId::QuotientDividesDim,
                    format!("{notation}: quotient of dimension {quotient}"),
                    Check::Divides { divisor: quotient, dividend: self.profile.dim, holds: true },
                ));
                if quotient != p * q * q {
                    self.findings.push(format!("{notation} survives with a quotient of dimension {quotient}"));
                }
                self.surviving.push(r.ty);
            }
        }
        Ok(())
    }

    fn finish(mut self, rule: RuleId, outcome: Outcome, detail: impl Into<String>) -> CaseVerdict {
        let outcome = if self.findings.is_empty() { outcome } else { Outcome::Unsupported };
        self.trace.push(step(rule, detail, Check::Conclusion { outcome: outcome.as_str().to_string() }));
        CaseVerdict {
            profile: self.profile,
            g_order: Some(self.g),
            outcome,
            surviving_types: self.surviving,
            trace: self.trace,
            findings: self.findings,
        }
    }
}

fn trivial_grouplikes(profile: DimensionProfile) -> CaseVerdict {
    let mut c = Case::new(profile, 1);
    c.push(step(RuleId::NontrivialGrouplike, "|G(H*)| = 1 fails the nontrivial group-like filter", Check::Cited));
    c.finish(RuleId::NontrivialGrouplike, Outcome::Impossible, "no group-like order 1")
}

fn dual_group_algebra(profile: DimensionProfile) -> CaseVerdict {
    let c = Case::new(profile, profile.dim);
    c.finish(RuleId::DualGroupAlgebra, Outcome::DualGroupAlgebra, "every simple module is one-dimensional")
}

fn biproduct_or_semisolvable(profile: DimensionProfile, g: u64) -> CaseVerdict {
    let (p, q) = (profile.p, profile.q);
    let mut c = Case::new(profile, g);
    let ob = coideal_obstruction(p, q);
    c.push(step(
        RuleId::CoidealObstruction,
        format!("q^2 = 1 + mp solvable: {}, q^2 = q + np solvable: {}", ob.eq1_solvable, ob.eq2_solvable),
        Check::Coideal { p, q, obstructed: ob.obstructed },
    ));
    if ob.obstructed {
        c.finish(RuleId::CoidealObstruction, Outcome::Semisolvable, "no biproduct fits the coideal count")
    } else {
        c.finish(RuleId::BiproductOrSemisolvable, Outcome::SemisolvableOrBiproduct, "index-p subalgebra or biproduct")
    }
}

/// Characters of degree `p` or `p^2` have trivial stabilizer when `g` is
/// prime to `p`, so `deg^2 - 1` must be made of degrees `p`, `p^2`.
fn low_degrees_absent(c: &mut Case) {
    let p = c.profile.p;
    for d in [p, p * p] {
        c.push(no_solution(RuleId::DualProductResidual, d * d, 1, p));
    }
}

/// One verdict per divisor of `p^2 q^2`, for `p^4 < q`.
pub fn classify_p2q2(p: u64, q: u64) -> Result<Vec<CaseVerdict>, VerdictError> {
    Ok(classify_p2q2_timed(p, q)?.into_iter().map(|(v, _)| v).collect())
}

/// [`classify_p2q2`] with the time spent on each case.
pub fn classify_p2q2_timed(p: u64, q: u64) -> Result<Vec<(CaseVerdict, Duration)>, VerdictError> {
    let profile = DimensionProfile::new(p, q).map_err(|e| match e {
        ArithmeticError::UnsupportedRegime { p, q } => VerdictError::HypothesisViolation { p, q, p4: p.pow(4) },
        e => VerdictError::Arithmetic(e),
    })?;
    if profile.regime != Regime::General {
        return Err(VerdictError::HypothesisViolation { p, q, p4: p.pow(4) });
    }
    let dim = profile.dim;
    let mut out = Vec::new();
    for g in divisors(dim) {
        let start = Instant::now();
        let v = if g == 1 {
            trivial_grouplikes(profile)
        } else if g == dim {
            dual_group_algebra(profile)
        } else if g == p || g == p * q {
            let mut c = Case::new(profile, g);
            c.push(step(
                RuleId::DimensionEquation,
                format!("c = 0 would force p^2 | {g}"),
                Check::Divides { divisor: p * p, dividend: g, holds: false },
            ));
            c.push(step(
                RuleId::PrimeSquareDimension,
                format!("a quotient of dimension p^2 would need p^2 | {g}"),
                Check::Divides { divisor: p * p, dividend: g, holds: false },
            ));
            for offset in [p, p * q, p * p * q] {
                c.push(no_solution(RuleId::NoIntegerSolution, dim, offset, q * q));
            }
            c.finish(RuleId::IndexPSubalgebra, Outcome::UpperSemisolvable, "quotient of dimension pq^2")
        } else if g == q {
            let mut c = Case::new(profile, g);
            low_degrees_absent(&mut c);
            c.push(no_solution(RuleId::NoIntegerSolution, dim, q, q * q));
            c.finish(RuleId::NoIntegerSolution, Outcome::Impossible, "no type with |G(H*)| = q")
        } else if g == q * q {
            let mut c = Case::new(profile, g);
            low_degrees_absent(&mut c);
            let types = c.enumerate(&[(p, 0), (p * p, 0)], RuleId::DimensionEquation)?;
            c.push(step(
                RuleId::OrbitLength,
                format!("{} characters of degree q under a group of order q^2", p * p - 1),
                Check::Orbit { group_order: g, class_size: p * p - 1 },
            ));
            c.surviving = types;
            c.finish(RuleId::GrouplikeNormalSubalgebra, Outcome::UpperSemisolvable, "G(H*) stabilizes every X_q")
        } else if g == p * q * q {
            let c = Case::new(profile, g);
            c.finish(RuleId::GrouplikeOrderPq2, Outcome::UpperSemisolvable, "kG(H*) has dimension pq^2")
        } else {
            biproduct_or_semisolvable(profile, g)
        };
        out.push((check_expected(v, expected_p2q2(&profile, g)), start.elapsed()));
    }
    Ok(out)
}

fn check_expected(mut v: CaseVerdict, expected: Outcome) -> CaseVerdict {
    if v.outcome != expected && v.findings.is_empty() {
        v.findings.push(format!("computed {} but expected {expected}", v.outcome));
    }
    v
}

/// One verdict per divisor of `4 q^2`; a single verdict for `q = 3`.
pub fn classify_4q2(q: u64, config: &SearchConfig) -> Result<Vec<CaseVerdict>, VerdictError> {
    Ok(classify_4q2_timed(q, config)?.into_iter().map(|(v, _)| v).collect())
}

/// [`classify_4q2`] with the time spent on each case.
pub fn classify_4q2_timed(q: u64, config: &SearchConfig) -> Result<Vec<(CaseVerdict, Duration)>, VerdictError> {
    let profile = DimensionProfile::new(2, q)?;
    if profile.regime == Regime::General {
        return classify_p2q2_timed(2, q);
    }
    if q == 3 {
        let mut trace = ProofTrace::new();
        trace.push(step(RuleId::DimensionThirtySix, "dimension 36", Check::Cited));
        trace.push(step(
            RuleId::DimensionThirtySix,
            "upper or lower semisolvable",
            Check::Conclusion { outcome: Outcome::Semisolvable.as_str().to_string() },
        ));
        let v = CaseVerdict {
            profile,
            g_order: None,
            outcome: Outcome::Semisolvable,
            surviving_types: Vec::new(),
            trace,
            findings: Vec::new(),
        };
        return Ok(vec![(v, Duration::ZERO)]);
    }
    let dim = profile.dim;
    let mut out = Vec::new();
    for g in divisors(dim) {
        let start = Instant::now();
        let v = if g == 1 {
            trivial_grouplikes(profile)
        } else if g == dim {
            dual_group_algebra(profile)
        } else if g == 2 {
            let mut c = Case::new(profile, g);
            let target = dim - 2;
            c.push(step(
                RuleId::NoIntegerSolution,
                format!("c = 0 would need {target} = 4a + 16b"),
                Check::NotExpressible { target, parts: vec![4, 16] },
            ));
            c.screen_nonzero(2)?;
            let types = c.enumerate(&[(2, 0)], RuleId::DimensionEquation)?;
            for t in &types {
                c.eliminate(t, config)?;
            }
            c.finish(RuleId::IndexPSubalgebra, Outcome::UpperSemisolvable, "quotient of dimension 2q^2")
        } else if g == q {
            let mut c = Case::new(profile, g);
            c.push(step(
                RuleId::DualProductResidual,
                "degree 2 has trivial stabilizer; 2^2 - 1 is not a sum of degrees 2, 4, q",
                Check::NotExpressible { target: 3, parts: vec![2, 4, q] },
            ));
            let types = c.enumerate(&[(2, 0)], RuleId::EmptyEnumeration)?;
            for t in &types {
                c.eliminate(t, config)?;
            }
            let rule = if types.is_empty() { RuleId::EmptyEnumeration } else { RuleId::FusionInfeasible };
            c.finish(rule, Outcome::Impossible, "no type with |G(H*)| = q")
        } else if g == q * q {
            let mut c = Case::new(profile, g);
            c.push(step(
                RuleId::DualProductResidual,
                "degree 2 has trivial stabilizer; 2^2 - 1 is not a sum of degrees 2, 4, q",
                Check::NotExpressible { target: 3, parts: vec![2, 4, q] },
            ));
            let types = c.enumerate(&[(2, 0)], RuleId::DimensionEquation)?;
            c.push(step(
                RuleId::OrbitLength,
                "3 characters of degree q under a group of order q^2",
                Check::Orbit { group_order: g, class_size: 3 },
            ));
            c.surviving = types;
            c.finish(RuleId::GrouplikeNormalSubalgebra, Outcome::UpperSemisolvable, "G(H*) stabilizes every X_q")
        } else if g == 2 * q {
            let mut c = Case::new(profile, g);
            c.screen_nonzero(2)?;
            let types = c.enumerate(&[(2, 0)], RuleId::EmptyEnumeration)?;
            for t in &types {
                c.findings.push(format!("type {t} with a = 0 was expected not to exist"));
                c.surviving.push(t.clone());
            }
            c.finish(RuleId::IndexPSubalgebra, Outcome::UpperSemisolvable, "quotient of dimension 2q^2")
        } else if g == 2 * q * q {
            let c = Case::new(profile, g);
            c.finish(RuleId::GrouplikeOrderPq2, Outcome::UpperSemisolvable, "kG(H*) has dimension 2q^2")
        } else {
            biproduct_or_semisolvable(profile, g)
        };
        out.push((check_expected(v, expected_4q2(q, g)), start.elapsed()));
    }
    Ok(out)
}

/// Dispatches on the regime of `(p, q)`.
pub fn classify(p: u64, q: u64, config: &SearchConfig) -> Result<Vec<CaseVerdict>, VerdictError> {
    Ok(classify_timed(p, q, config)?.into_iter().map(|(v, _)| v).collect())
}

pub fn classify_timed(p: u64, q: u64, config: &SearchConfig) -> Result<Vec<(CaseVerdict, Duration)>, VerdictError> {
    if p == 2 && q <= 13 {
        classify_4q2_timed(q, config)
    } else {
        classify_p2q2_timed(p, q)
    }
}

/// Sharpens a biproduct-or-semisolvable verdict once `|G(H)|` is known.
pub fn with_grouplikes_of_h(v: &CaseVerdict, g_h: u64) -> CaseVerdict {
    let mut out = v.clone();
    let (Some(g), Outcome::SemisolvableOrBiproduct) = (v.g_order, v.outcome) else { return out };
    let p = v.profile.p;
    if !biproduct_condition(g_h, g, p) {
        return out;
    }
    out.trace.steps.pop();
    out.trace.push(step(
        RuleId::BiproductCriterion,
        format!("gcd(|G(H)|, |G(H*)|) = gcd({g_h}, {g}) = {}", p * p),
        Check::Gcd { a: g_h, b: g, value: p * p },
    ));
    out.trace.push(step(
        RuleId::BiproductCriterion,
        "biproduct over a group of order p^2",
        Check::Conclusion { outcome: Outcome::BiproductCandidate.as_str().to_string() },
    ));
    out.outcome = Outcome::BiproductCandidate;
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {reason}")]
pub struct ReplayError {
    pub step: usize,
    pub reason: String,
}

/// Re-checks every step of a verdict's trace from its recorded data and
/// returns the outcome the trace supports. Shares no code with the
/// classification except the fusion search, which it re-runs.
pub fn replay(v: &CaseVerdict, config: &SearchConfig) -> Result<Outcome, ReplayError> {
    let fail = |step: usize, reason: String| Err(ReplayError { step, reason });
    let steps = &v.trace.steps;
    let mut certified_impossible = false;
    for (i, s) in steps.iter().enumerate() {
        if s.citation != s.rule.citation() {
            return fail(i, format!("citation of {} does not match the catalog", s.rule));
        }
        let ok = match &s.check {
            Check::NoSolution { dim, offset, square } => {
                *square > 0 && (offset > dim || (dim - offset) % square != 0)
            }
            Check::NotExpressible { target, parts } => !sum_of(*target, parts),
            Check::Enumeration { p, q, g_order, pins, solutions } => {
                let found = enumerate_independently(*p, *q, *g_order, pins);
                if found.is_empty() && s.rule == RuleId::EmptyEnumeration {
                    certified_impossible = true;
                }
                found == *solutions
            }
            Check::Divides { divisor, dividend, holds } => *divisor > 0 && (dividend % divisor == 0) == *holds,
            Check::Gcd { a, b, value } => euclid(*a, *b) == *value,
            Check::Filter { p, q, type_notation, rule } => {
                certified_impossible |= v.outcome == Outcome::Impossible;
                match AlgebraType::parse(type_notation, Some(p * p * q * q)) {
                    Ok(t) => filter_fails(&t, *p, *q, *rule),
                    Err(_) => false,
                }
            }
            Check::Fusion { type_notation, dim, groups, nodes: _ } => {
                let Ok(t) = AlgebraType::parse(type_notation, Some(*dim)) else {
                    return fail(i, format!("bad type {type_notation}"));
                };
                let all = groups.iter().all(|f| {
                    let group = GrouplikeGroup::abelian(f);
                    group.order() as u64 == t.grouplike_order()
                        && search_consistent_table(&t, &group, config).is_ok_and(|o| o.is_infeasible())
                });
                certified_impossible |= all;
                all
            }
            Check::Coideal { p, q, obstructed } => {
                let ob = (q * q - 1) % p != 0 && (q * q - q) % p != 0;
                ob == *obstructed
            }
            Check::Orbit { group_order, class_size } => {
                let smallest = (2..=*group_order).find(|d| group_order % d == 0).unwrap_or(1);
                *group_order > 1 && class_size < &smallest
            }
            Check::Cited => {
                if s.rule == RuleId::NontrivialGrouplike && v.g_order == Some(1) {
                    certified_impossible = true;
                }
                true
            }
            Check::Note => true,
            Check::Conclusion { .. } => i + 1 == steps.len(),
        };
        if !ok {
            return fail(i, format!("{} check does not hold: {}", s.rule, s.detail));
        }
    }
    let Some(last) = steps.last() else { return fail(0, "empty trace".into()) };
    let Check::Conclusion { outcome } = &last.check else {
        return fail(steps.len() - 1, "trace does not end in a conclusion".into());
    };
    let Some(outcome) = Outcome::parse(outcome) else {
        return fail(steps.len() - 1, format!("unknown outcome {outcome}"));
    };
    let allowed: &[Outcome] = match last.rule {
        RuleId::DualGroupAlgebra => &[Outcome::DualGroupAlgebra],
        RuleId::IndexPSubalgebra => &[Outcome::UpperSemisolvable, Outcome::LowerSemisolvable, Outcome::Unsupported],
        RuleId::GrouplikeNormalSubalgebra | RuleId::GrouplikeOrderPq2 => &[Outcome::UpperSemisolvable],
        RuleId::BiproductOrSemisolvable => &[Outcome::SemisolvableOrBiproduct],
        RuleId::CoidealObstruction | RuleId::DimensionThirtySix => &[Outcome::Semisolvable],
        RuleId::BiproductCriterion => &[Outcome::BiproductCandidate],
        RuleId::NontrivialGrouplike
        | RuleId::NoIntegerSolution
        | RuleId::EmptyEnumeration
        | RuleId::FusionInfeasible => &[Outcome::Impossible, Outcome::Unsupported],
        _ => &[],
    };
    if !allowed.contains(&outcome) {
        return fail(steps.len() - 1, format!("{} cannot conclude {outcome}", last.rule));
    }
    if outcome == Outcome::Impossible {
        let arithmetic = steps.iter().any(|s| s.rule == RuleId::NoIntegerSolution && matches!(s.check, Check::NoSolution { .. }));
        if !(certified_impossible || arithmetic) {
            return fail(steps.len() - 1, "impossible without an enumeration, filter or fusion certificate".into());
        }
    }
    if (outcome == Outcome::DualGroupAlgebra) != (v.g_order == Some(v.profile.dim)) {
        return fail(steps.len() - 1, "dual group algebra exactly when |G(H*)| = dim".into());
    }
    if outcome != v.outcome {
        return fail(steps.len() - 1, format!("trace concludes {outcome} but the verdict says {}", v.outcome));
    }
    Ok(outcome)
}

fn euclid(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        euclid(b, a % b)
    }
}

fn sum_of(target: u64, parts: &[u64]) -> bool {
    let mut reach = vec![false; target as usize + 1];
    reach[0] = true;
    for s in 1..=target as usize {
        reach[s] = parts.iter().any(|&p| p > 0 && p as usize <= s && reach[s - p as usize]);
    }
    reach[target as usize]
}

/// Nested loops over the degrees `p, p^2, q` (for `p = 2` and small `q` the
/// same set `2, 4, q`), pins held fixed.
fn enumerate_independently(p: u64, q: u64, g: u64, pins: &BTreeMap<u64, u64>) -> Vec<BTreeMap<u64, u64>> {
    let dim = p * p * q * q;
    let degrees = [p, p * p, q];
    let mut out = Vec::new();
    if g > dim {
        return out;
    }
    let range = |d: u64, rest: u64| match pins.get(&d) {
        Some(&n) => n..=n,
        None => 0..=rest / (d * d),
    };
    for a in range(degrees[0], dim - g) {
        let used_a = g + a * p * p;
        if used_a > dim {
            break;
        }
        for b in range(degrees[1], dim - used_a) {
            let used_b = used_a + b * p.pow(4);
            if used_b > dim {
                break;
            }
            let rest = dim - used_b;
            if rest % (q * q) == 0 {
                let c = rest / (q * q);
                if pins.get(&q).is_none_or(|&n| n == c) {
                    out.push([(p, a), (p * p, b), (q, c)].into_iter().collect());
                }
            }
        }
    }
    out
}

/// Whether `t` fails the named filter, computed from its definition.
fn filter_fails(t: &AlgebraType, p: u64, q: u64, rule: RuleId) -> bool {
    let g = t.grouplike_order();
    let dim = t.dim();
    let higher: Vec<(u64, u64)> = t.entries().iter().copied().filter(|&(d, _)| d > 1).collect();
    match rule {
        RuleId::NontrivialGrouplike => g == 1,
        RuleId::GrouplikeCountBound => higher.iter().any(|&(d, n)| (n * d * d) % g != 0),
        RuleId::QuotientDividesDim => {
            let low: u64 = higher.iter().filter(|&&(d, _)| d != q && (p == 2 || d < q)).map(|&(d, n)| n * d * d).sum();
            let quotient = if p == 2 && q <= 13 {
                let a = t.count(2);
                if a != 0 && g != 2 && g != 2 * q {
                    return false;
                }
                g + 4 * a
            } else {
                g + low
            };
            dim % quotient != 0
        }
        RuleId::DualProductResidual => {
            let degs: Vec<u64> = higher.iter().map(|&(d, _)| d).collect();
            degs.iter().any(|&d| {
                (1..=euclid(g, d * d)).filter(|s| euclid(g, d * d) % s == 0).all(|s| !sum_of(d * d - s, &degs))
            })
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn biproduct_condition_examples() {
        assert!(biproduct_condition(4, 4, 2));
        assert!(!biproduct_condition(4, 2, 2));
        for (p, q) in [(2u64, 17u64), (3, 83), (5, 1283)] {
            assert!(biproduct_condition(p * p * q, p * p, p));
        }
    }

    #[test]
    fn subalgebra_rule_examples() {
        let prof = DimensionProfile::new(2, 5).unwrap();
        assert_eq!(subalgebra_semisolvability_rule(50, &prof), Ok(true));
        assert_eq!(subalgebra_semisolvability_rule(25, &prof), Ok(false));
        assert_eq!(
            subalgebra_semisolvability_rule(30, &prof),
            Err(VerdictError::DivisibilityViolation { dim_k: 30, dim: 100 })
        );
    }

    #[test]
    fn general_regime_cases() {
        let vs = classify_p2q2(2, 17).unwrap();
        assert_eq!(vs.len(), 9);
        let at = |g: u64| vs.iter().find(|v| v.g_order == Some(g)).unwrap();
        assert_eq!(at(17).outcome, Outcome::Impossible);
        assert_eq!(at(4 * 289).outcome, Outcome::DualGroupAlgebra);
        assert_eq!(at(289).surviving_types[0].notation(), "(1,289;17,3)");
        assert_eq!(at(4).outcome, Outcome::SemisolvableOrBiproduct);
        for v in &vs {
            assert!(v.findings.is_empty(), "{:?}", v.findings);
            assert_eq!(replay(v, &quick()), Ok(v.outcome));
        }
        assert!(matches!(classify_p2q2(3, 79), Err(VerdictError::HypothesisViolation { .. })));
        assert!(classify_p2q2(3, 83).is_ok());
    }

    #[test]
    fn obstruction_sharpens() {
        let vs = classify_p2q2(5, 1283).unwrap();
        for g in [25, 25 * 1283] {
            assert_eq!(vs.iter().find(|v| v.g_order == Some(g)).unwrap().outcome, Outcome::Semisolvable);
        }
        assert!(vs.iter().all(|v| v.outcome != Outcome::SemisolvableOrBiproduct));
    }

    #[test]
    fn thirty_six_is_cited() {
        let vs = classify_4q2(3, &quick()).unwrap();
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].outcome, Outcome::Semisolvable);
        assert!(vs[0].trace.mentions(RuleId::DimensionThirtySix));
        assert_eq!(replay(&vs[0], &quick()), Ok(Outcome::Semisolvable));
    }

    #[test]
    fn q_five() {
        let vs = classify_4q2(5, &quick()).unwrap();
        assert_eq!(vs.len(), 9);
        let at = |g: u64| vs.iter().find(|v| v.g_order == Some(g)).unwrap();
        let two = at(2);
        assert_eq!(two.outcome, Outcome::UpperSemisolvable);
        assert!(two.trace.steps.iter().any(|s| matches!(&s.check, Check::Fusion { type_notation, .. } if type_notation == "(1,2;4,3;5,2)")));
        assert_eq!(at(25).surviving_types[0].notation(), "(1,25;5,3)");
        for v in &vs {
            assert_eq!(v.outcome, expected_4q2(5, v.g_order.unwrap()), "{:?}", v.findings);
            assert_eq!(replay(v, &quick()), Ok(v.outcome));
        }
    }

    #[test]
    fn biproduct_refinement() {
        let vs = classify_4q2(5, &quick()).unwrap();
        let four = vs.iter().find(|v| v.g_order == Some(4)).unwrap();
        let sharp = with_grouplikes_of_h(four, 4);
        assert_eq!(sharp.outcome, Outcome::BiproductCandidate);
        assert_eq!(replay(&sharp, &quick()), Ok(Outcome::BiproductCandidate));
        assert_eq!(with_grouplikes_of_h(four, 2).outcome, Outcome::SemisolvableOrBiproduct);
    }

    #[test]
    fn replay_rejects_tampering() {
        let vs = classify_4q2(7, &quick()).unwrap();
        let mut v = vs.iter().find(|v| v.g_order == Some(7)).unwrap().clone();
        assert_eq!(replay(&v, &quick()), Ok(Outcome::Impossible));
        v.trace.steps[0].citation.push('!');
        assert!(replay(&v, &quick()).is_err());

        let mut v = vs.iter().find(|v| v.g_order == Some(14)).unwrap().clone();
        v.outcome = Outcome::Impossible;
        assert!(replay(&v, &quick()).is_err());

        let mut v = vs.iter().find(|v| v.g_order == Some(49)).unwrap().clone();
        if let Some(Check::Enumeration { solutions, .. }) = v.trace.steps.iter_mut().map(|s| &mut s.check).find(|c| matches!(c, Check::Enumeration { .. })) {
            solutions.clear();
        }
        assert!(replay(&v, &quick()).is_err());
    }
}
