//! The reproduction suite run by `verify-paper`: twelve acceptance criteria,
//! each deterministic given its seed.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hopfsieve_core::arithmetic::{coideal_obstruction, enumerate_dimension_solutions, is_prime, no_solution_check};
use hopfsieve_core::fusion::{
    abelian_classes, build_skeleton, eliminate_type, propagate, search_consistent_table, search_from, validate,
    Domain, EliminationVerdict, FusionTable, GrouplikeGroup, SearchConfig, SearchOutcome, DEFAULT_BUDGET,
};
use hopfsieve_core::groups::{fusion_table_of, small_groups};
use hopfsieve_core::typeprofile::frobenius_degree_set;
use hopfsieve_core::verdict::{classify, classify_4q2, classify_p2q2, expected_4q2, replay, CaseVerdict, Outcome};
use hopfsieve_core::{AlgebraType, DimensionProfile};

use crate::report::{CaseEntry, CriterionResult, Report};
use crate::{CommandKind, RunConfig};

pub const SMALL_Q: [u64; 4] = [5, 7, 11, 13];

/// The five types the character-ring search must rule out.
pub const ELIMINATION_TYPES: [&str; 5] =
    ["(1,2;4,3;5,2)", "(1,2;4,6;7,2)", "(1,2;4,15;11,2)", "(1,2;4,21;13,2)", "(1,11;4,22;11,1)"];

pub const SUITE_SEED: u64 = 0x5eed_0001;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Node budget for the fusion searches of criteria 5, 6 and 9.
    pub budget: u64,
    pub timings: bool,
    /// Test-harness hook: alter every citation before trace replay.
    pub corrupt_catalog: bool,
    /// Random instances per property in criterion 11.
    pub property_cases: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { budget: DEFAULT_BUDGET, timings: true, corrupt_catalog: false, property_cases: 100 }
    }
}

/// What one criterion reports before timing is attached.
struct Check {
    passed: bool,
    detail: String,
    findings: Vec<String>,
}

impl Check {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Check { passed, detail: detail.into(), findings: Vec::new() }
    }
}

type Criterion = fn(&SuiteConfig) -> Check;

/// `(id, name, time limit, body)` for every criterion.
const CRITERIA: [(u32, &str, Option<Duration>, Criterion); 12] = [
    (1, "order-2 enumeration", Some(Duration::from_secs(1)), order_two_enumeration),
    (2, "order-q enumeration", Some(Duration::from_secs(1)), order_q_enumeration),
    (3, "order-q^2 enumeration", Some(Duration::from_secs(1)), order_q2_enumeration),
    (4, "order-2q enumeration", Some(Duration::from_secs(1)), order_2q_enumeration),
    (5, "fusion elimination", Some(Duration::from_secs(5 * 60 * 5)), fusion_elimination),
    (6, "propagation-only elimination", None, propagation_only),
    (7, "group algebra oracle", Some(Duration::from_secs(30)), group_oracle),
    (8, "no-solution certificates", Some(Duration::from_secs(1)), no_solution_certificates),
    (9, "classification answer key", None, answer_key),
    (10, "coideal sharpening", None, coideal_sharpening),
    (11, "property suites", Some(Duration::from_secs(120)), property_suites),
    (12, "determinism", None, determinism),
];

pub fn criterion_names() -> Vec<(u32, &'static str)> {
    CRITERIA.iter().map(|c| (c.0, c.1)).collect()
}

/// Runs one criterion by id.
pub fn run_criterion(id: u32, config: &SuiteConfig) -> Option<(CriterionResult, Vec<String>)> {
    let &(id, name, limit, body) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let mut check = body(config);
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            check.passed = false;
            check.detail.push_str(&format!("; exceeded the {} ms limit", limit.as_millis()));
        }
    }
    let result = CriterionResult {
        id,
        name: name.to_string(),
        passed: check.passed,
        detail: check.detail,
        wall_ms: config.timings.then(|| elapsed.as_millis() as u64),
    };
    Some((result, check.findings))
}

/// Runs every criterion in order.
pub fn run_all(config: &SuiteConfig) -> (Vec<CriterionResult>, Vec<String>) {
    let mut results = Vec::new();
    let mut findings = Vec::new();
    for (id, _) in criterion_names() {
        let (r, f) = run_criterion(id, config).expect("listed criteria exist");
        results.push(r);
        findings.extend(f);
    }
    (results, findings)
}

fn profile(p: u64, q: u64) -> DimensionProfile {
    DimensionProfile::new(p, q).expect("suite primes are valid")
}

/// `(b, c)` for every solution of `4q^2 = g + 4a + 16b + cq^2` with `a = 0`.
fn small_solutions(q: u64, g: u64) -> Vec<(u64, u64)> {
    let prof = profile(2, q);
    let pins = BTreeMap::from([(2, 0)]);
    enumerate_dimension_solutions(&prof, g, &frobenius_degree_set(&prof), &pins)
        .expect("g divides dim")
        .iter()
        .map(|s| (s.count(4), s.count(q)))
        .collect()
}

fn compare_enumerations(g_of: impl Fn(u64) -> u64, want: impl Fn(u64) -> Vec<(u64, u64)>) -> Check {
    let mut bad = Vec::new();
    let mut parts = Vec::new();
    for q in SMALL_Q {
        let got = small_solutions(q, g_of(q));
        let fmt: Vec<String> = got.iter().map(|(b, c)| format!("(b={b},c={c})")).collect();
        parts.push(format!("q={q}: {{{}}}", fmt.join(",")));
        if got != want(q) {
            bad.push(q);
        }
    }
    let mut detail = parts.join("; ");
    if !bad.is_empty() {
        detail = format!("mismatch at q in {bad:?}; {detail}");
    }
    Check::new(bad.is_empty(), detail)
}

fn order_two_enumeration(_: &SuiteConfig) -> Check {
    let want = |q: u64| match q {
        5 => vec![(3, 2)],
        7 => vec![(6, 2)],
        11 => vec![(15, 2)],
        _ => vec![(21, 2)],
    };
    compare_enumerations(|_| 2, want)
}

fn order_q_enumeration(_: &SuiteConfig) -> Check {
    compare_enumerations(|q| q, |q| if q == 11 { vec![(22, 1)] } else { vec![] })
}

fn order_q2_enumeration(_: &SuiteConfig) -> Check {
    compare_enumerations(|q| q * q, |_| vec![(0, 3)])
}

fn order_2q_enumeration(_: &SuiteConfig) -> Check {
    compare_enumerations(|q| 2 * q, |_| vec![])
}

fn search_config(config: &SuiteConfig) -> SearchConfig {
    SearchConfig { budget: config.budget, ..SearchConfig::default() }
}

fn fusion_elimination(config: &SuiteConfig) -> Check {
    let cfg = search_config(config);
    let mut passed = true;
    let mut parts = Vec::new();
    let mut findings = Vec::new();
    for s in ELIMINATION_TYPES {
        let t = AlgebraType::parse(s, None).expect("fixture types are valid");
        let e = match eliminate_type(&t, &cfg, None) {
            Ok(e) => e,
            Err(err) => {
                passed = false;
                parts.push(format!("{s}: {err}"));
                continue;
            }
        };
        let classes: Vec<String> =
            e.classes.iter().map(|c| format!("{} {}", c.group.label(), c.outcome.label())).collect();
        parts.push(format!("{s}: {} nodes [{}]", e.total_nodes(), classes.join(", ")));
        match e.verdict {
            EliminationVerdict::Infeasible => {}
            EliminationVerdict::Feasible => {
                passed = false;
                findings.push(format!("{s} admits a consistent character table"));
            }
            EliminationVerdict::BudgetExceeded => {
                passed = false;
                parts.push(format!("{s}: budget of {} nodes exceeded", cfg.budget));
            }
            EliminationVerdict::Unsupported => {
                passed = false;
                parts.push(format!("{s}: non-abelian group-likes not searched"));
            }
        }
    }
    Check { passed, detail: parts.join("; "), findings }
}

fn propagation_only(config: &SuiteConfig) -> Check {
    let t = AlgebraType::parse("(1,2;4,21;13,2)", None).expect("valid type");
    match search_consistent_table(&t, &GrouplikeGroup::cyclic(2), &search_config(config)) {
        Ok(SearchOutcome::Infeasible { stats, trace }) => Check::new(
            stats.nodes == 0,
            format!("infeasible after {} nodes, {} trace steps", stats.nodes, trace.steps.len()),
        ),
        Ok(other) => Check::new(false, format!("search ended {}", other.label())),
        Err(e) => Check::new(false, e.to_string()),
    }
}

fn group_oracle(_: &SuiteConfig) -> Check {
    let groups = small_groups();
    let mut bad = Vec::new();
    for g in &groups {
        let t = fusion_table_of(g);
        let violations = validate(&t, &[]);
        let found = search_consistent_table(t.algebra_type(), t.group(), &SearchConfig::default());
        let witness_ok = match &found {
            Ok(SearchOutcome::Feasible { witness, .. }) => validate(witness, &[]).is_empty(),
            _ => false,
        };
        if !violations.is_empty() || !witness_ok {
            bad.push(g.name.clone());
        }
    }
    let detail = if bad.is_empty() {
        format!("{} groups of order at most 16 validated and found feasible", groups.len())
    } else {
        format!("failed for {}", bad.join(", "))
    };
    Check::new(bad.is_empty(), detail)
}

fn no_solution_certificates(_: &SuiteConfig) -> Check {
    let mut bad = Vec::new();
    for (p, q) in [(2u64, 17u64), (2, 19), (3, 83)] {
        let dim = p * p * q * q;
        for offset in [p, p * q, p * p * q] {
            if !no_solution_check(dim, offset, q * q) {
                bad.push(format!("({p},{q}) offset {offset}"));
            }
        }
    }
    let detail = if bad.is_empty() {
        "9 certificates hold for (2,17), (2,19), (3,83)".to_string()
    } else {
        format!("solvable: {}", bad.join(", "))
    };
    Check::new(bad.is_empty(), detail)
}

fn tamper(v: &CaseVerdict) -> CaseVerdict {
    let mut v = v.clone();
    for s in &mut v.trace.steps {
        s.citation.push_str(" (altered)");
    }
    v
}

fn answer_key(config: &SuiteConfig) -> Check {
    let cfg = search_config(config);
    let mut passed = true;
    let mut parts = Vec::new();
    let mut findings = Vec::new();
    for q in SMALL_Q {
        let verdicts = match classify_4q2(q, &cfg) {
            Ok(v) => v,
            Err(e) => {
                passed = false;
                parts.push(format!("q={q}: {e}"));
                continue;
            }
        };
        let mut wrong = Vec::new();
        for v in &verdicts {
            let g = v.g_order.unwrap_or(0);
            if v.outcome != expected_4q2(q, g) {
                wrong.push(format!("g={g} gave {}", v.outcome));
            }
            findings.extend(v.findings.iter().map(|f| format!("4q^2 with q={q}, g={g}: {f}")));
            let checked = if config.corrupt_catalog { tamper(v) } else { v.clone() };
            match replay(&checked, &cfg) {
                Ok(o) if o == v.outcome => {}
                Ok(o) => wrong.push(format!("g={g} replays to {o}")),
                Err(e) => wrong.push(format!("g={g} replay failed at {e}")),
            }
        }
        let gs: BTreeSet<u64> = verdicts.iter().filter_map(|v| v.g_order).collect();
        let want: BTreeSet<u64> = [1, 2, 4, q, 2 * q, 4 * q, q * q, 2 * q * q, 4 * q * q].into();
        if gs != want {
            wrong.push(format!("cases {gs:?}"));
        }
        if wrong.is_empty() {
            parts.push(format!("q={q}: {} cases match", verdicts.len()));
        } else {
            passed = false;
            parts.push(format!("q={q}: {}", wrong.join(", ")));
        }
    }
    Check { passed, detail: parts.join("; "), findings }
}

fn coideal_sharpening(_: &SuiteConfig) -> Check {
    let mut bad = Vec::new();
    let o = coideal_obstruction(5, 1283);
    if !o.obstructed {
        bad.push("(5,1283) not obstructed".to_string());
    }
    match classify_p2q2(5, 1283) {
        Ok(vs) => {
            for g in [25, 25 * 1283] {
                match vs.iter().find(|v| v.g_order == Some(g)) {
                    Some(v) if v.outcome == Outcome::Semisolvable => {}
                    Some(v) => bad.push(format!("(5,1283) g={g} gave {}", v.outcome)),
                    None => bad.push(format!("(5,1283) has no case g={g}")),
                }
            }
        }
        Err(e) => bad.push(e.to_string()),
    }
    let mut twos = 0;
    for q in (3..2000).filter(|&q| is_prime(q)) {
        twos += 1;
        if coideal_obstruction(2, q).obstructed {
            bad.push(format!("(2,{q}) obstructed"));
        }
    }
    let detail = if bad.is_empty() {
        format!("(5,1283) obstructed and sharpened; p=2 unobstructed for {twos} odd primes below 2000")
    } else {
        bad.join("; ")
    };
    Check::new(bad.is_empty(), detail)
}

/// A random type of dimension at most 1000 with at most `max_chars`
/// characters, paired with a random abelian group of its group-like order.
fn random_type(rng: &mut ChaCha8Rng, max_chars: u64) -> (AlgebraType, GrouplikeGroup) {
    loop {
        let mut entries = Vec::new();
        let mut s = 0;
        for d in 2..=6u64 {
            if rng.gen_bool(0.5) {
                let n = rng.gen_range(1..=4u64);
                entries.push((d, n));
                s += n * d * d;
            }
        }
        let divs: Vec<u64> = (1..=24).filter(|g| s == 0 || s % g == 0).collect();
        let g = *divs.choose(rng).expect("1 divides everything");
        let chars = g + entries.iter().map(|e| e.1).sum::<u64>();
        if g + s > 1000 || chars > max_chars {
            continue;
        }
        let mut all = vec![(1, g)];
        all.extend(entries);
        let t = AlgebraType::new(g + s, all).expect("sum of squares is the dimension");
        let classes = abelian_classes(g);
        let f = classes.choose(rng).expect("every order has an abelian group");
        return (t, GrouplikeGroup::abelian(f));
    }
}

/// A permutation shuffling characters within each non-group-like class.
fn class_shuffle(t: &FusionTable, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..t.len()).collect();
    for class in t.classes().iter().skip(1) {
        let mut ids: Vec<usize> = class.ids().collect();
        ids.shuffle(rng);
        for (old, new) in class.ids().zip(ids) {
            perm[old] = new;
        }
    }
    perm
}

/// Pins a few random undecided entries to values inside their domains.
fn pin_randomly(t: &FusionTable, pins: usize, rng: &mut ChaCha8Rng) -> FusionTable {
    let mut out = t.clone();
    let n = t.len();
    for _ in 0..pins {
        let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let d = out.entry(a, b, c);
        if !d.is_empty() && !d.is_fixed() {
            out.restrict(a, b, c, Domain::fixed(rng.gen_range(d.lo..=d.hi.min(d.lo + 2))));
        }
    }
    out
}

fn full_focus(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
}

fn idempotence(rng: &mut ChaCha8Rng, cases: usize) -> Result<String, String> {
    let mut refuted = 0;
    for i in 0..cases {
        let (t, group) = random_type(rng, 24);
        let skeleton = build_skeleton(&t, &group).map_err(|e| format!("{}: {e}", t.notation()))?;
        let partial = pin_randomly(&skeleton, rng.gen_range(0..4), rng);
        match propagate(&partial) {
            Ok(once) => {
                if propagate(&once).as_ref() != Ok(&once) {
                    return Err(format!("instance {i} {} is not a fixed point", t.notation()));
                }
            }
            Err(_) => refuted += 1,
        }
    }
    Ok(format!("idempotence {cases} types ({refuted} refuted)"))
}

fn relabeling(rng: &mut ChaCha8Rng, cases: usize) -> Result<String, String> {
    let groups = small_groups();
    let mut decided = 0;
    for i in 0..cases {
        // Alternate random skeletons with real tables carrying a planted error.
        let partial = if i % 2 == 0 {
            let (t, group) = random_type(rng, 14);
            let skeleton = build_skeleton(&t, &group).map_err(|e| e.to_string())?;
            pin_randomly(&skeleton, 3, rng)
        } else {
            let real = fusion_table_of(groups.choose(rng).expect("groups exist"));
            let mut t = build_skeleton(real.algebra_type(), real.group()).map_err(|e| e.to_string())?;
            let n = real.len();
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            let v = real.entry(a, b, c).value().expect("real tables are complete");
            t.restrict(a, b, c, Domain::fixed(if rng.gen_bool(0.5) { v } else { v + 1 }));
            t
        };
        let moved = partial.relabel(&class_shuffle(&partial, rng)).map_err(|e| e.to_string())?;
        let cfg = SearchConfig { budget: 300, focus: Some(full_focus(partial.len())), symmetry_breaking: false };
        let x = search_from(&partial, &cfg).map_err(|e| e.to_string())?;
        let y = search_from(&moved, &cfg).map_err(|e| e.to_string())?;
        let open = |o: &SearchOutcome| matches!(o, SearchOutcome::BudgetExceeded { .. });
        if open(&x) || open(&y) {
            continue;
        }
        decided += 1;
        if x.label() != y.label() {
            return Err(format!("instance {i}: {} before relabeling, {} after", x.label(), y.label()));
        }
    }
    Ok(format!("relabeling {cases} instances ({decided} decided within 300 nodes)"))
}

fn replayability(rng: &mut ChaCha8Rng, cases: usize, config: &SuiteConfig) -> Result<String, String> {
    let mut pairs: Vec<(u64, u64)> = SMALL_Q.iter().map(|&q| (2, q)).collect();
    pairs.extend((17..400).filter(|&q| is_prime(q)).map(|q| (2, q)));
    pairs.extend((83..800).filter(|&q| is_prime(q)).map(|q| (3, q)));
    pairs.extend((631..3000).filter(|&q| is_prime(q)).map(|q| (5, q)));
    let cfg = SearchConfig::default();
    let mut checked = 0;
    let rounds = cases.div_ceil(9);
    for _ in 0..rounds {
        let &(p, q) = pairs.choose(rng).expect("pairs exist");
        let verdicts = classify(p, q, &cfg).map_err(|e| format!("({p},{q}): {e}"))?;
        for v in &verdicts {
            let v = if config.corrupt_catalog { tamper(v) } else { v.clone() };
            match replay(&v, &cfg) {
                Ok(o) if o == v.outcome => checked += 1,
                Ok(o) => return Err(format!("({p},{q}) g={:?} replays to {o}", v.g_order)),
                Err(e) => return Err(format!("({p},{q}) g={:?}: {e}", v.g_order)),
            }
        }
    }
    Ok(format!("replay {checked} verdicts from {rounds} classifications"))
}

fn round_trip(rng: &mut ChaCha8Rng, cases: usize) -> Result<String, String> {
    let groups = small_groups();
    for i in 0..cases {
        let t = if i % 2 == 0 {
            let (t, group) = random_type(rng, 24);
            let skeleton = build_skeleton(&t, &group).map_err(|e| e.to_string())?;
            propagate(&skeleton).unwrap_or(skeleton)
        } else {
            fusion_table_of(groups.choose(rng).expect("groups exist"))
        };
        let json = serde_json::to_string(&t).map_err(|e| e.to_string())?;
        let back: FusionTable = serde_json::from_str(&json).map_err(|e| e.to_string())?;
        if back != t {
            return Err(format!("instance {i} changed in JSON"));
        }
    }
    let verdicts = classify(2, 7, &SearchConfig::default()).map_err(|e| e.to_string())?;
    let json = serde_json::to_string(&verdicts).map_err(|e| e.to_string())?;
    let back: Vec<CaseVerdict> = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    if back != verdicts {
        return Err("verdicts changed in JSON".into());
    }
    Ok(format!("round trip {cases} tables"))
}

fn property_suites(config: &SuiteConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    let n = config.property_cases;
    let results = [
        idempotence(&mut rng, n),
        relabeling(&mut rng, n),
        replayability(&mut rng, n, config),
        round_trip(&mut rng, n),
    ];
    let passed = results.iter().all(|r| r.is_ok());
    let detail: Vec<String> = results.into_iter().map(|r| r.unwrap_or_else(|e| format!("FAILED {e}"))).collect();
    Check::new(passed, detail.join("; "))
}

/// Renders classification reports twice without timings and compares bytes.
fn determinism(config: &SuiteConfig) -> Check {
    let render = || -> String {
        let mut out = String::new();
        for (p, q) in [(2u64, 3u64), (2, 5), (2, 11), (2, 17), (3, 83)] {
            let mut rc = RunConfig::new(CommandKind::Classify);
            rc.p = Some(p);
            rc.q = Some(q);
            rc.budget = config.budget;
            rc.timings = false;
            let mut report = Report::new(rc);
            let cfg = search_config(config);
            for v in classify(p, q, &cfg).unwrap_or_default() {
                report.cases.push(CaseEntry { verdict: v, wall_ms: None });
            }
            out.push_str(&report.to_json());
            out.push_str(&report.to_markdown());
        }
        out
    };
    let (a, b) = (render(), render());
    Check::new(a == b, format!("two renderings of five classifications, {} bytes each, identical: {}", a.len(), a == b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_criterion_is_listed_once() {
        let ids: Vec<u32> = criterion_names().iter().map(|c| c.0).collect();
        assert_eq!(ids, (1..=12).collect::<Vec<_>>());
    }

    #[test]
    fn cheap_criteria_pass() {
        let cfg = SuiteConfig::default();
        for id in [1, 2, 3, 4, 6, 8, 10] {
            let (r, f) = run_criterion(id, &cfg).unwrap();
            assert!(r.passed, "{}: {}", r.name, r.detail);
            assert!(f.is_empty());
        }
    }
}
