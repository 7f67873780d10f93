//! Exhaustive search for a fusion table of a given type.
//!
//! The search fixes the duality on each degree class, then the action of the
//! group-likes, then branches on multiplicities in the focus rows. Every
//! node is propagated; the first two phases break the relabeling symmetry
//! of a fresh skeleton so that each structure is visited once up to
//! isomorphism.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::engine::{check_closures, propagate_in_place, Compiled, Contradiction};
use super::group::{abelian_classes, GrouplikeGroup};
use super::table::{build_skeleton, CharId, DegreeClass, Domain, FusionTable};
use super::FusionError;
use crate::arithmetic::is_prime;
use crate::rules::RuleId;
use crate::trace::{Check, ProofStep, ProofTrace};
use crate::typeprofile::AlgebraType;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub budget: u64,
    /// Ordered pairs whose products must be fully decomposed; `None` means
    /// the default focus.
    pub focus: Option<Vec<(CharId, CharId)>>,
    /// Exploit relabeling symmetry of untouched skeletons. Turning it off
    /// only makes the search slower.
    pub symmetry_breaking: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: DEFAULT_BUDGET, focus: None, symmetry_breaking: true }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub duality_patterns: u64,
    pub action_patterns: u64,
    /// Dead branches by the rule that closed them.
    pub refutations: BTreeMap<RuleId, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum SearchOutcome {
    Feasible { witness: Box<FusionTable>, stats: SearchStats },
    Infeasible { trace: ProofTrace, stats: SearchStats },
    BudgetExceeded { stats: SearchStats },
}

impl SearchOutcome {
    pub fn stats(&self) -> &SearchStats {
        match self {
            SearchOutcome::Feasible { stats, .. }
            | SearchOutcome::Infeasible { stats, .. }
            | SearchOutcome::BudgetExceeded { stats } => stats,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, SearchOutcome::Feasible { .. })
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, SearchOutcome::Infeasible { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            SearchOutcome::Feasible { .. } => "feasible",
            SearchOutcome::Infeasible { .. } => "infeasible",
            SearchOutcome::BudgetExceeded { .. } => "budget-exceeded",
        }
    }
}

/// All ordered pairs within and between the two highest-degree classes.
pub fn default_focus(table: &FusionTable) -> Vec<(CharId, CharId)> {
    let classes = table.classes();
    let ids: Vec<CharId> = classes.iter().rev().take(2).flat_map(|c| c.ids()).collect();
    let mut pairs: Vec<(CharId, CharId)> = ids.iter().flat_map(|&a| ids.iter().map(move |&b| (a, b))).collect();
    pairs.sort_unstable();
    pairs
}

/// Searches for a table of type `t` whose group-likes form `group`.
pub fn search_consistent_table(
    t: &AlgebraType,
    group: &GrouplikeGroup,
    config: &SearchConfig,
) -> Result<SearchOutcome, FusionError> {
    let skeleton = build_skeleton(t, group)?;
    search_from(&skeleton, config)
}

/// Searches for a completion of an arbitrary partial table. Relabeling
/// symmetry is only exploited when `table` is an untouched skeleton.
pub fn search_from(table: &FusionTable, config: &SearchConfig) -> Result<SearchOutcome, FusionError> {
    if !table.group().is_abelian() {
        return Err(FusionError::NonAbelianGroup { order: table.grouplike_count() as u64 });
    }
    let focus = config.focus.clone().unwrap_or_else(|| default_focus(table));
    if let Some(&(a, b)) = focus.iter().find(|&&(a, b)| a >= table.len() || b >= table.len()) {
        return Err(FusionError::BadFocus { a, b });
    }
    let symmetric = config.symmetry_breaking
        && build_skeleton(table.algebra_type(), table.group()).is_ok_and(|s| s == *table);
    let mut search = Search {
        budget: config.budget,
        focus,
        symmetric,
        classes: table.classes().iter().skip(1).copied().collect(),
        stats: SearchStats::default(),
        first_refutation: None,
    };
    let mut root = table.clone();
    let result = match propagate_in_place(&mut root) {
        Err(c) => {
            search.refute(&c);
            Ok(None)
        }
        Ok(()) => search.duality(root, 0),
    };
    let stats = search.stats.clone();
    Ok(match result {
        Err(BudgetHit) => SearchOutcome::BudgetExceeded { stats },
        Ok(Some(witness)) => SearchOutcome::Feasible { witness: Box::new(witness), stats },
        Ok(None) => {
            let trace = infeasibility_trace(table, &stats, &search.first_refutation);
            SearchOutcome::Infeasible { trace, stats }
        }
    })
}

fn infeasibility_trace(table: &FusionTable, stats: &SearchStats, root: &Option<Contradiction>) -> ProofTrace {
    let mut trace = ProofTrace::new();
    let t = table.algebra_type();
    if stats.nodes == 0 {
        if let Some(c) = root {
            trace.push(ProofStep::new(c.rule, format!("propagation on the skeleton: {}", c.detail), Check::Note));
        }
    } else {
        trace.push(ProofStep::new(
            RuleId::FusionInfeasible,
            format!(
                "{} nodes over {} duality patterns and {} group-like actions",
                stats.nodes, stats.duality_patterns, stats.action_patterns
            ),
            Check::Note,
        ));
        for (rule, count) in &stats.refutations {
            trace.push(ProofStep::new(*rule, format!("closed {count} branches"), Check::Note));
        }
    }
    let groups = vec![table.group().factors().map(|f| f.to_vec()).unwrap_or_default()];
    trace.push(ProofStep::new(
        RuleId::FusionInfeasible,
        format!("no fusion table of type {} with group-likes {}", t.notation(), table.group().label()),
        Check::Fusion { type_notation: t.notation(), dim: t.dim(), groups, nodes: stats.nodes },
    ));
    trace
}

#[derive(Debug)]
struct BudgetHit;

type Step = Result<Option<FusionTable>, BudgetHit>;

struct Search {
    budget: u64,
    focus: Vec<(CharId, CharId)>,
    symmetric: bool,
    classes: Vec<DegreeClass>,
    stats: SearchStats,
    first_refutation: Option<Contradiction>,
}

impl Search {
    fn node(&mut self) -> Result<(), BudgetHit> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            return Err(BudgetHit);
        }
        Ok(())
    }

    fn refute(&mut self, c: &Contradiction) {
        *self.stats.refutations.entry(c.rule).or_insert(0) += 1;
        if self.first_refutation.is_none() {
            self.first_refutation = Some(c.clone());
        }
    }

    // ---- duality ----

    fn duality(&mut self, t: FusionTable, ci: usize) -> Step {
        if ci == self.classes.len() {
            self.stats.duality_patterns += 1;
            return self.action(t, 0);
        }
        let class = self.classes[ci];
        let Some(x) = class.ids().find(|&x| t.dual(x).is_none()) else {
            return self.duality(t, ci + 1);
        };
        if self.symmetric {
            let options = canonical_involutions(&t, class);
            let branching = options.len() > 1;
            for pairs in options {
                if branching {
                    self.node()?;
                }
                let mut next = t.clone();
                for (x, y) in pairs {
                    next.set_dual(x, y);
                }
                if let Some(w) = self.dual_step(next, ci + 1)? {
                    return Ok(Some(w));
                }
            }
            return Ok(None);
        }
        // One character at a time, lowest unknown first.
        let options: Vec<CharId> = class.ids().filter(|&y| y == x || t.dual(y).is_none()).collect();
        for y in options {
            self.node()?;
            let mut next = t.clone();
            next.set_dual(x, y);
            if let Some(w) = self.dual_step(next, ci)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    fn dual_step(&mut self, mut next: FusionTable, ci: usize) -> Step {
        match propagate_in_place(&mut next) {
            Err(c) => {
                self.refute(&c);
                Ok(None)
            }
            Ok(()) => self.duality(next, ci),
        }
    }

    // ---- group-like action ----

    fn action(&mut self, t: FusionTable, ci: usize) -> Step {
        if t.grouplike_count() == 1 || ci == self.classes.len() {
            self.stats.action_patterns += 1;
            return self.multiplicities(t);
        }
        let class = self.classes[ci];
        let gens = t.group().generators();
        if class.ids().all(|x| gens.iter().all(|&h| t.act(h, x).is_some())) {
            return self.action(t, ci + 1);
        }
        let mut images: Vec<Vec<Option<CharId>>> =
            gens.iter().map(|&h| class.ids().map(|x| t.act(h, x)).collect()).collect();
        let mut touched = vec![!self.symmetric; t.len()];
        for x in class.ids() {
            let moved = (1..t.grouplike_count()).any(|h| t.act(h, x).is_some())
                || (1..t.grouplike_count()).any(|h| class.ids().any(|w| t.act(h, w) == Some(x)));
            if moved {
                touched[x] = true;
                touched[t.dual(x).expect("duals are fixed before actions")] = true;
            }
        }
        self.assign_generators(&t, ci, &gens, &mut images, &mut touched)
    }

    fn assign_generators(
        &mut self,
        t: &FusionTable,
        ci: usize,
        gens: &[CharId],
        images: &mut Vec<Vec<Option<CharId>>>,
        touched: &mut Vec<bool>,
    ) -> Step {
        let class = self.classes[ci];
        let local = |x: CharId| x - class.start;
        // Next variable: a touched element first, otherwise the lowest id.
        let mut next = None;
        for (i, row) in images.iter().enumerate() {
            let pick = class
                .ids()
                .find(|&x| touched[x] && row[local(x)].is_none())
                .or_else(|| class.ids().find(|&x| row[local(x)].is_none()));
            if let Some(x) = pick {
                next = Some((i, x));
                break;
            }
        }
        let Some((i, x)) = next else {
            return self.finish_class(t, ci, gens, images);
        };

        let dual = |y: CharId| t.dual(y).expect("duals are fixed before actions");
        let newly = [x, dual(x)].into_iter().filter(|&y| !touched[y]).collect::<Vec<_>>();
        for &y in &newly {
            touched[y] = true;
        }
        let taken: Vec<bool> = {
            let mut v = vec![false; class.len];
            for y in images[i].iter().flatten() {
                v[local(*y)] = true;
            }
            v
        };
        let mut candidates: Vec<CharId> = class.ids().filter(|&y| touched[y] && !taken[local(y)]).collect();
        let fresh_self = class.ids().find(|&y| !touched[y] && dual(y) == y);
        let fresh_pair = class.ids().find(|&y| !touched[y] && dual(y) != y);
        candidates.extend(fresh_self);
        candidates.extend(fresh_pair);

        let mut found = None;
        for y in candidates {
            self.node()?;
            images[i][local(x)] = Some(y);
            let newly_y = [y, dual(y)].into_iter().filter(|&z| !touched[z]).collect::<Vec<_>>();
            for &z in &newly_y {
                touched[z] = true;
            }
            match locally_consistent(t, class, gens, images) {
                Err(c) => self.refute(&c),
                Ok(()) => {
                    if let Some(w) = self.assign_generators(t, ci, gens, images, touched)? {
                        found = Some(w);
                    }
                }
            }
            for &z in &newly_y {
                touched[z] = false;
            }
            images[i][local(x)] = None;
            if found.is_some() {
                break;
            }
        }
        for &y in &newly {
            touched[y] = false;
        }
        Ok(found)
    }

    fn finish_class(
        &mut self,
        t: &FusionTable,
        ci: usize,
        gens: &[CharId],
        images: &[Vec<Option<CharId>>],
    ) -> Step {
        let class = self.classes[ci];
        let group = t.group();
        let mut next = t.clone();
        // Breadth-first words: element e = gen * prev, so e x = gen (prev x).
        let mut full: Vec<Option<Vec<CharId>>> = vec![None; group.order()];
        full[0] = Some(class.ids().collect());
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(prev) = queue.pop_front() {
            for (i, &h) in gens.iter().enumerate() {
                let e = group.mul(h, prev);
                if full[e].is_none() {
                    let before = full[prev].clone().unwrap();
                    let after: Vec<CharId> =
                        before.iter().map(|&y| images[i][y - class.start].expect("complete")).collect();
                    full[e] = Some(after);
                    queue.push_back(e);
                }
            }
        }
        for (e, imgs) in full.iter().enumerate().skip(1) {
            for (x, &y) in class.ids().zip(imgs.as_ref().expect("generators generate")) {
                next.set_action(e, x, y);
            }
        }
        match propagate_in_place(&mut next) {
            Err(c) => {
                self.refute(&c);
                Ok(None)
            }
            Ok(()) => self.action(next, ci + 1),
        }
    }

    // ---- multiplicities ----

    fn multiplicities(&mut self, t: FusionTable) -> Step {
        let compiled = match Compiled::build(&t) {
            Ok(c) => c,
            Err(c) => {
                self.refute(&c);
                return Ok(None);
            }
        };
        let mut dom = compiled.initial.clone();
        if let Err(c) = compiled.fixpoint(&mut dom, None) {
            self.refute(&c);
            return Ok(None);
        }
        let n = t.len();
        let mut seen = vec![false; compiled.initial.len()];
        let mut focus_vars = Vec::new();
        for &(a, b) in &self.focus {
            for c in 0..n {
                let v = compiled.var_of[(a * n + b) * n + c];
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    focus_vars.push(v);
                }
            }
        }
        match self.branch(&t, &compiled, &focus_vars, dom)? {
            Some(dom) => {
                let mut witness = t.clone();
                compiled.write_back(&mut witness, &dom);
                Ok(Some(witness))
            }
            None => Ok(None),
        }
    }

    fn branch(
        &mut self,
        t: &FusionTable,
        compiled: &Compiled,
        focus_vars: &[u32],
        dom: Vec<Domain>,
    ) -> Result<Option<Vec<Domain>>, BudgetHit> {
        let closure = check_closures(
            t.len(),
            t.degrees(),
            t.duals(),
            t.grouplike_count(),
            t.algebra_type().dim(),
            |a, b, c| compiled.entry(&dom, a, b, c),
        );
        if let Err(c) = closure {
            self.refute(&c);
            return Ok(None);
        }
        let pick = focus_vars
            .iter()
            .copied()
            .filter(|&v| !dom[v as usize].is_fixed())
            .min_by_key(|&v| dom[v as usize].hi - dom[v as usize].lo);
        let Some(v) = pick else { return Ok(Some(dom)) };
        let d = dom[v as usize];
        for value in d.lo..=d.hi {
            self.node()?;
            let mut next = dom.clone();
            next[v as usize] = Domain::fixed(value);
            match compiled.fixpoint(&mut next, Some(v)) {
                Err(c) => self.refute(&c),
                Ok(()) => {
                    if let Some(w) = self.branch(t, compiled, focus_vars, next)? {
                        return Ok(Some(w));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// On an untouched skeleton, `k` disjoint pairs on the first `2k` ids of
/// the class and fixed points elsewhere, for each `k`, filtered by the duals
/// propagation already knows.
fn canonical_involutions(t: &FusionTable, class: DegreeClass) -> Vec<Vec<(CharId, CharId)>> {
    (0..=class.len / 2)
        .map(|k| {
            let mut pairs: Vec<(CharId, CharId)> =
                (0..k).map(|i| (class.start + 2 * i, class.start + 2 * i + 1)).collect();
            pairs.extend((class.start + 2 * k..class.start + class.len).map(|x| (x, x)));
            pairs
        })
        .filter(|p| p.iter().all(|&(x, y)| t.dual(x).is_none_or(|z| z == y) && t.dual(y).is_none_or(|z| z == x)))
        .collect()
}

/// Cheap checks on a partial assignment of generator images: cycle lengths,
/// stabilizer orders for cyclic groups, commuting generators, and
/// compatibility with the right action `x h = (h^-1 x*)*`.
fn locally_consistent(
    t: &FusionTable,
    class: DegreeClass,
    gens: &[CharId],
    images: &[Vec<Option<CharId>>],
) -> Result<(), Contradiction> {
    let group = t.group();
    let at = |i: usize, x: CharId| images[i][x - class.start];
    let inverse = |i: usize, y: CharId| class.ids().find(|&x| at(i, x) == Some(y));
    let dual = |x: CharId| t.dual(x).expect("duals are fixed before actions");
    for (i, &h) in gens.iter().enumerate() {
        let ord = group.element_order(h);
        for x in class.ids() {
            let mut y = x;
            let mut len = 0;
            loop {
                match at(i, y) {
                    None => break,
                    Some(z) => {
                        len += 1;
                        y = z;
                    }
                }
                if y == x {
                    if ord % len != 0 {
                        return Err(Contradiction {
                            rule: RuleId::GroupAction,
                            detail: format!("a generator of order {ord} has a cycle of length {len}"),
                        });
                    }
                    let d = t.degree(x);
                    if gens.len() == 1 && (d * d) % (ord / len) as u64 != 0 {
                        return Err(Contradiction {
                            rule: RuleId::StabilizerDividesDegsq,
                            detail: format!(
                                "character {x} of degree {d} would be fixed by {} group-likes",
                                ord / len
                            ),
                        });
                    }
                    break;
                }
                if len >= ord {
                    return Err(Contradiction {
                        rule: RuleId::GroupAction,
                        detail: format!("a generator of order {ord} has an orbit longer than {ord}"),
                    });
                }
            }
        }
    }
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            for x in class.ids() {
                if i < j {
                    let a = at(j, x).and_then(|y| at(i, y));
                    let b = at(i, x).and_then(|y| at(j, y));
                    if let (Some(a), Some(b)) = (a, b) {
                        if a != b {
                            return Err(Contradiction {
                                rule: RuleId::GroupAction,
                                detail: "generator actions do not commute".to_string(),
                            });
                        }
                    }
                }
                // x h_j = (h_j^-1 x*)*, and h_i (x h_j) = (h_i x) h_j.
                let right = |y: CharId| inverse(j, dual(y)).map(dual);
                let a = right(x).and_then(|y| at(i, y));
                let b = at(i, x).and_then(right);
                if let (Some(a), Some(b)) = (a, b) {
                    if a != b {
                        return Err(Contradiction {
                            rule: RuleId::GrouplikeTranslation,
                            detail: format!("left and right translation of {x} do not commute"),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Whether every group of order `n` is abelian: `n` is cube-free and no
/// `p^k` with `p^k | n` is `1 mod r` for a prime `r | n`.
pub fn all_groups_abelian(n: u64) -> bool {
    let primes: Vec<(u64, u32)> = (2..=n)
        .filter(|&p| is_prime(p) && n % p == 0)
        .map(|p| {
            let mut e = 0;
            let mut m = n;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            (p, e)
        })
        .collect();
    if primes.iter().any(|&(_, e)| e >= 3) {
        return false;
    }
    for &(p, e) in &primes {
        for &(r, _) in &primes {
            if (1..=e).any(|k| p.pow(k) % r == 1) {
                return false;
            }
        }
    }
    true
}

/// The per-group-class results for one type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    #[serde(rename = "type")]
    pub ty: AlgebraType,
    pub verdict: EliminationVerdict,
    pub classes: Vec<ClassResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassResult {
    pub group: GrouplikeGroup,
    pub outcome: SearchOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EliminationVerdict {
    Feasible,
    Infeasible,
    BudgetExceeded,
    /// Every abelian class is infeasible but non-abelian groups of this order
    /// exist and were not searched.
    Unsupported,
}

impl Elimination {
    pub fn total_nodes(&self) -> u64 {
        self.classes.iter().map(|c| c.outcome.stats().nodes).sum()
    }
}

/// Runs the search for each abelian group of the type's group-like order, or
/// only for `only` when given.
pub fn eliminate_type(
    t: &AlgebraType,
    config: &SearchConfig,
    only: Option<&[u64]>,
) -> Result<Elimination, FusionError> {
    let g = t.grouplike_order();
    let classes: Vec<Vec<u64>> = match only {
        Some(f) => {
            let group = GrouplikeGroup::abelian(f);
            if group.order() as u64 != g {
                return Err(FusionError::GroupMismatch { group: group.order() as u64, grouplikes: g });
            }
            vec![f.to_vec()]
        }
        None => abelian_classes(g),
    };
    let mut results = Vec::new();
    for f in classes {
        let group = GrouplikeGroup::abelian(&f);
        let outcome = search_consistent_table(t, &group, config)?;
        results.push(ClassResult { group, outcome });
    }
    let verdict = if results.iter().any(|r| r.outcome.is_feasible()) {
        EliminationVerdict::Feasible
    } else if results.iter().any(|r| matches!(r.outcome, SearchOutcome::BudgetExceeded { .. })) {
        EliminationVerdict::BudgetExceeded
    } else if only.is_some() || !all_groups_abelian(g) {
        // A single requested class, or an order with non-abelian groups,
        // does not settle the type.
        EliminationVerdict::Unsupported
    } else {
        EliminationVerdict::Infeasible
    };
    Ok(Elimination { ty: t.clone(), verdict, classes: results })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> AlgebraType {
        AlgebraType::parse(s, None).unwrap()
    }

    #[test]
    fn abelian_orders() {
        assert!(all_groups_abelian(1));
        assert!(all_groups_abelian(2));
        assert!(all_groups_abelian(4));
        assert!(all_groups_abelian(11));
        assert!(all_groups_abelian(121));
        assert!(all_groups_abelian(15));
        assert!(!all_groups_abelian(6));
        assert!(!all_groups_abelian(8));
        assert!(!all_groups_abelian(10));
        assert!(!all_groups_abelian(20));
        assert!(!all_groups_abelian(12));
        // 4 * 11 = 44: 4 = 1 mod 3 is irrelevant; 11 = 1 mod 2 gives D22.
        assert!(!all_groups_abelian(44));
        // 4 * 49 = 196 has 7 = 1 mod 2.
        assert!(!all_groups_abelian(196));
        assert!(!all_groups_abelian(9 * 25));
        assert!(all_groups_abelian(25 * 49));
    }

    #[test]
    fn dihedral_eight_type_is_feasible() {
        let t = ty("(1,4;2,1)");
        let cfg = SearchConfig { budget: 1000, focus: Some(vec![(4, 4)]), ..SearchConfig::default() };
        let out = search_consistent_table(&t, &GrouplikeGroup::abelian(&[2, 2]), &cfg).unwrap();
        let SearchOutcome::Feasible { witness, .. } = out else { panic!("{out:?}") };
        for g in 0..4 {
            assert_eq!(witness.entry(4, 4, g), Domain::ONE);
        }
        assert_eq!(witness.entry(4, 4, 4), Domain::ZERO);
    }

    #[test]
    fn propagation_alone_refutes_degree_thirteen_type() {
        let out = search_consistent_table(&ty("(1,2;4,21;13,2)"), &GrouplikeGroup::cyclic(2), &SearchConfig::default())
            .unwrap();
        let SearchOutcome::Infeasible { trace, stats } = out else { panic!("{out:?}") };
        assert_eq!(stats.nodes, 0);
        assert!(trace.mentions(RuleId::FusionInfeasible));
    }

    #[test]
    fn budget_is_reported_separately() {
        let out =
            search_consistent_table(&ty("(1,2;4,3;5,2)"), &GrouplikeGroup::cyclic(2), &SearchConfig { budget: 1, ..SearchConfig::default() })
                .unwrap();
        assert!(matches!(out, SearchOutcome::BudgetExceeded { .. }), "{out:?}");
    }

    #[test]
    fn bad_focus_is_rejected() {
        let cfg = SearchConfig { budget: 10, focus: Some(vec![(0, 99)]), ..SearchConfig::default() };
        assert!(search_consistent_table(&ty("(1,4;2,1)"), &GrouplikeGroup::cyclic(4), &cfg).is_err());
    }

    #[test]
    fn symmetry_breaking_agrees_with_plain_search() {
        let t = ty("(1,2;4,3;5,2)");
        for symmetry_breaking in [true, false] {
            let cfg = SearchConfig { symmetry_breaking, ..SearchConfig::default() };
            let out = search_consistent_table(&t, &GrouplikeGroup::cyclic(2), &cfg).unwrap();
            assert!(matches!(out, SearchOutcome::Infeasible { .. }), "{symmetry_breaking}: {out:?}");
        }
    }
}
