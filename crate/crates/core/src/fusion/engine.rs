//! Constraint propagation over partial fusion tables.
//!
//! Entries related by Frobenius reciprocity, duality and group-like
//! translation are merged into one variable (union-find); the degree rows
//! and the group-like rows become linear equalities over those variables and
//! are made generalized-arc-consistent with a knapsack reachability pass.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::table::{closure_by, CharId, Domain, FusionTable};
use crate::rules::RuleId;

/// A violated rule, returned as a value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contradiction {
    pub rule: RuleId,
    pub detail: String,
}

impl Contradiction {
    fn new(rule: RuleId, detail: impl Into<String>) -> Self {
        Contradiction { rule, detail: detail.into() }
    }
}

impl std::fmt::Display for Contradiction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.rule, self.detail)
    }
}

/// Applies every rule to a fixed point.
pub fn propagate(table: &FusionTable) -> Result<FusionTable, Contradiction> {
    let mut t = table.clone();
    propagate_in_place(&mut t)?;
    Ok(t)
}

pub(crate) fn propagate_in_place(t: &mut FusionTable) -> Result<(), Contradiction> {
    if let Some(i) = t.domains().iter().position(|d| d.is_empty()) {
        let n = t.len();
        return Err(Contradiction::new(
            RuleId::DegreeAccounting,
            format!("m({}, {}*{}) has no admissible value", i % n, i / (n * n), (i / n) % n),
        ));
    }
    loop {
        sync_structure(t)?;
        let compiled = Compiled::build(t)?;
        let mut dom = compiled.initial.clone();
        compiled.fixpoint(&mut dom, None)?;
        if !compiled.write_back(t, &dom) {
            break;
        }
    }
    check_closures(t.len(), t.degrees(), t.duals(), t.grouplike_count(), t.algebra_type().dim(), |a, b, c| {
        t.entry(a, b, c)
    })
}

/// Derives duals and the group-like action from entries and back, closes
/// the action under composition, and checks stabilizers.
fn sync_structure(t: &mut FusionTable) -> Result<(), Contradiction> {
    let n = t.len();
    let g = t.grouplike_count();
    loop {
        let mut changed = false;

        for a in 0..n {
            for b in 0..n {
                if t.entry(a, b, 0).lo > 0 {
                    changed |= assign_dual(t, a, b)?;
                }
            }
        }
        for a in 0..n {
            if let Some(b) = t.dual(a) {
                changed |= assign_dual(t, a, b)?;
            }
        }

        for h in 1..g {
            for x in 0..n {
                for c in 0..n {
                    if t.entry(h, x, c).lo > 0 {
                        changed |= assign_action(t, h, x, c)?;
                    }
                }
            }
        }
        changed |= close_action(t)?;

        for x in g..n {
            let fixing = (0..g).filter(|&h| t.act(h, x) == Some(x)).count() as u64;
            let d = t.degree(x);
            if (d * d) % fixing != 0 {
                return Err(Contradiction::new(
                    RuleId::StabilizerDividesDegsq,
                    format!("{fixing} group-likes fix character {x} of degree {d}, which does not divide {}", d * d),
                ));
            }
        }

        for a in 0..n {
            if let Some(b) = t.dual(a) {
                for x in 0..n {
                    changed |= restrict(t, a, x, 0, Domain::fixed((x == b) as u32), RuleId::CounitMultiplicity)?;
                }
            }
        }
        for h in 1..g {
            for x in 0..n {
                if let Some(y) = t.act(h, x) {
                    for c in 0..n {
                        changed |= restrict(t, h, x, c, Domain::fixed((c == y) as u32), RuleId::GrouplikeMultiplicity)?;
                    }
                }
            }
        }

        changed |= product_not_irreducible(t)?;

        if !changed {
            return Ok(());
        }
    }
}

fn restrict(t: &mut FusionTable, a: CharId, b: CharId, c: CharId, d: Domain, rule: RuleId) -> Result<bool, Contradiction> {
    let old = t.entry(a, b, c);
    let new = old.intersect(d);
    if new.is_empty() {
        return Err(Contradiction::new(
            rule,
            format!("m({c}, {a}*{b}) must lie in [{}, {}] but was [{}, {}]", d.lo, d.hi, old.lo, old.hi),
        ));
    }
    if new != old {
        t.restrict(a, b, c, d);
        return Ok(true);
    }
    Ok(false)
}

fn assign_dual(t: &mut FusionTable, a: CharId, b: CharId) -> Result<bool, Contradiction> {
    if t.degree(a) != t.degree(b) {
        return Err(Contradiction::new(RuleId::DualityMultiplicity, format!("{a}* = {b} changes degree")));
    }
    let mut changed = false;
    for (x, y) in [(a, b), (b, a)] {
        match t.dual(x) {
            Some(z) if z != y => {
                return Err(Contradiction::new(
                    RuleId::CounitMultiplicity,
                    format!("character {x} would have two duals, {z} and {y}"),
                ))
            }
            Some(_) => {}
            None => {
                t.set_dual_raw(x, Some(y));
                changed = true;
            }
        }
    }
    Ok(changed)
}

fn assign_action(t: &mut FusionTable, h: CharId, x: CharId, y: CharId) -> Result<bool, Contradiction> {
    match t.act(h, x) {
        Some(z) if z == y => Ok(false),
        Some(z) => Err(Contradiction::new(
            RuleId::GroupAction,
            format!("group-like {h} would send {x} to both {z} and {y}"),
        )),
        None => {
            if t.degree(x) != t.degree(y) {
                return Err(Contradiction::new(RuleId::GrouplikeMultiplicity, format!("{h}*{x} = {y} changes degree")));
            }
            t.set_action(h, x, y);
            Ok(true)
        }
    }
}

/// Composition `(kh) x = k (h x)`, inverses, injectivity and the last free
/// image of a nearly complete permutation.
fn close_action(t: &mut FusionTable) -> Result<bool, Contradiction> {
    let n = t.len();
    let g = t.grouplike_count();
    let group = t.group().clone();
    let mut changed = false;
    loop {
        let mut round = false;
        for h in 1..g {
            for x in g..n {
                let Some(y) = t.act(h, x) else { continue };
                round |= assign_action(t, group.inv(h), y, x)?;
                for k in 1..g {
                    if let Some(z) = t.act(k, y) {
                        round |= assign_action(t, group.mul(k, h), x, z)?;
                    }
                }
            }
        }
        for h in 1..g {
            for class in t.classes().to_vec().iter().skip(1) {
                let mut hit = vec![None; n];
                let mut unknown = Vec::new();
                for x in class.ids() {
                    match t.act(h, x) {
                        Some(y) => {
                            if let Some(w) = hit[y] {
                                return Err(Contradiction::new(
                                    RuleId::GroupAction,
                                    format!("group-like {h} sends both {w} and {x} to {y}"),
                                ));
                            }
                            hit[y] = Some(x);
                        }
                        None => unknown.push(x),
                    }
                }
                if unknown.len() == 1 {
                    let free = class.ids().find(|&y| hit[y].is_none()).expect("a permutation has a free image");
                    round |= assign_action(t, h, unknown[0], free)?;
                }
            }
        }
        if !round {
            return Ok(changed);
        }
        changed = true;
    }
}

/// If every character of degree `t` has the same nontrivial stabilizer, no
/// product of two of them is irreducible, so constituents of degree `t^2`
/// are ruled out.
fn product_not_irreducible(t: &mut FusionTable) -> Result<bool, Contradiction> {
    let mut changed = false;
    for class in t.classes().to_vec().iter().skip(1) {
        let stabs: Option<Vec<Vec<CharId>>> =
            class.ids().map(|x| t.stabilizer_of(x).ok().map(|s| s.subgroup)).collect();
        let Some(stabs) = stabs else { continue };
        if stabs[0].len() < 2 || stabs.iter().any(|s| *s != stabs[0]) {
            continue;
        }
        let Some(big) = t.class_with_degree(class.degree * class.degree).copied() else { continue };
        for a in class.ids() {
            for b in class.ids() {
                for c in big.ids() {
                    changed |= restrict(t, a, b, c, Domain::ZERO, RuleId::ProductNotIrreducible)?;
                }
            }
        }
    }
    Ok(changed)
}

/// For each character `x` with known dual, the closure of the group-likes
/// and `x` must have dimension dividing `dim` once it is determined.
pub(crate) fn check_closures(
    n: usize,
    degree: &[u64],
    dual: &[Option<CharId>],
    g: usize,
    dim: u64,
    entry: impl Fn(CharId, CharId, CharId) -> Domain + Copy,
) -> Result<(), Contradiction> {
    let grouplikes: Vec<CharId> = (0..g).collect();
    let mut seen_in_closure = vec![false; n];
    for x in g..n {
        if seen_in_closure[x] || dual[x].is_none() {
            continue;
        }
        let mut seed = grouplikes.clone();
        seed.push(x);
        if let Ok(c) = closure_by(n, degree, dual, &seed, true, entry) {
            if dim % c.dimension != 0 {
                return Err(Contradiction::new(
                    RuleId::StandardSubalgebraClosure,
                    format!(
                        "the group-likes and character {x} span a standard subalgebra of dimension {}, which does not divide {dim}",
                        c.dimension
                    ),
                ));
            }
            if c.members.len() == n {
                // Every larger seed closes to the whole table as well.
                seen_in_closure.iter_mut().for_each(|s| *s = true);
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub(crate) struct Row {
    pub terms: Vec<(u32, u32)>,
    pub target: u32,
    pub rule: RuleId,
    pub origin: (CharId, CharId),
}

/// Variables and rows for a table whose symmetries are frozen.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    pub n: usize,
    pub var_of: Vec<u32>,
    pub initial: Vec<Domain>,
    pub rows: Vec<Row>,
    pub rows_of: Vec<Vec<u32>>,
}

struct UnionFind {
    parent: Vec<u32>,
    dom: Vec<Domain>,
}

impl UnionFind {
    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, x: usize, y: usize, rule: RuleId, n: usize) -> Result<(), Contradiction> {
        let (rx, ry) = (self.find(x as u32), self.find(y as u32));
        if rx == ry {
            return Ok(());
        }
        let (dx, dy) = (self.dom[rx as usize], self.dom[ry as usize]);
        let merged = dx.intersect(dy);
        if merged.is_empty() {
            let name = |i: usize| format!("m({}, {}*{})", i % n, i / (n * n), (i / n) % n);
            return Err(Contradiction::new(
                rule,
                format!(
                    "{} in [{}, {}] must equal {} in [{}, {}]",
                    name(x),
                    dx.lo,
                    dx.hi,
                    name(y),
                    dy.lo,
                    dy.hi
                ),
            ));
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi as usize] = lo;
        self.dom[lo as usize] = merged;
        Ok(())
    }
}

impl Compiled {
    pub fn build(t: &FusionTable) -> Result<Compiled, Contradiction> {
        let n = t.len();
        let g = t.grouplike_count();
        let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
        let mut uf = UnionFind { parent: (0..(n * n * n) as u32).collect(), dom: t.domains().to_vec() };
        let dual = t.duals();
        let gens = t.group().generators();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let i = idx(a, b, c);
                    if let Some(sb) = dual[b] {
                        uf.union(i, idx(c, sb, a), RuleId::FrobeniusReciprocity, n)?;
                    }
                    if let (Some(sc), Some(sa)) = (dual[c], dual[a]) {
                        uf.union(i, idx(b, sc, sa), RuleId::FrobeniusReciprocity, n)?;
                        if let Some(sb) = dual[b] {
                            uf.union(i, idx(sb, sa, sc), RuleId::DualityMultiplicity, n)?;
                        }
                    }
                    for &h in &gens {
                        if let (Some(ha), Some(hc)) = (t.act(h, a), t.act(h, c)) {
                            uf.union(i, idx(ha, b, hc), RuleId::GrouplikeTranslation, n)?;
                        }
                    }
                }
            }
        }

        let mut var_of = vec![0u32; n * n * n];
        let mut var_of_root: HashMap<u32, u32> = HashMap::new();
        let mut initial = Vec::new();
        for i in 0..n * n * n {
            let r = uf.find(i as u32);
            let v = *var_of_root.entry(r).or_insert_with(|| {
                initial.push(uf.dom[r as usize]);
                (initial.len() - 1) as u32
            });
            var_of[i] = v;
        }

        let mut rows = Vec::new();
        let mut seen: HashMap<(Vec<(u32, u32)>, u32), ()> = HashMap::new();
        let mut push_row = |terms: Vec<(u32, u32)>, target: u32, rule: RuleId, origin: (usize, usize)| {
            let mut acc: Vec<(u32, u32)> = Vec::with_capacity(terms.len());
            let mut sorted = terms;
            sorted.sort_unstable();
            for (v, k) in sorted {
                match acc.last_mut() {
                    Some(last) if last.0 == v => last.1 += k,
                    _ => acc.push((v, k)),
                }
            }
            if seen.insert((acc.clone(), target), ()).is_none() {
                rows.push(Row { terms: acc, target, rule, origin });
            }
        };
        let deg = t.degrees();
        for a in 0..n {
            for b in 0..n {
                let terms = (0..n).map(|c| (var_of[idx(a, b, c)], deg[c] as u32)).collect();
                push_row(terms, (deg[a] * deg[b]) as u32, RuleId::DegreeAccounting, (a, b));
            }
        }
        for a in 0..n {
            for h in 0..g {
                let terms = (0..n).map(|b| (var_of[idx(a, b, h)], 1)).collect();
                push_row(terms, 1, RuleId::GrouplikeMultiplicity, (a, h));
            }
        }
        let mut rows_of = vec![Vec::new(); initial.len()];
        for (r, row) in rows.iter().enumerate() {
            for &(v, _) in &row.terms {
                rows_of[v as usize].push(r as u32);
            }
        }
        Ok(Compiled { n, var_of, initial, rows, rows_of })
    }

    /// Copies variable domains back to the table; true if anything changed.
    pub fn write_back(&self, t: &mut FusionTable, dom: &[Domain]) -> bool {
        let mut changed = false;
        for (slot, &v) in t.domains_mut().iter_mut().zip(&self.var_of) {
            let d = dom[v as usize];
            if *slot != d {
                *slot = d;
                changed = true;
            }
        }
        changed
    }

    pub fn entry(&self, dom: &[Domain], a: CharId, b: CharId, c: CharId) -> Domain {
        dom[self.var_of[(a * self.n + b) * self.n + c] as usize]
    }

    /// Runs row consistency until nothing changes. `start` limits the first
    /// wave to the rows touching one variable.
    pub fn fixpoint(&self, dom: &mut [Domain], start: Option<u32>) -> Result<(), Contradiction> {
        let mut queued = vec![false; self.rows.len()];
        let mut queue: std::collections::VecDeque<u32> = match start {
            Some(v) => self.rows_of[v as usize].iter().copied().collect(),
            None => (0..self.rows.len() as u32).collect(),
        };
        for &r in &queue {
            queued[r as usize] = true;
        }
        let mut changed_vars = Vec::new();
        while let Some(r) = queue.pop_front() {
            queued[r as usize] = false;
            changed_vars.clear();
            let row = &self.rows[r as usize];
            if !revise(row, dom, &mut changed_vars) {
                return Err(Contradiction::new(
                    row.rule,
                    match row.rule {
                        RuleId::GrouplikeMultiplicity => format!(
                            "no character b has m({}, {}*b) = 1 consistently with the other entries",
                            row.origin.1, row.origin.0
                        ),
                        _ => format!(
                            "the constituents of {}*{} cannot make up its degree {}",
                            row.origin.0, row.origin.1, row.target
                        ),
                    },
                ));
            }
            for &v in &changed_vars {
                for &r2 in &self.rows_of[v as usize] {
                    if !queued[r2 as usize] {
                        queued[r2 as usize] = true;
                        queue.push_back(r2);
                    }
                }
            }
        }
        Ok(())
    }
}

/// Narrows each variable of `row` to the values that extend to a solution
/// of `sum k_i x_i = target`. False if none exists.
fn revise(row: &Row, dom: &mut [Domain], changed: &mut Vec<u32>) -> bool {
    let mut rest = row.target as i64;
    let mut free: Vec<(u32, usize, usize)> = Vec::new();
    let mut max_free: i64 = 0;
    for &(v, k) in &row.terms {
        let d = dom[v as usize];
        rest -= (k as i64) * (d.lo as i64);
        if !d.is_fixed() {
            free.push((v, k as usize, (d.hi - d.lo) as usize));
            max_free += (k as i64) * ((d.hi - d.lo) as i64);
        }
    }
    if rest < 0 || rest > max_free {
        return false;
    }
    if free.is_empty() {
        return rest == 0;
    }
    let t = rest as usize;
    if t == 0 {
        for &(v, _, _) in &free {
            let d = &mut dom[v as usize];
            d.hi = d.lo;
            changed.push(v);
        }
        return true;
    }
    if rest == max_free {
        for &(v, _, _) in &free {
            let d = &mut dom[v as usize];
            d.lo = d.hi;
            changed.push(v);
        }
        return true;
    }
    let m = free.len();
    let mut prefix = Vec::with_capacity(m + 1);
    prefix.push(Bits::singleton(t));
    for i in 0..m {
        let next = prefix[i].spread(free[i].1, free[i].2, t);
        prefix.push(next);
    }
    if !prefix[m].get(t) {
        return false;
    }
    let mut suffix = vec![Bits::singleton(t); m + 1];
    for i in (0..m).rev() {
        suffix[i] = suffix[i + 1].spread(free[i].1, free[i].2, t);
    }
    for i in 0..m {
        let (v, k, r) = free[i];
        // Values y with prefix[i] + k*y + suffix[i+1] reaching t.
        let reach = prefix[i].sumset(&suffix[i + 1], t);
        let mut lo = None;
        let mut hi = 0;
        for y in 0..=r {
            if k * y > t {
                break;
            }
            if reach.get(t - k * y) {
                lo.get_or_insert(y);
                hi = y;
            }
        }
        let Some(lo) = lo else { return false };
        if lo > 0 || hi < r {
            let d = &mut dom[v as usize];
            let base = d.lo;
            d.lo = base + lo as u32;
            d.hi = base + hi as u32;
            changed.push(v);
        }
    }
    true
}

/// Bitset over `0..=t`.
#[derive(Clone, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn singleton(t: usize) -> Bits {
        let mut b = Bits(vec![0; t / 64 + 1]);
        b.0[0] = 1;
        b
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn or_shifted(&mut self, src: &Bits, s: usize, t: usize) {
        let (ws, bs) = (s / 64, s % 64);
        let len = self.0.len();
        for i in (ws..len).rev() {
            let j = i - ws;
            let mut w = src.0[j] << bs;
            if bs > 0 && j > 0 {
                w |= src.0[j - 1] >> (64 - bs);
            }
            self.0[i] |= w;
        }
        let extra = (len * 64 - 1) - t;
        if extra > 0 {
            self.0[len - 1] &= u64::MAX >> extra;
        }
    }

    /// `{ s + k*y : s in self, 0 <= y <= r }` capped at `t`.
    fn spread(&self, k: usize, r: usize, t: usize) -> Bits {
        let mut out = self.clone();
        for y in 1..=r {
            if k * y > t {
                break;
            }
            out.or_shifted(self, k * y, t);
        }
        out
    }

    /// `{ a + b }` capped at `t`.
    fn sumset(&self, other: &Bits, t: usize) -> Bits {
        let mut out = Bits(vec![0; self.0.len()]);
        for b in 0..=t {
            if other.get(b) {
                out.or_shifted(self, b, t);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{build_skeleton, GrouplikeGroup};
    use crate::typeprofile::AlgebraType;

    fn skeleton(s: &str, factors: &[u64]) -> FusionTable {
        build_skeleton(&AlgebraType::parse(s, None).unwrap(), &GrouplikeGroup::abelian(factors)).unwrap()
    }

    #[test]
    fn residual_refutes_degree_thirteen_type() {
        let err = propagate(&skeleton("(1,2;4,21;13,2)", &[2])).unwrap_err();
        assert_eq!(err.rule, RuleId::GrouplikeMultiplicity);
    }

    #[test]
    fn reciprocity_conflict_is_named() {
        let mut t = skeleton("(1,2;4,3;5,2)", &[2]);
        for x in 2..5 {
            t.set_dual(x, x);
        }
        t.set_dual(5, 6);
        // m(5, 2*2) = 2 but m(2, 5*2) = 1 although the two are reciprocal.
        t.restrict(2, 2, 5, Domain::fixed(2));
        t.restrict(5, 2, 2, Domain::fixed(1));
        assert_eq!(propagate(&t).unwrap_err().rule, RuleId::FrobeniusReciprocity);
    }

    #[test]
    fn group_algebra_table_is_a_fixed_point() {
        let t = skeleton("(1,6)", &[2, 3]);
        assert!(t.is_complete());
        assert_eq!(propagate(&t).unwrap(), t);
    }

    #[test]
    fn stabilizer_divisibility() {
        let mut t = skeleton("(1,2;11,2)", &[2]);
        t.set_action(1, 2, 2);
        assert_eq!(propagate(&t).unwrap_err().rule, RuleId::StabilizerDividesDegsq);
    }

    #[test]
    fn closure_rule_catches_index_quotient() {
        // One degree-11 character fixed by Z/11 whose square is the group
        // plus ten copies of itself: the span has dimension 132.
        let mut t = skeleton("(1,11;4,22;11,1)", &[11]);
        let chi = 33;
        t.set_dual(chi, chi);
        for c in 11..33 {
            t.restrict(chi, chi, c, Domain::ZERO);
        }
        let err = propagate(&t).unwrap_err();
        assert_eq!(err.rule, RuleId::StandardSubalgebraClosure, "{err}");
        assert!(err.detail.contains("132"));
    }

    #[test]
    fn revise_matches_brute_force() {
        // 2x + 3y + 5z = 11 with x, y in 0..=4, z in 0..=2.
        let row = Row { terms: vec![(0, 2), (1, 3), (2, 5)], target: 11, rule: RuleId::DegreeAccounting, origin: (0, 0) };
        let mut dom = vec![Domain::upto(4), Domain::upto(4), Domain::upto(2)];
        assert!(revise(&row, &mut dom, &mut Vec::new()));
        let mut support = [[false; 5]; 3];
        for x in 0..=4 {
            for y in 0..=4 {
                for z in 0..=2 {
                    if 2 * x + 3 * y + 5 * z == 11 {
                        support[0][x] = true;
                        support[1][y] = true;
                        support[2][z] = true;
                    }
                }
            }
        }
        for (i, s) in support.iter().enumerate() {
            let lo = s.iter().position(|&b| b).unwrap() as u32;
            let hi = s.iter().rposition(|&b| b).unwrap() as u32;
            assert_eq!(dom[i], Domain { lo, hi }, "variable {i}");
        }
    }
}
