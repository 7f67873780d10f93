//! Partial fusion tables.
//!
//! Characters are numbered so that the group-likes come first (character `g`
//! is group element `g`, with `0` the counit) followed by the higher-degree
//! classes in ascending degree. The multiplicity `m(c, ab)` is stored as an
//! interval domain `N(a, b, c)`; a domain with `lo == hi` is defined.

use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::group::GrouplikeGroup;
use super::FusionError;
use crate::typeprofile::AlgebraType;

pub type CharId = usize;

/// Largest character count a table may have.
pub const MAX_CHARACTERS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    pub id: CharId,
    pub degree: u64,
    pub dual: Option<CharId>,
}

/// The characters of one degree: ids `start..start + len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeClass {
    pub degree: u64,
    pub start: CharId,
    pub len: usize,
}

impl DegreeClass {
    pub fn ids(&self) -> std::ops::Range<CharId> {
        self.start..self.start + self.len
    }

    pub fn contains(&self, x: CharId) -> bool {
        self.ids().contains(&x)
    }
}

/// Closed interval of candidate multiplicities; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Domain {
    pub lo: u32,
    pub hi: u32,
}

impl Domain {
    pub const ZERO: Domain = Domain { lo: 0, hi: 0 };
    pub const ONE: Domain = Domain { lo: 1, hi: 1 };

    pub fn fixed(v: u32) -> Self {
        Domain { lo: v, hi: v }
    }

    pub fn upto(hi: u32) -> Self {
        Domain { lo: 0, hi }
    }

    pub fn is_empty(self) -> bool {
        self.lo > self.hi
    }

    pub fn is_fixed(self) -> bool {
        self.lo == self.hi
    }

    pub fn value(self) -> Option<u32> {
        self.is_fixed().then_some(self.lo)
    }

    pub fn contains(self, v: u32) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn intersect(self, other: Domain) -> Domain {
        Domain { lo: self.lo.max(other.lo), hi: self.hi.min(other.hi) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionTable {
    ty: AlgebraType,
    group: GrouplikeGroup,
    degree: Vec<u64>,
    classes: Vec<DegreeClass>,
    dual: Vec<Option<CharId>>,
    /// `action[g][x]` is `g x` when known.
    action: Vec<Vec<Option<CharId>>>,
    mult: Vec<Domain>,
}

/// Instantiates the characters of `t` and fixes everything the group law and
/// degree bookkeeping determine: group-like products, zero multiplicities
/// between mismatched degrees, and the counit row and column.
pub fn build_skeleton(t: &AlgebraType, group: &GrouplikeGroup) -> Result<FusionTable, FusionError> {
    let g = t.grouplike_order() as usize;
    if group.order() != g {
        return Err(FusionError::GroupMismatch { group: group.order() as u64, grouplikes: g as u64 });
    }
    let n = t.character_count() as usize;
    if n > MAX_CHARACTERS {
        return Err(FusionError::TooLarge { characters: n, max: MAX_CHARACTERS });
    }
    let mut degree = Vec::with_capacity(n);
    let mut classes = Vec::new();
    for &(d, count) in t.entries() {
        classes.push(DegreeClass { degree: d, start: degree.len(), len: count as usize });
        degree.extend(std::iter::repeat(d).take(count as usize));
    }
    let mut dual = vec![None; n];
    let mut action = vec![vec![None; n]; g];
    for a in 0..g {
        dual[a] = Some(group.inv(a));
        for b in 0..g {
            action[a][b] = Some(group.mul(a, b));
        }
    }
    for x in 0..n {
        action[0][x] = Some(x);
    }
    let mut mult = vec![Domain::ZERO; n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (da, db, dc) = (degree[a], degree[b], degree[c]);
                let dom = if a < g && b < g && c < g {
                    Domain::fixed((group.mul(a, b) == c) as u32)
                } else if a == 0 {
                    Domain::fixed((b == c) as u32)
                } else if b == 0 {
                    Domain::fixed((a == c) as u32)
                } else if a < g {
                    if db == dc { Domain::upto(1) } else { Domain::ZERO }
                } else if b < g {
                    if da == dc { Domain::upto(1) } else { Domain::ZERO }
                } else if c < g {
                    if da == db { Domain::upto(1) } else { Domain::ZERO }
                } else {
                    Domain::upto(((da * db) / dc) as u32)
                };
                mult[(a * n + b) * n + c] = dom;
            }
        }
    }
    Ok(FusionTable { ty: t.clone(), group: group.clone(), degree, classes, dual, action, mult })
}

impl FusionTable {
    pub fn algebra_type(&self) -> &AlgebraType {
        &self.ty
    }

    pub fn group(&self) -> &GrouplikeGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.degree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degree.is_empty()
    }

    pub fn grouplike_count(&self) -> usize {
        self.group.order()
    }

    pub fn is_grouplike(&self, x: CharId) -> bool {
        x < self.group.order()
    }

    pub fn degree(&self, x: CharId) -> u64 {
        self.degree[x]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degree
    }

    pub fn classes(&self) -> &[DegreeClass] {
        &self.classes
    }

    pub fn class_of(&self, x: CharId) -> usize {
        self.classes.iter().position(|c| c.contains(x)).expect("character id out of range")
    }

    pub fn class_with_degree(&self, d: u64) -> Option<&DegreeClass> {
        self.classes.iter().find(|c| c.degree == d)
    }

    pub fn characters(&self) -> Vec<Character> {
        (0..self.len()).map(|id| Character { id, degree: self.degree[id], dual: self.dual[id] }).collect()
    }

    pub fn dual(&self, x: CharId) -> Option<CharId> {
        self.dual[x]
    }

    pub fn duals(&self) -> &[Option<CharId>] {
        &self.dual
    }

    /// `g x` for a group-like `g`, when known.
    pub fn act(&self, g: CharId, x: CharId) -> Option<CharId> {
        self.action[g][x]
    }

    pub fn action(&self) -> &[Vec<Option<CharId>>] {
        &self.action
    }

    pub(crate) fn index(&self, a: CharId, b: CharId, c: CharId) -> usize {
        let n = self.len();
        (a * n + b) * n + c
    }

    /// The domain of `m(c, ab)`.
    pub fn entry(&self, a: CharId, b: CharId, c: CharId) -> Domain {
        self.mult[self.index(a, b, c)]
    }

    pub fn domains(&self) -> &[Domain] {
        &self.mult
    }

    pub(crate) fn domains_mut(&mut self) -> &mut [Domain] {
        &mut self.mult
    }

    /// Narrows `m(c, ab)` to its intersection with `dom`. The result may be
    /// empty; [`super::propagate`] reports that as a contradiction.
    pub fn restrict(&mut self, a: CharId, b: CharId, c: CharId, dom: Domain) {
        let i = self.index(a, b, c);
        self.mult[i] = self.mult[i].intersect(dom);
    }

    /// Records `x* = y` (and `y* = x`). Entries follow on propagation.
    pub fn set_dual(&mut self, x: CharId, y: CharId) {
        self.dual[x] = Some(y);
        self.dual[y] = Some(x);
    }

    pub(crate) fn set_dual_raw(&mut self, x: CharId, y: Option<CharId>) {
        self.dual[x] = y;
    }

    /// Records `g x = y`. Entries follow on propagation.
    pub fn set_action(&mut self, g: CharId, x: CharId, y: CharId) {
        self.action[g][x] = Some(y);
    }

    /// True when every multiplicity `m(c, ab)` is defined.
    pub fn row_defined(&self, a: CharId, b: CharId) -> bool {
        (0..self.len()).all(|c| self.entry(a, b, c).is_fixed())
    }

    /// The constituents of `ab` that may be nonzero, with their domains.
    pub fn product(&self, a: CharId, b: CharId) -> Vec<(CharId, Domain)> {
        (0..self.len()).map(|c| (c, self.entry(a, b, c))).filter(|(_, d)| d.hi > 0).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.mult.iter().all(|d| d.is_fixed())
    }

    /// Same table with characters renamed by `perm` (`perm[old] = new`).
    /// `perm` must fix every group-like and preserve degree classes.
    pub fn relabel(&self, perm: &[CharId]) -> Result<FusionTable, FusionError> {
        let n = self.len();
        let mut seen = vec![false; n];
        for (x, &y) in perm.iter().enumerate() {
            if perm.len() != n || y >= n || seen[y] || self.degree[x] != self.degree[y] || (self.is_grouplike(x) && x != y) {
                return Err(FusionError::BadRelabeling);
            }
            seen[y] = true;
        }
        let mut out = self.clone();
        for x in 0..n {
            out.dual[perm[x]] = self.dual[x].map(|y| perm[y]);
            for g in 0..self.grouplike_count() {
                out.action[g][perm[x]] = self.action[g][x].map(|y| perm[y]);
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let i = out.index(perm[a], perm[b], perm[c]);
                    out.mult[i] = self.entry(a, b, c);
                }
            }
        }
        Ok(out)
    }

    /// The characters `x` with `g x = x` for every group-like `g`, or an
    /// error when part of the action on `x` is still unknown.
    pub fn stabilizer_of(&self, x: CharId) -> Result<Stabilizer, FusionError> {
        let mut subgroup = Vec::new();
        for g in 0..self.grouplike_count() {
            match self.act(g, x) {
                Some(y) if y == x => subgroup.push(g),
                Some(_) => {}
                None => return Err(FusionError::Unassigned { character: x }),
            }
        }
        let d = self.degree(x);
        let divides = (d * d) % subgroup.len() as u64 == 0;
        Ok(Stabilizer { character: x, subgroup, divides_degree_squared: divides })
    }
}

/// `G[x] = {g : g x = x}`. When `divides_degree_squared` is false the table
/// is contradictory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilizer {
    pub character: CharId,
    pub subgroup: Vec<CharId>,
    pub divides_degree_squared: bool,
}

impl Stabilizer {
    pub fn order(&self) -> usize {
        self.subgroup.len()
    }
}

/// Result of [`standard_subalgebra_closure`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Closure {
    pub members: BTreeSet<CharId>,
    /// `sum of deg^2` over the members.
    pub dimension: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeedsEntries {
    /// Products among closure members that are not fully defined yet.
    pub products: Vec<(CharId, CharId)>,
    /// Members whose dual is unknown.
    pub duals: Vec<CharId>,
}

/// The smallest set containing `seed` and the counit that is closed under
/// duals and under taking constituents of products.
pub fn standard_subalgebra_closure(table: &FusionTable, seed: &[CharId]) -> Result<Closure, NeedsEntries> {
    closure_by(table.len(), table.degrees(), table.duals(), seed, false, |a, b, c| table.entry(a, b, c))
}

/// Closure over an arbitrary entry lookup; the engine runs this against its
/// working domains. With `stop_early` the first missing entry ends the walk
/// and the returned marker is partial.
pub(crate) fn closure_by(
    n: usize,
    degree: &[u64],
    dual: &[Option<CharId>],
    seed: &[CharId],
    stop_early: bool,
    entry: impl Fn(CharId, CharId, CharId) -> Domain,
) -> Result<Closure, NeedsEntries> {
    let mut inside = vec![false; n];
    let mut members = vec![0];
    inside[0] = true;
    for &s in seed {
        if !inside[s] {
            inside[s] = true;
            members.push(s);
        }
    }
    let mut needs = NeedsEntries { products: Vec::new(), duals: Vec::new() };
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        match dual[x] {
            Some(y) if !inside[y] => {
                inside[y] = true;
                members.push(y);
            }
            Some(_) => {}
            None => {
                needs.duals.push(x);
                if stop_early {
                    return Err(needs);
                }
            }
        }
        for j in 0..=i {
            for (a, b) in [(members[i], members[j]), (members[j], members[i])] {
                let mut defined = true;
                for c in 0..n {
                    let d = entry(a, b, c);
                    if d.lo > 0 && !inside[c] {
                        inside[c] = true;
                        members.push(c);
                    }
                    defined &= d.is_fixed();
                }
                if !defined {
                    needs.products.push((a, b));
                    if stop_early {
                        return Err(needs);
                    }
                }
            }
        }
        i += 1;
    }
    if !needs.products.is_empty() || !needs.duals.is_empty() {
        needs.products.sort_unstable();
        needs.products.dedup();
        return Err(needs);
    }
    let dimension = members.iter().map(|&x| degree[x] * degree[x]).sum();
    Ok(Closure { members: members.into_iter().collect(), dimension })
}

/// JSON form: fixed nonzero entries as `[a, b, c, m]`, open entries as
/// `[a, b, c, lo, hi]`; every other entry is a defined zero.
#[derive(Serialize, Deserialize)]
struct TableRepr {
    #[serde(rename = "type")]
    ty: AlgebraType,
    group: GrouplikeGroup,
    characters: Vec<Character>,
    action: Vec<Vec<Option<CharId>>>,
    entries: Vec<[u32; 4]>,
    open: Vec<[u32; 5]>,
}

impl Serialize for FusionTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.len();
        let mut entries = Vec::new();
        let mut open = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let d = self.entry(a, b, c);
                    let key = [a as u32, b as u32, c as u32];
                    if d.is_fixed() {
                        if d.lo > 0 {
                            entries.push([key[0], key[1], key[2], d.lo]);
                        }
                    } else {
                        open.push([key[0], key[1], key[2], d.lo, d.hi]);
                    }
                }
            }
        }
        TableRepr {
            ty: self.ty.clone(),
            group: self.group.clone(),
            characters: self.characters(),
            action: self.action.clone(),
            entries,
            open,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FusionTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = TableRepr::deserialize(d)?;
        let mut table = build_skeleton(&repr.ty, &repr.group).map_err(D::Error::custom)?;
        let n = table.len();
        if repr.characters.len() != n || repr.action.len() != table.grouplike_count() {
            return Err(D::Error::custom("character or action count does not match the type"));
        }
        for (i, ch) in repr.characters.iter().enumerate() {
            if ch.id != i || ch.degree != table.degree[i] || ch.dual.is_some_and(|y| y >= n) {
                return Err(D::Error::custom(format!("bad character record {i}")));
            }
            table.dual[i] = ch.dual;
        }
        for row in &repr.action {
            if row.len() != n || row.iter().flatten().any(|&y| y >= n) {
                return Err(D::Error::custom("bad action row"));
            }
        }
        table.action = repr.action;
        table.mult.iter_mut().for_each(|d| *d = Domain::ZERO);
        let n32 = n as u32;
        for e in &repr.entries {
            if e[..3].iter().any(|&x| x >= n32) {
                return Err(D::Error::custom("entry index out of range"));
            }
            let i = table.index(e[0] as usize, e[1] as usize, e[2] as usize);
            table.mult[i] = Domain::fixed(e[3]);
        }
        for e in &repr.open {
            if e[..3].iter().any(|&x| x >= n32) {
                return Err(D::Error::custom("entry index out of range"));
            }
            let i = table.index(e[0] as usize, e[1] as usize, e[2] as usize);
            table.mult[i] = Domain { lo: e[3], hi: e[4] };
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> AlgebraType {
        AlgebraType::parse(s, None).unwrap()
    }

    #[test]
    fn skeleton_shapes() {
        let t = build_skeleton(&ty("(1,2;4,3;5,2)"), &GrouplikeGroup::cyclic(2)).unwrap();
        assert_eq!(t.len(), 7);
        assert!(t.row_defined(0, 0) && t.row_defined(1, 1) && t.row_defined(0, 1));
        assert_eq!(t.entry(1, 1, 0), Domain::ONE);
        assert!(!t.row_defined(2, 2));
        assert_eq!(t.entry(2, 2, 6), Domain::upto(3));
        assert_eq!(t.entry(2, 2, 1), Domain::upto(1));
        assert_eq!(t.entry(2, 5, 1), Domain::ZERO);

        let q = 5;
        for f in [vec![q * q], vec![q, q]] {
            let t = build_skeleton(&ty("(1,25;5,3)"), &GrouplikeGroup::abelian(&f)).unwrap();
            assert_eq!(t.len() as u64, q * q + 3);
        }

        let t = build_skeleton(&ty("(1,1)"), &GrouplikeGroup::trivial()).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.is_complete());
    }

    #[test]
    fn group_mismatch() {
        let err = build_skeleton(&ty("(1,4;2,1)"), &GrouplikeGroup::cyclic(2)).unwrap_err();
        assert!(matches!(err, FusionError::GroupMismatch { .. }));
    }

    #[test]
    fn stabilizers() {
        let mut t = build_skeleton(&ty("(1,2;11,2)"), &GrouplikeGroup::cyclic(2)).unwrap();
        assert!(matches!(t.stabilizer_of(2), Err(FusionError::Unassigned { character: 2 })));
        t.set_action(1, 2, 2);
        let s = t.stabilizer_of(2).unwrap();
        assert_eq!(s.order(), 2);
        assert!(!s.divides_degree_squared);
        let h = t.stabilizer_of(1).unwrap();
        assert_eq!(h.subgroup, vec![0]);
    }

    #[test]
    fn closure_of_group_and_whole_table() {
        let t = build_skeleton(&ty("(1,3)"), &GrouplikeGroup::cyclic(3)).unwrap();
        let c = standard_subalgebra_closure(&t, &[1]).unwrap();
        assert_eq!(c.dimension, 3);
        assert_eq!(c.members.len(), 3);
        let t = build_skeleton(&ty("(1,4;2,1)"), &GrouplikeGroup::abelian(&[2, 2])).unwrap();
        assert_eq!(standard_subalgebra_closure(&t, &[1, 2, 3]).unwrap().dimension, 4);
        let needs = standard_subalgebra_closure(&t, &[4]).unwrap_err();
        assert!(needs.products.contains(&(4, 4)));
        assert_eq!(needs.duals, vec![4]);
    }

    #[test]
    fn json_round_trip() {
        let mut t = build_skeleton(&ty("(1,2;4,3;5,2)"), &GrouplikeGroup::cyclic(2)).unwrap();
        t.set_dual(5, 6);
        t.restrict(2, 2, 3, Domain { lo: 1, hi: 2 });
        let json = serde_json::to_string(&t).unwrap();
        let back: FusionTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn relabel_round_trip() {
        let mut t = build_skeleton(&ty("(1,2;4,3;5,2)"), &GrouplikeGroup::cyclic(2)).unwrap();
        t.set_dual(5, 6);
        t.set_action(1, 2, 3);
        let perm = vec![0, 1, 4, 2, 3, 6, 5];
        let u = t.relabel(&perm).unwrap();
        assert_eq!(u.dual(6), Some(5));
        assert_eq!(u.act(1, 4), Some(2));
        let mut inv = vec![0; 7];
        for (x, &y) in perm.iter().enumerate() {
            inv[y] = x;
        }
        assert_eq!(u.relabel(&inv).unwrap(), t);
        assert!(t.relabel(&[1, 0, 2, 3, 4, 5, 6]).is_err());
    }
}
