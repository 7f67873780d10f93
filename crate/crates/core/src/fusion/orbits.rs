//! Group-like actions on a degree class, up to relabeling of the class.
//!
//! A transitive action of an abelian group is the regular action of a
//! quotient `G/K`, so an action up to relabeling is a multiset of stabilizer
//! subgroups `K` whose indices add up to the class size.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::group::GrouplikeGroup;
use super::table::{CharId, FusionTable};
use super::FusionError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub members: Vec<CharId>,
    pub stabilizer: Vec<CharId>,
}

/// One action of the group-likes on a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitAssignment {
    pub orbits: Vec<Orbit>,
    /// `images[g][i]` is `g` applied to the `i`-th member of the class.
    pub images: Vec<Vec<CharId>>,
}

impl OrbitAssignment {
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.members.len()).collect()
    }
}

/// All subgroups of `group`, each sorted, ordered by size then elements.
pub fn subgroups(group: &GrouplikeGroup) -> Vec<Vec<CharId>> {
    let mut found: BTreeSet<Vec<CharId>> = BTreeSet::new();
    let mut frontier = vec![vec![0]];
    found.insert(vec![0]);
    while let Some(s) = frontier.pop() {
        for x in 0..group.order() {
            if s.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = s.clone();
            gens.push(x);
            let bigger = group.subgroup_generated(&gens);
            if found.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
    }
    let mut out: Vec<Vec<CharId>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Every action of the group-likes on the class of degree `degree` whose
/// stabilizers have order dividing `degree^2`, one per isomorphism type of
/// action. Orbits are laid out on consecutive ids, longest first.
pub fn orbit_assignment(table: &FusionTable, degree: u64) -> Result<Vec<OrbitAssignment>, FusionError> {
    let group = table.group();
    if !group.is_abelian() {
        return Err(FusionError::NonAbelianGroup { order: group.order() as u64 });
    }
    let class = *table.class_with_degree(degree).ok_or(FusionError::NoSuchDegree { degree })?;
    let g = group.order();
    let candidates: Vec<Vec<CharId>> = subgroups(group)
        .into_iter()
        .filter(|k| (degree * degree) % k.len() as u64 == 0 && g / k.len() <= class.len)
        .collect();
    // Longest orbits (smallest stabilizers) first.
    let mut by_index: Vec<&Vec<CharId>> = candidates.iter().collect();
    by_index.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));

    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn go(
        rest: usize,
        from: usize,
        subs: &[&Vec<CharId>],
        g: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rest == 0 {
            out.push(chosen.clone());
            return;
        }
        for i in from..subs.len() {
            let len = g / subs[i].len();
            if len <= rest {
                chosen.push(i);
                go(rest - len, i, subs, g, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut multisets = Vec::new();
    go(class.len, 0, &by_index, g, &mut chosen, &mut multisets);

    for ms in multisets {
        let mut images = vec![vec![0; class.len]; g];
        let mut orbits = Vec::new();
        let mut next = class.start;
        for &i in &ms {
            let k = by_index[i];
            // Coset representatives in order of first appearance.
            let mut reps: Vec<CharId> = Vec::new();
            let mut coset_of = vec![usize::MAX; g];
            for x in 0..g {
                if coset_of[x] == usize::MAX {
                    for &s in k.iter() {
                        coset_of[group.mul(x, s)] = reps.len();
                    }
                    reps.push(x);
                }
            }
            let members: Vec<CharId> = (next..next + reps.len()).collect();
            for h in 0..g {
                for (j, &r) in reps.iter().enumerate() {
                    images[h][members[j] - class.start] = next + coset_of[group.mul(h, r)];
                }
            }
            next += reps.len();
            orbits.push(Orbit { members, stabilizer: k.clone() });
        }
        out.push(OrbitAssignment { orbits, images });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::build_skeleton;
    use crate::typeprofile::AlgebraType;

    fn table(s: &str, factors: &[u64]) -> FusionTable {
        build_skeleton(&AlgebraType::parse(s, None).unwrap(), &GrouplikeGroup::abelian(factors)).unwrap()
    }

    #[test]
    fn order_two_on_two_characters_of_degree_five() {
        let t = table("(1,2;4,3;5,2)", &[2]);
        let acts = orbit_assignment(&t, 5).unwrap();
        assert_eq!(acts.len(), 1);
        assert_eq!(acts[0].orbit_lengths(), vec![2]);
        assert_eq!(acts[0].images[1], vec![6, 5]);
    }

    #[test]
    fn large_group_on_small_class_fixes_everything() {
        for (q, f) in [(5u64, vec![25u64]), (5, vec![5, 5]), (7, vec![49]), (7, vec![7, 7])] {
            let t = table(&format!("(1,{};{q},3)", q * q), &f);
            let acts = orbit_assignment(&t, q).unwrap();
            assert_eq!(acts.len(), 1);
            assert_eq!(acts[0].orbit_lengths(), vec![1, 1, 1]);
            assert!(acts[0].orbits.iter().all(|o| o.stabilizer.len() == (q * q) as usize));
        }
    }

    #[test]
    fn trivial_group_acts_trivially() {
        let t = table("(1,1;2,3;3,1)", &[]);
        let acts = orbit_assignment(&t, 2).unwrap();
        assert_eq!(acts.len(), 1);
        assert_eq!(acts[0].images, vec![vec![1, 2, 3]]);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(subgroups(&GrouplikeGroup::abelian(&[2, 2])).len(), 5);
        assert_eq!(subgroups(&GrouplikeGroup::cyclic(12)).len(), 6);
        assert_eq!(subgroups(&GrouplikeGroup::abelian(&[2, 2, 2])).len(), 16);
    }

    #[test]
    fn klein_four_on_two_degree_two_characters() {
        // Stabilizers must have order dividing 4: orbits of length 1 (K = G)
        // or 2 (three subgroups of order 2).
        let t = table("(1,4;2,2)", &[2, 2]);
        let acts = orbit_assignment(&t, 2).unwrap();
        assert_eq!(acts.len(), 1 + 3);
    }
}
