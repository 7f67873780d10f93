use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hopfsieve_core::fusion::{
    abelian_classes, build_skeleton, propagate, search_from, Domain, FusionTable, GrouplikeGroup, SearchConfig,
    SearchOutcome,
};
use hopfsieve_core::groups::{fusion_table_of, small_groups};
use hopfsieve_core::AlgebraType;

/// A random type with at most `max_chars` characters whose group-like
/// order is abelian-searchable, plus an abelian group of that order.
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
        let g = *divs.choose(rng).unwrap();
        let chars = g + entries.iter().map(|e| e.1).sum::<u64>();
        if g + s > 1000 || chars > max_chars {
            continue;
        }
        let mut all = vec![(1, g)];
        all.extend(entries);
        let t = AlgebraType::new(g + s, all).unwrap();
        let classes = abelian_classes(g);
        let f = classes.choose(rng).unwrap();
        return (t, GrouplikeGroup::abelian(f));
    }
}

/// A partial table keeping each known fact of `t` with probability `keep`.
fn erase(t: &FusionTable, keep: f64, rng: &mut ChaCha8Rng) -> FusionTable {
    let mut out = build_skeleton(t.algebra_type(), t.group()).unwrap();
    let n = t.len();
    for x in 0..n {
        if let Some(y) = t.dual(x) {
            if rng.gen_bool(keep) {
                out.set_dual(x, y);
            }
        }
        for h in 0..t.grouplike_count() {
            if let Some(y) = t.act(h, x) {
                if rng.gen_bool(keep) {
                    out.set_action(h, x, y);
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if rng.gen_bool(keep) {
                    out.restrict(a, b, c, t.entry(a, b, c));
                }
            }
        }
    }
    out
}

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

fn label(o: &SearchOutcome) -> &'static str {
    o.label()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn propagation_is_idempotent_on_skeletons(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (t, group) = random_type(&mut rng, 24);
        let skeleton = build_skeleton(&t, &group).unwrap();
        if let Ok(once) = propagate(&skeleton) {
            prop_assert_eq!(propagate(&once).unwrap(), once);
        }
    }

    #[test]
    fn propagation_never_loses_a_real_table(seed in any::<u64>(), keep in 0.0f64..0.6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let groups = small_groups();
        let real = fusion_table_of(groups.choose(&mut rng).unwrap());
        let partial = erase(&real, keep, &mut rng);
        let once = propagate(&partial).unwrap();
        let n = real.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let truth = real.entry(a, b, c).value().unwrap();
                    prop_assert!(once.entry(a, b, c).contains(truth), "m({}, {}*{})", c, a, b);
                }
            }
        }
        prop_assert_eq!(propagate(&once).unwrap(), once);
    }

    #[test]
    fn feasibility_is_invariant_under_relabeling(seed in any::<u64>(), keep in 0.0f64..0.5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let groups = small_groups();
        let real = fusion_table_of(groups.choose(&mut rng).unwrap());
        let mut partial = erase(&real, keep, &mut rng);
        // Occasionally plant a wrong value so that both outcomes occur.
        if rng.gen_bool(0.5) {
            let n = real.len();
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            let v = real.entry(a, b, c).value().unwrap();
            partial.restrict(a, b, c, Domain::fixed(v + 1));
        }
        let perm = class_shuffle(&real, &mut rng);
        let moved = partial.relabel(&perm).unwrap();
        let n = real.len();
        let focus: Vec<_> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let cfg = SearchConfig { budget: 100_000, focus: Some(focus), ..SearchConfig::default() };
        let x = search_from(&partial, &cfg).unwrap();
        let y = search_from(&moved, &cfg).unwrap();
        prop_assert_eq!(label(&x), label(&y));
    }

    #[test]
    fn tables_round_trip_through_json(seed in any::<u64>(), keep in 0.0f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let groups = small_groups();
        let real = fusion_table_of(groups.choose(&mut rng).unwrap());
        let partial = erase(&real, keep, &mut rng);
        let json = serde_json::to_string(&partial).unwrap();
        let back: FusionTable = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, partial);
    }
}

#[test]
fn relabeled_real_tables_stay_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in small_groups() {
        let t = fusion_table_of(&g);
        let moved = t.relabel(&class_shuffle(&t, &mut rng)).unwrap();
        assert!(hopfsieve_core::fusion::validate(&moved, &[]).is_empty(), "{}", g.name);
        assert_eq!(propagate(&moved).unwrap(), moved);
    }
}
