//! Group algebras of small groups have genuine character rings; the engine
//! must accept every one of them.

use hopfsieve_core::fusion::{propagate, search_consistent_table, search_from, validate, SearchConfig, SearchOutcome};
use hopfsieve_core::groups::{fusion_table_of, small_groups};

#[test]
fn real_tables_are_valid_fixed_points() {
    for g in small_groups() {
        let t = fusion_table_of(&g);
        let v = validate(&t, &[]);
        assert!(v.is_empty(), "{}: {:?}", g.name, v);
        let p = propagate(&t).unwrap_or_else(|c| panic!("{}: {c}", g.name));
        assert_eq!(p, t, "{}", g.name);
    }
}

#[test]
fn skeleton_search_finds_every_group_type() {
    for g in small_groups() {
        let t = fusion_table_of(&g);
        let out = search_consistent_table(t.algebra_type(), t.group(), &SearchConfig::default()).unwrap();
        match out {
            SearchOutcome::Feasible { witness, .. } => {
                let v = validate(&witness, &[]);
                assert!(v.is_empty(), "{}: {:?}", g.name, v);
            }
            other => panic!("{} {}: {:?}", g.name, t.algebra_type().notation(), other),
        }
    }
}

#[test]
fn every_product_can_be_completed() {
    for g in small_groups() {
        let t = fusion_table_of(&g);
        let n = t.len();
        let focus: Vec<_> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let cfg = SearchConfig { focus: Some(focus.clone()), ..SearchConfig::default() };
        let out = search_consistent_table(t.algebra_type(), t.group(), &cfg).unwrap();
        let SearchOutcome::Feasible { witness, .. } = out else { panic!("{}: {out:?}", g.name) };
        let v = validate(&witness, &focus);
        assert!(v.is_empty(), "{}: {:?}", g.name, v);
    }
}

#[test]
fn search_from_a_real_table_returns_it() {
    for g in small_groups() {
        let t = fusion_table_of(&g);
        let out = search_from(&t, &SearchConfig::default()).unwrap();
        let SearchOutcome::Feasible { witness, .. } = out else { panic!("{}: {out:?}", g.name) };
        assert_eq!(*witness, t, "{}", g.name);
    }
}

#[test]
fn symmetry_breaking_loses_no_tables() {
    for g in small_groups() {
        let t = fusion_table_of(&g);
        let n = t.len();
        let focus: Vec<_> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let cfg = SearchConfig { focus: Some(focus), symmetry_breaking: false, ..SearchConfig::default() };
        let out = search_consistent_table(t.algebra_type(), t.group(), &cfg).unwrap();
        assert!(matches!(out, SearchOutcome::Feasible { .. }), "{}: {out:?}", g.name);
    }
}
