use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use hopfsieve_bench::{elimination_types, ELIMINATION_TYPES};
use hopfsieve_core::arithmetic::enumerate_dimension_solutions;
use hopfsieve_core::fusion::{eliminate_type, SearchConfig};
use hopfsieve_core::groups::{character_table, small_groups};
use hopfsieve_core::typeprofile::frobenius_degree_set;
use hopfsieve_core::verdict::classify_4q2;
use hopfsieve_core::DimensionProfile;

fn elimination(c: &mut Criterion) {
    let mut group = c.benchmark_group("eliminate");
    group.sample_size(10);
    let cfg = SearchConfig::default();
    for (name, t) in ELIMINATION_TYPES.iter().zip(elimination_types()) {
        group.bench_function(*name, |b| b.iter(|| eliminate_type(black_box(&t), &cfg, None).unwrap()));
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let profile = DimensionProfile::new(2, 13).unwrap();
    let degrees = frobenius_degree_set(&profile);
    let pins = Default::default();
    c.bench_function("enumerate 676 g=2", |b| {
        b.iter(|| enumerate_dimension_solutions(black_box(&profile), 2, &degrees, &pins).unwrap())
    });
}

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    let cfg = SearchConfig::default();
    for q in [5u64, 13] {
        group.bench_function(format!("4q^2 q={q}"), |b| b.iter(|| classify_4q2(black_box(q), &cfg).unwrap()));
    }
    group.finish();
}

fn character_tables(c: &mut Criterion) {
    let groups = small_groups();
    c.bench_function("character tables, order <= 16", |b| {
        b.iter(|| groups.iter().map(|g| character_table(black_box(g)).degrees.len()).sum::<usize>())
    });
}

criterion_group!(benches, elimination, enumeration, classification, character_tables);
criterion_main!(benches);
