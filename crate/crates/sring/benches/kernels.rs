use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sring::enumerate::{enumerate_partitions, Catalog};
use sring::exec::Exec;
use sring::AbelianGroup;
use std::sync::Arc;

const GROUPS: [&[i64]; 3] = [&[2, 2, 2], &[12], &[4, 4]];

fn modes() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for f in GROUPS {
        let g = Arc::new(AbelianGroup::new(f).unwrap());
        for (name, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(name, g.literal()), &g, |b, g| {
                b.iter(|| enumerate_partitions(g, exec).unwrap().len())
            });
        }
    }
    group.finish();
}

fn catalog_flags(c: &mut Criterion) {
    let mut group = c.benchmark_group("catalog_flags");
    group.sample_size(10);
    for f in GROUPS {
        let g = Arc::new(AbelianGroup::new(f).unwrap());
        let rings = enumerate_partitions(&g, Exec::Sequential).unwrap();
        for (name, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(name, g.literal()), &rings, |b, rings| {
                b.iter(|| Catalog::from_srings(g.clone(), rings.clone(), exec).unwrap().len())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, enumeration, catalog_flags);
criterion_main!(benches);
