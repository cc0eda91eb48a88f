use criterion::{black_box, criterion_group, criterion_main, Criterion};

use distlap::{connected_graphs, encode_graph6, free_trees};

fn bench_enumeration(c: &mut Criterion) {
    c.bench_function("free_trees/n=12 count", |b| {
        b.iter(|| free_trees(black_box(12)).unwrap().count())
    });
    c.bench_function("free_trees/n=16 count", |b| {
        b.iter(|| free_trees(black_box(16)).unwrap().count())
    });
    c.bench_function("connected_graphs/n=6 count", |b| {
        b.iter(|| connected_graphs(black_box(6), 7).unwrap().count())
    });
    c.bench_function("graph6 encode/trees n=10", |b| {
        let trees: Vec<_> = free_trees(10).unwrap().collect();
        b.iter(|| {
            trees
                .iter()
                .map(|g| encode_graph6(black_box(g)).unwrap().len())
                .sum::<usize>()
        })
    });
}

criterion_group!(benches, bench_enumeration);
criterion_main!(benches);
