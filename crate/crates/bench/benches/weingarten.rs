use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use traffic_core::combinatorics::{weingarten, weingarten_classes, weingarten_dense};

fn bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("weingarten");
    for n in [4, 5, 6] {
        group.bench_with_input(BenchmarkId::new("classes", n), &n, |b, &n| b.iter(|| weingarten_classes(black_box(n), 2 * n).unwrap()));
        group.bench_with_input(BenchmarkId::new("function", n), &n, |b, &n| b.iter(|| weingarten(black_box(n), 2 * n).unwrap()));
    }
    group.bench_function("dense/5", |b| b.iter(|| weingarten_dense(black_box(5), 10).unwrap()));
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
