use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use traffic_bench::{cycle, mixed_graph};
use traffic_core::traffic::{free_cumulant, tau_phi, FreeGaussian, MomentTable};
use traffic_core::graph::Label;

fn bench(c: &mut Criterion) {
    let semicircle = FreeGaussian::semicircle("x");
    let mut group = c.benchmark_group("tau_phi");
    for n in [4, 6, 8] {
        let t = cycle(n, "x");
        group.bench_with_input(BenchmarkId::new("cycle", n), &t, |b, t| b.iter(|| tau_phi(black_box(t), &semicircle).unwrap()));
    }
    let mixed = mixed_graph("x");
    group.bench_function("mixed", |b| b.iter(|| tau_phi(black_box(&mixed), &semicircle).unwrap()));
    group.finish();

    let table = MomentTable::from_functional(&semicircle, &[Label::new("x")], &["x"], 8).unwrap();
    let word = vec![Label::new("x"); 8];
    c.bench_function("free_cumulant/table/8", |b| b.iter(|| free_cumulant(&table, black_box(&word)).unwrap()));
}

criterion_group!(benches, bench);
criterion_main!(benches);
