use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use descent_poset::topology::scan_disconnected_subintervals;
use descent_poset::{betti_gf2, euler_characteristic, order_complex, Permutation};
use descent_poset_bench::{fixed_descent_pairs, perm};

fn homology(c: &mut Criterion) {
    let mut group = c.benchmark_group("order-complex");
    group.sample_size(20);
    for (label, bottom, top) in fixed_descent_pairs().into_iter().take(3) {
        let complex = order_complex(&bottom, &top).unwrap();
        group.bench_with_input(BenchmarkId::new("euler", label), &(), |b, _| {
            b.iter(|| euler_characteristic(black_box(&complex)))
        });
        group.bench_with_input(BenchmarkId::new("betti-gf2", label), &(), |b, _| {
            b.iter(|| betti_gf2(black_box(&complex)))
        });
    }
    group.finish();
}

fn scans(c: &mut Criterion) {
    let one = Permutation::one();
    let mut group = c.benchmark_group("scan-disconnected");
    group.sample_size(10);
    for top in ["456123", "3561247", "24681357"].map(perm) {
        group.bench_with_input(BenchmarkId::from_parameter(&top), &(), |b, _| {
            b.iter(|| scan_disconnected_subintervals(black_box(&one), black_box(&top), 3))
        });
    }
    group.finish();
}

criterion_group!(benches, homology, scans);
criterion_main!(benches);
