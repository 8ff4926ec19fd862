use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use zzlocal_bench::{planted_module, ring_graph};
use zzlocal_core::{interval_decomposition, lzz_diagram, GraphPoint};

fn bench_decomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("interval_decomposition");
    for positions in [8usize, 16, 32] {
        let module = planted_module(positions as u64, positions, 5);
        group.bench_with_input(
            BenchmarkId::from_parameter(positions),
            &positions,
            |b, _| b.iter(|| interval_decomposition(black_box(&module))),
        );
    }
    group.finish();
}

fn bench_lzz(c: &mut Criterion) {
    let g = ring_graph();
    let functions: Vec<_> = (0..g.vertex_count())
        .map(|v| g.distance_function(&GraphPoint::Vertex(v)).unwrap())
        .collect();
    c.bench_function("lzz_diagram/ring_all_vertices", |b| {
        b.iter(|| {
            for f in &functions {
                black_box(lzz_diagram(&g, f).unwrap());
            }
        })
    });
}

criterion_group!(benches, bench_decomposition, bench_lzz);
criterion_main!(benches);
