use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use metzler_bench::{assembly, build_torus, petersen, random_graph, unitary_walk, Complex64};
use metzler_core::poly_det_pencil;
use metzler_core::polydet::theorem5_poly;
use metzler_core::sis::{estimate_decay, DecayOptions};
use metzler_core::spectra::eigenvalues;
use metzler_core::zeta::walk_zeta;
use std::hint::black_box;

fn determinants(c: &mut Criterion) {
    let mut group = c.benchmark_group("determinant-polynomial");
    for n in [4, 6, 8] {
        let asm = assembly(&random_graph(n, 7));
        group.bench_with_input(BenchmarkId::new("pencil", n), &asm, |b, asm| {
            b.iter(|| poly_det_pencil(black_box(&asm.a_cal)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("factored", n), &asm, |b, asm| {
            b.iter(|| theorem5_poly(black_box(asm)).unwrap())
        });
    }
    group.finish();
}

fn spectra(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigenvalues");
    let cases = [
        ("petersen", petersen(0.3, 0.7).unwrap()),
        ("torus-2-4", build_torus(2, 4, 0.3, 0.7).unwrap()),
        ("torus-2-8", build_torus(2, 8, 0.3, 0.7).unwrap()),
    ];
    for (name, g) in &cases {
        let asm = assembly(g);
        group.bench_function(*name, |b| b.iter(|| eigenvalues(black_box(&asm.a_cal)).unwrap()));
    }
    group.finish();
}

fn walks(c: &mut Criterion) {
    let mut group = c.benchmark_group("walk-zeta");
    let u = Complex64::new(0.2, 0.1);
    for (d, side) in [(1, 16), (2, 6)] {
        let w = unitary_walk(d, side, 3);
        group.bench_function(format!("d{d}-N{side}"), |b| {
            b.iter(|| walk_zeta(black_box(&w), u).unwrap())
        });
    }
    group.finish();
}

fn simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("decay-estimate");
    group.sample_size(10);
    let g = build_torus(1, 4, 0.2, 1.0).unwrap();
    group.bench_function("C4-1000-trials", |b| {
        b.iter(|| estimate_decay(black_box(&g), 1000, 10.0, 0, DecayOptions::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, determinants, spectra, walks, simulation);
criterion_main!(benches);
