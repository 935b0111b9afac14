use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use scn_bench::matrices;
use scn_core::abgroup::hom_group;
use scn_core::homs::{end_generators, in_radical_by_layers, is_automorphism};
use scn_core::oracle::{enumerate_end, Bounds};
use scn_core::{smith_normal_form, FgAbGroup, Homomorphism};

fn snf(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_normal_form");
    for n in [3, 5] {
        let ms = matrices(n, 32, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &ms, |b, ms| {
            b.iter(|| ms.iter().map(|m| smith_normal_form(black_box(m)).unwrap().rank()).sum::<usize>())
        });
    }
    group.finish();
}

/// A non-trivial endomorphism: the sum of all elementary generators.
fn busy_endomorphism(g: &FgAbGroup) -> Homomorphism {
    let gens = g.generators();
    end_generators(&gens)
        .iter()
        .fold(Homomorphism::identity(&gens), |acc, e| acc.add(e).unwrap())
}

fn structural(c: &mut Criterion) {
    let g: FgAbGroup = "Z/2+Z/4+Z/8+Z/9+Z/27".parse().unwrap();
    let f = busy_endomorphism(&g);
    c.bench_function("hom_group", |b| b.iter(|| hom_group(black_box(&g), black_box(&g))));
    c.bench_function("is_automorphism", |b| b.iter(|| is_automorphism(black_box(&f)).unwrap()));
    c.bench_function("in_radical_by_layers", |b| b.iter(|| in_radical_by_layers(black_box(&f)).unwrap()));
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("radical_table");
    group.sample_size(10);
    for g in ["Z/2+Z/4", "Z/4+Z/8", "Z/2+Z/2+Z/8"] {
        let g: FgAbGroup = g.parse().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(&g), &g, |b, g| {
            b.iter(|| {
                let ring = enumerate_end(g, &Bounds::default()).unwrap();
                ring.radical_table().iter().filter(|&&x| x).count()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, snf, structural, oracle);
criterion_main!(benches);
