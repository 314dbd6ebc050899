use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mapspace_core::fixtures::*;
use mapspace_core::invariants::{d1_depth, whitehead_length};
use mapspace_core::mapping::{based_model, decompose, minimal_reduce, splitting_check};
use mapspace_core::random::{random_minimal_model, RandomModelSpec};
use mapspace_core::{q, FreeLie};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn models(c: &mut Criterion) {
    c.bench_function("free_lie_basis_deg12", |b| {
        b.iter(|| FreeLie::new(vec!["a".into(), "b".into(), "c".into()], vec![1, 2, 3], black_box(12)).unwrap())
    });
    c.bench_function("cp2_s6_reduce", |b| {
        let x = cp_lie(2, &q(1));
        let y = sphere(6);
        b.iter(|| minimal_reduce(&based_model(&x, &y).unwrap()).unwrap())
    });
    c.bench_function("cp4_s9_reduce", |b| {
        let x = cp_lie(4, &q(1));
        let y = sphere(9);
        b.iter(|| minimal_reduce(&based_model(&x, &y).unwrap()).unwrap())
    });
}

fn splitting(c: &mut Criterion) {
    let mut g = c.benchmark_group("splitting");
    g.sample_size(10);
    g.bench_function("cp2_example_y_cap30", |b| {
        let x = sphere_lie(2);
        let i = x.lie().generator(0).unwrap();
        let z = x.lie().bracket(&i, &i).scale(&q(-1));
        let y = example_y();
        b.iter(|| splitting_check(&x, &z, &y, 30).unwrap())
    });
    g.bench_function("cayley_decompose", |b| {
        let x = two_cp2_and_cell();
        let y = cayley_plane();
        b.iter(|| decompose(&x, &y, 24).unwrap())
    });
    g.finish();
}

fn invariants(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let spec = RandomModelSpec { max_gens: 10, min_degree: 3, max_degree: 9, cap: 24 };
    let ms: Vec<_> = (0..20).map(|_| random_minimal_model(&mut rng, spec)).collect();
    c.bench_function("depth_and_whitehead_x20", |b| {
        b.iter(|| {
            for m in &ms {
                black_box((d1_depth(m), whitehead_length(m).unwrap()));
            }
        })
    });
}

criterion_group!(benches, models, splitting, invariants);
criterion_main!(benches);
