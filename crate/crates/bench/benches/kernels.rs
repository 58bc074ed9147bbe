use std::f64::consts::TAU;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use toric_lagrangian::flat::{angle_full_formula_check, check_flat_self_shrinker, random_samples};
use toric_lagrangian::shrinker::exact_circle_state;
use toric_lagrangian::*;

fn smith(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_normal_form");
    for g in [1, 5, 10] {
        let m = genus_family(g).unwrap().conormal_matrix();
        group.bench_with_input(BenchmarkId::from_parameter(g), &m, |b, m| b.iter(|| smith_normal_form(black_box(m))));
    }
    group.finish();
}

fn goodness(c: &mut Criterion) {
    let cone = genus_family(10).unwrap();
    c.bench_function("is_good_genus_10", |b| b.iter(|| is_good(black_box(&cone)).unwrap()));
}

fn pipeline(c: &mut Criterion) {
    let doc = generate_example(5).unwrap();
    let exact = CheckSelection::parse(&[
        "validity",
        "goodness",
        "calabi-yau",
        "reeb",
        "slice-assumptions",
        "slice",
        "topology",
    ])
    .unwrap();
    let opts = PipelineOptions::default();
    c.bench_function("exact_pipeline_genus_5", |b| b.iter(|| run_pipeline(black_box(&doc), &exact, &opts)));
}

fn rk4(c: &mut Criterion) {
    let p = ShrinkerParams::new(3.0, 0.0, -3.0).unwrap();
    c.bench_function("rk4_circle_h_1e-3", |b| {
        b.iter(|| integrate(exact_circle_state(3.0, 0.0), black_box(&p), (0.0, TAU), 1e-3).unwrap())
    });
}

fn flat_oracle(c: &mut Criterion) {
    let samples = random_samples(3, 50, (0.0, TAU), 1);
    let imm = FlatImmersion::circle_shrinker(3, 1.5).unwrap();
    let mut group = c.benchmark_group("flat_oracle_50_samples");
    group.sample_size(20);
    group.bench_function("self_shrinker", |b| {
        b.iter(|| check_flat_self_shrinker(&imm, -1.0, black_box(&samples), 1e-4).unwrap())
    });
    group.bench_function("angle", |b| b.iter(|| angle_full_formula_check(&imm, black_box(&samples), 1e-5).unwrap()));
    group.finish();
}

criterion_group!(benches, smith, goodness, pipeline, rk4, flat_oracle);
criterion_main!(benches);
