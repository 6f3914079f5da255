use criterion::{criterion_group, criterion_main, Criterion};
use lltm_bench::{shuttle, step_fixture};
use lltm_core::bint_algebra::independence_check;
use lltm_core::machine::{Configuration, TuringMachine};
use lltm_core::polyform::{closed_left, indices, words_up_to, DistVec};
use lltm_core::semantics::apply;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn config() -> Configuration {
    Configuration::new(vec![0, 1, 1], vec![1, 0], 1)
}

fn step(c: &mut Criterion) {
    let m = shuttle();
    for p in [1, 2] {
        let fx = step_fixture(&m, p, &config(), 1);
        c.bench_function(&format!("step p={p} apply+fingerprint dim 1"), |b| {
            b.iter(|| {
                let out = apply(&fx.step, black_box(&fx.input)).unwrap();
                fx.sampler.fingerprint(&out, &fx.output).unwrap()
            })
        });
    }
    let fx = step_fixture(&m, 1, &config(), 2);
    let out = apply(&fx.step, &fx.input).unwrap();
    c.bench_function("fingerprint step output dim 2", |b| {
        b.iter(|| fx.sampler.fingerprint(black_box(&out), &fx.output).unwrap())
    });
}

fn independence(c: &mut Criterion) {
    let words = words_up_to(2, 4);
    c.bench_function("independence 31 words dim 3", |b| {
        b.iter(|| independence_check(black_box(&words), 3, 12, 0))
    });
}

fn closed_forms(c: &mut Criterion) {
    let m = TuringMachine::random(3, 3, true, &mut ChaCha8Rng::seed_from_u64(1));
    let uniform = |labels: Vec<Vec<usize>>| DistVec::from_pairs(labels.into_iter().map(|l| (l, lltm_core::linalg::q(1))));
    let (alpha, beta, gamma) = (uniform(words_up_to(3, 3)), uniform(words_up_to(3, 3)), uniform(indices(3)));
    c.bench_function("closed_left 40x40x3 labels", |b| {
        b.iter(|| closed_left(black_box(&alpha), &beta, &gamma, &m))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = step, independence, closed_forms
}
criterion_main!(benches);
