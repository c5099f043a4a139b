use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ncgeo_core::numeric::fock_rep_shifted;
use ncgeo_core::parser::parse_element;
use ncgeo_core::suites::{self, random_element, random_raw};
use ncgeo_core::Presentation;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn reduction(c: &mut Criterion) {
    for p in [Presentation::fuzzy(), Presentation::weyl_lambda()] {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let raw = random_raw(&p, &mut rng, 8, 8);
        c.bench_function(&format!("reduce/{}", p.id()), |b| b.iter(|| p.reduce(black_box(raw.clone()))));
        let x = random_element(&p, &mut rng, 5, 5);
        let y = random_element(&p, &mut rng, 5, 5);
        c.bench_function(&format!("multiply/{}", p.id()), |b| b.iter(|| black_box(&x) * black_box(&y)));
    }
}

fn fock(c: &mut Criterion) {
    let p = Presentation::weyl_lambda();
    let x = parse_element("2*(1 + Ls^2*L^2 + 2*Ls*L)", &p).unwrap();
    let rep = fock_rep_shifted(&p, 0.5, 64, 0.0).unwrap();
    c.bench_function("fock/evaluate-64", |b| b.iter(|| rep.evaluate(black_box(&x))));
}

fn suites_bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    g.bench_function("fuzzy-symbolic", |b| b.iter(|| suites::fuzzy_symbolic(None).unwrap()));
    g.bench_function("embedding", |b| b.iter(|| suites::embedding().unwrap()));
    g.finish();
}

criterion_group!(benches, reduction, fock, suites_bench);
criterion_main!(benches);
