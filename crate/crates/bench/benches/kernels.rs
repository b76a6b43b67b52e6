use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use qdelta::basefield::{FiniteField, RatFunc};
use qdelta::invariants::{coin_dim, q_invariant};
use qdelta::jacobian::{jac_number, omega_matrix, smith_over_ring};
use qdelta::series::Budget;
use qdelta::verify::{fixture, run_fixture, Family};
use qdelta_bench::{coin_units, fam1, field, unit_series};

fn series(c: &mut Criterion) {
    let k = field(3);
    let mut g = c.benchmark_group("series");
    for n in [16, 64] {
        let u = unit_series(&k, n);
        g.bench_with_input(BenchmarkId::new("mul", n), &u, |b, u| b.iter(|| black_box(u.mul(u))));
        g.bench_with_input(BenchmarkId::new("unit_inverse", n), &u, |b, u| b.iter(|| black_box(u.unit_inverse().unwrap())));
    }
    g.finish();
}

fn coin(c: &mut Criterion) {
    let f = FiniteField::new(3, 2, None).unwrap();
    let (gamma, delta) = coin_units(&f);
    let mut g = c.benchmark_group("coin_dim");
    for (m, n) in [(7, 10), (29, 30)] {
        g.bench_function(format!("{m}x{n}"), |b| b.iter(|| coin_dim(m, n, &gamma, &delta, &f, None).unwrap()));
    }
    g.finish();
}

fn q(c: &mut Criterion) {
    let mut g = c.benchmark_group("q_invariant");
    for (p, n) in [(3, 2), (5, 3)] {
        let pres = fam1(p, n);
        let x = RatFunc::var(pres.field(), 0);
        g.bench_function(format!("fam1 p={p} n={n}"), |b| b.iter(|| q_invariant(&pres, &x, Budget::default()).unwrap()));
    }
    g.finish();
}

fn jacobian(c: &mut Criterion) {
    let mut g = c.benchmark_group("jacobian");
    g.sample_size(20);
    let pres = fam1(5, 3);
    let om = omega_matrix(&pres, 16).unwrap();
    g.bench_function("smith over R, fam1 p=5", |b| b.iter(|| smith_over_ring(&om.ring, &om.j).unwrap()));
    g.bench_function("jac_number, fam1 p=5", |b| b.iter(|| jac_number(&pres, Budget::default()).unwrap()));
    g.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut g = c.benchmark_group("fixture");
    g.sample_size(10);
    for (fam, p, n) in [(Family::Fam1, 3, 2), (Family::Fam4, 3, 2), (Family::Fam3Prime, 2, 1)] {
        let fx = fixture(fam, p, n, Some(n + 2)).unwrap();
        g.bench_function(fx.label(), |b| b.iter(|| assert!(run_fixture(&fx, Budget::default()).passed())));
    }
    g.finish();
}

criterion_group!(benches, series, coin, q, jacobian, pipeline);
criterion_main!(benches);
