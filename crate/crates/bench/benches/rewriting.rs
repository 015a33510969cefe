use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use qcapelli::fock::{apply, monomial_gram, FockVector};
use qcapelli::invariants::{build_y, eigenvalue};
use qcapelli::symmetric::{knop_interpolation_t_equals_q, rhs_theorem1};
use qcapelli::{Algebra, Partition};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

// Every iteration starts from an empty rewrite cache.
fn normal_order(c: &mut Criterion) {
    let mut group = c.benchmark_group("normal_order");
    for n in [2, 3] {
        group.bench_with_input(BenchmarkId::new("qdet_times_star", n), &n, |b, &n| {
            b.iter_batched(
                || Algebra::new(n),
                |alg| {
                    let d = alg.qdet();
                    black_box(alg.multiply(&d.star(), &d))
                },
                BatchSize::SmallInput,
            )
        });
    }
    group.bench_function("cubes_n2", |b| {
        b.iter_batched(
            || Algebra::new(2),
            |alg| {
                let x = alg.pow(&alg.zs(1, 1).add(&alg.zs(2, 1)), 3);
                let y = alg.pow(&alg.z(1, 2).add(&alg.z(2, 2)), 3);
                black_box(alg.multiply(&x, &y))
            },
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

fn fock(c: &mut Criterion) {
    let mut group = c.benchmark_group("fock");
    group.bench_function("gram_n2_d3", |b| b.iter_batched(|| Algebra::new(2), |alg| black_box(monomial_gram(&alg, 3)), BatchSize::SmallInput));
    group.bench_function("annihilate_z11_pow8", |b| {
        b.iter_batched(
            || {
                let alg = Algebra::new(1);
                let v = FockVector::new(alg.pow(&alg.z(1, 1), 8)).unwrap();
                (alg, v)
            },
            |(alg, v)| black_box(apply(&alg, &alg.zs(1, 1), &v)),
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

fn spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectrum");
    group.sample_size(10);
    for (nu, lam) in [("2,1", "3,1"), ("1,1,0", "2,1,0")] {
        let (nu, lam) = (p(nu), p(lam));
        group.bench_function(format!("eigenvalue_{nu}_on_{lam}"), |b| {
            b.iter_batched(
                || Algebra::new(nu.n()),
                |alg| {
                    let y = build_y(&alg, &nu).unwrap();
                    black_box(eigenvalue(&alg, &y, &lam).unwrap())
                },
                BatchSize::SmallInput,
            )
        });
        group.bench_function(format!("closed_form_{nu}_on_{lam}"), |b| b.iter(|| black_box(rhs_theorem1(&nu, &lam))));
    }
    group.bench_function("interpolation_t_equals_q_2_1_0", |b| {
        let lam = p("2,1,0");
        b.iter(|| black_box(knop_interpolation_t_equals_q(&lam).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, normal_order, fock, spectrum);
criterion_main!(benches);
