use std::hint::black_box;

use afom_bench::{instance, interior_point, EIG_SIZES};
use afom_core::eigopt::{
    assemble, density_maximizer, eig_gradient, exact_lambda_max, power_method_norm,
    relative_accuracy_mu, smoothed_lambda_max, EigProblem, POWER_MAX_ITERS, POWER_TOL,
};
use afom_core::prox::{prox_map, EntropySimplex};
use afom_core::smoothing::smoothed_eval;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn prox(c: &mut Criterion) {
    let mut group = c.benchmark_group("entropy_prox");
    for m in [10, 100, 1000] {
        let setup = EntropySimplex::new(m).unwrap();
        let z = interior_point(m);
        let s: Vec<f64> = (0..m).map(|i| ((i * 13) % 17) as f64 - 8.0).collect();
        group.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, _| {
            b.iter(|| prox_map(&setup, black_box(z.as_slice()), black_box(&s)).unwrap())
        });
    }
    group.finish();
}

fn eig_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("eig_oracle");
    group.sample_size(20);
    for (m, n) in EIG_SIZES {
        let inst = instance(m, n);
        let x = interior_point(m);
        let mu = relative_accuracy_mu(0.002, inst.l_prime(), n).unwrap();
        let a = assemble(&x, &inst).unwrap();
        let id = format!("m{m}_n{n}");
        group.bench_function(BenchmarkId::new("assemble", &id), |b| {
            b.iter(|| assemble(black_box(&x), &inst).unwrap())
        });
        group.bench_function(BenchmarkId::new("smoothed_lambda_max", &id), |b| {
            b.iter(|| smoothed_lambda_max(black_box(&a), mu).unwrap())
        });
        group.bench_function(BenchmarkId::new("density_maximizer", &id), |b| {
            b.iter(|| density_maximizer(black_box(&a), mu).unwrap())
        });
        group.bench_function(BenchmarkId::new("gradient", &id), |b| {
            b.iter(|| eig_gradient(black_box(&x), &inst, mu).unwrap())
        });
        let problem = EigProblem::new(&inst).unwrap();
        group.bench_function(BenchmarkId::new("smoothed_eval", &id), |b| {
            b.iter(|| smoothed_eval(&problem, mu, black_box(x.as_slice())).unwrap())
        });
        group.bench_function(BenchmarkId::new("exact_lambda_max", &id), |b| {
            b.iter(|| exact_lambda_max(black_box(&a)).unwrap())
        });
        let a0 = inst.matrix(0).unwrap();
        group.bench_function(BenchmarkId::new("power_method", &id), |b| {
            b.iter(|| power_method_norm(black_box(&a0), POWER_TOL, POWER_MAX_ITERS, 1))
        });
    }
    group.finish();
}

criterion_group!(benches, prox, eig_oracle);
criterion_main!(benches);
