use afom_bench::{instance, quadratic};
use afom_core::accel::GapCheck;
use afom_core::eigopt::{relative_accuracy_mu, EigProblem};
use afom_core::prox::EntropySimplex;
use afom_core::smoothing::{solve_smoothed, SmoothedObjective};
use afom_core::{AcceleratedMethod, GammaSchedule, LipschitzStrategy, StopRule};
use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};

const STRATEGIES: [(&str, LipschitzStrategy); 3] = [
    ("nonadaptive", LipschitzStrategy::NonAdaptive),
    ("aggressive", LipschitzStrategy::Aggressive { kappa: 1e-12 }),
    ("hybrid", LipschitzStrategy::Hybrid { alpha: 3.0, kappa: 1e-12 }),
];

fn quadratic_steps(c: &mut Criterion) {
    let mut group = c.benchmark_group("quadratic_step");
    let m = 200;
    let q = quadratic(m);
    let setup = EntropySimplex::new(m).unwrap();
    for (name, strategy) in STRATEGIES {
        let method = AcceleratedMethod::new(&setup, &q, strategy, q.lipschitz(), GammaSchedule::Linear).unwrap();
        let mut state = method.init().unwrap();
        for _ in 0..20 {
            method.step(&mut state).unwrap();
        }
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter_batched_ref(|| state.clone(), |s| method.step(s).unwrap(), BatchSize::SmallInput)
        });
    }
    group.finish();
}

fn eig_steps(c: &mut Criterion) {
    let mut group = c.benchmark_group("eig_step");
    group.sample_size(20);
    let (m, n) = (20, 100);
    let inst = instance(m, n);
    let problem = EigProblem::new(&inst).unwrap();
    let mu = relative_accuracy_mu(0.002, inst.l_prime(), n).unwrap();
    let objective = SmoothedObjective::new(&problem, mu).unwrap();
    let lipschitz = afom_core::smoothing::lipschitz_of_smoothed(&problem, mu).unwrap();
    let setup = EntropySimplex::new(m).unwrap();
    for (name, strategy) in STRATEGIES {
        let method = AcceleratedMethod::new(&setup, &objective, strategy, lipschitz, GammaSchedule::Linear).unwrap();
        let state = method.init().unwrap();
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter_batched_ref(|| state.clone(), |s| method.step(s).unwrap(), BatchSize::SmallInput)
        });
    }
    group.finish();
}

fn eig_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("eig_solve_100_iterations");
    group.sample_size(10);
    let (m, n) = (10, 50);
    let inst = instance(m, n);
    let problem = EigProblem::new(&inst).unwrap();
    let mu = relative_accuracy_mu(0.002, inst.l_prime(), n).unwrap();
    let setup = EntropySimplex::new(m).unwrap();
    let stop = StopRule {
        max_iters: 100,
        gap_check: Some(GapCheck {
            period: 100,
            dense_prefix: 0,
            target: 0.0,
        }),
    };
    for (name, strategy) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| solve_smoothed(&problem, &setup, mu, strategy, &stop, false).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, quadratic_steps, eig_steps, eig_solve);
criterion_main!(benches);
